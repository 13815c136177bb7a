#pragma once

#include <vector>

#include "g2spectral/types.hpp"

namespace g2spectral {

// Laurent polynomial sum_{m} c[m - lo] z^m with complex coefficients.
struct Laurent {
  int lo = 0;
  std::vector<cplx> c;

  Laurent() = default;
  Laurent(int lo, std::vector<cplx> coeffs) : lo(lo), c(std::move(coeffs)) {}

  static Laurent zero() { return Laurent(0, {cplx(0.0)}); }
  static Laurent constant(cplx v) { return Laurent(0, {v}); }

  int hi() const { return lo + int(c.size()) - 1; }
  cplx at(int exponent) const;           // 0 outside the window
  void set(int exponent, cplx v);        // grows the window as needed
  cplx eval(cplx z) const;
  Laurent derivative() const;            // d/dz
  double max_abs() const;
  Laurent trimmed(double tol) const;     // strip near-zero extremes

  // c_{-m} = conj(c_m) defect.
  double reality_residual() const;
};

Laurent operator+(const Laurent& a, const Laurent& b);
Laurent operator-(const Laurent& a, const Laurent& b);
Laurent operator*(const Laurent& a, const Laurent& b);
Laurent operator*(cplx t, const Laurent& a);

// Roots in C^* (multiplicity-flattened), via companion matrix on the cleared
// polynomial plus Newton polishing. Throws degenerate_input on the zero
// polynomial.
std::vector<cplx> laurent_roots(const Laurent& p, double trim_tol = 1e-12);

struct RootCluster {
  cplx value;
  int multiplicity;
};
std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double radius);

// Exact interpolation of a Laurent polynomial with support in [-N, N] from
// 2N+1 samples on the unit circle (phase-shifted DFT).
struct LaurentFit {
  Laurent poly;
  double residual;  // max abs mismatch at fresh control samples
};
LaurentFit fit_laurent_unit_circle(const std::vector<cplx>& zs,
                                   const std::vector<cplx>& values, int support);

}  // namespace g2spectral
