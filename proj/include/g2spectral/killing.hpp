#pragma once

#include <cstdint>
#include <vector>

#include "g2spectral/types.hpp"

namespace g2spectral {

// Polynomial Killing field A(zeta) = sum_{j=-d}^{d} A_j zeta^j with
// A_j in g_{j mod 6}, A_{-j} = conj(A_j), d = 6k+1.
struct KillingField {
  int k = 0;
  int d = 1;
  std::vector<Mat7> coeff;  // index j + d

  static KillingField zero(int k);
  Mat7& A(int j) { return coeff[j + d]; }
  const Mat7& A(int j) const { return coeff[j + d]; }
};

// Deterministic standard-normal sampling per graded component.
KillingField random_killing_field(int k, std::uint64_t seed);

// Globally rescaled copy; scaling preserves every structural invariant.
KillingField scaled(const KillingField& A, double factor);

// Field normalised so that sup_{|zeta|=1} |A(zeta)| is O(1); convenient for
// absolute tolerances in the verification suites.
KillingField normalized_field(int k, std::uint64_t seed);

struct SymmetryReport {
  double rho_residual = 0.0;    // conj(A(z)) vs A(1/conj(z))
  double tau_residual = 0.0;    // C A(z) C^-1 vs A(eps z)
  double graded_residual = 0.0; // coefficient-wise grading defect
  double reality_residual = 0.0;
  double membership_residual = 0.0;  // g2 span defect of coefficients
};
SymmetryReport symmetry_residuals(const KillingField& A, const std::vector<cplx>& zetas);

std::vector<cplx> default_sample_zetas(int count, std::uint64_t seed = 7);

Mat7 evaluate_at(const KillingField& A, cplx zeta);

// Gauge matrices: S_zeta = R_theta for zeta = e^{i theta} (the multiplicative
// convention; the sign variant with a flipped (2,2) entry is kept behind the
// flag and fails the lambda-reduction), C_zeta = diag(1, S_zeta, S_{zeta^2},
// S_{zeta^3}).
Eigen::Matrix2cd gauge_S(cplx zeta, bool literal_sign = false);
Mat7 gauge_C(cplx zeta, bool literal_sign = false);

// A-tilde(zeta) = C_zeta^-1 A(zeta) C_zeta re-expressed in lambda = zeta^6.
struct GaugeReducedField {
  int k = 0;
  int window = 2;                 // coefficients for lambda^m, |m| <= window
  std::vector<Mat7> coeff;        // index m + window
  double tau_invariance_residual = 0.0;  // |At(eps z) - At(z)| over samples
  double fit_residual = 0.0;             // Laurent fit defect
  double reality_residual = 0.0;

  Mat7 eval_lambda(cplx lambda) const;
  const Mat7& B(int m) const { return coeff[m + window]; }
};

GaugeReducedField gauge_reduce_lambda(const KillingField& A, double tol = 1e-6,
                                      bool literal_sign = false);

// Random element of the complex span of g_{j mod 6} (used by negative tests).
Mat7 random_graded_matrix(int j, std::uint64_t seed);

}  // namespace g2spectral
