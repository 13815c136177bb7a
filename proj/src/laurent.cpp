#include "g2spectral/laurent.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace g2spectral {

cplx Laurent::at(int exponent) const {
  const int i = exponent - lo;
  if (i < 0 || i >= int(c.size())) return 0.0;
  return c[i];
}

void Laurent::set(int exponent, cplx v) {
  if (c.empty()) {
    lo = exponent;
    c.assign(1, v);
    return;
  }
  if (exponent < lo) {
    c.insert(c.begin(), lo - exponent, cplx(0.0));
    lo = exponent;
  } else if (exponent > hi()) {
    c.resize(exponent - lo + 1, cplx(0.0));
  }
  c[exponent - lo] = v;
}

cplx Laurent::eval(cplx z) const {
  // two-sided Horner: nonnegative part in z, negative part in 1/z
  cplx pos = 0.0;
  for (int m = hi(); m >= 0; --m) pos = pos * z + at(m);
  cplx neg = 0.0;
  if (lo < 0) {
    const cplx w = cplx(1.0) / z;
    for (int j = -lo; j >= 1; --j) neg = neg * w + at(-j);
    neg *= w;
  }
  return pos + neg;
}

Laurent Laurent::derivative() const {
  Laurent d;
  d.lo = lo - 1;
  d.c.assign(c.size(), cplx(0.0));
  for (int i = 0; i < int(c.size()); ++i) d.c[i] = double(lo + i) * c[i];
  return d;
}

double Laurent::max_abs() const {
  double m = 0.0;
  for (const auto& v : c) m = std::max(m, std::abs(v));
  return m;
}

Laurent Laurent::trimmed(double tol) const {
  const double cut = tol * std::max(1e-300, max_abs());
  int a = 0, b = int(c.size()) - 1;
  while (a <= b && std::abs(c[a]) <= cut) ++a;
  while (b >= a && std::abs(c[b]) <= cut) --b;
  if (a > b) return Laurent::zero();
  return Laurent(lo + a, std::vector<cplx>(c.begin() + a, c.begin() + b + 1));
}

double Laurent::reality_residual() const {
  double r = 0.0;
  for (int m = std::min(lo, -hi()); m <= std::max(hi(), -lo); ++m)
    r = std::max(r, std::abs(at(-m) - std::conj(at(m))));
  return r;
}

Laurent operator+(const Laurent& a, const Laurent& b) {
  Laurent r;
  r.lo = std::min(a.lo, b.lo);
  r.c.assign(std::max(a.hi(), b.hi()) - r.lo + 1, cplx(0.0));
  for (int m = r.lo; m <= r.hi(); ++m) r.c[m - r.lo] = a.at(m) + b.at(m);
  return r;
}

Laurent operator-(const Laurent& a, const Laurent& b) { return a + cplx(-1.0) * b; }

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  r.lo = a.lo + b.lo;
  r.c.assign(a.c.size() + b.c.size() - 1, cplx(0.0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

Laurent operator*(cplx t, const Laurent& a) {
  Laurent r = a;
  for (auto& v : r.c) v *= t;
  return r;
}

std::vector<cplx> laurent_roots(const Laurent& p, double trim_tol) {
  const Laurent q = p.trimmed(trim_tol);
  if (q.max_abs() == 0.0)
    throw Error(ErrorKind::degenerate_input, "laurent_roots: zero polynomial");
  const int n = int(q.c.size()) - 1;
  if (n == 0) return {};
  MatX companion = MatX::Zero(n, n);
  const cplx lead = q.c[n];
  for (int i = 0; i < n; ++i) {
    companion(i, n - 1) = -q.c[i] / lead;
    if (i + 1 < n) companion(i + 1, i) = 1.0;
  }
  Eigen::ComplexEigenSolver<MatX> es(companion, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
  // Newton polish (multiple roots stay put: correction ~ 0/0 guarded)
  const Laurent dq = q.derivative();
  for (auto& r : roots)
    for (int it = 0; it < 3; ++it) {
      const cplx f = q.eval(r), df = dq.eval(r);
      if (std::abs(df) < 1e-14 * std::max(1.0, std::abs(f))) break;
      const cplx step = f / df;
      if (!std::isfinite(std::abs(step)) || std::abs(step) > 0.5 * std::abs(r)) break;
      r -= step;
    }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double radius) {
  std::vector<RootCluster> out;
  std::vector<bool> used(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    cplx sum = roots[i];
    int count = 1;
    used[i] = true;
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - roots[i]) <= radius) {
        sum += roots[j];
        ++count;
        used[j] = true;
      }
    }
    out.push_back({sum / double(count), count});
  }
  return out;
}

LaurentFit fit_laurent_unit_circle(const std::vector<cplx>& zs,
                                   const std::vector<cplx>& values, int support) {
  const int n = int(zs.size());
  if (n < 2 * support + 1)
    throw Error(ErrorKind::interpolation,
                "fit_laurent_unit_circle: not enough samples", double(n));
  // Least squares against the Laurent Vandermonde; on the unit circle with
  // equispaced nodes the system is unitary up to scale.
  MatX V(n, 2 * support + 1);
  for (int s = 0; s < n; ++s)
    for (int m = -support; m <= support; ++m) V(s, m + support) = std::pow(zs[s], m);
  VecX rhs(n);
  for (int s = 0; s < n; ++s) rhs[s] = values[s];
  Eigen::ColPivHouseholderQR<MatX> qr(V);
  const VecX coef = qr.solve(rhs);
  LaurentFit fit;
  fit.poly.lo = -support;
  fit.poly.c.assign(coef.data(), coef.data() + 2 * support + 1);
  double res = 0.0;
  for (int s = 0; s < n; ++s)
    res = std::max(res, std::abs(fit.poly.eval(zs[s]) - values[s]));
  fit.residual = res;
  return fit;
}

}  // namespace g2spectral
