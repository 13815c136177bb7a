#include "g2spectral/killing.hpp"

#include <cmath>
#include <random>

#include "g2spectral/g2algebra.hpp"

namespace g2spectral {

namespace {

// Box-Muller over explicit 53-bit uniforms; std::normal_distribution is not
// pinned down by the standard, this is.
class NormalSampler {
public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (have_) {
      have_ = false;
      return cached_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * M_PI * u2);
    have_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  cplx complex_normal() {
    const double x = (*this)();
    const double y = (*this)();
    return cplx(x, y);
  }

private:
  double uniform() { return double(rng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 rng_;
  double cached_ = 0.0;
  bool have_ = false;
};

}  // namespace

KillingField KillingField::zero(int k) {
  KillingField A;
  A.k = k;
  A.d = 6 * k + 1;
  A.coeff.assign(2 * A.d + 1, Mat7::Zero());
  return A;
}

KillingField random_killing_field(int k, std::uint64_t seed) {
  if (k < 0) throw Error(ErrorKind::precondition, "random_killing_field: k < 0");
  const G2Structure& g = g2_structure();
  KillingField A = KillingField::zero(k);
  NormalSampler normal(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  for (const auto& T : g.torus) A.A(0) += normal() * T.cast<cplx>();
  for (int j = 1; j <= A.d; ++j) {
    const auto& basis = g.graded[j % 6];
    for (const auto& B : basis) A.A(j) += normal.complex_normal() * B;
    A.A(-j) = A.A(j).conjugate();
  }
  return A;
}

KillingField scaled(const KillingField& A, double factor) {
  KillingField B = A;
  for (auto& M : B.coeff) M *= factor;
  return B;
}

KillingField normalized_field(int k, std::uint64_t seed) {
  KillingField A = random_killing_field(k, seed);
  double sup = 0.0;
  for (const auto& M : A.coeff) sup += M.norm();
  return scaled(A, sup > 0 ? 1.0 / sup : 1.0);
}

std::vector<cplx> default_sample_zetas(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<cplx> zs;
  for (int i = 0; i < count; ++i) {
    const double theta = 2.0 * M_PI * (double(rng() >> 11) * 0x1.0p-53);
    const double r = 0.75 + 0.5 * (double(rng() >> 11) * 0x1.0p-53);
    zs.push_back(std::polar(r, theta));
  }
  return zs;
}

Mat7 evaluate_at(const KillingField& A, cplx zeta) {
  if (zeta == cplx(0.0))
    throw Error(ErrorKind::pole, "evaluate_at: zeta = 0 is a pole");
  Mat7 pos = Mat7::Zero();
  for (int j = A.d; j >= 0; --j) pos = zeta * pos + A.A(j);
  Mat7 neg = Mat7::Zero();
  const cplx w = cplx(1.0) / zeta;
  for (int j = A.d; j >= 1; --j) neg = w * neg + A.A(-j);
  return pos + w * neg;
}

SymmetryReport symmetry_residuals(const KillingField& A, const std::vector<cplx>& zetas) {
  SymmetryReport r;
  const Mat7r& C = tau_matrix();
  const cplx eps = grading_epsilon();
  for (const cplx& z : zetas) {
    const Mat7 Az = evaluate_at(A, z);
    const Mat7 rho_lhs = Az.conjugate();
    const Mat7 rho_rhs = evaluate_at(A, cplx(1.0) / std::conj(z));
    r.rho_residual = std::max(r.rho_residual, (rho_lhs - rho_rhs).cwiseAbs().maxCoeff());
    const Mat7 tau_lhs = C * Az * C.transpose();
    const Mat7 tau_rhs = evaluate_at(A, eps * z);
    r.tau_residual = std::max(r.tau_residual, (tau_lhs - tau_rhs).cwiseAbs().maxCoeff());
  }
  for (int j = -A.d; j <= A.d; ++j) {
    r.graded_residual = std::max(r.graded_residual,
                                 graded_membership_residual(A.A(j), ((j % 6) + 6) % 6));
    r.reality_residual = std::max(
        r.reality_residual, (A.A(-j) - A.A(j).conjugate()).cwiseAbs().maxCoeff());
    r.membership_residual = std::max(r.membership_residual, g2_membership_residual(A.A(j)));
  }
  return r;
}

Eigen::Matrix2cd gauge_S(cplx zeta, bool literal_sign) {
  const cplx a = 0.5 * (zeta + cplx(1.0) / zeta);
  const cplx b = (zeta - cplx(1.0) / zeta) / cplx(0.0, 2.0);
  Eigen::Matrix2cd S;
  S << a, -b, b, (literal_sign ? -a : a);
  return S;
}

Mat7 gauge_C(cplx zeta, bool literal_sign) {
  Mat7 C = Mat7::Zero();
  C(0, 0) = 1.0;
  cplx zp = zeta;
  for (int blockIdx = 0; blockIdx < 3; ++blockIdx) {
    C.block<2, 2>(1 + 2 * blockIdx, 1 + 2 * blockIdx) = gauge_S(zp, literal_sign);
    zp *= zeta;
  }
  return C;
}

Mat7 GaugeReducedField::eval_lambda(cplx lambda) const {
  Mat7 pos = Mat7::Zero();
  for (int m = window; m >= 0; --m) pos = lambda * pos + coeff[m + window];
  Mat7 neg = Mat7::Zero();
  const cplx w = cplx(1.0) / lambda;
  for (int m = window; m >= 1; --m) neg = w * neg + coeff[-m + window];
  return pos + w * neg;
}

GaugeReducedField gauge_reduce_lambda(const KillingField& A, double tol,
                                      bool literal_sign) {
  GaugeReducedField out;
  out.k = A.k;
  out.window = A.k + 1;

  auto reduced = [&](cplx z) -> Mat7 {
    const Mat7 Cz = gauge_C(z, literal_sign);
    const Mat7 Czi = gauge_C(cplx(1.0) / z, literal_sign);
    return Czi * evaluate_at(A, z) * Cz;
  };

  // tau-invariance of the reduced field at sample points
  double scale = 0.0;
  const cplx eps = grading_epsilon();
  const auto zetas = default_sample_zetas(12, 11);
  for (const cplx& z : zetas) {
    const Mat7 R = reduced(z);
    scale = std::max(scale, R.cwiseAbs().maxCoeff());
    out.tau_invariance_residual = std::max(
        out.tau_invariance_residual, (reduced(eps * z) - R).cwiseAbs().maxCoeff());
  }
  if (out.tau_invariance_residual > tol * std::max(1.0, scale))
    throw Error(ErrorKind::gauge_failure,
                "gauge_reduce_lambda: reduced field still depends on the sixth root",
                out.tau_invariance_residual);

  // Least-squares fit of the lambda-Laurent window from unit-circle samples.
  const int nfit = 4 * (A.k + 2);
  std::vector<cplx> lambdas(nfit);
  std::vector<Mat7> samples(nfit);
  for (int s = 0; s < nfit; ++s) {
    const cplx z = std::polar(1.0, (2.0 * M_PI * s + 0.7) / (6.0 * nfit));
    lambdas[s] = std::pow(z, 6);
    samples[s] = reduced(z);
  }
  const int w = out.window;
  MatX V(nfit, 2 * w + 1);
  for (int s = 0; s < nfit; ++s)
    for (int m = -w; m <= w; ++m) V(s, m + w) = std::pow(lambdas[s], m);
  Eigen::ColPivHouseholderQR<MatX> qr(V);
  out.coeff.assign(2 * w + 1, Mat7::Zero());
  for (int p = 0; p < 7; ++p)
    for (int q = 0; q < 7; ++q) {
      VecX rhs(nfit);
      for (int s = 0; s < nfit; ++s) rhs[s] = samples[s](p, q);
      const VecX sol = qr.solve(rhs);
      for (int m = -w; m <= w; ++m) out.coeff[m + w](p, q) = sol[m + w];
    }
  for (int s = 0; s < nfit; ++s)
    out.fit_residual = std::max(
        out.fit_residual,
        (out.eval_lambda(lambdas[s]) - samples[s]).cwiseAbs().maxCoeff());
  for (int m = 0; m <= w; ++m)
    out.reality_residual =
        std::max(out.reality_residual,
                 (out.B(-m) - out.B(m).conjugate()).cwiseAbs().maxCoeff());
  return out;
}

Mat7 random_graded_matrix(int j, std::uint64_t seed) {
  const auto& basis = g2_structure().graded[((j % 6) + 6) % 6];
  NormalSampler normal(seed);
  Mat7 M = Mat7::Zero();
  for (const auto& B : basis) M += normal.complex_normal() * B;
  return M;
}

}  // namespace g2spectral
