#include "g2spectral/fiber.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "g2spectral/forms.hpp"
#include "g2spectral/g2algebra.hpp"

namespace g2spectral {

namespace {

const Mat7& assoc_metric() {
  static const Mat7 g = metric_from_form(assoc_form3()).matrix;
  return g;
}

AltForm omega_two_form(const Mat7& omega) {
  AltForm w(7, 2);
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b) w.set_component({a, b}, omega(a, b));
  return w;
}

cplx bilinear(const Vec7& x, const Vec7& y) { return x.transpose() * assoc_metric() * y; }

// Complex-orthogonal (g-bilinear) orthonormal frame of the v0-complement,
// with pivoted Gram-Schmidt; breaks down only when the restriction of g
// degenerates (a2 -> 0).
Eigen::Matrix<cplx, 7, 6> bilinear_frame(const Vec7& v0) {
  Eigen::HouseholderQR<Eigen::Matrix<cplx, 7, 1>> qr(v0.conjugate());
  const Mat7 Q = qr.householderQ() * Mat7::Identity();
  Eigen::Matrix<cplx, 7, 6> U = Q.rightCols<6>();

  std::array<bool, 6> used{};
  Eigen::Matrix<cplx, 7, 6> W;
  for (int step = 0; step < 6; ++step) {
    int best = -1;
    double best_q = -1.0;
    Vec7 best_r = Vec7::Zero();
    for (int c = 0; c < 6; ++c) {
      if (used[c]) continue;
      Vec7 r = U.col(c);
      for (int j = 0; j < step; ++j) r -= bilinear(W.col(j), r) * W.col(j);
      const double q = std::abs(bilinear(r, r)) / std::max(1e-300, r.squaredNorm());
      if (q > best_q) {
        best_q = q;
        best = c;
        best_r = r;
      }
    }
    if (best_q < 1e-13)
      throw Error(ErrorKind::kernel_degenerate,
                  "bilinear frame breakdown (restriction of g degenerate)", best_q);
    used[best] = true;
    W.col(step) = best_r / std::sqrt(bilinear(best_r, best_r));
  }
  return W;
}

ThreeForm6 restrict_assoc(const Eigen::Matrix<cplx, 7, 6>& U) {
  const ThreeForm7& alpha = assoc_form3();
  ThreeForm6 out;
  MatX cols(7, 3);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int l = j + 1; l < 6; ++l) {
        cols.col(0) = U.col(i);
        cols.col(1) = U.col(j);
        cols.col(2) = U.col(l);
        out.form.set_component({i, j, l}, alpha.form.eval(cols));
      }
  return out;
}

double subspace_gap(const MatX& P, const MatX& Q) { return (P - Q).norm(); }

// Hermitian projector onto the span of the columns.
MatX projector(const MatX& cols) {
  Eigen::HouseholderQR<MatX> qr(cols);
  MatX Qm = qr.householderQ() * MatX::Identity(cols.rows(), cols.cols());
  return Qm * Qm.adjoint();
}

}  // namespace

FiberData omega_fiber(const KillingField& A, cplx zeta, const Mat7* z_gauge) {
  if (zeta == cplx(0.0)) throw Error(ErrorKind::pole, "omega_fiber: zeta = 0");
  FiberData F;
  F.zeta = zeta;
  F.A = evaluate_at(A, zeta);
  if (z_gauge) {
    const Mat7 G = *z_gauge;
    F.A = G.inverse() * F.A * G;
  }
  F.omega = F.A.transpose() * assoc_metric();
  const auto p = char_poly(F.A);
  F.a1 = -p[5];
  F.a2 = -p[1];
  const double scale = std::max(1.0, F.A.norm());
  F.kernel_degenerate = std::abs(F.a2) < 1e-10 * std::pow(scale, 6);
  return F;
}

cplx v0_calibration() {
  static const cplx c = [] {
    const KillingField A = normalized_field(0, 42);
    const FiberData F = omega_fiber(A, cplx(0.83, 0.31));
    const AltForm w = omega_two_form(F.omega);
    const AltForm w3 = AltForm::wedge(AltForm::wedge(w, w), w);
    const Vec7 raw = psi_dual(w3);
    const cplx ratio = -F.a2 / bilinear(raw, raw);
    cplx root = std::sqrt(ratio);
    if (root.real() < 0) root = -root;
    return root;
  }();
  return c;
}

void kernel_v0(FiberData& F) {
  const AltForm w = omega_two_form(F.omega);
  const AltForm w3 = AltForm::wedge(AltForm::wedge(w, w), w);
  F.v0 = v0_calibration() * psi_dual(w3);
  const double vnorm = F.v0.norm();
  const double anorm = std::max(1e-300, F.A.norm());
  F.v0_kernel_residual = (F.A * F.v0).norm() / std::max(1e-300, vnorm * anorm);
  const cplx gvv = bilinear(F.v0, F.v0);
  F.v0_norm_residual = std::abs(gvv + F.a2) / std::max(1e-300, std::abs(F.a2));
}

void eigenline_fiber(FiberData& F, double cluster_tol) {
  if (F.kernel_degenerate)
    throw Error(ErrorKind::kernel_degenerate, "eigenline_fiber: a2(zeta) ~ 0",
                std::abs(F.a2));
  Eigen::ComplexEigenSolver<Mat7> es(F.A, true);
  std::array<int, 7> order{0, 1, 2, 3, 4, 5, 6};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(es.eigenvalues()[a]) < std::abs(es.eigenvalues()[b]);
  });
  // order[0] is the kernel direction; remaining six come in +- pairs
  std::vector<int> idx(order.begin() + 1, order.end());
  double scale = 0.0;
  for (int i : idx) scale = std::max(scale, std::abs(es.eigenvalues()[i]));
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = a + 1; b < idx.size(); ++b) {
      const double sep =
          std::abs(es.eigenvalues()[idx[a]] - es.eigenvalues()[idx[b]]);
      if (sep < cluster_tol * scale)
        throw Error(ErrorKind::branch_proximity,
                    "eigenline_fiber: clustered eigenvalues", sep);
    }

  // partner pairing mu <-> -mu
  std::array<int, 6> slot{};
  std::array<bool, 6> used{};
  int pos = 0;
  for (int a = 0; a < 6; ++a) {
    if (used[a]) continue;
    int best = -1;
    double bestv = 1e300;
    for (int b = a + 1; b < 6; ++b) {
      if (used[b]) continue;
      const double v =
          std::abs(es.eigenvalues()[idx[a]] + es.eigenvalues()[idx[b]]);
      if (v < bestv) {
        bestv = v;
        best = b;
      }
    }
    slot[pos] = idx[a];
    slot[pos + 3] = idx[best];
    used[a] = used[best] = true;
    ++pos;
    if (pos == 3) break;
  }

  // fix the signs so the three representatives sum to zero
  double best_sum = 1e300;
  int best_mask = 0;
  for (int mask = 0; mask < 4; ++mask) {
    cplx sum = es.eigenvalues()[slot[0]];
    sum += (mask & 1) ? es.eigenvalues()[slot[4]] : es.eigenvalues()[slot[1]];
    sum += (mask & 2) ? es.eigenvalues()[slot[5]] : es.eigenvalues()[slot[2]];
    if (std::abs(sum) < best_sum) {
      best_sum = std::abs(sum);
      best_mask = mask;
    }
  }
  if (best_mask & 1) std::swap(slot[1], slot[4]);
  if (best_mask & 2) std::swap(slot[2], slot[5]);

  for (int i = 0; i < 6; ++i) {
    F.mu[i] = es.eigenvalues()[slot[i]];
    F.eigvec[i] = es.eigenvectors().col(slot[i]);
  }
  F.mu_triple_residual = best_sum / std::max(1e-300, scale);

  std::vector<cplx> mus(F.mu.begin(), F.mu.end());
  std::vector<cplx> negs;
  for (const cplx& m : mus) negs.push_back(-m);
  double neg_res = 0.0;
  {
    std::vector<cplx> a = mus, b = negs;
    while (!a.empty()) {
      size_t bi = 0, bj = 0;
      double best = 1e300;
      for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
          if (std::abs(a[i] - b[j]) < best) {
            best = std::abs(a[i] - b[j]);
            bi = i;
            bj = j;
          }
      neg_res = std::max(neg_res, best);
      a.erase(a.begin() + bi);
      b.erase(b.begin() + bj);
    }
  }
  F.mu_negation_residual = neg_res / std::max(1e-300, scale);

  double pmax = 0.0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      F.pairing(a, b) = (F.eigvec[a].transpose() * F.omega * F.eigvec[b]).value();
      pmax = std::max(pmax, std::abs(F.pairing(a, b)));
    }
  F.pairing_partner_min = 1e300;
  for (int a = 0; a < 6; ++a) {
    const int partner = (a + 3) % 6;
    for (int b = 0; b < 6; ++b) {
      if (b == partner) continue;
      F.pairing_offdiag =
          std::max(F.pairing_offdiag, std::abs(F.pairing(a, b)) / std::max(1e-300, pmax));
    }
    F.pairing_partner_min =
        std::min(F.pairing_partner_min, std::abs(F.pairing(a, partner)));
  }
}

AlphaChecks alpha_restricted_checks(const FiberData& F, double tol) {
  AlphaChecks out;
  const Eigen::Matrix<cplx, 7, 6> U = bilinear_frame(F.v0);
  const ThreeForm6 alpha = restrict_assoc(U);
  const KOperator K = k_alpha(alpha);
  out.K = K.matrix;
  out.s_frame = K.s_value;

  const Mat6 omega_E = U.transpose() * F.omega * U;
  out.s_twisted = out.s_frame * omega_E.determinant();

  const double kscale = std::max(1.0, out.K.norm());
  out.k_squared_residual =
      (out.K * out.K - out.s_frame * Mat6::Identity()).norm() / (kscale * kscale);
  if (std::abs(out.s_frame) < tol * kscale * kscale)
    throw Error(ErrorKind::split_degenerate,
                "alpha_restricted_checks: s ~ 0 at this fiber, pick another zeta",
                std::abs(out.s_frame));
  out.sqrt_s = std::sqrt(out.s_frame);

  const Mat6 A_E = U.transpose() * assoc_metric() * F.A * U;  // A restricted to v0-perp
  out.commutator_residual =
      (out.K * A_E - A_E * out.K).norm() / std::max(1e-300, A_E.norm() * out.K.norm());

  // eigenline membership in the +-sqrt(s) eigenspaces
  std::array<int, 6> side{};
  for (int i = 0; i < 6; ++i) {
    Vec6 x = U.transpose() * assoc_metric() * F.eigvec[i];
    x /= x.norm();
    const double rp = (out.K * x - out.sqrt_s * x).norm() / std::abs(out.sqrt_s);
    const double rm = (out.K * x + out.sqrt_s * x).norm() / std::abs(out.sqrt_s);
    side[i] = rp <= rm ? +1 : -1;
    out.membership_residual = std::max(out.membership_residual, std::min(rp, rm));
    if (side[i] > 0) ++out.n_plus;
    else ++out.n_minus;
  }

  cplx plus_sum = 0.0;
  double mu_scale = 0.0;
  for (int i = 0; i < 6; ++i) {
    mu_scale = std::max(mu_scale, std::abs(F.mu[i]));
    if (side[i] > 0) plus_sum += F.mu[i];
  }
  out.triple_sum_residual = std::abs(plus_sum) / std::max(1e-300, mu_scale);

  double pmax = 1e-300;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) pmax = std::max(pmax, std::abs(F.pairing(a, b)));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if (side[a] == side[b])
        out.lagrangian_residual =
            std::max(out.lagrangian_residual, std::abs(F.pairing(a, b)) / pmax);

  // |alpha| on a unitary frame of the plus side
  MatX eplus(7, 3);
  int c = 0;
  for (int i = 0; i < 6 && c < 3; ++i)
    if (side[i] > 0) eplus.col(c++) = F.eigvec[i];
  if (c == 3) {
    Eigen::HouseholderQR<MatX> qr(eplus);
    MatX Qm = qr.householderQ() * MatX::Identity(7, 3);
    out.alpha_eplus_mag = std::abs(assoc_form3().form.eval(Qm));
  }
  return out;
}

DivisibilityReport s_divisibility(const KillingField& A, int nsamples) {
  DivisibilityReport rep;
  double field_scale = 0.0;
  for (const auto& M : A.coeff) field_scale = std::max(field_scale, M.norm());
  if (field_scale == 0.0)
    throw Error(ErrorKind::degenerate_input, "s_divisibility: zero field");

  std::vector<cplx> ratios;
  int attempts = 0;
  std::uint64_t seed = 33;
  while (int(ratios.size()) < nsamples && attempts < 8 * nsamples) {
    const auto zetas = default_sample_zetas(nsamples, seed++);
    for (const cplx& z : zetas) {
      if (int(ratios.size()) >= nsamples) break;
      ++attempts;
      try {
        FiberData F = omega_fiber(A, z);
        if (F.kernel_degenerate) continue;
        kernel_v0(F);
        eigenline_fiber(F);
        const AlphaChecks ac = alpha_restricted_checks(F);
        ratios.push_back(ac.s_twisted / F.a2);
      } catch (const Error&) {
        continue;  // branch proximity or degenerate fiber: resample
      }
    }
  }
  if (int(ratios.size()) < std::max(2, nsamples / 2))
    throw Error(ErrorKind::degenerate_input,
                "s_divisibility: could not collect enough generic fibers");
  cplx mean = 0.0;
  for (const cplx& r : ratios) mean += r;
  mean /= double(ratios.size());
  double spread = 0.0;
  for (const cplx& r : ratios)
    spread = std::max(spread, std::abs(r - mean) / std::max(1e-300, std::abs(mean)));
  rep.ratio_mean = mean;
  rep.spread = spread;
  rep.samples = int(ratios.size());
  return rep;
}

VanishingFit vanishing_order_at_D(const KillingField& A, cplx lambda0) {
  VanishingFit fit;
  const SpectralCoefficients S = spectral_coefficients(A);
  const cplx zeta0 = std::exp(std::log(lambda0) / 6.0);

  // approach radially; radii relative to |lambda0|
  std::vector<double> radii;
  for (double e = -2.0; e >= -4.51; e -= 0.25) radii.push_back(std::pow(10.0, e));
  radii.push_back(1e-3 / std::abs(lambda0));  // the fixed-distance probe

  const cplx dirphase = std::polar(1.0, 0.3);
  std::vector<double> logz, logm;
  MatX prev_proj;
  double closest = 1e300;
  for (size_t i = 0; i < radii.size(); ++i) {
    const cplx lam = lambda0 * (1.0 + radii[i] * dirphase);
    const cplx zeta = zeta0 * std::exp(std::log(lam / lambda0) / 6.0);
    FiberData F;
    try {
      F = omega_fiber(A, zeta);
      kernel_v0(F);
      eigenline_fiber(F, 1e-9);
    } catch (const Error&) {
      continue;
    }
    // track the plus eigenspace of K by subspace continuity
    Eigen::Matrix<cplx, 7, 6> U;
    try {
      U = bilinear_frame(F.v0);
    } catch (const Error&) {
      continue;
    }
    const ThreeForm6 alpha = restrict_assoc(U);
    const KOperator K = k_alpha(alpha);
    const cplx w = std::sqrt(K.s_value);
    if (std::abs(w) == 0.0) continue;
    auto magnitude_of = [&](int sign) {
      const Mat6 X = 0.5 * (Mat6::Identity() + double(sign) / w * K.matrix);
      Eigen::ColPivHouseholderQR<Mat6> qr(X);
      MatX cols = MatX::Zero(7, 3);
      MatX Xperm = X * qr.colsPermutation();
      for (int c = 0; c < 3; ++c) cols.col(c) = U * Xperm.col(c);
      return cols;
    };
    const MatX cp = magnitude_of(+1), cm = magnitude_of(-1);
    const MatX Pp = projector(cp), Pm = projector(cm);
    MatX chosen = cp;
    MatX chosen_proj = Pp;
    if (prev_proj.size() > 0 && subspace_gap(prev_proj, Pm) < subspace_gap(prev_proj, Pp)) {
      chosen = cm;
      chosen_proj = Pm;
    }
    prev_proj = chosen_proj;

    Eigen::HouseholderQR<MatX> qr(chosen);
    MatX Qm = qr.householderQ() * MatX::Identity(7, 3);
    const double mag = std::abs(assoc_form3().form.eval(Qm));
    const double z = std::abs(std::sqrt(S.b2.eval(lam)));
    if (mag <= 0.0 || z <= 0.0) continue;

    if (radii[i] < closest) {
      closest = radii[i];
      fit.k_nilpotency = (K.matrix * K.matrix).norm() /
                         std::max(1e-300, K.matrix.norm() * K.matrix.norm());
      fit.alpha_norm = alpha.form.max_abs();
    }
    if (std::abs(radii[i] * std::abs(lambda0) - 1e-3) < 1e-9) {
      const Mat6 omega_E = U.transpose() * F.omega * U;
      fit.s_near = std::abs(K.s_value * omega_E.determinant());
      continue;  // probe point, not part of the fit
    }
    logz.push_back(std::log(z));
    logm.push_back(std::log(mag));
  }
  if (logz.size() >= 5) {
    const int n = int(logz.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
      sx += logz[i];
      sy += logm[i];
      sxx += logz[i] * logz[i];
      sxy += logz[i] * logm[i];
    }
    const double denom = n * sxx - sx * sx;
    fit.order = (n * sxy - sx * sy) / denom;
    const double b = (sy - fit.order * sx) / n;
    double rss = 0;
    for (int i = 0; i < n; ++i) {
      const double e = logm[i] - (fit.order * logz[i] + b);
      rss += e * e;
    }
    fit.fit_residual = std::sqrt(rss / n);
    fit.conclusive = fit.fit_residual < 0.2;
  }
  return fit;
}

EigenlineSymmetry eigenline_symmetries(const KillingField& A, cplx zeta) {
  EigenlineSymmetry out;
  FiberData F = omega_fiber(A, zeta);
  kernel_v0(F);
  eigenline_fiber(F);

  const cplx eps = grading_epsilon();
  FiberData Ft = omega_fiber(A, eps * zeta);
  kernel_v0(Ft);
  eigenline_fiber(Ft);
  FiberData Fr = omega_fiber(A, cplx(1.0) / std::conj(zeta));
  kernel_v0(Fr);
  eigenline_fiber(Fr);

  const Mat7r& C = tau_matrix();
  for (int i = 0; i < 6; ++i) {
    // tau: the line of A(eps zeta) at mu equals C . (line of A(zeta) at mu)
    int jt = 0;
    double bt = 1e300;
    for (int j = 0; j < 6; ++j)
      if (std::abs(Ft.mu[j] - F.mu[i]) < bt) {
        bt = std::abs(Ft.mu[j] - F.mu[i]);
        jt = j;
      }
    const Vec7 cw = (C * F.eigvec[i]).normalized();
    const Vec7 wt = Ft.eigvec[jt];
    out.tau_residual =
        std::max(out.tau_residual, (cw - (wt.adjoint() * cw).value() * wt).norm());

    // rho: the line of A(1/conj zeta) at conj(mu) is the conjugated line
    int jr = 0;
    double br = 1e300;
    for (int j = 0; j < 6; ++j)
      if (std::abs(Fr.mu[j] - std::conj(F.mu[i])) < br) {
        br = std::abs(Fr.mu[j] - std::conj(F.mu[i]));
        jr = j;
      }
    const Vec7 wc = F.eigvec[i].conjugate();
    const Vec7 wr = Fr.eigvec[jr];
    out.rho_residual =
        std::max(out.rho_residual, (wc - (wr.adjoint() * wc).value() * wr).norm());
  }

  cplx prod = 1.0;
  for (int i = 0; i < 6; ++i) prod *= F.mu[i];
  out.det_residual = std::abs(prod + F.a2) / std::max(1e-300, std::abs(F.a2));
  return out;
}

}  // namespace g2spectral
