#pragma once

#include <array>
#include <optional>
#include <vector>

#include "g2spectral/killing.hpp"
#include "g2spectral/spectral.hpp"
#include "g2spectral/types.hpp"

namespace g2spectral {

// Per-fiber data at a fixed zeta: the twisted symplectic form, the kernel
// line, the six eigenlines with their pairing matrix, and the restricted
// 3-form machinery.
struct FiberData {
  cplx zeta;
  Mat7 A;                      // evaluated (optionally gauged) field
  Mat7 omega;                  // omega(e_a, e_b) = g(A e_a, e_b)
  cplx a1 = 0.0, a2 = 0.0;     // local characteristic values
  Vec7 v0 = Vec7::Zero();      // calibrated psi(omega^3)
  double v0_kernel_residual = 0.0;   // |A v0| / |v0|
  double v0_norm_residual = 0.0;     // |g(v0,v0) + a2| / |a2|
  bool kernel_degenerate = false;    // a2 ~ 0 at this fiber

  std::array<cplx, 6> mu{};          // eigenvalues, partner-paired (i, i+3)
  std::array<Vec7, 6> eigvec{};      // unit eigenvectors
  Mat6 pairing = Mat6::Zero();       // P_ab = omega(w_a, w_b)
  double pairing_offdiag = 0.0;      // |P| off the mu <-> -mu support
  double pairing_partner_min = 0.0;  // min |P| on the support
  double mu_negation_residual = 0.0; // multiset closure under negation
  double mu_triple_residual = 0.0;   // |mu_0 + mu_1 + mu_2|
};

// Stage 1: omega (and the local a1, a2). The optional conjugator replaces
// A(zeta) by G^-1 A(zeta) G; the metric stays the assoc-form one.
FiberData omega_fiber(const KillingField& A, cplx zeta,
                      const Mat7* z_gauge = nullptr);

// Stage 2: kernel vector; throws nothing, flags degeneracy when a2 ~ 0.
void kernel_v0(FiberData& F);

// Stage 3: eigenlines and the sigma-pairing; throws branch_proximity when
// the eigenvalues cluster.
void eigenline_fiber(FiberData& F, double cluster_tol = 1e-5);

// Calibration constant c in v0 = c psi(omega^3), fixed once per process from
// a reference fiber of the k=0 self-test field.
cplx v0_calibration();

struct AlphaChecks {
  Mat6 K;                      // on the g-orthonormal frame of v0-perp
  cplx s_frame = 0.0;          // trace(K^2)/6 in that frame
  cplx s_twisted = 0.0;        // s_frame * det(omega|E); the a2-proportional one
  cplx sqrt_s = 0.0;
  double commutator_residual = 0.0;   // |[K, A|E]| / |A|E|
  int n_plus = 0, n_minus = 0;        // eigenline membership counts
  double membership_residual = 0.0;
  double lagrangian_residual = 0.0;   // intra-side pairings
  double triple_sum_residual = 0.0;   // E+ eigenvalues sum to 0
  double alpha_eplus_mag = 0.0;       // |alpha'(u1,u2,u3)| on a unitary E+ frame
  double k_squared_residual = 0.0;    // |K^2 - s I|
};
AlphaChecks alpha_restricted_checks(const FiberData& F, double tol = 1e-6);

struct DivisibilityReport {
  cplx ratio_mean = 0.0;   // s_twisted / a2
  double spread = 0.0;     // max relative deviation across samples
  int samples = 0;
};
DivisibilityReport s_divisibility(const KillingField& A, int nsamples = 12);

struct VanishingFit {
  double order = 0.0;        // slope of log|alpha restricted to E+| vs log|sqrt(b2)|
  double fit_residual = 0.0; // rms deviation from the line
  bool conclusive = false;
  double s_near = 0.0;       // |s_twisted| at distance ~1e-3 from the root
  double k_nilpotency = 0.0; // |K^2|/|K|^2 at the closest fiber
  double alpha_norm = 0.0;   // |alpha| there (nonzero in the s=0 orbit)
};
VanishingFit vanishing_order_at_D(const KillingField& A, cplx lambda0);

// Eigenline symmetry residuals (tau, rho, determinant constraint) at sample
// fibers; operator-level content of the eigenline-bundle symmetries.
struct EigenlineSymmetry {
  double tau_residual = 0.0;  // C.(line at zeta) vs line at eps zeta
  double rho_residual = 0.0;  // conj line vs line at 1/conj(zeta)
  double det_residual = 0.0;  // product of the six mu vs -a2
};
EigenlineSymmetry eigenline_symmetries(const KillingField& A, cplx zeta);

}  // namespace g2spectral
