#pragma once

#include <optional>
#include <vector>

#include "g2spectral/killing.hpp"
#include "g2spectral/laurent.hpp"
#include "g2spectral/types.hpp"

namespace g2spectral {

// a1, a2 of det(mu - A(zeta)) = mu (mu^6 - a1 mu^4 + a1^2/4 mu^2 - a2),
// recovered by sampling on the unit circle.
struct CharCoefficients {
  Laurent a1, a2;  // in zeta
  int nsamples = 0;
  double even_residual_abs = 0.0;  // even-power coefficients of det
  double even_residual_rel = 0.0;
  double a1sq_residual_rel = 0.0;  // mu^2 coefficient vs a1^2/4
  double fit_residual = 0.0;
};
CharCoefficients char_coefficients(const KillingField& A, int nsamples = -1,
                                   double tol = 1e-6);

// Characteristic polynomial data of one 7x7 matrix (increasing powers,
// c[7] = 1). Shared by the per-fiber checks.
std::array<cplx, 8> char_poly(const Mat7& M);

struct SpectralCoefficients {
  int k = 0;
  Laurent b1, b2;  // in lambda; supports [-2k,2k] and [-(6k+1),6k+1]
  double reality_residual = 0.0;
  double support_residual = 0.0;  // mass removed off the 6Z lattice
  bool admissible = false;        // extreme b2 coefficients nonzero
};
SpectralCoefficients to_lambda(const Laurent& a1, const Laurent& a2, int k,
                               double tol = 1e-6);
SpectralCoefficients spectral_coefficients(const KillingField& A);

// Extreme b2 coefficients nonzero: total boundary branching.
bool spectral_admissible(const Laurent& b2, int k);

// Value of the curve polynomial F(eta, lambda) = eta^6 - b1 eta^4 +
// (b1^2/4) eta^2 - b2.
cplx curve_value(const SpectralCoefficients& S, cplx eta, cplx lambda);
std::vector<cplx> eta_roots_at(const SpectralCoefficients& S, cplx lambda);

struct BranchPoint {
  cplx lambda;
  int multiplicity = 1;
  bool pattern_ok = false;   // local eigenvalue merger matches
  double pattern_residual = 0.0;
};

struct RamificationProfile {
  std::vector<BranchPoint> type_a;  // b2 = 0, three pair collisions
  std::vector<BranchPoint> type_b;  // b1^3/2 - 27 b2 = 0, two pair collisions
  int boundary_contrib = 0;         // 5+5 when totally branched over 0, inf
  bool boundary_total = false;
  bool generic = false;
  int interior_count = 0;           // sum of (e-1) counted from eta clusters

  int ram_count() const { return interior_count + boundary_contrib; }
};
RamificationProfile discriminant_profile(const SpectralCoefficients& S,
                                         double cluster_radius = 1e-6);

struct GenusReport {
  int k = 0;

  // branch-counted values
  int ram_deg_counted = 0, g_sigma_counted = 0;
  int g_c1_counted = 0, g_c2_counted = 0;
  int ram_deg_hat_counted = 0, g_sigma_hat_counted = 0, g_sigma_hat_quotient = 0;
  int g_c2_hat_counted = 0;
  int tur_dim_counted = 0;
  long eigenline_degree_counted = 0;

  // closed-form values asserted against the counts
  int ram_deg = 0;       // 20(3k+1)
  int g_sigma = 0;       // 5(6k+1)
  int g_c1 = 0;          // 12k+2
  int g_c2 = 0;          // 6k
  int moduli_dim = 0;    // 16k+4, from the rank computation
  int tur_dim = 0;       // 12k+3
  long eigenline_degree = 0;  // -(30(6k+1)+5)

  // printed values whose recount disagrees; carried with flags, never merged
  int ram_deg_hat = 0;        // 60(6k+1)+10
  int g_sigma_hat = 0;        // 30(6k+1)
  int g_c2_hat_printed = 0;   // 36k+10 vs counted 36k+5
  bool c2_hat_genus_flag = true;
  bool sigma_hat_boundary_flag = true;

  bool generic = false;
};
GenusReport genus_report(const SpectralCoefficients& S, const RamificationProfile& P);

// Real dimension of the reality-constrained (b1, b2) space by explicit rank
// computation of the constraint system.
int moduli_dimension_by_rank(int k);
std::pair<int, int> moduli_component_dims(int k);  // (4k+1, 12k+3)

struct SmoothnessResult {
  bool smooth = false;
  bool degenerate = false;  // resultant identically zero
  std::optional<std::pair<cplx, cplx>> witness;  // (eta, lambda)
  double witness_residual = 0.0;
};
SmoothnessResult smoothness_check(const SpectralCoefficients& S, double tol = 1e-6);

// pi1(eta, lambda) = (eta^2, lambda) onto the three-sheeted cubic curve C1,
// pi2(eta, lambda) = (eta (eta^2 - b1/2), lambda) onto the hyperelliptic C2,
// sigma(eta, lambda) = (-eta, lambda) the deck involution of pi1.
struct CoverImages {
  cplx lambda;
  cplx c1_y, c2_z, sigma_eta;
  double curve_residual = 0.0, c1_residual = 0.0, c2_residual = 0.0;
};
CoverImages cover_maps(const SpectralCoefficients& S, cplx eta, cplx lambda,
                       double tol = 1e-6);

}  // namespace g2spectral
