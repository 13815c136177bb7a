#pragma once

#include <vector>

#include "g2spectral/killing.hpp"
#include "g2spectral/spectral.hpp"
#include "g2spectral/types.hpp"

namespace g2spectral {

// Coefficient-level right-hand side of dA = [A, phi] with
// phi = v (A_{d-1} + A_d zeta) + conj(v) (A_{1-d} + A_{-d} / zeta),
// collected by zeta power. flip_m1 negates the zeta^{-1} bracket term; that
// breaks the Laurent-product structure and serves as the non-conservative
// control.
KillingField lax_rhs(const KillingField& A, cplx direction, bool flip_m1 = false);

struct FlowState {
  double t = 0.0;
  cplx direction;
  KillingField field;
  double drift = 0.0;  // running max of relative (b1, b2) change
};

// Adaptive Dormand-Prince integration of the coefficient ODE; snapshots on a
// uniform grid including both endpoints. No re-projection onto the twisted
// algebra: symmetry defects are observed, not repaired.
std::vector<FlowState> integrate_flow(const KillingField& A0, cplx direction,
                                      double t_end, double tol, int snapshots = 11,
                                      bool flip_m1 = false);

struct DriftReport {
  std::vector<double> drift_series;  // per snapshot, running max
  double max_drift = 0.0;            // relative, over b1 and b2 jointly
  double max_symmetry_residual = 0.0;
  double max_trace_invariant_drift = 0.0;  // tr A(z)^{2m}, m = 1..3
};
DriftReport isospectral_drift(std::vector<FlowState>& states);

}  // namespace g2spectral
