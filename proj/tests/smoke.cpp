// Scratch smoke run for the algebra kernel; superseded by the doctest suites.
#include <cstdio>

#include "g2spectral/forms.hpp"
#include "g2spectral/g2algebra.hpp"
#include "g2spectral/killing.hpp"
#include "g2spectral/octonion.hpp"
#include "g2spectral/spectral.hpp"

using namespace g2spectral;

int main() {
  const auto& g = g2_structure();
  std::printf("g2 dim = %zu\n", g.basis.size());
  std::printf("graded dims =");
  for (int j = 0; j < 6; ++j) std::printf(" %d", g.graded_dims[j]);
  std::printf("\ntorus dim = %zu\n", g.torus.size());

  double worstL = 0, worstA = 0;
  for (const auto& B : g.basis) {
    worstL = std::max(worstL, leibniz_residual(B.cast<cplx>()));
    worstA = std::max(worstA, alpha_annihilation_residual(B.cast<cplx>()));
  }
  std::printf("max leibniz residual = %.3e, alpha-annihilation = %.3e\n", worstL, worstA);

  const Mat7 Q = q_matrix(assoc_form3());
  std::printf("q(assoc) - I max = %.3e\n",
              (Q - Mat7::Identity()).cwiseAbs().maxCoeff());
  std::printf("normal form choice = %d\n", g2_normal_form_choice());
  const MetricTensor mt = metric_from_form(g2_normal_form());
  std::printf("metric(normal) - I = %.3e\n",
              (mt.matrix - Mat7::Identity()).cwiseAbs().maxCoeff());

  const KOperator K = k_alpha(normal_form_6_generic());
  std::printf("K normal form s = (%.3f, %.3f)\n", K.s_value.real(), K.s_value.imag());
  const KOperator K0 = k_alpha(normal_form_6_degenerate());
  std::printf("K degenerate s = %.3e, |K| = %.3f\n", std::abs(K0.s_value),
              K0.matrix.norm());

  KillingField A = random_killing_field(0, 5);
  auto rep = symmetry_residuals(A, default_sample_zetas(8));
  std::printf("field k=0: rho=%.2e tau=%.2e graded=%.2e reality=%.2e member=%.2e\n",
              rep.rho_residual, rep.tau_residual, rep.graded_residual,
              rep.reality_residual, rep.membership_residual);

  const CharCoefficients cc = char_coefficients(A);
  std::printf("char: even_abs=%.2e a1sq_rel=%.2e fit=%.2e a1 window [%d,%d] a2 [%d,%d]\n",
              cc.even_residual_abs, cc.a1sq_residual_rel, cc.fit_residual, cc.a1.lo,
              cc.a1.hi(), cc.a2.lo, cc.a2.hi());
  // print a1, a2 support mass off 6Z
  double off = 0;
  for (int m = cc.a2.lo; m <= cc.a2.hi(); ++m)
    if (m % 6 != 0) off = std::max(off, std::abs(cc.a2.at(m)));
  std::printf("a2 off-6Z mass = %.2e (scale %.2e)\n", off, cc.a2.max_abs());

  const SpectralCoefficients S = to_lambda(cc.a1, cc.a2, A.k);
  std::printf("b1 [%d,%d] b2 [%d,%d] reality=%.2e admissible=%d\n", S.b1.lo, S.b1.hi(),
              S.b2.lo, S.b2.hi(), S.reality_residual, int(S.admissible));

  const RamificationProfile P = discriminant_profile(S);
  std::printf("type_a=%zu type_b=%zu interior=%d boundary=%d generic=%d\n",
              P.type_a.size(), P.type_b.size(), P.interior_count, P.boundary_contrib,
              int(P.generic));
  const GenusReport R = genus_report(S, P);
  std::printf("g_sigma=%d (closed %d) ram=%d g_c1=%d g_c2=%d tur=%d moduli=%d\n",
              R.g_sigma_counted, R.g_sigma, R.ram_deg_counted, R.g_c1_counted,
              R.g_c2_counted, R.tur_dim_counted, R.moduli_dim);
  std::printf("hat: ram_counted=%d (printed %d) g_counted=%d quotient=%d (printed %d)\n",
              R.ram_deg_hat_counted, R.ram_deg_hat, R.g_sigma_hat_counted,
              R.g_sigma_hat_quotient, R.g_sigma_hat);
  const SmoothnessResult sm = smoothness_check(S);
  std::printf("smooth=%d degenerate=%d\n", int(sm.smooth), int(sm.degenerate));
  return 0;
}
