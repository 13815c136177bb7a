#pragma once

#include <array>

#include "g2spectral/exterior.hpp"
#include "g2spectral/types.hpp"

namespace g2spectral {

// Antisymmetric 3-tensors; thin wrappers around AltForm fixing the dimension.
struct ThreeForm7 {
  AltForm form{7, 3};
  cplx operator()(int a, int b, int c) const { return form.component({a, b, c}); }
};

struct ThreeForm6 {
  AltForm form{6, 3};
  cplx operator()(int a, int b, int c) const { return form.component({a, b, c}); }
};

struct MetricTensor {
  Mat7 matrix;
  int kappa_root_choice = 0;  // which cube root of det(q) was taken, 0..2
};

struct KOperator {
  Mat6 matrix;
  cplx s_value;  // K^2 = s * I
};

// alpha'(x,y,z) = <x y, z> on Im O.
const ThreeForm7& assoc_form3();

// q(v, w) = -1/6 (v . alpha) ^ (w . alpha) ^ alpha, trivialised against the
// basis 7-volume.
cplx q_form(const ThreeForm7& alpha, const Vec7& v, const Vec7& w);
Mat7 q_matrix(const ThreeForm7& alpha);

// kappa = principal cube root of det(q-matrix); 0 exactly when degenerate.
cplx kappa_invariant(const ThreeForm7& alpha);

// g = q / kappa^{1/3}; throws degenerate_orbit when kappa = 0.
MetricTensor metric_from_form(const ThreeForm7& alpha);

// Unique v with v . vol = beta, vol = theta_1^...^theta_7.
Vec7 psi_dual(const AltForm& beta6);

// Hitchin endomorphism v -> (v . alpha) ^ alpha via Lambda^5 E* = E with the
// standard 6-volume; s = trace(K^2)/6.
KOperator k_alpha(const ThreeForm6& alpha);

// Eigenbases of K for +sqrt(s) / -sqrt(s) (principal branch).
std::pair<std::array<Vec6, 3>, std::array<Vec6, 3>> plus_minus_split(const KOperator& K);

// The 7-dimensional normal form whose induced metric is Euclidean. Two
// printed variants differ in the last wedge term; select_normal_form() picks
// the one that actually reproduces the identity metric (checked once at
// startup) and reports which index (0 = literal theta_4 term, 1 = theta_5).
ThreeForm7 normal_form_candidate(int which);
const ThreeForm7& g2_normal_form();
int g2_normal_form_choice();

// s != 0 and s = 0 normal forms on C^6.
ThreeForm6 normal_form_6_generic();     // t123 + t456
ThreeForm6 normal_form_6_degenerate();  // t156 + t264 + t345

}  // namespace g2spectral
