#pragma once

#include <array>
#include <vector>

#include "g2spectral/types.hpp"

namespace g2spectral {

// epsilon = exp(pi i / 3); g_j is the epsilon^j eigenspace of tau.
cplx grading_epsilon();

// C = diag(1, R_{pi/3}, R_{2pi/3}, R_pi); tau = Ad_C.
const Mat7r& tau_matrix();
Mat7 tau(const Mat7& M);
Mat7 tau_pow(const Mat7& M, int m);

struct G2AlgebraElement {
  Mat7 matrix;
  double derivation_residual = 0.0;
};

struct GradedComponents {
  std::array<Mat7, 6> parts;
  cplx epsilon;

  Mat7 sum() const;
};

// Derivations of the octonion algebra inside so(7): max_{a<b} of the octonion
// Leibniz defect over basis pairs (includes the scalar part).
double leibniz_residual(const Mat7& D);

// Residual of infinitesimal invariance of alpha':
// max |alpha'(Dx,y,z) + alpha'(x,Dy,z) + alpha'(x,y,Dz)| over basis triples.
double alpha_annihilation_residual(const Mat7& D);

// Shared numerical structure of g2: computed once, immutable afterwards.
struct G2Structure {
  std::vector<Mat7r> basis;                     // 14, trace-orthonormal
  std::array<std::vector<Mat7>, 6> graded;      // bases of g_j (complex)
  std::array<int, 6> graded_dims;               // (2,3,2,2,2,3)
  std::vector<Mat7r> torus;                     // real basis of g_0 (dim 2)
};
const G2Structure& g2_structure();

std::vector<G2AlgebraElement> g2_basis();

// Membership residual in the complex span of the g2 basis.
double g2_membership_residual(const Mat7& M);

// M_j = (1/6) sum_m eps^{-jm} tau^m(M).
GradedComponents graded_decompose(const Mat7& M);

// Part of M in g_j, zero elsewhere residual.
double graded_membership_residual(const Mat7& M, int j);

}  // namespace g2spectral
