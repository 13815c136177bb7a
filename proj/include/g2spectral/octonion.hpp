#pragma once

#include <array>

#include "g2spectral/types.hpp"

namespace g2spectral {

// Octonion with real part, coordinates (x0, x1..x7) on basis (1, e1..e7).
struct Octonion {
  double re = 0.0;
  Vec7r im = Vec7r::Zero();

  static Octonion unit(int i);  // i = 0 -> 1, i = 1..7 -> e_i
  static Octonion imaginary(const Vec7r& v) { return Octonion{0.0, v}; }

  double norm() const;
};

Octonion operator+(const Octonion& a, const Octonion& b);
Octonion operator-(const Octonion& a, const Octonion& b);
Octonion operator*(double t, const Octonion& a);

// Oriented basis triples e_a * e_b = e_c; every other product follows from
// antisymmetry and e_i^2 = -1. The table extends the framing relations
// f3 = f1 f2, f5 = f1 f4, f6 = f2 f4, f7 = f3 f4 through doubling over the
// quaternions (e5 = e1 e4, e6 = e2 e4, e7 = e3 e4).
inline constexpr int kFanoTriples[7][3] = {
    {1, 2, 3}, {1, 4, 5}, {2, 4, 6}, {3, 4, 7}, {1, 7, 6}, {2, 5, 7}, {3, 6, 5}};

// Structure constants: e_a e_b = -delta_ab + sum_c mul_sign(a,b,c) e_c,
// indices 1..7; mul_unit(a, b) returns (sign, index) with index 0 for the
// scalar -1 case.
struct BasisProduct {
  int sign;
  int index;  // 0 means scalar part
};
BasisProduct mul_unit(int a, int b);

Octonion oct_mul(const Octonion& x, const Octonion& y);

// Product of imaginary octonions given as complex 7-vectors (bilinear
// extension used by the derivation checks). Returns (scalar part, imaginary
// part).
std::pair<cplx, Vec7> oct_mul_complex(const Vec7& x, const Vec7& y);

// G2 frame: columns f1..f7, orthonormal, satisfying the four product
// relations above.
struct OctonionFrame {
  Mat7r columns;

  Vec7r f(int i) const { return columns.col(i - 1); }
  double relation_residual() const;      // max deviation in the 4 relations
  double orthonormality_residual() const;
};

// Completes (f1, f2, f4) to a full frame. Preconditions: f1, f2 orthonormal,
// f4 unit and orthogonal to span{f1, f2, f1 f2}. Violations beyond tol are
// rejected with the offending inner product in Error::value.
OctonionFrame frame_complete(const Vec7r& f1, const Vec7r& f2, const Vec7r& f4,
                             double tol = 1e-9);

}  // namespace g2spectral
