#include "g2spectral/octonion.hpp"

#include <cmath>

namespace g2spectral {

namespace {

struct MulTable {
  // sign[a][b], index[a][b] for a,b in 0..7 (0 = scalar unit)
  int sign[8][8];
  int index[8][8];

  MulTable() {
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        if (a == 0) { sign[a][b] = 1; index[a][b] = b; }
        else if (b == 0) { sign[a][b] = 1; index[a][b] = a; }
        else if (a == b) { sign[a][b] = -1; index[a][b] = 0; }
        else { sign[a][b] = 0; index[a][b] = -1; }
      }
    for (const auto& t : kFanoTriples) {
      const int a = t[0], b = t[1], c = t[2];
      set(a, b, 1, c); set(b, c, 1, a); set(c, a, 1, b);
      set(b, a, -1, c); set(c, b, -1, a); set(a, c, -1, b);
    }
  }

  void set(int a, int b, int s, int c) { sign[a][b] = s; index[a][b] = c; }
};

const MulTable& table() {
  static const MulTable t;
  return t;
}

}  // namespace

Octonion Octonion::unit(int i) {
  Octonion o;
  if (i == 0) o.re = 1.0;
  else o.im[i - 1] = 1.0;
  return o;
}

double Octonion::norm() const { return std::sqrt(re * re + im.squaredNorm()); }

Octonion operator+(const Octonion& a, const Octonion& b) { return {a.re + b.re, a.im + b.im}; }
Octonion operator-(const Octonion& a, const Octonion& b) { return {a.re - b.re, a.im - b.im}; }
Octonion operator*(double t, const Octonion& a) { return {t * a.re, t * a.im}; }

BasisProduct mul_unit(int a, int b) {
  const MulTable& t = table();
  return {t.sign[a][b], t.index[a][b]};
}

Octonion oct_mul(const Octonion& x, const Octonion& y) {
  const MulTable& t = table();
  double out[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  double xc[8], yc[8];
  xc[0] = x.re; yc[0] = y.re;
  for (int i = 0; i < 7; ++i) { xc[i + 1] = x.im[i]; yc[i + 1] = y.im[i]; }
  for (int a = 0; a < 8; ++a) {
    if (xc[a] == 0.0) continue;
    for (int b = 0; b < 8; ++b) {
      if (yc[b] == 0.0) continue;
      out[t.index[a][b]] += t.sign[a][b] * xc[a] * yc[b];
    }
  }
  Octonion r;
  r.re = out[0];
  for (int i = 0; i < 7; ++i) r.im[i] = out[i + 1];
  return r;
}

std::pair<cplx, Vec7> oct_mul_complex(const Vec7& x, const Vec7& y) {
  const MulTable& t = table();
  cplx scalar = 0.0;
  Vec7 imag = Vec7::Zero();
  for (int a = 1; a <= 7; ++a) {
    for (int b = 1; b <= 7; ++b) {
      const cplx prod = x[a - 1] * y[b - 1];
      const int idx = t.index[a][b];
      if (idx == 0) scalar += double(t.sign[a][b]) * prod;
      else imag[idx - 1] += double(t.sign[a][b]) * prod;
    }
  }
  return {scalar, imag};
}

namespace {

Vec7r mul_im(const Vec7r& x, const Vec7r& y) {
  Octonion r = oct_mul(Octonion::imaginary(x), Octonion::imaginary(y));
  return r.im;
}

}  // namespace

double OctonionFrame::relation_residual() const {
  const Vec7r f1 = columns.col(0), f2 = columns.col(1), f3 = columns.col(2),
              f4 = columns.col(3), f5 = columns.col(4), f6 = columns.col(5),
              f7 = columns.col(6);
  double r = 0.0;
  r = std::max(r, (mul_im(f1, f2) - f3).norm());
  r = std::max(r, (mul_im(f1, f4) - f5).norm());
  r = std::max(r, (mul_im(f2, f4) - f6).norm());
  r = std::max(r, (mul_im(f3, f4) - f7).norm());
  return r;
}

double OctonionFrame::orthonormality_residual() const {
  return (columns.transpose() * columns - Mat7r::Identity()).cwiseAbs().maxCoeff();
}

OctonionFrame frame_complete(const Vec7r& f1, const Vec7r& f2, const Vec7r& f4,
                             double tol) {
  auto reject = [](const char* what, double v) {
    throw Error(ErrorKind::precondition,
                std::string("frame_complete: ") + what + " = " + std::to_string(v), v);
  };
  if (std::abs(f1.norm() - 1.0) > tol) reject("|f1|-1", f1.norm() - 1.0);
  if (std::abs(f2.norm() - 1.0) > tol) reject("|f2|-1", f2.norm() - 1.0);
  if (std::abs(f4.norm() - 1.0) > tol) reject("|f4|-1", f4.norm() - 1.0);
  if (std::abs(f1.dot(f2)) > tol) reject("<f1,f2>", f1.dot(f2));
  const Vec7r f3 = mul_im(f1, f2);
  if (std::abs(f4.dot(f1)) > tol) reject("<f4,f1>", f4.dot(f1));
  if (std::abs(f4.dot(f2)) > tol) reject("<f4,f2>", f4.dot(f2));
  if (std::abs(f4.dot(f3)) > tol) reject("<f4,f1*f2>", f4.dot(f3));

  OctonionFrame fr;
  fr.columns.col(0) = f1;
  fr.columns.col(1) = f2;
  fr.columns.col(2) = f3;
  fr.columns.col(3) = f4;
  fr.columns.col(4) = mul_im(f1, f4);
  fr.columns.col(5) = mul_im(f2, f4);
  fr.columns.col(6) = mul_im(f3, f4);
  return fr;
}

}  // namespace g2spectral
