#include "g2spectral/g2algebra.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "g2spectral/forms.hpp"
#include "g2spectral/octonion.hpp"

namespace g2spectral {

cplx grading_epsilon() { return std::polar(1.0, M_PI / 3.0); }

const Mat7r& tau_matrix() {
  static const Mat7r C = [] {
    Mat7r m = Mat7r::Zero();
    m(0, 0) = 1.0;
    const double angles[3] = {M_PI / 3.0, 2.0 * M_PI / 3.0, M_PI};
    for (int b = 0; b < 3; ++b) {
      const int i = 1 + 2 * b;
      const double c = std::cos(angles[b]), s = std::sin(angles[b]);
      m(i, i) = c;
      m(i, i + 1) = -s;
      m(i + 1, i) = s;
      m(i + 1, i + 1) = c;
    }
    return m;
  }();
  return C;
}

Mat7 tau(const Mat7& M) {
  const Mat7r& C = tau_matrix();
  return C * M * C.transpose();
}

Mat7 tau_pow(const Mat7& M, int m) {
  Mat7 r = M;
  for (int i = 0; i < ((m % 6) + 6) % 6; ++i) r = tau(r);
  return r;
}

Mat7 GradedComponents::sum() const {
  Mat7 s = Mat7::Zero();
  for (const auto& p : parts) s += p;
  return s;
}

double leibniz_residual(const Mat7& D) {
  double worst = 0.0;
  for (int a = 1; a <= 7; ++a)
    for (int b = a + 1; b <= 7; ++b) {
      const BasisProduct p = mul_unit(a, b);
      // lhs = D(e_a e_b); products of distinct units are purely imaginary
      Vec7 lhs = double(p.sign) * D.col(p.index - 1);
      auto [s1, v1] = oct_mul_complex(D.col(a - 1), Vec7::Unit(b - 1));
      auto [s2, v2] = oct_mul_complex(Vec7::Unit(a - 1), D.col(b - 1));
      const Vec7 rhs = v1 + v2;
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      worst = std::max(worst, std::abs(s1 + s2));
    }
  return worst;
}

double alpha_annihilation_residual(const Mat7& D) {
  const ThreeForm7& alpha = assoc_form3();
  double worst = 0.0;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      for (int c = b + 1; c < 7; ++c) {
        cplx total = 0.0;
        for (int p = 0; p < 7; ++p) {
          total += D(p, a) * alpha(p, b, c);
          total += D(p, b) * alpha(a, p, c);
          total += D(p, c) * alpha(a, b, p);
        }
        worst = std::max(worst, std::abs(total));
      }
  return worst;
}

namespace {

// so(7) coordinates: pairs (p, q), p < q, M = sum x_pq (E_q p - E_p q).
std::vector<std::pair<int, int>> so7_pairs() {
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < 7; ++p)
    for (int q = p + 1; q < 7; ++q) pairs.emplace_back(p, q);
  return pairs;
}

Mat7r so7_from_coords(const Eigen::VectorXd& x) {
  static const auto pairs = so7_pairs();
  Mat7r M = Mat7r::Zero();
  for (size_t i = 0; i < pairs.size(); ++i) {
    M(pairs[i].second, pairs[i].first) = x[i];
    M(pairs[i].first, pairs[i].second) = -x[i];
  }
  return M;
}

// Rows: octonion Leibniz defect per basis pair and output coordinate;
// columns: the 21 so(7) coordinates.
MatXr leibniz_system() {
  static const auto pairs = so7_pairs();
  MatXr S(21 * 7, 21);
  for (size_t col = 0; col < pairs.size(); ++col) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(21);
    x[col] = 1.0;
    const Mat7r D = so7_from_coords(x);
    int row = 0;
    for (int a = 1; a <= 7; ++a)
      for (int b = a + 1; b <= 7; ++b) {
        const BasisProduct p = mul_unit(a, b);
        Vec7r defect = double(p.sign) * D.col(p.index - 1);
        Octonion r1 = oct_mul(Octonion::imaginary(D.col(a - 1)),
                              Octonion::unit(b));
        Octonion r2 = oct_mul(Octonion::unit(a),
                              Octonion::imaginary(D.col(b - 1)));
        defect -= r1.im + r2.im;
        for (int c = 0; c < 7; ++c) S(row * 7 + c, col) = defect[c];
        ++row;
      }
  }
  return S;
}

void canonical_sign(Mat7r& M) {
  for (int q = 0; q < 7; ++q)
    for (int p = 0; p < 7; ++p)
      if (std::abs(M(p, q)) > 1e-7) {
        if (M(p, q) < 0) M = -M;
        return;
      }
}

void canonical_sign_cplx(Mat7& M) {
  for (int q = 0; q < 7; ++q)
    for (int p = 0; p < 7; ++p)
      if (std::abs(M(p, q)) > 1e-7) {
        M *= std::polar(1.0, -std::arg(M(p, q)));
        return;
      }
}

G2Structure build_g2_structure() {
  G2Structure g;

  // Null space of the Leibniz system = derivations of the octonions.
  const MatXr S = leibniz_system();
  Eigen::JacobiSVD<MatXr> svd(S, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-8 * sv[0]) ++rank;
  const int dim = 21 - rank;
  if (dim != 14)
    throw Error(ErrorKind::numerical_rank,
                "Leibniz system rank off (tolerance needs revisiting), null dim = " +
                    std::to_string(dim),
                double(dim));
  for (int i = 0; i < dim; ++i) {
    // columns of V are orthonormal; so(7) coords scale the trace form by 2
    Mat7r M = so7_from_coords(svd.matrixV().col(21 - 1 - i)) / std::sqrt(2.0);
    canonical_sign(M);
    g.basis.push_back(M);
  }

  // Graded pieces via the averaging projector applied to the basis.
  for (int j = 0; j < 6; ++j) {
    MatX stack(49, 14);
    for (int i = 0; i < 14; ++i) {
      Mat7 P = Mat7::Zero();
      Mat7 Tm = g.basis[i].cast<cplx>();
      for (int m = 0; m < 6; ++m) {
        P += std::polar(1.0, -M_PI / 3.0 * (j * m)) * Tm;
        Tm = tau(Tm);
      }
      P /= 6.0;
      stack.col(i) = Eigen::Map<VecX>(P.data(), 49);
    }
    Eigen::JacobiSVD<MatX> gsvd(stack, Eigen::ComputeFullU);
    const auto& gsv = gsvd.singularValues();
    int gdim = 0;
    for (int i = 0; i < gsv.size(); ++i)
      if (gsv[i] > 1e-8 * gsv[0]) ++gdim;
    g.graded_dims[j] = gdim;
    for (int i = 0; i < gdim; ++i) {
      Mat7 B = Eigen::Map<const Mat7>(gsvd.matrixU().col(i).data());
      canonical_sign_cplx(B);
      g.graded[j].push_back(B);
    }
  }

  // Real basis of the tau-fixed part (the torus directions).
  {
    MatXr stack(49, 14);
    for (int i = 0; i < 14; ++i) {
      Mat7 P = Mat7::Zero();
      Mat7 Tm = g.basis[i].cast<cplx>();
      for (int m = 0; m < 6; ++m) {
        P += Tm;
        Tm = tau(Tm);
      }
      P /= 6.0;
      Mat7r Pr = P.real();
      stack.col(i) = Eigen::Map<Eigen::VectorXd>(Pr.data(), 49);
    }
    Eigen::JacobiSVD<MatXr> tsvd(stack, Eigen::ComputeFullU);
    const auto& tsv = tsvd.singularValues();
    for (int i = 0; i < tsv.size() && tsv[i] > 1e-8 * tsv[0]; ++i) {
      Mat7r T = Eigen::Map<const Mat7r>(tsvd.matrixU().col(i).data());
      canonical_sign(T);
      g.torus.push_back(T);
    }
  }

  return g;
}

}  // namespace

const G2Structure& g2_structure() {
  static const G2Structure g = build_g2_structure();
  return g;
}

std::vector<G2AlgebraElement> g2_basis() {
  std::vector<G2AlgebraElement> out;
  for (const auto& M : g2_structure().basis) {
    G2AlgebraElement e;
    e.matrix = M.cast<cplx>();
    e.derivation_residual = leibniz_residual(e.matrix);
    out.push_back(e);
  }
  return out;
}

double g2_membership_residual(const Mat7& M) {
  const auto& basis = g2_structure().basis;
  Mat7 proj = Mat7::Zero();
  for (const auto& B : basis) {
    const Mat7 Bc = B.cast<cplx>();
    proj += (Bc.conjugate().cwiseProduct(M)).sum() * Bc;
  }
  return (M - proj).cwiseAbs().maxCoeff();
}

GradedComponents graded_decompose(const Mat7& M) {
  GradedComponents out;
  out.epsilon = grading_epsilon();
  std::array<Mat7, 6> taus;
  taus[0] = M;
  for (int m = 1; m < 6; ++m) taus[m] = tau(taus[m - 1]);
  for (int j = 0; j < 6; ++j) {
    Mat7 P = Mat7::Zero();
    for (int m = 0; m < 6; ++m) P += std::polar(1.0, -M_PI / 3.0 * (j * m)) * taus[m];
    out.parts[j] = P / 6.0;
  }
  return out;
}

double graded_membership_residual(const Mat7& M, int j) {
  const GradedComponents parts = graded_decompose(M);
  double r = 0.0;
  for (int m = 0; m < 6; ++m)
    if (m != ((j % 6) + 6) % 6) r = std::max(r, parts.parts[m].cwiseAbs().maxCoeff());
  return r;
}

}  // namespace g2spectral
