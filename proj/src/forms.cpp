#include "g2spectral/forms.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <mutex>

#include "g2spectral/octonion.hpp"

namespace g2spectral {

const ThreeForm7& assoc_form3() {
  static const ThreeForm7 alpha = [] {
    ThreeForm7 a;
    for (const auto& t : kFanoTriples)
      a.form.set_component({t[0] - 1, t[1] - 1, t[2] - 1}, 1.0);
    return a;
  }();
  return alpha;
}

cplx q_form(const ThreeForm7& alpha, const Vec7& v, const Vec7& w) {
  const AltForm va = AltForm::contract(v, alpha.form);
  const AltForm wa = AltForm::contract(w, alpha.form);
  const AltForm top = AltForm::wedge(AltForm::wedge(va, wa), alpha.form);
  return cplx(-1.0 / 6.0) * top.coeff(0);
}

Mat7 q_matrix(const ThreeForm7& alpha) {
  Mat7 Q;
  std::array<AltForm, 7> contr;
  for (int a = 0; a < 7; ++a) {
    Vec7 e = Vec7::Zero();
    e[a] = 1.0;
    contr[a] = AltForm::contract(e, alpha.form);
  }
  for (int a = 0; a < 7; ++a)
    for (int b = a; b < 7; ++b) {
      const cplx q =
          cplx(-1.0 / 6.0) *
          AltForm::wedge(AltForm::wedge(contr[a], contr[b]), alpha.form).coeff(0);
      Q(a, b) = q;
      Q(b, a) = q;
    }
  return Q;
}

namespace {

cplx principal_cbrt(cplx z) {
  if (z == cplx(0.0)) return 0.0;
  return std::pow(z, cplx(1.0 / 3.0));
}

}  // namespace

cplx kappa_invariant(const ThreeForm7& alpha) {
  return principal_cbrt(q_matrix(alpha).determinant());
}

MetricTensor metric_from_form(const ThreeForm7& alpha) {
  const Mat7 Q = q_matrix(alpha);
  const cplx detq = Q.determinant();
  const double scale = std::max(1.0, alpha.form.max_abs());
  if (std::abs(detq) < 1e-12 * std::pow(scale, 21))
    throw Error(ErrorKind::degenerate_orbit, "metric_from_form: kappa = 0", std::abs(detq));
  const cplx kappa = principal_cbrt(detq);
  const cplx root = principal_cbrt(kappa);
  MetricTensor g;
  g.matrix = Q / root;
  const double arg = std::arg(kappa);
  g.kappa_root_choice = arg > M_PI / 3.0 ? 1 : (arg <= -M_PI / 3.0 ? 2 : 0);
  return g;
}

Vec7 psi_dual(const AltForm& beta6) {
  Vec7 v;
  for (int i = 0; i < 7; ++i) {
    std::vector<int> comp;
    for (int j = 0; j < 7; ++j)
      if (j != i) comp.push_back(j);
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    v[i] = sign * beta6.component(comp);
  }
  return v;
}

KOperator k_alpha(const ThreeForm6& alpha) {
  KOperator K;
  for (int i = 0; i < 6; ++i) {
    Vec6 ei = Vec6::Zero();
    ei[i] = 1.0;
    const AltForm five = AltForm::wedge(AltForm::contract(ei, alpha.form), alpha.form);
    // u . vol6 = five  =>  u_j = (-1)^j * five[complement(j)]
    for (int j = 0; j < 6; ++j) {
      std::vector<int> comp;
      for (int q = 0; q < 6; ++q)
        if (q != j) comp.push_back(q);
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      K.matrix(j, i) = sign * five.component(comp);
    }
  }
  K.s_value = (K.matrix * K.matrix).trace() / 6.0;
  return K;
}

std::pair<std::array<Vec6, 3>, std::array<Vec6, 3>> plus_minus_split(const KOperator& K) {
  const double scale = std::max(1.0, K.matrix.cwiseAbs().maxCoeff());
  if (std::abs(K.s_value) < 1e-12 * scale * scale)
    throw Error(ErrorKind::split_degenerate, "plus_minus_split: s = 0",
                std::abs(K.s_value));
  const cplx r = std::sqrt(K.s_value);
  auto eigenspace = [&](cplx ev) {
    Mat6 M = K.matrix - ev * Mat6::Identity();
    Eigen::JacobiSVD<Mat6> svd(M, Eigen::ComputeFullV);
    std::array<Vec6, 3> basis;
    for (int i = 0; i < 3; ++i) basis[i] = svd.matrixV().col(5 - i);
    return basis;
  };
  return {eigenspace(r), eigenspace(-r)};
}

ThreeForm7 normal_form_candidate(int which) {
  ThreeForm7 a;
  auto add = [&](int i, int j, int l, double s) {
    a.form.set_component({i - 1, j - 1, l - 1}, a.form.component({i - 1, j - 1, l - 1}) + s);
  };
  // (t1^t2 - t3^t4)^t5 + (t1^t3 - t4^t2)^t6 + (t1^t4 - t2^t3)^t7 + last term
  add(1, 2, 5, 1); add(3, 4, 5, -1);
  add(1, 3, 6, 1); add(4, 2, 6, -1);
  add(1, 4, 7, 1); add(2, 3, 7, -1);
  if (which == 0) add(4, 6, 7, 1);
  else add(5, 6, 7, 1);
  return a;
}

namespace {

int select_normal_form() {
  int found = -1;
  for (int which = 0; which < 2; ++which) {
    try {
      const MetricTensor g = metric_from_form(normal_form_candidate(which));
      if ((g.matrix - Mat7::Identity()).cwiseAbs().maxCoeff() < 1e-9) {
        if (found >= 0)
          throw Error(ErrorKind::degenerate_input,
                      "both normal-form variants give the Euclidean metric");
        found = which;
      }
    } catch (const Error&) {
      // candidate outside the open orbit; skip
    }
  }
  if (found < 0)
    throw Error(ErrorKind::degenerate_input,
                "no normal-form variant gives the Euclidean metric");
  return found;
}

}  // namespace

int g2_normal_form_choice() {
  static const int choice = select_normal_form();
  return choice;
}

const ThreeForm7& g2_normal_form() {
  static const ThreeForm7 nf = normal_form_candidate(g2_normal_form_choice());
  return nf;
}

ThreeForm6 normal_form_6_generic() {
  ThreeForm6 a;
  a.form.set_component({0, 1, 2}, 1.0);
  a.form.set_component({3, 4, 5}, 1.0);
  return a;
}

ThreeForm6 normal_form_6_degenerate() {
  ThreeForm6 a;
  a.form.set_component({0, 4, 5}, 1.0);
  a.form.set_component({1, 5, 3}, 1.0);
  a.form.set_component({2, 3, 4}, 1.0);
  return a;
}

}  // namespace g2spectral
