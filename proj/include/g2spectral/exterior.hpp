#pragma once

#include <vector>

#include "g2spectral/types.hpp"

namespace g2spectral {

// Dense alternating k-form on C^n (n <= 7), coefficients stored on
// lexicographically ordered index combinations.
class AltForm {
public:
  AltForm() = default;
  AltForm(int n, int k);

  int n() const { return n_; }
  int degree() const { return k_; }
  int terms() const { return int(c_.size()); }

  cplx& coeff(int combo_index) { return c_[combo_index]; }
  const cplx& coeff(int combo_index) const { return c_[combo_index]; }

  // Component with arbitrary index order (0-based), permutation sign applied.
  cplx component(const std::vector<int>& idx) const;
  void set_component(const std::vector<int>& idx, cplx value);

  // alpha(v1, ..., vk) for k vectors given as columns.
  cplx eval(const MatX& vectors) const;

  AltForm operator+(const AltForm& o) const;
  AltForm operator-(const AltForm& o) const;
  AltForm operator*(cplx t) const;

  double max_abs() const;

  static AltForm wedge(const AltForm& a, const AltForm& b);
  static AltForm contract(const VecX& v, const AltForm& a);  // v . alpha

  // Pullback along a linear map: (M* alpha)(x1..xk) = alpha(M x1, .., M xk).
  static AltForm pullback(const AltForm& a, const MatX& M);

  // Combination table for (n, k).
  static const std::vector<std::vector<int>>& combos(int n, int k);
  static int combo_rank(int n, const std::vector<int>& sorted_idx);

private:
  int n_ = 0, k_ = 0;
  std::vector<cplx> c_;
};

}  // namespace g2spectral
