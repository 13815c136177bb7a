#include "g2spectral/exterior.hpp"

#include <algorithm>
#include <map>

namespace g2spectral {

namespace {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Sign of the permutation sorting idx, or 0 on repeated index.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 0; i + 1 < idx.size(); ++i)
    for (size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  for (size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return 0;
  return sign;
}

}  // namespace

const std::vector<std::vector<int>>& AltForm::combos(int n, int k) {
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  if (k == 0) out.push_back({});
  else
    while (true) {
      out.push_back(cur);
      int i = k - 1;
      while (i >= 0 && cur[i] == n - k + i) --i;
      if (i < 0) break;
      ++cur[i];
      for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
  return cache.emplace(key, std::move(out)).first->second;
}

int AltForm::combo_rank(int n, const std::vector<int>& s) {
  // Lexicographic rank of a sorted combination.
  const int k = int(s.size());
  long r = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < s[i]; ++v) r += binom(n - 1 - v, k - 1 - i);
    prev = s[i];
  }
  return int(r);
}

AltForm::AltForm(int n, int k) : n_(n), k_(k), c_(binom(n, k), cplx(0.0)) {}

cplx AltForm::component(const std::vector<int>& idx) const {
  std::vector<int> s = idx;
  const int sign = sort_sign(s);
  if (sign == 0) return 0.0;
  return double(sign) * c_[combo_rank(n_, s)];
}

void AltForm::set_component(const std::vector<int>& idx, cplx value) {
  std::vector<int> s = idx;
  const int sign = sort_sign(s);
  if (sign == 0) {
    if (std::abs(value) != 0.0)
      throw Error(ErrorKind::precondition, "repeated index in alternating component");
    return;
  }
  c_[combo_rank(n_, s)] = double(sign) * value;
}

cplx AltForm::eval(const MatX& vectors) const {
  const auto& cs = combos(n_, k_);
  cplx out = 0.0;
  MatX sub(k_, k_);
  for (size_t ci = 0; ci < cs.size(); ++ci) {
    if (c_[ci] == cplx(0.0)) continue;
    for (int r = 0; r < k_; ++r)
      for (int v = 0; v < k_; ++v) sub(r, v) = vectors(cs[ci][r], v);
    out += c_[ci] * sub.determinant();
  }
  return out;
}

AltForm AltForm::operator+(const AltForm& o) const {
  AltForm r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

AltForm AltForm::operator-(const AltForm& o) const {
  AltForm r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

AltForm AltForm::operator*(cplx t) const {
  AltForm r = *this;
  for (auto& v : r.c_) v *= t;
  return r;
}

double AltForm::max_abs() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

AltForm AltForm::wedge(const AltForm& a, const AltForm& b) {
  AltForm out(a.n_, a.k_ + b.k_);
  const auto& ca = combos(a.n_, a.k_);
  const auto& cb = combos(b.n_, b.k_);
  std::vector<int> merged(a.k_ + b.k_);
  for (size_t i = 0; i < ca.size(); ++i) {
    if (a.c_[i] == cplx(0.0)) continue;
    for (size_t j = 0; j < cb.size(); ++j) {
      if (b.c_[j] == cplx(0.0)) continue;
      std::copy(ca[i].begin(), ca[i].end(), merged.begin());
      std::copy(cb[j].begin(), cb[j].end(), merged.begin() + a.k_);
      std::vector<int> s = merged;
      const int sign = sort_sign(s);
      if (sign == 0) continue;
      out.c_[combo_rank(a.n_, s)] += double(sign) * a.c_[i] * b.c_[j];
    }
  }
  return out;
}

AltForm AltForm::contract(const VecX& v, const AltForm& a) {
  AltForm out(a.n_, a.k_ - 1);
  const auto& ca = combos(a.n_, a.k_);
  for (size_t ci = 0; ci < ca.size(); ++ci) {
    if (a.c_[ci] == cplx(0.0)) continue;
    const auto& s = ca[ci];
    std::vector<int> rest(a.k_ - 1);
    for (int p = 0; p < a.k_; ++p) {
      // v slot p: sign (-1)^p, remaining indices stay sorted
      for (int q = 0, r = 0; q < a.k_; ++q)
        if (q != p) rest[r++] = s[q];
      const double sign = (p % 2 == 0) ? 1.0 : -1.0;
      out.c_[combo_rank(a.n_, rest)] += sign * v[s[p]] * a.c_[ci];
    }
  }
  return out;
}

AltForm AltForm::pullback(const AltForm& a, const MatX& M) {
  AltForm out(a.n_, a.k_);
  const auto& cs = combos(a.n_, a.k_);
  MatX cols(a.n_, a.k_);
  for (size_t ci = 0; ci < cs.size(); ++ci) {
    for (int v = 0; v < a.k_; ++v) cols.col(v) = M.col(cs[ci][v]);
    out.c_[ci] = a.eval(cols);
  }
  return out;
}

}  // namespace g2spectral
