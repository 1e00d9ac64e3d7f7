#include "chainlets/multivector.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace chainlets {

MultiIndex::MultiIndex(std::vector<int> indices) : idx_(std::move(indices)) {
  for (size_t i = 0; i < idx_.size(); ++i) {
    if (idx_[i] < 1) throw std::invalid_argument("MultiIndex: indices are 1-based");
    if (i > 0 && idx_[i] <= idx_[i - 1])
      throw std::invalid_argument("MultiIndex: indices must be strictly increasing");
  }
}

bool MultiIndex::contains(int i) const {
  return std::binary_search(idx_.begin(), idx_.end(), i);
}

MultiIndex MultiIndex::complement(int n) const {
  std::vector<int> c;
  c.reserve(static_cast<size_t>(n) - idx_.size());
  for (int i = 1; i <= n; ++i)
    if (!contains(i)) c.push_back(i);
  return MultiIndex(std::move(c));
}

int MultiIndex::complement_sign(int n) const {
  // Inversions between I and I^c in the concatenation (I, I^c).
  long inv = 0;
  for (int i : idx_) {
    // count complement entries smaller than i: i-1 minus the I-entries < i
    long below = i - 1;
    long in_i_below = static_cast<long>(
        std::lower_bound(idx_.begin(), idx_.end(), i) - idx_.begin());
    inv += below - in_i_below;
  }
  (void)n;
  return inv % 2 == 0 ? 1 : -1;
}

MultiIndex MultiIndex::erase_at(int pos) const {
  std::vector<int> v = idx_;
  v.erase(v.begin() + pos);
  return MultiIndex(std::move(v));
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < idx_.size(); ++i) {
    if (i) os << ',';
    os << idx_[i];
  }
  os << '}';
  return os.str();
}

int merge_sign(const MultiIndex& a, const MultiIndex& b) {
  const auto& A = a.indices();
  const auto& B = b.indices();
  long inv = 0;
  for (int x : B) {
    if (std::binary_search(A.begin(), A.end(), x)) return 0;
    auto it = std::upper_bound(A.begin(), A.end(), x);
    inv += static_cast<long>(A.end() - it);
  }
  return inv % 2 == 0 ? 1 : -1;
}

std::optional<MultiIndex> merge_disjoint(const MultiIndex& a, const MultiIndex& b) {
  std::vector<int> m;
  m.reserve(a.indices().size() + b.indices().size());
  std::merge(a.indices().begin(), a.indices().end(), b.indices().begin(),
             b.indices().end(), std::back_inserter(m));
  for (size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1]) return std::nullopt;
  return MultiIndex(std::move(m));
}

KVector::KVector(int n, int k) : n_(n), k_(k) {
  // k > n is allowed as a shape; such a multivector is necessarily zero.
  if (n < 0 || k < 0) throw std::invalid_argument("KVector: negative shape");
}

KVector KVector::basis(int n, const MultiIndex& mi, Scalar coeff) {
  KVector v(n, mi.grade());
  if (mi.max_index() > n) throw std::invalid_argument("KVector: index exceeds n");
  v.add_term(mi, coeff);
  return v;
}

KVector KVector::basis(int n, std::vector<int> indices, Scalar coeff) {
  return basis(n, MultiIndex(std::move(indices)), std::move(coeff));
}

KVector KVector::from_vec(const Vec& v) {
  KVector r(static_cast<int>(v.size()), 1);
  for (int i = 1; i <= static_cast<int>(v.size()); ++i)
    r.add_term(MultiIndex({i}), v[static_cast<size_t>(i - 1)]);
  return r;
}

Scalar KVector::coeff(const MultiIndex& mi) const {
  auto it = coeffs_.find(mi);
  return it == coeffs_.end() ? Scalar() : it->second;
}

void KVector::add_term(const MultiIndex& mi, const Scalar& c) {
  if (c.is_zero()) return;
  if (mi.grade() != k_) throw std::invalid_argument("KVector: grade mismatch");
  auto [it, fresh] = coeffs_.try_emplace(mi, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

KVector KVector::operator-() const {
  KVector r(n_, k_);
  for (const auto& [mi, c] : coeffs_) r.coeffs_.emplace(mi, -c);
  return r;
}

KVector operator+(const KVector& a, const KVector& b) {
  if (a.n_ != b.n_ || a.k_ != b.k_)
    throw std::invalid_argument("KVector: shape mismatch in +");
  KVector r = a;
  for (const auto& [mi, c] : b.coeffs_) r.add_term(mi, c);
  return r;
}

KVector operator-(const KVector& a, const KVector& b) { return a + (-b); }

KVector operator*(const Scalar& c, const KVector& a) {
  KVector r(a.n_, a.k_);
  if (c.is_zero()) return r;
  for (const auto& [mi, x] : a.coeffs_) r.add_term(mi, c * x);
  return r;
}

std::string KVector::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mi, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << "*e" << mi.str();
  }
  return os.str();
}

KVector wedge(const KVector& a, const KVector& b) {
  if (a.n() != b.n()) throw std::invalid_argument("wedge: dimension mismatch");
  KVector r(a.n(), a.grade() + b.grade());
  for (const auto& [mi, c] : a.coeffs()) {
    for (const auto& [mj, d] : b.coeffs()) {
      int s = merge_sign(mi, mj);
      if (s == 0) continue;
      auto merged = merge_disjoint(mi, mj);
      r.add_term(*merged, Scalar(s) * c * d);
    }
  }
  return r;
}

Scalar mass(const KVector& a) {
  Scalar m;
  for (const auto& [mi, c] : a.coeffs()) m += c.abs();
  return m;
}

Scalar gram_det(const std::vector<Vec>& w) {
  const size_t k = w.size();
  std::vector<std::vector<Scalar>> g(k, std::vector<Scalar>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) g[i][j] = vec_dot(w[i], w[j]);
  // Fraction-free-ish Gaussian elimination on Scalars.
  Scalar det(1);
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    while (piv < k && g[piv][col].is_zero()) ++piv;
    if (piv == k) return Scalar();
    if (piv != col) {
      std::swap(g[piv], g[col]);
      det = -det;
    }
    det *= g[col][col];
    for (size_t row = col + 1; row < k; ++row) {
      if (g[row][col].is_zero()) continue;
      Scalar f = g[row][col] / g[col][col];
      for (size_t j = col; j < k; ++j) g[row][j] -= f * g[col][j];
    }
  }
  return det;
}

double gram_mass(const std::vector<Vec>& w) {
  double d = gram_det(w).to_double();
  return d <= 0.0 ? 0.0 : std::sqrt(d);
}

Scalar inner(const KVector& a, const KVector& b) {
  if (a.n() != b.n()) throw std::invalid_argument("inner: dimension mismatch");
  if (a.grade() != b.grade()) throw std::invalid_argument("inner: grade mismatch");
  Scalar s;
  const auto& small = a.coeffs().size() <= b.coeffs().size() ? a : b;
  const auto& big = a.coeffs().size() <= b.coeffs().size() ? b : a;
  for (const auto& [mi, c] : small.coeffs()) s += c * big.coeff(mi);
  return s;
}

KVector perp(const KVector& a) {
  KVector r(a.n(), a.n() - a.grade());
  for (const auto& [mi, c] : a.coeffs())
    r.add_term(mi.complement(a.n()), Scalar(mi.complement_sign(a.n())) * c);
  return r;
}

KVector contract_left(const KVector& b, const KVector& a) {
  if (a.n() != b.n()) throw std::invalid_argument("contract: dimension mismatch");
  KVector r(a.n(), std::max(a.grade() - b.grade(), 0));
  if (b.grade() > a.grade()) return r;
  for (const auto& [mj, d] : b.coeffs()) {
    for (const auto& [mi, c] : a.coeffs()) {
      // e_J lowered into e_I: nonzero only when J subset of I.
      std::vector<int> rest;
      rest.reserve(mi.indices().size());
      bool subset = true;
      {
        auto jt = mj.indices().begin();
        for (int x : mi.indices()) {
          if (jt != mj.indices().end() && *jt == x) {
            ++jt;
          } else {
            rest.push_back(x);
          }
        }
        subset = (jt == mj.indices().end());
      }
      if (!subset) continue;
      MultiIndex mr(std::move(rest));
      int s = merge_sign(mj, mr);
      r.add_term(mr, Scalar(s) * c * d);
    }
  }
  return r;
}

KVector slant(const KVector& a, const KVector& b) {
  if (b.is_zero()) throw std::domain_error("slant: division by the zero multivector");
  if (b.grade() > a.grade())
    throw std::invalid_argument("slant: grade of divisor exceeds grade of dividend");
  Scalar m2 = mass(b) * mass(b);
  KVector c = contract_left(b, a);
  KVector r(c.n(), c.grade());
  for (const auto& [mi, x] : c.coeffs()) r.add_term(mi, x / m2);
  return r;
}

KVector cross(const KVector& a, const KVector& b) { return perp(wedge(a, b)); }

KVector intersect(const KVector& a, const KVector& b) {
  if (a.grade() + b.grade() < a.n())
    throw std::invalid_argument("intersect: requires k1 + k2 >= n");
  return perp(wedge(perp(a), perp(b)));
}

KVector project(const KVector& b, const KVector& a) {
  if (a.grade() > b.grade())
    throw std::invalid_argument("project: grade of argument exceeds grade of target");
  return intersect(perp(intersect(perp(a), b)), b);
}

KVector unit_volume(int n) {
  std::vector<int> all(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) all[static_cast<size_t>(i - 1)] = i;
  return KVector::basis(n, MultiIndex(std::move(all)));
}

}  // namespace chainlets
