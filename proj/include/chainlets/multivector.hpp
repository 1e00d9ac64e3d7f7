#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chainlets/scalar.hpp"

namespace chainlets {

// Strictly increasing list of 1-based basis indices; the empty list is the
// grade-0 basis element.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> indices);

  int grade() const { return static_cast<int>(idx_.size()); }
  const std::vector<int>& indices() const { return idx_; }
  bool contains(int i) const;
  int max_index() const { return idx_.empty() ? 0 : idx_.back(); }

  // Remaining indices of 1..n, in increasing order.
  MultiIndex complement(int n) const;
  // Sign of the permutation (I, I^c) of (1..n); fixes the perp convention
  // e_I ^ perp(e_I) = vol.
  int complement_sign(int n) const;
  // Index removed at position pos (0-based), with the remaining multi-index.
  MultiIndex erase_at(int pos) const;

  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    return a.idx_ < b.idx_;
  }
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.idx_ == b.idx_;
  }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) {
    return !(a == b);
  }

  std::string str() const;  // e.g. "{1,3}" ; "{}" for grade 0

 private:
  std::vector<int> idx_;
};

// Sign of the shuffle sorting (A, B); zero if A and B share an index.
// e_A ^ e_B = merge_sign * e_{A u B}.
int merge_sign(const MultiIndex& a, const MultiIndex& b);
std::optional<MultiIndex> merge_disjoint(const MultiIndex& a, const MultiIndex& b);

// A grade-k multivector: coefficients on basis multi-indices, canonical (no
// zero entries).  Operations treat the preferred basis as orthonormal.
class KVector {
 public:
  KVector() : n_(0), k_(0) {}
  KVector(int n, int k);
  static KVector basis(int n, const MultiIndex& mi, Scalar coeff = Scalar(1));
  static KVector basis(int n, std::vector<int> indices, Scalar coeff = Scalar(1));
  // The 1-vector with the given coordinates.
  static KVector from_vec(const Vec& v);

  int n() const { return n_; }
  int grade() const { return k_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<MultiIndex, Scalar>& coeffs() const { return coeffs_; }
  Scalar coeff(const MultiIndex& mi) const;

  void add_term(const MultiIndex& mi, const Scalar& c);

  KVector operator-() const;
  friend KVector operator+(const KVector& a, const KVector& b);
  friend KVector operator-(const KVector& a, const KVector& b);
  friend KVector operator*(const Scalar& c, const KVector& a);
  friend bool operator==(const KVector& a, const KVector& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const KVector& a, const KVector& b) { return !(a == b); }

  std::string str() const;

 private:
  int n_;
  int k_;
  std::map<MultiIndex, Scalar> coeffs_;
};

// Exterior product; grades add, antisymmetric signs from merging indices.
KVector wedge(const KVector& a, const KVector& b);

// Mass of a multivector written in the preferred basis: the l1 norm of its
// coefficients (each basis k-vector has mass one).
Scalar mass(const KVector& a);

// Gram determinant det(<w_i, w_j>) of a list of vectors; the classical mass
// of the simple k-vector w_1 ^ ... ^ w_k is its square root.
Scalar gram_det(const std::vector<Vec>& w);
double gram_mass(const std::vector<Vec>& w);

// <e_I, e_J> = delta_IJ extended bilinearly.
Scalar inner(const KVector& a, const KVector& b);

// perp(e_I) = sgn(I, I^c) e_{I^c}; mass preserving on basis terms,
// perp(perp(a)) = (-1)^{k(n-k)} a, and e_I ^ perp(e_I) = vol.
KVector perp(const KVector& a);

// Left contraction: <contract_left(b, a), g> = <a, b ^ g> for all g.
KVector contract_left(const KVector& b, const KVector& a);

// Slant product a/b: the adjoint contraction scaled by 1/M(b)^2, so that
// b ^ (a/b) = a whenever the direction of b lies inside the direction of a,
// and a/a = 1 for simple unit a.  Throws if b is zero or grade(b) > grade(a).
KVector slant(const KVector& a, const KVector& b);

// cross(a, b) = perp(a ^ b).
KVector cross(const KVector& a, const KVector& b);

// intersect(a, b) = perp(perp(a) ^ perp(b)); requires k_a + k_b >= n.
KVector intersect(const KVector& a, const KVector& b);

// Projection onto the direction of b: perp(intersect(perp(a), b)) intersect b.
// Requires grade(a) <= grade(b).
KVector project(const KVector& b, const KVector& a);

KVector unit_volume(int n);

}  // namespace chainlets
