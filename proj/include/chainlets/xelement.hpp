#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chainlets/multivector.hpp"
#include "chainlets/scalar.hpp"

namespace chainlets {

// Nondecreasing multiset of 1-based basis indices; the degree-0 monomial is
// empty.  Symmetric factors are kept expanded in the preferred basis.
class SymMonomial {
 public:
  SymMonomial() = default;
  explicit SymMonomial(std::vector<int> factors);

  int order() const { return static_cast<int>(f_.size()); }
  const std::vector<int>& factors() const { return f_; }
  SymMonomial prepend(int i) const;
  SymMonomial concat(const SymMonomial& o) const;

  friend bool operator<(const SymMonomial& a, const SymMonomial& b) {
    return a.f_ < b.f_;
  }
  friend bool operator==(const SymMonomial& a, const SymMonomial& b) {
    return a.f_ == b.f_;
  }
  friend bool operator!=(const SymMonomial& a, const SymMonomial& b) {
    return !(a == b);
  }

  std::string str() const;  // e.g. "[1,1,2]" ; "[]" for order 0

 private:
  std::vector<int> f_;
};

// Bidegree (order j, grade k).
struct Bidegree {
  int order;
  int grade;
  friend bool operator<(const Bidegree& a, const Bidegree& b) {
    return std::pair(a.order, a.grade) < std::pair(b.order, b.grade);
  }
  friend bool operator==(const Bidegree& a, const Bidegree& b) {
    return a.order == b.order && a.grade == b.grade;
  }
};

// An element of the bigraded algebra X(V) = sum_{j,k} S^j(V) x Lambda_k(V),
// stored as coefficients on (symmetric monomial, multi-index) basis pairs.
class XElement {
 public:
  XElement() : n_(0) {}
  explicit XElement(int n) : n_(n) {}
  static XElement from_kvector(const KVector& a);
  static XElement term(int n, const SymMonomial& s, const MultiIndex& mi,
                       Scalar coeff = Scalar(1));

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  using Key = std::pair<SymMonomial, MultiIndex>;
  const std::map<Key, Scalar>& terms() const { return terms_; }

  void add_term(const SymMonomial& s, const MultiIndex& mi, const Scalar& c);

  std::set<Bidegree> bidegrees() const;
  bool pure_bidegree() const { return bidegrees().size() == 1; }
  Bidegree the_bidegree() const;  // requires pure
  XElement component(int order, int grade) const;
  // Order-j slice across all grades.
  XElement order_component(int order) const;
  int max_order() const;

  // The grade-k K-vector part of an order-0 element (other orders ignored).
  KVector kvector_part(int grade) const;

  XElement operator-() const;
  friend XElement operator+(const XElement& a, const XElement& b);
  friend XElement operator-(const XElement& a, const XElement& b);
  friend XElement operator*(const Scalar& c, const XElement& a);
  friend bool operator==(const XElement& a, const XElement& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const XElement& a, const XElement& b) { return !(a == b); }

  std::string str() const;

 private:
  int n_;
  std::map<Key, Scalar> terms_;
};

// Product in X(V): symmetric monomials concatenate, Lambda parts wedge, and a
// pure-term pair of orders j1, j2 >= 1 carries the factor 1/2^(j1+j2); when an
// order is zero the product is the plain wedge.  Bilinear, graded-commutative.
XElement x_product(const XElement& a, const XElement& b);

// Prederivative in direction u: prepends u (expanded in the basis) to the
// symmetric factor; raises order by one, grade unchanged; linear in u and A.
XElement prederivative_x(const Vec& u, const XElement& a);
XElement prederivative_x(int basis_index, const XElement& a);

// Boundary: del(e_I) = sum_m (-1)^(m-1) nabla_{e_im} e_{I \ im}, carried
// through symmetric factors untouched; maps S^j x L_k -> S^(j+1) x L_(k-1)
// and satisfies del(del(A)) = 0.
XElement boundary_x(const XElement& a);

// perp applied to the Lambda part of every term.
XElement perp_x(const XElement& a);

// ||A|| = sum over bidegrees of the l1 norm of basis coefficients (basis
// symmetric factors are unit length, basis k-vectors have unit mass).
Scalar x_norm(const XElement& a);

}  // namespace chainlets
