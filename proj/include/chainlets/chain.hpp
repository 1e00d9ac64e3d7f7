#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chainlets/xelement.hpp"

namespace chainlets {

using Point = Vec;

// One pure-bidegree pole: a support point carrying an S^j x Lambda_k payload.
struct Pole {
  Point at;
  XElement payload;  // pure bidegree, nonzero
  int order() const { return payload.the_bidegree().order; }
  int grade() const { return payload.the_bidegree().grade; }
};

// Axis-aligned box with declared closure, used for restriction and binning.
struct Box {
  Vec lo;
  Vec hi;
  bool closed = true;
  bool contains(const Point& p) const;
};

// A polypolar chain: finitely many support points with X(V) payloads,
// canonical (payloads merged per point, zero payloads dropped).
class Chain {
 public:
  Chain() : n_(0) {}
  explicit Chain(int n) : n_(n) {}

  int n() const { return n_; }
  bool is_zero() const { return data_.empty(); }
  size_t support_size() const { return data_.size(); }
  const std::map<Point, XElement>& support() const { return data_; }

  void add_pole(const Point& at, const XElement& payload);
  void add_pole(const Point& at, const KVector& payload);

  // Pure-bidegree poles in canonical order.
  std::vector<Pole> poles() const;
  size_t pole_count() const;

  std::set<Bidegree> bidegrees() const;
  int max_order() const;
  // The grade when every payload term has the same one.
  std::optional<int> homogeneous_grade() const;

  Chain operator-() const;
  friend Chain operator+(const Chain& a, const Chain& b);
  friend Chain operator-(const Chain& a, const Chain& b);
  friend Chain operator*(const Scalar& c, const Chain& a);
  friend bool operator==(const Chain& a, const Chain& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Chain& a, const Chain& b) { return !(a == b); }

  // Merges support points that agree within tol (float-mode data may carry
  // roundoff); exact data needs no pass.
  Chain canonicalized(double tol) const;

  std::string str() const;

 private:
  int n_;
  std::map<Point, XElement> data_;
};

// Convenience: the monopolar chain with a single (point; k-vector) pole.
Chain monopole(const Point& at, const KVector& payload);

// T_u: every support point shifted by u, payloads unchanged.
Chain translate(const Vec& u, const Chain& p);

// Iterated translate-and-subtract: 2^j signed poles, order 0.
Chain difference_chain(const std::vector<Vec>& dirs, const Point& at,
                       const KVector& payload);

// Pointwise boundary; del . del = 0 and Vec0(del P) = 0.
Chain boundary(const Chain& p);

// Pointwise prederivative; raises order by one.
Chain prederivative(const Vec& u, const Chain& p);

// Pointwise perp of the Lambda parts.
Chain perp_chain(const Chain& p);

// Sum of the order-j payload components over all poles.
XElement vec_part(int order, const Chain& p);
// Vec0 as a k-vector; requires the order-0 part to be homogeneous of the
// given grade (or pass -1 to infer it).
KVector vec0(const Chain& p, int grade = -1);

// Total mass: sum over poles of payload coefficient l1 norms.
Scalar chain_mass(const Chain& p);

// Pointwise scaling by a function of position; requires order 0.
Chain scale_by_function(const std::function<Scalar(const Point&)>& phi,
                        const Chain& p);

// E_beta: payloads wedge with beta on the right.
Chain exterior_product(const KVector& beta, const Chain& p);

// Left multiplication by (1 x beta) in the chain algebra; the form the
// boundary derivation pairs with.
Chain left_multiply(const KVector& beta, const Chain& p);

// del(X . P) + X . del(P) with X acting by left multiplication; equals the
// prederivative for 1-vector X on order-0 chains.
Chain magic_nabla(const KVector& x, const Chain& p);

// Normalized linear contraction: supports scaled by lambda, payloads kept
// (the lambda^k factors cancel); requires order 0 and lambda > 0.
Chain contract(const Scalar& lambda, const Chain& p);

// Poles whose support lies in the box (boundary points iff box.closed).
Chain restrict_chain(const Chain& p, const Box& box);

enum class ProductMode { kWedge, kSlant, kCross, kIntersect, kProject };

// Pointwise product of each pole's Lambda part with a fixed multivector.
Chain pointwise_product(ProductMode mode, const Chain& p, const KVector& beta);

// Chain wedge: (p; a) ^ (q; b) = 0 unless p = q.
Chain chain_wedge(const Chain& a, const Chain& b);

// <P, Q> = sum over common support of <alpha_i, beta_i>; order 0, same grade.
Scalar monopolar_inner(const Chain& a, const Chain& b);

// (sum_i M(alpha_i)^p)^(1/p) over poles.
double lp_norm(const Chain& a, double p);

// Geometric product: the pair (<P,Q>, P ^ Q).
std::pair<Scalar, Chain> geometric_product(const Chain& a, const Chain& b);

// diamond = perp . del . perp and the geometric Laplace box = del diamond +
// diamond del.
Chain diamond(const Chain& p);
Chain geometric_laplace(const Chain& p);

}  // namespace chainlets
