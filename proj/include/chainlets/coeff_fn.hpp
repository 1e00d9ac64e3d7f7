#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chainlets/scalar.hpp"

namespace chainlets {

// Thrown when an operation would leave the supported coefficient class
// (e.g. composing a trig atom with a non-affine map).
class CompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// c0 + <lin, x>
struct AffineExpr {
  Scalar c0;
  Vec lin;
  Scalar eval(const Vec& x) const;
  std::string str() const;
};

// A coefficient function: an expression tree over constants, coordinates,
// sums, products, integer powers, and sine/cosine of affine arguments.
// Closed under partial differentiation with exact derivatives.
class CoeffFn {
 public:
  CoeffFn();  // zero

  static CoeffFn constant(const Scalar& c);
  static CoeffFn coord(int i);  // 1-based x_i
  static CoeffFn sin(const AffineExpr& a);
  static CoeffFn cos(const AffineExpr& a);
  static CoeffFn pow(const CoeffFn& base, int exponent);

  friend CoeffFn operator+(const CoeffFn& a, const CoeffFn& b);
  friend CoeffFn operator-(const CoeffFn& a, const CoeffFn& b);
  friend CoeffFn operator*(const CoeffFn& a, const CoeffFn& b);
  CoeffFn operator-() const;

  Scalar eval(const Vec& x) const;
  CoeffFn partial(int i) const;
  CoeffFn directional(const Vec& u) const;
  // Mixed partial along a sorted list of basis indices.
  CoeffFn mixed_partial(const std::vector<int>& indices) const;

  // Substitute x_i -> comps[i-1]; throws CompositionError when a trig
  // argument stops being affine.
  CoeffFn substitute(const std::vector<CoeffFn>& comps) const;

  bool is_zero() const;
  std::optional<Scalar> as_constant() const;
  std::optional<AffineExpr> as_affine(int n) const;
  bool is_polynomial() const;

  // b[j] = global upper bound for every j-th mixed directional derivative
  // (unit directions); entries may be +infinity.  Valid bounds, tight for
  // trig-affine atoms.
  std::vector<double> bound_profile(int r) const;

  std::string str() const;

  struct Node;

 private:
  explicit CoeffFn(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

}  // namespace chainlets
