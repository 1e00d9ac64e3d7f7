#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainlets {

using Rational = boost::multiprecision::cpp_rational;

enum class ArithmeticMode { kRational, kFloat };

ArithmeticMode arithmetic_mode();
void set_arithmetic_mode(ArithmeticMode mode);
std::string arithmetic_mode_name();

// Identity checks involving floating values use this tolerance; exact values
// are compared exactly.
inline constexpr double kFloatIdentityTol = 1e-12;

// A number that is an exact rational until a floating value enters the
// computation, after which it stays floating (contagion, like NaN).  The
// global arithmetic mode decides which kind parsers and generators produce;
// the values themselves carry their kind.
class Scalar {
 public:
  Scalar() : exact_(true), d_(0.0) {}
  Scalar(int v) : exact_(true), q_(v), d_(0.0) {}
  Scalar(long v) : exact_(true), q_(v), d_(0.0) {}
  Scalar(long long v) : exact_(true), q_(static_cast<long>(v)), d_(0.0) {}
  Scalar(const Rational& q) : exact_(true), q_(q), d_(0.0) {}
  Scalar(Rational&& q) : exact_(true), q_(std::move(q)), d_(0.0) {}

  static Scalar fp(double v) {
    Scalar s;
    s.exact_ = false;
    s.d_ = v;
    return s;
  }
  // Integer fraction helper: frac(1,3) == 1/3 exactly.
  static Scalar frac(long num, long den) { return Scalar(Rational(num, den)); }
  // Produces an exact or floating value according to the global mode.
  static Scalar of_mode(const Rational& q);
  static Scalar of_mode(long num, long den) { return of_mode(Rational(num, den)); }

  bool exact() const { return exact_; }
  bool is_zero() const { return exact_ ? q_.is_zero() : d_ == 0.0; }
  bool is_negative() const { return exact_ ? q_ < 0 : d_ < 0.0; }

  double to_double() const {
    return exact_ ? q_.convert_to<double>() : d_;
  }
  const Rational& rat() const {
    if (!exact_) throw std::logic_error("Scalar: floating value has no exact form");
    return q_;
  }

  Scalar operator-() const {
    return exact_ ? Scalar(Rational(-q_)) : fp(-d_);
  }

  Scalar& operator+=(const Scalar& o) { return apply(o, Op::kAdd); }
  Scalar& operator-=(const Scalar& o) { return apply(o, Op::kSub); }
  Scalar& operator*=(const Scalar& o) { return apply(o, Op::kMul); }
  Scalar& operator/=(const Scalar& o) { return apply(o, Op::kDiv); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.q_ == b.q_;
    return a.to_double() == b.to_double();
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.q_ < b.q_;
    return a.to_double() < b.to_double();
  }
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

  Scalar abs() const {
    if (exact_) return q_ < 0 ? Scalar(Rational(-q_)) : *this;
    return fp(std::fabs(d_));
  }

  // Serialized form: "p/q" (or "p") for exact values, shortest round-trip
  // decimal for floating ones.
  std::string str() const;

 private:
  enum class Op { kAdd, kSub, kMul, kDiv };
  Scalar& apply(const Scalar& o, Op op);

  bool exact_;
  Rational q_;
  double d_ = 0.0;
};

inline Scalar abs(const Scalar& s) { return s.abs(); }

// Near-equality for checks that must tolerate floating arithmetic: exact on
// two exact operands, |a-b| <= tol otherwise.
bool nearly_equal(const Scalar& a, const Scalar& b, double tol = kFloatIdentityTol);

// Dense coordinate vectors over Scalar; used for points and directions.
using Vec = std::vector<Scalar>;

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& a);
Scalar vec_dot(const Vec& a, const Vec& b);
double vec_norm(const Vec& a);  // Euclidean
bool vec_is_zero(const Vec& a);
Vec zero_vec(int n);
Vec basis_vec(int n, int i);  // 1-based

}  // namespace chainlets
