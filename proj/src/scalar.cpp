#include "chainlets/scalar.hpp"

#include <cstdio>
#include <sstream>

namespace chainlets {

namespace {
ArithmeticMode g_mode = ArithmeticMode::kRational;
}

ArithmeticMode arithmetic_mode() { return g_mode; }
void set_arithmetic_mode(ArithmeticMode mode) { g_mode = mode; }
std::string arithmetic_mode_name() {
  return g_mode == ArithmeticMode::kRational ? "rational" : "float";
}

Scalar Scalar::of_mode(const Rational& q) {
  if (g_mode == ArithmeticMode::kRational) return Scalar(q);
  return Scalar::fp(q.convert_to<double>());
}

Scalar& Scalar::apply(const Scalar& o, Op op) {
  if (exact_ && o.exact_) {
    switch (op) {
      case Op::kAdd: q_ += o.q_; break;
      case Op::kSub: q_ -= o.q_; break;
      case Op::kMul: q_ *= o.q_; break;
      case Op::kDiv:
        if (o.q_.is_zero()) throw std::domain_error("Scalar: division by zero");
        q_ /= o.q_;
        break;
    }
    return *this;
  }
  double a = to_double();
  double b = o.to_double();
  exact_ = false;
  q_ = 0;
  switch (op) {
    case Op::kAdd: d_ = a + b; break;
    case Op::kSub: d_ = a - b; break;
    case Op::kMul: d_ = a * b; break;
    case Op::kDiv:
      if (b == 0.0) throw std::domain_error("Scalar: division by zero");
      d_ = a / b;
      break;
  }
  return *this;
}

std::string Scalar::str() const {
  if (exact_) {
    std::ostringstream os;
    os << q_;
    return os.str();
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", d_);
  return buf;
}

bool nearly_equal(const Scalar& a, const Scalar& b, double tol) {
  if (a.exact() && b.exact()) return a == b;
  return std::fabs(a.to_double() - b.to_double()) <= tol;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vec_scale(const Scalar& c, const Vec& a) {
  Vec r(a);
  for (auto& x : r) x *= c;
  return r;
}

Scalar vec_dot(const Vec& a, const Vec& b) {
  Scalar s;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double vec_norm(const Vec& a) {
  double s = 0.0;
  for (const auto& x : a) {
    double v = x.to_double();
    s += v * v;
  }
  return std::sqrt(s);
}

bool vec_is_zero(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

Vec zero_vec(int n) { return Vec(static_cast<size_t>(n)); }

Vec basis_vec(int n, int i) {
  Vec v(static_cast<size_t>(n));
  v[static_cast<size_t>(i - 1)] = Scalar(1);
  return v;
}

}  // namespace chainlets
