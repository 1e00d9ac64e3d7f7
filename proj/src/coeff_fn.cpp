#include "chainlets/coeff_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace chainlets {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

Scalar scalar_sin(const Scalar& x) { return Scalar::fp(std::sin(x.to_double())); }
Scalar scalar_cos(const Scalar& x) { return Scalar::fp(std::cos(x.to_double())); }

double lin_norm(const Vec& lin) {
  double s = 0.0;
  for (const auto& c : lin) {
    double v = c.to_double();
    s += v * v;
  }
  return std::sqrt(s);
}
}  // namespace

Scalar AffineExpr::eval(const Vec& x) const {
  Scalar s = c0;
  for (size_t i = 0; i < lin.size() && i < x.size(); ++i) s += lin[i] * x[i];
  return s;
}

std::string AffineExpr::str() const {
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < lin.size(); ++i) {
    if (lin[i].is_zero()) continue;
    if (any) os << '+';
    os << lin[i].str() << "*x" << (i + 1);
    any = true;
  }
  if (!any || !c0.is_zero()) {
    if (any) os << '+';
    os << c0.str();
  }
  return os.str();
}

struct CoeffFn::Node {
  enum class Kind { kConst, kCoord, kAdd, kMul, kPow, kSin, kCos };
  Kind kind;
  Scalar value;                 // kConst
  int coord = 0;                // kCoord (1-based)
  std::vector<CoeffFn> kids;    // kAdd, kMul; kids[0] for kPow
  int exponent = 0;             // kPow
  AffineExpr affine;            // kSin, kCos
};

namespace {
using Node = CoeffFn::Node;
using Kind = CoeffFn::Node::Kind;

std::shared_ptr<const Node> make_const_node(const Scalar& c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConst;
  n->value = c;
  return n;
}
}  // namespace

CoeffFn::CoeffFn() : node_(make_const_node(Scalar())) {}
CoeffFn::CoeffFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

CoeffFn CoeffFn::constant(const Scalar& c) { return CoeffFn(make_const_node(c)); }

CoeffFn CoeffFn::coord(int i) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kCoord;
  n->coord = i;
  return CoeffFn(n);
}

CoeffFn CoeffFn::sin(const AffineExpr& a) {
  if (vec_is_zero(a.lin)) return constant(scalar_sin(a.c0));
  auto n = std::make_shared<Node>();
  n->kind = Kind::kSin;
  n->affine = a;
  return CoeffFn(n);
}

CoeffFn CoeffFn::cos(const AffineExpr& a) {
  if (vec_is_zero(a.lin)) return constant(scalar_cos(a.c0));
  auto n = std::make_shared<Node>();
  n->kind = Kind::kCos;
  n->affine = a;
  return CoeffFn(n);
}

CoeffFn CoeffFn::pow(const CoeffFn& base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("CoeffFn: negative exponent");
  if (exponent == 0) return constant(Scalar(1));
  if (exponent == 1) return base;
  if (auto c = base.as_constant()) {
    Scalar r(1);
    for (int t = 0; t < exponent; ++t) r *= *c;
    return constant(r);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kPow;
  n->kids = {base};
  n->exponent = exponent;
  return CoeffFn(n);
}

CoeffFn operator+(const CoeffFn& a, const CoeffFn& b) {
  // Flatten, fold constants, drop zeros.
  std::vector<CoeffFn> kids;
  Scalar c;
  auto absorb = [&](const CoeffFn& f) {
    if (auto k = f.as_constant()) {
      c += *k;
      return;
    }
    if (f.node_->kind == Kind::kAdd) {
      for (const auto& kid : f.node_->kids) {
        if (auto kk = kid.as_constant())
          c += *kk;
        else
          kids.push_back(kid);
      }
      return;
    }
    kids.push_back(f);
  };
  absorb(a);
  absorb(b);
  if (!c.is_zero() || kids.empty()) kids.push_back(CoeffFn::constant(c));
  if (kids.size() == 1) return kids[0];
  std::sort(kids.begin(), kids.end(),
            [](const CoeffFn& x, const CoeffFn& y) { return x.str() < y.str(); });
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAdd;
  n->kids = std::move(kids);
  return CoeffFn(n);
}

CoeffFn operator-(const CoeffFn& a, const CoeffFn& b) { return a + (-b); }

CoeffFn CoeffFn::operator-() const {
  return CoeffFn::constant(Scalar(-1)) * (*this);
}

CoeffFn operator*(const CoeffFn& a, const CoeffFn& b) {
  std::vector<CoeffFn> kids;
  Scalar c(1);
  bool zero = false;
  auto absorb = [&](const CoeffFn& f) {
    if (auto k = f.as_constant()) {
      if (k->is_zero()) zero = true;
      c *= *k;
      return;
    }
    if (f.node_->kind == Kind::kMul) {
      for (const auto& kid : f.node_->kids) {
        if (auto kk = kid.as_constant())
          c *= *kk;
        else
          kids.push_back(kid);
      }
      return;
    }
    kids.push_back(f);
  };
  absorb(a);
  absorb(b);
  if (zero || c.is_zero()) return CoeffFn::constant(Scalar());
  std::sort(kids.begin(), kids.end(),
            [](const CoeffFn& x, const CoeffFn& y) { return x.str() < y.str(); });
  if (!(c == Scalar(1)) || kids.empty())
    kids.insert(kids.begin(), CoeffFn::constant(c));
  if (kids.size() == 1) return kids[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::kMul;
  n->kids = std::move(kids);
  return CoeffFn(n);
}

Scalar CoeffFn::eval(const Vec& x) const {
  switch (node_->kind) {
    case Kind::kConst:
      return node_->value;
    case Kind::kCoord: {
      size_t i = static_cast<size_t>(node_->coord - 1);
      return i < x.size() ? x[i] : Scalar();
    }
    case Kind::kAdd: {
      Scalar s;
      for (const auto& k : node_->kids) s += k.eval(x);
      return s;
    }
    case Kind::kMul: {
      Scalar s(1);
      for (const auto& k : node_->kids) s *= k.eval(x);
      return s;
    }
    case Kind::kPow: {
      Scalar b = node_->kids[0].eval(x);
      Scalar s(1);
      for (int t = 0; t < node_->exponent; ++t) s *= b;
      return s;
    }
    case Kind::kSin:
      return scalar_sin(node_->affine.eval(x));
    case Kind::kCos:
      return scalar_cos(node_->affine.eval(x));
  }
  throw std::logic_error("CoeffFn: bad node");
}

CoeffFn CoeffFn::partial(int i) const {
  switch (node_->kind) {
    case Kind::kConst:
      return constant(Scalar());
    case Kind::kCoord:
      return constant(Scalar(node_->coord == i ? 1 : 0));
    case Kind::kAdd: {
      CoeffFn s = constant(Scalar());
      for (const auto& k : node_->kids) s = s + k.partial(i);
      return s;
    }
    case Kind::kMul: {
      CoeffFn s = constant(Scalar());
      for (size_t m = 0; m < node_->kids.size(); ++m) {
        CoeffFn t = node_->kids[m].partial(i);
        for (size_t l = 0; l < node_->kids.size(); ++l)
          if (l != m) t = t * node_->kids[l];
        s = s + t;
      }
      return s;
    }
    case Kind::kPow: {
      CoeffFn d = node_->kids[0].partial(i);
      return constant(Scalar(node_->exponent)) *
             pow(node_->kids[0], node_->exponent - 1) * d;
    }
    case Kind::kSin: {
      size_t idx = static_cast<size_t>(i - 1);
      Scalar li = idx < node_->affine.lin.size() ? node_->affine.lin[idx] : Scalar();
      return constant(li) * cos(node_->affine);
    }
    case Kind::kCos: {
      size_t idx = static_cast<size_t>(i - 1);
      Scalar li = idx < node_->affine.lin.size() ? node_->affine.lin[idx] : Scalar();
      return constant(-li) * sin(node_->affine);
    }
  }
  throw std::logic_error("CoeffFn: bad node");
}

CoeffFn CoeffFn::directional(const Vec& u) const {
  CoeffFn s = constant(Scalar());
  for (size_t i = 0; i < u.size(); ++i) {
    if (u[i].is_zero()) continue;
    s = s + constant(u[i]) * partial(static_cast<int>(i + 1));
  }
  return s;
}

CoeffFn CoeffFn::mixed_partial(const std::vector<int>& indices) const {
  CoeffFn f = *this;
  for (int i : indices) f = f.partial(i);
  return f;
}

CoeffFn CoeffFn::substitute(const std::vector<CoeffFn>& comps) const {
  switch (node_->kind) {
    case Kind::kConst:
      return *this;
    case Kind::kCoord: {
      size_t i = static_cast<size_t>(node_->coord - 1);
      if (i >= comps.size())
        throw CompositionError("substitute: missing component for coordinate");
      return comps[i];
    }
    case Kind::kAdd: {
      CoeffFn s = constant(Scalar());
      for (const auto& k : node_->kids) s = s + k.substitute(comps);
      return s;
    }
    case Kind::kMul: {
      CoeffFn s = constant(Scalar(1));
      for (const auto& k : node_->kids) s = s * k.substitute(comps);
      return s;
    }
    case Kind::kPow:
      return pow(node_->kids[0].substitute(comps), node_->exponent);
    case Kind::kSin:
    case Kind::kCos: {
      // The affine argument must stay affine after substitution.
      AffineExpr out;
      out.c0 = node_->affine.c0;
      size_t width = 0;
      std::vector<AffineExpr> parts;
      for (size_t i = 0; i < node_->affine.lin.size(); ++i) {
        if (node_->affine.lin[i].is_zero()) continue;
        if (i >= comps.size())
          throw CompositionError("substitute: missing component for coordinate");
        auto aff = comps[i].as_affine(0);
        if (!aff)
          throw CompositionError(
              "substitute: trig argument becomes non-affine; outside the "
              "coefficient class");
        width = std::max(width, aff->lin.size());
        out.c0 += node_->affine.lin[i] * aff->c0;
        parts.push_back(*aff);
      }
      out.lin = Vec(width);
      size_t pi = 0;
      for (size_t i = 0; i < node_->affine.lin.size(); ++i) {
        if (node_->affine.lin[i].is_zero()) continue;
        const AffineExpr& aff = parts[pi++];
        for (size_t j = 0; j < aff.lin.size(); ++j)
          out.lin[j] += node_->affine.lin[i] * aff.lin[j];
      }
      return node_->kind == Kind::kSin ? sin(out) : cos(out);
    }
  }
  throw std::logic_error("CoeffFn: bad node");
}

bool CoeffFn::is_zero() const {
  auto c = as_constant();
  return c && c->is_zero();
}

std::optional<Scalar> CoeffFn::as_constant() const {
  if (node_->kind == Kind::kConst) return node_->value;
  return std::nullopt;
}

std::optional<AffineExpr> CoeffFn::as_affine(int n) const {
  switch (node_->kind) {
    case Kind::kConst:
      return AffineExpr{node_->value, Vec(static_cast<size_t>(std::max(n, 0)))};
    case Kind::kCoord: {
      Vec lin(static_cast<size_t>(std::max(n, node_->coord)));
      lin[static_cast<size_t>(node_->coord - 1)] = Scalar(1);
      return AffineExpr{Scalar(), lin};
    }
    case Kind::kAdd: {
      AffineExpr out{Scalar(), Vec(static_cast<size_t>(std::max(n, 0)))};
      for (const auto& k : node_->kids) {
        auto a = k.as_affine(n);
        if (!a) return std::nullopt;
        out.c0 += a->c0;
        if (a->lin.size() > out.lin.size()) out.lin.resize(a->lin.size());
        for (size_t i = 0; i < a->lin.size(); ++i) out.lin[i] += a->lin[i];
      }
      return out;
    }
    case Kind::kMul: {
      // Affine only when at most one non-constant factor, itself affine.
      Scalar c(1);
      std::optional<AffineExpr> aff;
      for (const auto& k : node_->kids) {
        if (auto kc = k.as_constant()) {
          c *= *kc;
          continue;
        }
        auto a = k.as_affine(n);
        if (!a || aff) return std::nullopt;
        aff = a;
      }
      if (!aff) return AffineExpr{c, Vec(static_cast<size_t>(std::max(n, 0)))};
      aff->c0 *= c;
      for (auto& x : aff->lin) x *= c;
      return aff;
    }
    case Kind::kPow:
    case Kind::kSin:
    case Kind::kCos:
      return std::nullopt;
  }
  return std::nullopt;
}

bool CoeffFn::is_polynomial() const {
  switch (node_->kind) {
    case Kind::kConst:
    case Kind::kCoord:
      return true;
    case Kind::kAdd:
    case Kind::kMul: {
      for (const auto& k : node_->kids)
        if (!k.is_polynomial()) return false;
      return true;
    }
    case Kind::kPow:
      return node_->kids[0].is_polynomial();
    case Kind::kSin:
    case Kind::kCos:
      return false;
  }
  return false;
}

namespace {
// Convolution with binomial weights; 0 * inf counts as 0.
std::vector<double> profile_mul(const std::vector<double>& a,
                                const std::vector<double>& b) {
  const size_t r = a.size();
  std::vector<double> out(r, 0.0);
  std::vector<std::vector<double>> binom(r, std::vector<double>(r, 0.0));
  for (size_t j = 0; j < r; ++j) {
    binom[j][0] = 1.0;
    for (size_t i = 1; i <= j; ++i)
      binom[j][i] = binom[j - 1][i - 1] + (i <= j - 1 ? binom[j - 1][i] : 0.0);
  }
  for (size_t j = 0; j < r; ++j) {
    double s = 0.0;
    for (size_t i = 0; i <= j; ++i) {
      double x = a[i], y = b[j - i];
      if (x == 0.0 || y == 0.0) continue;
      s += binom[j][i] * x * y;
    }
    out[j] = s;
  }
  return out;
}
}  // namespace

std::vector<double> CoeffFn::bound_profile(int r) const {
  const size_t len = static_cast<size_t>(r + 1);
  std::vector<double> out(len, 0.0);
  switch (node_->kind) {
    case Kind::kConst:
      out[0] = std::fabs(node_->value.to_double());
      return out;
    case Kind::kCoord:
      out[0] = kInf;
      if (len > 1) out[1] = 1.0;
      return out;
    case Kind::kAdd: {
      for (const auto& k : node_->kids) {
        auto p = k.bound_profile(r);
        for (size_t j = 0; j < len; ++j) out[j] += p[j];
      }
      return out;
    }
    case Kind::kMul: {
      out[0] = 1.0;
      for (const auto& k : node_->kids) out = profile_mul(out, k.bound_profile(r));
      return out;
    }
    case Kind::kPow: {
      auto base = node_->kids[0].bound_profile(r);
      out[0] = 1.0;
      for (int t = 0; t < node_->exponent; ++t) out = profile_mul(out, base);
      return out;
    }
    case Kind::kSin:
    case Kind::kCos: {
      double f = lin_norm(node_->affine.lin);
      double v = 1.0;
      for (size_t j = 0; j < len; ++j) {
        out[j] = v;
        v *= f;
      }
      return out;
    }
  }
  throw std::logic_error("CoeffFn: bad node");
}

std::string CoeffFn::str() const {
  switch (node_->kind) {
    case Kind::kConst:
      return node_->value.is_negative() ? "(" + node_->value.str() + ")"
                                        : node_->value.str();
    case Kind::kCoord:
      return "x" + std::to_string(node_->coord);
    case Kind::kAdd: {
      std::ostringstream os;
      os << '(';
      for (size_t i = 0; i < node_->kids.size(); ++i) {
        if (i) os << '+';
        os << node_->kids[i].str();
      }
      os << ')';
      return os.str();
    }
    case Kind::kMul: {
      std::ostringstream os;
      for (size_t i = 0; i < node_->kids.size(); ++i) {
        if (i) os << '*';
        os << node_->kids[i].str();
      }
      return os.str();
    }
    case Kind::kPow:
      return node_->kids[0].str() + "^" + std::to_string(node_->exponent);
    case Kind::kSin:
      return "sin(" + node_->affine.str() + ")";
    case Kind::kCos:
      return "cos(" + node_->affine.str() + ")";
  }
  return "?";
}

}  // namespace chainlets
