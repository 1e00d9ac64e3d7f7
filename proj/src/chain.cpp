#include "chainlets/chain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chainlets {

bool Box::contains(const Point& p) const {
  for (size_t i = 0; i < p.size(); ++i) {
    if (closed) {
      if (p[i] < lo[i] || hi[i] < p[i]) return false;
    } else {
      if (p[i] <= lo[i] || hi[i] <= p[i]) return false;
    }
  }
  return true;
}

void Chain::add_pole(const Point& at, const XElement& payload) {
  if (static_cast<int>(at.size()) != n_)
    throw std::invalid_argument("Chain: point dimension mismatch");
  if (payload.n() != n_)
    throw std::invalid_argument("Chain: payload dimension mismatch");
  if (payload.is_zero()) return;
  auto [it, fresh] = data_.try_emplace(at, payload);
  if (!fresh) {
    it->second = it->second + payload;
    if (it->second.is_zero()) data_.erase(it);
  }
}

void Chain::add_pole(const Point& at, const KVector& payload) {
  add_pole(at, XElement::from_kvector(payload));
}

std::vector<Pole> Chain::poles() const {
  std::vector<Pole> ps;
  for (const auto& [at, payload] : data_)
    for (const auto& bd : payload.bidegrees())
      ps.push_back(Pole{at, payload.component(bd.order, bd.grade)});
  return ps;
}

size_t Chain::pole_count() const {
  size_t c = 0;
  for (const auto& [at, payload] : data_) c += payload.bidegrees().size();
  return c;
}

std::set<Bidegree> Chain::bidegrees() const {
  std::set<Bidegree> bs;
  for (const auto& [at, payload] : data_)
    for (const auto& bd : payload.bidegrees()) bs.insert(bd);
  return bs;
}

int Chain::max_order() const {
  int m = 0;
  for (const auto& [at, payload] : data_) m = std::max(m, payload.max_order());
  return m;
}

std::optional<int> Chain::homogeneous_grade() const {
  std::optional<int> g;
  for (const auto& bd : bidegrees()) {
    if (g && *g != bd.grade) return std::nullopt;
    g = bd.grade;
  }
  return g;
}

Chain Chain::operator-() const {
  Chain r(n_);
  for (const auto& [at, payload] : data_) r.data_.emplace(at, -payload);
  return r;
}

Chain operator+(const Chain& a, const Chain& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("Chain: dimension mismatch in +");
  Chain r = a;
  for (const auto& [at, payload] : b.data_) r.add_pole(at, payload);
  return r;
}

Chain operator-(const Chain& a, const Chain& b) { return a + (-b); }

Chain operator*(const Scalar& c, const Chain& a) {
  Chain r(a.n_);
  if (c.is_zero()) return r;
  for (const auto& [at, payload] : a.data_) r.data_.emplace(at, c * payload);
  return r;
}

Chain Chain::canonicalized(double tol) const {
  Chain r(n_);
  Point current;
  for (const auto& [at, payload] : data_) {
    if (!current.empty()) {
      double d = vec_norm(vec_sub(at, current));
      if (d <= tol) {
        r.add_pole(current, payload);
        continue;
      }
    }
    current = at;
    r.add_pole(current, payload);
  }
  return r;
}

std::string Chain::str() const {
  if (data_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [at, payload] : data_) {
    if (!first) os << " + ";
    first = false;
    os << '(';
    for (size_t i = 0; i < at.size(); ++i) {
      if (i) os << ',';
      os << at[i].str();
    }
    os << "; " << payload.str() << ')';
  }
  return os.str();
}

Chain monopole(const Point& at, const KVector& payload) {
  Chain c(payload.n());
  c.add_pole(at, payload);
  return c;
}

Chain translate(const Vec& u, const Chain& p) {
  Chain r(p.n());
  for (const auto& [at, payload] : p.support()) r.add_pole(vec_add(at, u), payload);
  return r;
}

Chain difference_chain(const std::vector<Vec>& dirs, const Point& at,
                       const KVector& payload) {
  Chain c = monopole(at, payload);
  for (auto it = dirs.rbegin(); it != dirs.rend(); ++it)
    c = translate(*it, c) - c;
  return c;
}

Chain boundary(const Chain& p) {
  Chain r(p.n());
  for (const auto& [at, payload] : p.support()) r.add_pole(at, boundary_x(payload));
  return r;
}

Chain prederivative(const Vec& u, const Chain& p) {
  Chain r(p.n());
  for (const auto& [at, payload] : p.support())
    r.add_pole(at, prederivative_x(u, payload));
  return r;
}

Chain perp_chain(const Chain& p) {
  Chain r(p.n());
  for (const auto& [at, payload] : p.support()) r.add_pole(at, perp_x(payload));
  return r;
}

XElement vec_part(int order, const Chain& p) {
  XElement s(p.n());
  for (const auto& [at, payload] : p.support())
    s = s + payload.order_component(order);
  return s;
}

KVector vec0(const Chain& p, int grade) {
  XElement s = vec_part(0, p);
  if (grade < 0) {
    int g = 0;
    for (const auto& bd : s.bidegrees()) g = std::max(g, bd.grade);
    grade = g;
  }
  return s.kvector_part(grade);
}

Scalar chain_mass(const Chain& p) {
  Scalar m;
  for (const auto& [at, payload] : p.support()) m += x_norm(payload);
  return m;
}

Chain scale_by_function(const std::function<Scalar(const Point&)>& phi,
                        const Chain& p) {
  if (p.max_order() > 0)
    throw std::invalid_argument("scale_by_function: requires an order-0 chain");
  Chain r(p.n());
  for (const auto& [at, payload] : p.support()) r.add_pole(at, phi(at) * payload);
  return r;
}

namespace {
Chain map_lambda_parts(const Chain& p,
                       const std::function<KVector(const KVector&)>& op) {
  Chain r(p.n());
  for (const auto& [at, payload] : p.support()) {
    // Group terms by (symmetric factor, grade) and transform each k-vector.
    std::map<std::pair<SymMonomial, int>, KVector> groups;
    for (const auto& [key, c] : payload.terms()) {
      auto gk = std::pair(key.first, key.second.grade());
      auto it = groups.find(gk);
      if (it == groups.end())
        it = groups.emplace(gk, KVector(p.n(), key.second.grade())).first;
      it->second.add_term(key.second, c);
    }
    XElement out(p.n());
    for (const auto& [gk, kv] : groups) {
      KVector t = op(kv);
      for (const auto& [mi, c] : t.coeffs()) out.add_term(gk.first, mi, c);
    }
    r.add_pole(at, out);
  }
  return r;
}
}  // namespace

Chain exterior_product(const KVector& beta, const Chain& p) {
  return map_lambda_parts(p, [&](const KVector& a) { return wedge(a, beta); });
}

Chain left_multiply(const KVector& beta, const Chain& p) {
  return map_lambda_parts(p, [&](const KVector& a) { return wedge(beta, a); });
}

Chain magic_nabla(const KVector& x, const Chain& p) {
  return boundary(left_multiply(x, p)) + left_multiply(x, boundary(p));
}

Chain contract(const Scalar& lambda, const Chain& p) {
  if (lambda.is_zero() || lambda.is_negative())
    throw std::domain_error("contract: lambda must be positive");
  if (p.max_order() > 0)
    throw std::invalid_argument("contract: requires an order-0 chain");
  Chain r(p.n());
  for (const auto& [at, payload] : p.support())
    r.add_pole(vec_scale(lambda, at), payload);
  return r;
}

Chain restrict_chain(const Chain& p, const Box& box) {
  Chain r(p.n());
  for (const auto& [at, payload] : p.support())
    if (box.contains(at)) r.add_pole(at, payload);
  return r;
}

Chain pointwise_product(ProductMode mode, const Chain& p, const KVector& beta) {
  switch (mode) {
    case ProductMode::kWedge:
      return exterior_product(beta, p);
    case ProductMode::kSlant:
      return map_lambda_parts(p, [&](const KVector& a) { return slant(a, beta); });
    case ProductMode::kCross:
      return map_lambda_parts(p, [&](const KVector& a) { return cross(a, beta); });
    case ProductMode::kIntersect:
      return map_lambda_parts(p,
                              [&](const KVector& a) { return intersect(a, beta); });
    case ProductMode::kProject:
      return map_lambda_parts(p,
                              [&](const KVector& a) { return project(beta, a); });
  }
  throw std::logic_error("pointwise_product: unknown mode");
}

Chain chain_wedge(const Chain& a, const Chain& b) {
  if (a.n() != b.n()) throw std::invalid_argument("chain_wedge: dimension mismatch");
  Chain r(a.n());
  for (const auto& [at, pa] : a.support()) {
    auto it = b.support().find(at);
    if (it == b.support().end()) continue;
    r.add_pole(at, x_product(pa, it->second));
  }
  return r;
}

Scalar monopolar_inner(const Chain& a, const Chain& b) {
  if (a.n() != b.n())
    throw std::invalid_argument("monopolar_inner: dimension mismatch");
  if (a.max_order() > 0 || b.max_order() > 0)
    throw std::invalid_argument("monopolar_inner: requires order-0 chains");
  auto ga = a.homogeneous_grade(), gb = b.homogeneous_grade();
  if (ga && gb && *ga != *gb)
    throw std::invalid_argument("monopolar_inner: grade mismatch");
  Scalar s;
  for (const auto& [at, pa] : a.support()) {
    auto it = b.support().find(at);
    if (it == b.support().end()) continue;
    int grade = ga ? *ga : (gb ? *gb : 0);
    s += inner(pa.kvector_part(grade), it->second.kvector_part(grade));
  }
  return s;
}

double lp_norm(const Chain& a, double p) {
  double s = 0.0;
  for (const auto& [at, payload] : a.support())
    s += std::pow(x_norm(payload).to_double(), p);
  return std::pow(s, 1.0 / p);
}

std::pair<Scalar, Chain> geometric_product(const Chain& a, const Chain& b) {
  return {monopolar_inner(a, b), chain_wedge(a, b)};
}

Chain diamond(const Chain& p) { return perp_chain(boundary(perp_chain(p))); }

Chain geometric_laplace(const Chain& p) {
  return boundary(diamond(p)) + diamond(boundary(p));
}

}  // namespace chainlets
