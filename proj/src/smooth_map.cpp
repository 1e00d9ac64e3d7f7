#include "chainlets/smooth_map.hpp"

#include <stdexcept>

namespace chainlets {

SmoothMap::SmoothMap(int domain_dim, std::vector<CoeffFn> components)
    : dom_(domain_dim), comps_(std::move(components)) {
  jac_.resize(comps_.size());
  for (size_t i = 0; i < comps_.size(); ++i) {
    jac_[i].reserve(static_cast<size_t>(dom_));
    for (int j = 1; j <= dom_; ++j) jac_[i].push_back(comps_[i].partial(j));
  }
}

SmoothMap SmoothMap::identity(int n) {
  std::vector<CoeffFn> comps;
  for (int i = 1; i <= n; ++i) comps.push_back(CoeffFn::coord(i));
  return SmoothMap(n, std::move(comps));
}

SmoothMap SmoothMap::linear(const std::vector<Vec>& rows) {
  int dom = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  std::vector<CoeffFn> comps;
  for (const auto& row : rows) {
    CoeffFn f = CoeffFn::constant(Scalar());
    for (size_t j = 0; j < row.size(); ++j)
      f = f + CoeffFn::constant(row[j]) * CoeffFn::coord(static_cast<int>(j + 1));
    comps.push_back(f);
  }
  return SmoothMap(dom, std::move(comps));
}

Point SmoothMap::apply(const Point& x) const {
  Point y;
  y.reserve(comps_.size());
  for (const auto& f : comps_) y.push_back(f.eval(x));
  return y;
}

std::vector<Vec> SmoothMap::jacobian(const Point& x) const {
  std::vector<Vec> j(comps_.size(), Vec(static_cast<size_t>(dom_)));
  for (size_t i = 0; i < comps_.size(); ++i)
    for (int c = 0; c < dom_; ++c)
      j[i][static_cast<size_t>(c)] = jac_[i][static_cast<size_t>(c)].eval(x);
  return j;
}

Vec SmoothMap::push_vector(const Point& x, const Vec& u) const {
  auto j = jacobian(x);
  Vec out(comps_.size());
  for (size_t i = 0; i < comps_.size(); ++i) out[i] = vec_dot(j[i], u);
  return out;
}

KVector SmoothMap::push_kvector(const Point& x, const KVector& a) const {
  auto j = jacobian(x);
  const int m = codomain_dim();
  KVector out(m, a.grade());
  // Push each basis column, wedge them per multi-index.
  std::vector<KVector> cols;
  cols.reserve(static_cast<size_t>(dom_));
  for (int c = 0; c < dom_; ++c) {
    Vec v(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
      v[static_cast<size_t>(i)] = j[static_cast<size_t>(i)][static_cast<size_t>(c)];
    cols.push_back(KVector::from_vec(v));
  }
  for (const auto& [mi, coeff] : a.coeffs()) {
    KVector w = KVector::basis(m, MultiIndex(std::vector<int>{}), Scalar(1));
    for (int idx : mi.indices()) w = wedge(w, cols[static_cast<size_t>(idx - 1)]);
    out = out + coeff * w;
  }
  return out;
}

Chain SmoothMap::pushforward(const Chain& p) const {
  if (p.n() != dom_)
    throw std::invalid_argument("pushforward: chain dimension mismatch");
  Chain r(codomain_dim());
  for (const auto& pole : p.poles()) {
    auto jac = jacobian(pole.at);
    Point image = apply(pole.at);
    const int m = codomain_dim();
    XElement out(m);
    for (const auto& [key, c] : pole.payload.terms()) {
      // Push the Lambda part.
      KVector alpha(p.n(), key.second.grade());
      alpha.add_term(key.second, c);
      KVector pushed = push_kvector(pole.at, alpha);
      XElement base = XElement::from_kvector(pushed);
      // Push each symmetric factor through the frozen Jacobian.
      for (int s : key.first.factors()) {
        Vec col(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
          col[static_cast<size_t>(i)] =
              jac[static_cast<size_t>(i)][static_cast<size_t>(s - 1)];
        base = prederivative_x(col, base);
      }
      out = out + base;
    }
    r.add_pole(image, out);
  }
  return r;
}

bool SmoothMap::is_polynomial() const {
  for (const auto& f : comps_)
    if (!f.is_polynomial()) return false;
  return true;
}

SmoothMap compose(const SmoothMap& f, const SmoothMap& g) {
  if (f.dom_ != g.codomain_dim())
    throw std::invalid_argument("compose: dimension mismatch");
  std::vector<CoeffFn> comps;
  for (const auto& fi : f.comps_) comps.push_back(fi.substitute(g.comps_));
  return SmoothMap(g.dom_, std::move(comps));
}

}  // namespace chainlets
