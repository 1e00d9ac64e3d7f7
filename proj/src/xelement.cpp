#include "chainlets/xelement.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace chainlets {

SymMonomial::SymMonomial(std::vector<int> factors) : f_(std::move(factors)) {
  for (size_t i = 0; i < f_.size(); ++i) {
    if (f_[i] < 1) throw std::invalid_argument("SymMonomial: indices are 1-based");
    if (i > 0 && f_[i] < f_[i - 1])
      throw std::invalid_argument("SymMonomial: factors must be sorted");
  }
}

SymMonomial SymMonomial::prepend(int i) const {
  std::vector<int> v = f_;
  v.insert(std::upper_bound(v.begin(), v.end(), i), i);
  return SymMonomial(std::move(v));
}

SymMonomial SymMonomial::concat(const SymMonomial& o) const {
  std::vector<int> v;
  v.reserve(f_.size() + o.f_.size());
  std::merge(f_.begin(), f_.end(), o.f_.begin(), o.f_.end(), std::back_inserter(v));
  return SymMonomial(std::move(v));
}

std::string SymMonomial::str() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < f_.size(); ++i) {
    if (i) os << ',';
    os << f_[i];
  }
  os << ']';
  return os.str();
}

XElement XElement::from_kvector(const KVector& a) {
  XElement r(a.n());
  for (const auto& [mi, c] : a.coeffs()) r.add_term(SymMonomial(), mi, c);
  return r;
}

XElement XElement::term(int n, const SymMonomial& s, const MultiIndex& mi,
                        Scalar coeff) {
  XElement r(n);
  r.add_term(s, mi, coeff);
  return r;
}

void XElement::add_term(const SymMonomial& s, const MultiIndex& mi,
                        const Scalar& c) {
  if (c.is_zero()) return;
  if (mi.max_index() > n_ || (!s.factors().empty() && s.factors().back() > n_))
    throw std::invalid_argument("XElement: basis index exceeds n");
  Key key{s, mi};
  auto [it, fresh] = terms_.try_emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::set<Bidegree> XElement::bidegrees() const {
  std::set<Bidegree> bs;
  for (const auto& [key, c] : terms_)
    bs.insert({key.first.order(), key.second.grade()});
  return bs;
}

Bidegree XElement::the_bidegree() const {
  auto bs = bidegrees();
  if (bs.size() != 1)
    throw std::logic_error("XElement: not of pure bidegree");
  return *bs.begin();
}

XElement XElement::component(int order, int grade) const {
  XElement r(n_);
  for (const auto& [key, c] : terms_)
    if (key.first.order() == order && key.second.grade() == grade)
      r.terms_.emplace(key, c);
  return r;
}

XElement XElement::order_component(int order) const {
  XElement r(n_);
  for (const auto& [key, c] : terms_)
    if (key.first.order() == order) r.terms_.emplace(key, c);
  return r;
}

int XElement::max_order() const {
  int m = 0;
  for (const auto& [key, c] : terms_) m = std::max(m, key.first.order());
  return m;
}

KVector XElement::kvector_part(int grade) const {
  KVector r(n_, grade);
  for (const auto& [key, c] : terms_)
    if (key.first.order() == 0 && key.second.grade() == grade)
      r.add_term(key.second, c);
  return r;
}

XElement XElement::operator-() const {
  XElement r(n_);
  for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
  return r;
}

XElement operator+(const XElement& a, const XElement& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("XElement: dimension mismatch in +");
  XElement r = a;
  for (const auto& [key, c] : b.terms_) r.add_term(key.first, key.second, c);
  return r;
}

XElement operator-(const XElement& a, const XElement& b) { return a + (-b); }

XElement operator*(const Scalar& c, const XElement& a) {
  XElement r(a.n_);
  if (c.is_zero()) return r;
  for (const auto& [key, x] : a.terms_) r.terms_.emplace(key, c * x);
  return r;
}

std::string XElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << "*D" << key.first.str() << "e" << key.second.str();
  }
  return os.str();
}

XElement x_product(const XElement& a, const XElement& b) {
  if (a.n() != b.n()) throw std::invalid_argument("x_product: dimension mismatch");
  XElement r(a.n());
  for (const auto& [ka, ca] : a.terms()) {
    const int j1 = ka.first.order();
    for (const auto& [kb, cb] : b.terms()) {
      const int j2 = kb.first.order();
      int sgn = merge_sign(ka.second, kb.second);
      if (sgn == 0) continue;
      Scalar c = ca * cb * Scalar(sgn);
      if (j1 >= 1 && j2 >= 1) {
        Scalar denom(1);
        for (int t = 0; t < j1 + j2; ++t) denom *= Scalar(2);
        c /= denom;
      }
      r.add_term(ka.first.concat(kb.first), *merge_disjoint(ka.second, kb.second), c);
    }
  }
  return r;
}

XElement prederivative_x(int basis_index, const XElement& a) {
  XElement r(a.n());
  for (const auto& [key, c] : a.terms())
    r.add_term(key.first.prepend(basis_index), key.second, c);
  return r;
}

XElement prederivative_x(const Vec& u, const XElement& a) {
  if (static_cast<int>(u.size()) != a.n())
    throw std::invalid_argument("prederivative_x: direction dimension mismatch");
  XElement r(a.n());
  for (int i = 1; i <= a.n(); ++i) {
    const Scalar& ui = u[static_cast<size_t>(i - 1)];
    if (ui.is_zero()) continue;
    for (const auto& [key, c] : a.terms())
      r.add_term(key.first.prepend(i), key.second, ui * c);
  }
  return r;
}

XElement boundary_x(const XElement& a) {
  XElement r(a.n());
  for (const auto& [key, c] : a.terms()) {
    const auto& idx = key.second.indices();
    for (int m = 0; m < static_cast<int>(idx.size()); ++m) {
      Scalar coeff = (m % 2 == 0) ? c : -c;
      r.add_term(key.first.prepend(idx[static_cast<size_t>(m)]),
                 key.second.erase_at(m), coeff);
    }
  }
  return r;
}

XElement perp_x(const XElement& a) {
  XElement r(a.n());
  for (const auto& [key, c] : a.terms())
    r.add_term(key.first, key.second.complement(a.n()),
               Scalar(key.second.complement_sign(a.n())) * c);
  return r;
}

Scalar x_norm(const XElement& a) {
  Scalar s;
  for (const auto& [key, c] : a.terms()) s += c.abs();
  return s;
}

}  // namespace chainlets
