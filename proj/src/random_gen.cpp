#include "chainlets/random_gen.hpp"

#include <algorithm>

namespace chainlets {

int InstanceGen::uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(eng_);
}

Scalar InstanceGen::small_scalar(int max_abs_num, int max_den, bool nonzero) {
  while (true) {
    int num = uniform_int(-max_abs_num, max_abs_num);
    if (nonzero && num == 0) continue;
    int den = uniform_int(1, max_den);
    return Scalar::of_mode(Rational(num, den));
  }
}

Vec InstanceGen::vector(int n, bool nonzero) {
  while (true) {
    Vec v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = small_scalar();
    if (!nonzero || !vec_is_zero(v)) return v;
  }
}

Point InstanceGen::point(int n) { return vector(n, false); }

MultiIndex InstanceGen::multi_index(int n, int k) {
  std::vector<int> all(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i + 1;
  std::shuffle(all.begin(), all.end(), eng_);
  std::vector<int> pick(all.begin(), all.begin() + k);
  std::sort(pick.begin(), pick.end());
  return MultiIndex(std::move(pick));
}

KVector InstanceGen::kvector(int n, int k, int max_terms, bool nonzero) {
  while (true) {
    KVector v(n, k);
    int terms = uniform_int(1, max_terms);
    for (int t = 0; t < terms; ++t)
      v.add_term(multi_index(n, k), small_scalar());
    if (!nonzero || !v.is_zero()) return v;
  }
}

SymMonomial InstanceGen::sym_monomial(int n, int order) {
  std::vector<int> f(static_cast<size_t>(order));
  for (int i = 0; i < order; ++i) f[static_cast<size_t>(i)] = uniform_int(1, n);
  std::sort(f.begin(), f.end());
  return SymMonomial(std::move(f));
}

XElement InstanceGen::pure_term(int n, int order, int grade) {
  while (true) {
    XElement x = XElement::term(n, sym_monomial(n, order), multi_index(n, grade),
                                small_scalar(4, 4, true));
    if (!x.is_zero()) return x;
  }
}

XElement InstanceGen::xelement(int n, int max_order, int max_grade,
                               int max_terms) {
  XElement x(n);
  int terms = uniform_int(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    int order = uniform_int(0, max_order);
    int grade = uniform_int(0, max_grade);
    x.add_term(sym_monomial(n, order), multi_index(n, grade), small_scalar());
  }
  return x;
}

Chain InstanceGen::chain(int n, int poles, int grade, int max_order) {
  Chain c(n);
  for (int i = 0; i < poles; ++i) {
    int order = max_order == 0 ? 0 : uniform_int(0, max_order);
    XElement payload =
        XElement::term(n, sym_monomial(n, order), multi_index(n, grade),
                       small_scalar(4, 4, true));
    c.add_pole(point(n), payload);
  }
  return c;
}

CoeffFn InstanceGen::poly_coeff(int n, int max_degree, int terms) {
  CoeffFn f = CoeffFn::constant(small_scalar());
  for (int t = 0; t < terms; ++t) {
    CoeffFn mono = CoeffFn::constant(small_scalar(3, 2, true));
    int degree = uniform_int(0, max_degree);
    for (int d = 0; d < degree; ++d)
      mono = mono * CoeffFn::coord(uniform_int(1, n));
    f = f + mono;
  }
  return f;
}

CoeffFn InstanceGen::trig_coeff(int n) {
  AffineExpr arg;
  arg.c0 = Scalar::fp(0.1 * uniform_int(-5, 5));
  arg.lin = Vec(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    arg.lin[static_cast<size_t>(i)] = Scalar::fp(0.5 * uniform_int(-4, 4));
  CoeffFn base = uniform_int(0, 1) ? CoeffFn::sin(arg) : CoeffFn::cos(arg);
  return CoeffFn::constant(small_scalar(3, 2, true)) * base;
}

Form InstanceGen::poly_form(int n, int k, int max_degree, int terms) {
  Form w(n, k);
  for (int t = 0; t < terms; ++t)
    w.add_term(multi_index(n, k), poly_coeff(n, max_degree, 2));
  return w;
}

Form InstanceGen::trig_form(int n, int k) {
  Form w(n, k);
  int terms = uniform_int(1, 2);
  for (int t = 0; t < terms; ++t) w.add_term(multi_index(n, k), trig_coeff(n));
  return w;
}

SmoothMap InstanceGen::poly_map(int n, int m, int max_degree) {
  std::vector<CoeffFn> comps;
  for (int i = 0; i < m; ++i) comps.push_back(poly_coeff(n, max_degree, 2));
  return SmoothMap(n, std::move(comps));
}

}  // namespace chainlets
