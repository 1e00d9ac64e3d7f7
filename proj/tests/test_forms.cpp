#include <doctest.h>

#include <cmath>

#include "chainlets/form.hpp"
#include "chainlets/random_gen.hpp"
#include "test_util.hpp"

using namespace chainlets;

namespace {
KVector e(int n, std::vector<int> idx) { return KVector::basis(n, std::move(idx)); }
Point pt(std::vector<long> coords) {
  Point p;
  for (long c : coords) p.push_back(Scalar(c));
  return p;
}
Form dx(int n, std::vector<int> idx) {
  return Form::constant_basis(n, MultiIndex(std::move(idx)));
}
}  // namespace

TEST_CASE("form evaluation on poles") {
  CHECK(dx(2, {1}).eval(monopole(pt({5, 7}), e(2, {1}))) == Scalar(1));
  Form w = Form::basis(2, MultiIndex({2}), CoeffFn::coord(1));
  CHECK(w.eval(monopole(pt({3, 0}), e(2, {2}))) == Scalar(3));
  // Order-1 pole: one directional derivative of the coefficient.
  Chain dip(2);
  dip.add_pole(pt({2, 2}), XElement::term(2, SymMonomial({1}), MultiIndex({2})));
  CHECK(w.eval(dip) == Scalar(1));
  // Grade mismatch pairs to zero.
  CHECK(w.eval(monopole(pt({3, 0}), e(2, {1, 2}))) == Scalar(0));
}

TEST_CASE("directional derivative of forms") {
  Form w = Form::basis(2, MultiIndex({2}), CoeffFn::coord(1));
  Form dw = dir_derivative(basis_vec(2, 1), w);
  CHECK(dw.eval(monopole(pt({9, 9}), e(2, {2}))) == Scalar(1));
  CHECK(!dir_derivative(basis_vec(2, 1), dx(2, {1})).has_terms());
  // sin(2 x1) dx1 differentiates to 2 cos(2 x1) dx1.
  AffineExpr arg{Scalar(), {Scalar(2), Scalar()}};
  Form s = Form::basis(2, MultiIndex({1}), CoeffFn::sin(arg));
  Form ds = dir_derivative(basis_vec(2, 1), s);
  Point x = {Scalar::fp(0.3), Scalar()};
  CHECK(ds.eval(monopole(x, e(2, {1}))).to_double() ==
        doctest::Approx(2.0 * std::cos(0.6)));
}

TEST_CASE("finite differences cross-check the derivative oracle") {
  ModeGuard guard(ArithmeticMode::kFloat);
  InstanceGen gen(31);
  for (int trial = 0; trial < 25; ++trial) {
    int n = gen.uniform_int(1, 3);
    int k = gen.uniform_int(0, n);
    Form w = trial % 2 == 0 ? gen.poly_form(n, k) : gen.trig_form(n, k);
    Vec u = gen.vector(n);
    Pole pole{gen.point(n),
              XElement::term(n, SymMonomial(), gen.multi_index(n, k))};
    double exact = dir_derivative(u, w).eval_pole(pole).to_double();
    double numeric = numeric_directional(w, u, pole);
    CHECK(std::fabs(exact - numeric) <=
          1e-6 * std::max(1.0, std::fabs(exact)));
  }
}

TEST_CASE("exterior derivative coefficient formula") {
  Form w = Form::basis(2, MultiIndex({2}), CoeffFn::coord(1));
  Form dw = exterior_d(w);
  CHECK(dw.eval(monopole(pt({0, 0}), e(2, {1, 2}))) == Scalar(1));
  CHECK(!exterior_d(Form::constant_basis(2, MultiIndex())).has_terms());
  // d(df) = 0 for f = x1 x2.
  Form f(2, 0);
  f.add_term(MultiIndex(), CoeffFn::coord(1) * CoeffFn::coord(2));
  Form ddf = exterior_d(exterior_d(f));
  CHECK(!ddf.has_terms());
}

TEST_CASE("hodge star term rule follows the perp convention") {
  // n = 2: star dx1 = -dx2 (and star dx2 = dx1), so star.star = -id.
  Form s1 = hodge_star(dx(2, {1}));
  CHECK(s1.eval(monopole(pt({0, 0}), e(2, {2}))) == Scalar(-1));
  Form s2 = hodge_star(dx(2, {2}));
  CHECK(s2.eval(monopole(pt({0, 0}), e(2, {1}))) == Scalar(1));
  // n = 3 classical rule: star(P dx + Q dy + R dz) = P dydz + Q dzdx + R dxdy.
  Form w(3, 1);
  w.add_term(MultiIndex({1}), CoeffFn::constant(Scalar(2)));  // P = 2
  w.add_term(MultiIndex({2}), CoeffFn::constant(Scalar(3)));  // Q = 3
  w.add_term(MultiIndex({3}), CoeffFn::constant(Scalar(5)));  // R = 5
  Form sw = hodge_star(w);
  CHECK(sw.eval(monopole(pt({0, 0, 0}), e(3, {2, 3}))) == Scalar(2));
  // dzdx = -e{1,3}
  CHECK(sw.eval(monopole(pt({0, 0, 0}), Scalar(-1) * e(3, {1, 3}))) == Scalar(3));
  CHECK(sw.eval(monopole(pt({0, 0, 0}), e(3, {1, 2}))) == Scalar(5));
  // Involution with sign (-1)^{k(n-k)}.
  InstanceGen gen(32);
  for (int trial = 0; trial < 60; ++trial) {
    int n = gen.uniform_int(1, 4);
    int k = gen.uniform_int(0, n);
    Form r = gen.poly_form(n, k);
    Chain p = gen.chain(n, 2, k, 1);
    Scalar sign((k * (n - k)) % 2 == 0 ? 1 : -1);
    CHECK(hodge_star(hodge_star(r)).eval(p) == (sign * r).eval(p));
  }
}

TEST_CASE("wedge of forms") {
  Form w = wedge_forms(dx(3, {1}), dx(3, {2}));
  CHECK(w.eval(monopole(pt({0, 0, 0}), e(3, {1, 2}))) == Scalar(1));
  Form x1dx1 = Form::basis(3, MultiIndex({1}), CoeffFn::coord(1));
  CHECK(!wedge_forms(x1dx1, dx(3, {1})).has_terms());
  // Leibniz rule for w = x2 dx1, eta = dx3.
  Form a = Form::basis(3, MultiIndex({1}), CoeffFn::coord(2));
  Form b = dx(3, {3});
  Form lhs = exterior_d(wedge_forms(a, b));
  Form rhs = wedge_forms(exterior_d(a), b) -
             wedge_forms(a, exterior_d(b));  // (-1)^1 for grade 1
  InstanceGen gen(33);
  for (int trial = 0; trial < 20; ++trial) {
    Chain p = gen.chain(3, 2, 3, 1);
    CHECK(lhs.eval(p) == rhs.eval(p));
  }
}

TEST_CASE("pullback") {
  // Linear map: transpose action on covectors.
  std::vector<Vec> rows = {{Scalar(1), Scalar(2)}, {Scalar(0), Scalar(1)}};
  SmoothMap a = SmoothMap::linear(rows);
  Form pa = pullback(a, dx(2, {1}));
  CHECK(pa.eval(monopole(pt({0, 0}), e(2, {1}))) == Scalar(1));
  CHECK(pa.eval(monopole(pt({0, 0}), e(2, {2}))) == Scalar(2));
  // f(x,y) = (x^2, y): f^*(dx1) = 2 x1 dx1.
  std::vector<CoeffFn> comps = {CoeffFn::pow(CoeffFn::coord(1), 2),
                                CoeffFn::coord(2)};
  SmoothMap f(2, comps);
  Form pf = pullback(f, dx(2, {1}));
  CHECK(pf.eval(monopole(pt({3, 0}), e(2, {1}))) == Scalar(6));
  // f^* d = d f^* for w = x2 dx1.
  Form w = Form::basis(2, MultiIndex({1}), CoeffFn::coord(2));
  InstanceGen gen(34);
  for (int trial = 0; trial < 30; ++trial) {
    SmoothMap g = gen.poly_map(2, 2);
    Chain p = gen.chain(2, 2, 2, 0);
    CHECK(pullback(g, exterior_d(w)).eval(p) ==
          exterior_d(pullback(g, w)).eval(p));
  }
  // Composing a trig coefficient with a non-affine map leaves the class.
  AffineExpr arg{Scalar(), {Scalar(1), Scalar()}};
  Form trig = Form::basis(2, MultiIndex({1}), CoeffFn::sin(arg));
  CHECK_THROWS_AS(pullback(f, trig), CompositionError);
}

TEST_CASE("interior product and extrusion") {
  Form w = wedge_forms(dx(2, {1}), dx(2, {2}));
  Form iw = interior_product(e(2, {2}), w);
  CHECK(iw.eval(monopole(pt({0, 0}), e(2, {1}))) == Scalar(1));
  // i_b i_b = 0.
  CHECK(!interior_product(e(2, {2}), iw).has_terms());
  // Extrusion drops to zero on mismatched grades by bookkeeping.
  Form exw = extrusion(e(2, {1}), dx(2, {1}));
  CHECK(exw.grade() == 2);
  CHECK(exw.eval(monopole(pt({0, 0}), e(2, {1}))) == Scalar(0));
  CHECK_THROWS_AS(extrusion(KVector(2, 1), dx(2, {1})), std::domain_error);
}

TEST_CASE("laplacian of forms") {
  CHECK(!form_laplacian(dx(2, {2})).has_terms());
  // w = x1^2 dx2 in n = 2: laplacian = -2 dx2 (geometer's sign).
  Form w = Form::basis(2, MultiIndex({2}), CoeffFn::pow(CoeffFn::coord(1), 2));
  Form lw = form_laplacian(w);
  CHECK(lw.eval(monopole(pt({0, 0}), e(2, {2}))) == Scalar(-2));
  // Pairing-level duality with the geometric Laplace operator.
  InstanceGen gen(35);
  for (int trial = 0; trial < 40; ++trial) {
    int n = gen.uniform_int(1, 3);
    int k = gen.uniform_int(0, n);
    Form r = gen.poly_form(n, k);
    Chain p = gen.chain(n, 2, k, 0);
    CHECK(form_laplacian(r).eval(p) == r.eval(geometric_laplace(p)));
  }
}

TEST_CASE("pairing identities are exact in rational mode") {
  InstanceGen gen(36);
  for (int trial = 0; trial < 120; ++trial) {
    int n = gen.uniform_int(1, 4);
    int k = gen.uniform_int(0, n > 1 ? n - 1 : 0);
    Form w = gen.poly_form(n, k);
    Chain p = gen.chain(n, 3, k + 1, 2);
    CHECK(exterior_d(w).eval(p) == w.eval(boundary(p)));
    Vec u = gen.vector(n);
    Chain q = gen.chain(n, 3, k, 1);
    CHECK(dir_derivative(u, w).eval(q) == w.eval(prederivative(u, q)));
    Chain s = gen.chain(n, 3, n - k, 2);
    CHECK(hodge_star(w).eval(s) == w.eval(perp_chain(s)));
  }
}

TEST_CASE("form norm estimates") {
  SampleSpec spec;
  spec.lo = {Scalar(-1)};
  spec.hi = {Scalar(1)};
  // Constant form: ||w||_0 = 1, ||w||_1 = 0, analytic.
  auto est = form_norm(dx(1, {1}), 1, spec);
  CHECK(est.fully_analytic());
  CHECK(est.values[0] == doctest::Approx(1.0));
  CHECK(est.values[1] == doctest::Approx(0.0));
  // sin(2 x1) dx1: amplitude 1, frequency 2.
  AffineExpr arg{Scalar(), {Scalar(2)}};
  Form s = Form::basis(1, MultiIndex({1}), CoeffFn::sin(arg));
  auto est2 = form_norm(s, 1, spec);
  CHECK(est2.fully_analytic());
  CHECK(est2.values[0] == doctest::Approx(1.0));
  CHECK(est2.values[1] == doctest::Approx(2.0));
  // x1 dx1 on [-K, K]: order-0 value sampled (unbounded globally), ~K.
  ModeGuard guard(ArithmeticMode::kFloat);
  double K = 3.0;
  SampleSpec wide;
  wide.lo = {Scalar::fp(-K)};
  wide.hi = {Scalar::fp(K)};
  wide.points_per_axis = 7;
  Form xdx = Form::basis(1, MultiIndex({1}), CoeffFn::coord(1));
  auto est3 = form_norm(xdx, 1, wide);
  CHECK(est3.methods[0] == NormMethod::kSampled);
  CHECK(est3.values[0] == doctest::Approx(K));
  CHECK(est3.methods[1] == NormMethod::kAnalyticBound);
  CHECK(est3.values[1] == doctest::Approx(1.0));
}
