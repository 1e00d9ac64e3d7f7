#include <doctest.h>

#include "chainlets/chain.hpp"
#include "chainlets/random_gen.hpp"
#include "chainlets/smooth_map.hpp"
#include "test_util.hpp"

using namespace chainlets;

namespace {
KVector e(int n, std::vector<int> idx) { return KVector::basis(n, std::move(idx)); }
Point pt(std::vector<long> coords) {
  Point p;
  for (long c : coords) p.push_back(Scalar(c));
  return p;
}
}  // namespace

TEST_CASE("translate moves supports only") {
  Chain p = monopole(pt({0, 0}), e(2, {2}));
  Chain moved = translate(basis_vec(2, 1), p);
  CHECK(moved == monopole(pt({1, 0}), e(2, {2})));
  CHECK(translate(zero_vec(2), p) == p);
  Vec u = {Scalar(3), Scalar(-2)};
  CHECK(translate(u, translate(vec_scale(Scalar(-1), u), p)) == p);
}

TEST_CASE("difference chains") {
  Chain d1 = difference_chain({basis_vec(2, 1)}, pt({0, 0}), e(2, {2}));
  Chain expect = monopole(pt({1, 0}), e(2, {2})) - monopole(pt({0, 0}), e(2, {2}));
  CHECK(d1 == expect);

  Chain d2 = difference_chain({basis_vec(2, 1), basis_vec(2, 1)}, pt({0, 0}),
                              e(2, {2}));
  Chain expect2 = monopole(pt({2, 0}), e(2, {2})) -
                  Scalar(2) * monopole(pt({1, 0}), e(2, {2})) +
                  monopole(pt({0, 0}), e(2, {2}));
  CHECK(d2 == expect2);
  CHECK(d2.pole_count() == 3);

  CHECK(difference_chain({zero_vec(2)}, pt({1, 1}), e(2, {1})).is_zero());
}

TEST_CASE("chain boundary examples") {
  Chain p = monopole(pt({0, 0}), e(2, {1}));
  Chain b = boundary(p);
  CHECK(b.pole_count() == 1);
  auto pole = b.poles()[0];
  CHECK(pole.order() == 1);
  CHECK(pole.grade() == 0);
  CHECK(pole.payload == XElement::term(2, SymMonomial({1}), MultiIndex()));

  Chain q = monopole(pt({0, 0}), e(2, {1, 2}));
  CHECK(boundary(boundary(q)).is_zero());
  CHECK(vec_part(0, boundary(q)).is_zero());
}

TEST_CASE("prederivative on chains") {
  Chain p = monopole(pt({0, 0}), e(2, {2}));
  Chain g = prederivative(basis_vec(2, 1), p);
  CHECK(g.poles()[0].payload ==
        XElement::term(2, SymMonomial({1}), MultiIndex({2})));
  CHECK(vec_part(0, g).is_zero());
  Vec two_e1 = {Scalar(2), Scalar()};
  CHECK(prederivative(two_e1, p) == Scalar(2) * g);
}

TEST_CASE("pushforward: linear, pointwise Jacobian, chain rule") {
  // Linear map.
  std::vector<Vec> rows = {{Scalar(2), Scalar(0)}, {Scalar(1), Scalar(1)}};
  SmoothMap a = SmoothMap::linear(rows);
  Chain p = monopole(pt({1, 0}), KVector::from_vec({Scalar(1), Scalar(0)}));
  Chain ap = a.pushforward(p);
  CHECK(ap == monopole(pt({2, 1}), KVector::from_vec({Scalar(2), Scalar(1)})));

  // f(x, y) = (x^2, y): Jacobian at (1,0) sends e1 to 2e1.
  std::vector<CoeffFn> comps = {CoeffFn::pow(CoeffFn::coord(1), 2),
                                CoeffFn::coord(2)};
  SmoothMap f(2, comps);
  Chain fp = f.pushforward(monopole(pt({1, 0}), e(2, {1})));
  CHECK(fp == monopole(pt({1, 0}), Scalar(2) * e(2, {1})));

  // Chain rule on random polynomial maps.
  InstanceGen gen(21);
  for (int trial = 0; trial < 50; ++trial) {
    int n = gen.uniform_int(1, 3);
    SmoothMap g1 = gen.poly_map(n, n);
    SmoothMap g2 = gen.poly_map(n, n);
    Chain c = gen.chain(n, 2, gen.uniform_int(0, n), 1);
    CHECK(compose(g1, g2).pushforward(c) == g1.pushforward(g2.pushforward(c)));
  }
}

TEST_CASE("perp on chains") {
  Chain p = monopole(pt({1, 2, 3}), e(3, {1}));
  CHECK(perp_chain(p) == monopole(pt({1, 2, 3}), e(3, {2, 3})));
  Chain pp = perp_chain(perp_chain(p));
  CHECK(pp == p);  // (-1)^{k(n-k)} = +1 for k=1, n=3
  // Order-1 payload: perp acts on the Lambda part only.
  Chain q(3);
  q.add_pole(pt({0, 0, 0}), XElement::term(3, SymMonomial({2}), MultiIndex({1})));
  Chain pq = perp_chain(q);
  CHECK(pq.poles()[0].payload ==
        XElement::term(3, SymMonomial({2}), MultiIndex({2, 3})));
}

TEST_CASE("scale_by_function") {
  Chain p = monopole(pt({1, 0}), e(2, {2})) + monopole(pt({0, 1}), e(2, {1}));
  auto two = [](const Point&) { return Scalar(2); };
  CHECK(scale_by_function(two, p) == Scalar(2) * p);
  auto x1 = [](const Point& x) { return x[0]; };
  Chain scaled = scale_by_function(x1, monopole(pt({1, 0}), e(2, {2})));
  CHECK(scaled == monopole(pt({1, 0}), e(2, {2})));
  auto zero = [](const Point&) { return Scalar(); };
  CHECK(scale_by_function(zero, p).is_zero());
  Chain higher = prederivative(basis_vec(2, 1), p);
  CHECK_THROWS_AS(scale_by_function(two, higher), std::invalid_argument);
}

TEST_CASE("exterior product operator") {
  Chain p = monopole(pt({1, 1}), e(2, {1}));
  CHECK(exterior_product(e(2, {2}), p) == monopole(pt({1, 1}), e(2, {1, 2})));
  CHECK(exterior_product(e(2, {1}), p).is_zero());
  // f linear: f_* E_b P = E_{f_* b} f_* P.
  std::vector<Vec> rows = {{Scalar(1), Scalar(2)}, {Scalar(0), Scalar(1)}};
  SmoothMap f = SmoothMap::linear(rows);
  KVector beta = e(2, {2});
  KVector pushed = f.push_kvector(pt({0, 0}), beta);
  CHECK(f.pushforward(exterior_product(beta, p)) ==
        exterior_product(pushed, f.pushforward(p)));
}

TEST_CASE("magic formula returns the prederivative for 1-vectors") {
  Chain p = monopole(pt({0, 0}), e(2, {2}));
  CHECK(magic_nabla(e(2, {1}), p) == prederivative(basis_vec(2, 1), p));
  Chain q = monopole(pt({0, 0}), e(2, {1}));
  CHECK(magic_nabla(e(2, {1}), q) == prederivative(basis_vec(2, 1), q));
  CHECK(magic_nabla(KVector(2, 1), p).is_zero());
  InstanceGen gen(22);
  for (int trial = 0; trial < 100; ++trial) {
    int n = gen.uniform_int(1, 4);
    Vec xv = gen.vector(n);
    Chain c = gen.chain(n, 3, gen.uniform_int(0, n), 0);
    CHECK(magic_nabla(KVector::from_vec(xv), c) == prederivative(xv, c));
  }
}

TEST_CASE("vec aggregates order components") {
  Chain p = monopole(pt({1, 0}), e(2, {1})) + monopole(pt({0, 1}), e(2, {2}));
  KVector v = vec0(p);
  KVector expect = e(2, {1}) + e(2, {2});
  CHECK(v == expect);
  Chain d = difference_chain({basis_vec(2, 1)}, pt({0, 0}), e(2, {2}));
  CHECK(vec_part(0, d).is_zero());
  InstanceGen gen(23);
  for (int trial = 0; trial < 80; ++trial) {
    int n = gen.uniform_int(1, 4);
    Chain c = gen.chain(n, 3, gen.uniform_int(1, n), 1);
    CHECK(vec_part(0, boundary(c)).is_zero());
  }
}

TEST_CASE("contract scales supports and keeps Vec0") {
  Chain p = monopole(pt({1, 0}), e(2, {2}));
  CHECK(contract(Scalar(1), p) == p);
  Chain half = contract(Scalar::frac(1, 2), p);
  Point expect_at = {Scalar::frac(1, 2), Scalar()};
  CHECK(half == monopole(expect_at, e(2, {2})));
  CHECK(vec0(half) == vec0(p));
  CHECK_THROWS_AS(contract(Scalar(0), p), std::domain_error);
  CHECK_THROWS_AS(contract(Scalar(-1), p), std::domain_error);
}

TEST_CASE("restriction to boxes and Vec0 additivity") {
  Chain p = monopole(pt({0, 0}), e(2, {1})) + monopole(pt({2, 0}), e(2, {1}));
  Box box{{Scalar(-1), Scalar(-1)}, {Scalar(1), Scalar(1)}, true};
  CHECK(restrict_chain(p, box) == monopole(pt({0, 0}), e(2, {1})));
  Box all{{Scalar(-10), Scalar(-10)}, {Scalar(10), Scalar(10)}, true};
  CHECK(restrict_chain(p, all) == p);
  // Closed vs open boundary membership.
  Box edge{{Scalar(0), Scalar(0)}, {Scalar(2), Scalar(2)}, false};
  CHECK(restrict_chain(p, edge).is_zero());
  // mu over a partition into boxes sums to Vec0.
  InstanceGen gen(24);
  for (int trial = 0; trial < 40; ++trial) {
    Chain c = gen.chain(2, 4, 1, 0);
    Box left{{Scalar(-10), Scalar(-10)}, {Scalar(0), Scalar(10)}, false};
    Box right{{Scalar(0), Scalar(-10)}, {Scalar(10), Scalar(10)}, true};
    // half-open split: x <= 0 goes right only if x == 0.
    Box leftc{{Scalar(-10), Scalar(-10)}, {Scalar(0), Scalar(10)}, true};
    Chain rl = restrict_chain(c, leftc);
    Chain rr = restrict_chain(c, right);
    // remove the shared x == 0 plane from one side
    Chain shared = restrict_chain(rl, right);
    KVector total = vec0(rl, 1) + vec0(rr, 1) - vec0(shared, 1);
    CHECK(total == vec0(c, 1));
  }
}

TEST_CASE("pointwise products against a multivector") {
  Chain p = monopole(pt({0, 0, 0}), e(3, {1, 2}));
  Chain s = pointwise_product(ProductMode::kSlant, p, e(3, {2}));
  CHECK(s == monopole(pt({0, 0, 0}), Scalar(-1) * e(3, {1})));
  Chain c = pointwise_product(ProductMode::kCross,
                              monopole(pt({0, 0, 0}), e(3, {1})), e(3, {2}));
  CHECK(c == monopole(pt({0, 0, 0}), e(3, {3})));
  Chain i = pointwise_product(ProductMode::kIntersect, p, e(3, {2, 3}));
  CHECK(i == monopole(pt({0, 0, 0}), e(3, {2})));
}

TEST_CASE("monopolar inner product and Lp norms") {
  Chain a = monopole(pt({1, 1}), e(2, {1}));
  CHECK(monopolar_inner(a, a) == Scalar(1));
  Chain b = monopole(pt({0, 0}), e(2, {1}));
  CHECK(monopolar_inner(a, b) == Scalar(0));
  Chain p = monopole(pt({0, 0}), Scalar(3) * e(2, {1})) +
            monopole(pt({1, 1}), Scalar(4) * e(2, {1}));
  CHECK(lp_norm(p, 2.0) == doctest::Approx(5.0));
  Chain q = monopole(pt({0, 0}), e(2, {1, 2}));
  CHECK_THROWS_AS(monopolar_inner(a, q), std::invalid_argument);
  auto [scal, wedge_part] = geometric_product(a, a);
  CHECK(scal == Scalar(1));
  CHECK(wedge_part.is_zero());  // e1 ^ e1
}

TEST_CASE("geometric Laplace operator on a single pole") {
  // box(p; e1) in n = 2 equals minus the sum of second prederivatives.
  Chain p = monopole(pt({0, 0}), e(2, {1}));
  Chain bp = geometric_laplace(p);
  XElement expect = Scalar(-1) * (XElement::term(2, SymMonomial({1, 1}),
                                                 MultiIndex({1})) +
                                  XElement::term(2, SymMonomial({2, 2}),
                                                 MultiIndex({1})));
  CHECK(bp == monopole(pt({0, 0}), e(2, {1})) - monopole(pt({0, 0}), e(2, {1})) +
                  [&] {
                    Chain c(2);
                    c.add_pole(pt({0, 0}), expect);
                    return c;
                  }());
}

TEST_CASE("chain canonicalization merges nearby float supports") {
  ModeGuard guard(ArithmeticMode::kFloat);
  Chain c(1);
  c.add_pole({Scalar::fp(0.5)}, KVector::basis(1, MultiIndex({1})));
  c.add_pole({Scalar::fp(0.5 + 1e-15)}, KVector::basis(1, MultiIndex({1})));
  CHECK(c.support_size() == 2);
  Chain merged = c.canonicalized(1e-12);
  CHECK(merged.support_size() == 1);
  CHECK(mass(vec0(merged, 1)) == Scalar(2));
}
