#include "chainlets/harness.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace chainlets {

double ExperimentReport::max_residual() const {
  double m = 0.0;
  for (const auto& row : rows) m = std::max(m, row.residual);
  return m;
}

bool ExperimentReport::identity_ok() const {
  return max_residual() <= identity_tol;
}

bool ExperimentReport::value_ok() const {
  if (!expected) return true;
  return !rows.empty() && rows.back().error < value_tol;
}

bool ExperimentReport::ratio_ok() const {
  if (!expected) return true;
  double scale = std::max(1.0, std::fabs(*expected));
  double floor = 1e-12 * scale;
  for (size_t i = 1; i < rows.size(); ++i)
    if (rows[i].error > std::max(ratio_limit * rows[i - 1].error, floor))
      return false;
  return true;
}

bool ExperimentReport::pass() const {
  return identity_ok() && value_ok() && ratio_ok();
}

ExperimentReport run_stokes_experiment(const StokesSpec& spec, int levels) {
  ExperimentReport rep;
  rep.suite = "stokes";
  rep.name = spec.name;
  rep.expected = spec.expected;
  rep.provenance = spec.provenance;
  Form dw = exterior_d(spec.form);
  for (int level = 0; level <= levels; ++level) {
    Chain p = spec.domain(level);
    ExperimentRow row;
    row.level = level;
    Scalar lhs = dw.eval(p);
    Scalar rhs = spec.form.eval(boundary(p));
    row.residual = std::fabs((lhs - rhs).to_double());
    row.value = lhs.to_double();
    if (spec.expected) row.error = std::fabs(row.value - *spec.expected);
    rep.rows.push_back(row);
  }
  return rep;
}

namespace {

Form form_x1_sq(int) {
  Form f(1, 0);
  f.add_term(MultiIndex(), CoeffFn::pow(CoeffFn::coord(1), 2));
  return f;
}

Chain interval_chain(int level) {
  return cube_to_chain(unit_cube_cell(1, 1), level);
}

Chain square_chain(int level) {
  return cube_to_chain(unit_cube_cell(2, 2), level);
}

Chain cube_chain(int level) {
  return cube_to_chain(unit_cube_cell(3, 3), level);
}

}  // namespace

std::vector<ExperimentReport> stokes_suite(int levels) {
  std::vector<ExperimentReport> out;

  // Fundamental theorem of calculus on [0,1] with f = x^2.
  {
    StokesSpec spec;
    spec.name = "ftc-x2";
    spec.domain = interval_chain;
    spec.form = form_x1_sq(1);
    spec.expected = 1.0;
    out.push_back(run_stokes_experiment(spec, levels));
  }
  // f = x^3: midpoint sums converge at second order.
  {
    StokesSpec spec;
    spec.name = "ftc-x3";
    spec.domain = interval_chain;
    Form f(1, 0);
    f.add_term(MultiIndex(), CoeffFn::pow(CoeffFn::coord(1), 3));
    spec.form = f;
    spec.expected = 1.0;
    out.push_back(run_stokes_experiment(spec, levels));
  }
  // Green on the unit square with w = x1 dx2.
  {
    StokesSpec spec;
    spec.name = "green-x1dx2";
    spec.domain = square_chain;
    spec.form = Form::basis(2, MultiIndex({2}), CoeffFn::coord(1));
    spec.expected = 1.0;
    out.push_back(run_stokes_experiment(spec, levels));
  }
  // Green with a trig coefficient; integral of 2cos(2x1) over the square.
  {
    StokesSpec spec;
    spec.name = "green-sin2x1";
    spec.domain = square_chain;
    AffineExpr arg{Scalar(), {Scalar(2), Scalar()}};
    spec.form = Form::basis(2, MultiIndex({2}), CoeffFn::sin(arg));
    spec.expected = std::sin(2.0);
    out.push_back(run_stokes_experiment(spec, levels));
  }
  // A closed form pairs to zero against every boundary.
  {
    ExperimentReport rep;
    rep.suite = "stokes";
    rep.name = "closed-form-cycle";
    rep.expected = 0.0;
    rep.provenance = "trivial";
    Form w = Form::constant_basis(2, MultiIndex({1}));
    Form dw = exterior_d(w);
    for (int level = 0; level <= levels; ++level) {
      Chain p = square_chain(level);
      ExperimentRow row;
      row.level = level;
      Scalar lhs = dw.eval(p);
      Scalar rhs = w.eval(boundary(p));
      row.residual = std::fabs((lhs - rhs).to_double());
      row.value = lhs.to_double();
      row.error = std::fabs(row.value);
      rep.rows.push_back(row);
    }
    out.push_back(rep);
  }
  // Geometric boundary: the combinatorial boundary cells against the form,
  // compared with the classical boundary integral.
  {
    ExperimentReport rep;
    rep.suite = "stokes";
    rep.name = "green-boundary-cells";
    rep.expected = 1.0;
    rep.provenance = "derived";
    Form w = Form::basis(2, MultiIndex({2}), CoeffFn::coord(1));
    auto faces = cube_boundary(unit_cube_cell(2, 2));
    for (int level = 0; level <= levels; ++level) {
      ExperimentRow row;
      row.level = level;
      Chain b = cells_to_chain(faces, level);
      row.value = w.eval(b).to_double();
      row.residual = 0.0;
      row.error = std::fabs(row.value - 1.0);
      rep.rows.push_back(row);
    }
    out.push_back(rep);
  }
  return out;
}

std::vector<ExperimentReport> change_of_variables_suite(int levels) {
  std::vector<ExperimentReport> out;
  Form area = Form::constant_basis(2, MultiIndex({1, 2}));

  auto run = [&](const std::string& name, const SmoothMap& f, const Form& w,
                 double expected, const std::string& prov) {
    ExperimentReport rep;
    rep.suite = "change";
    rep.name = name;
    rep.expected = expected;
    rep.provenance = prov;
    Form pulled = pullback(f, w);
    for (int level = 0; level <= levels; ++level) {
      Chain p = square_chain(level);
      ExperimentRow row;
      row.level = level;
      Scalar lhs = pulled.eval(p);
      Scalar rhs = w.eval(f.pushforward(p));
      row.residual = std::fabs((lhs - rhs).to_double());
      row.value = rhs.to_double();
      row.error = std::fabs(row.value - expected);
      rep.rows.push_back(row);
    }
    out.push_back(rep);
  };

  run("identity", SmoothMap::identity(2), area, 1.0, "trivial");
  {
    std::vector<Vec> rows = {{Scalar(2), Scalar()}, {Scalar(), Scalar(1)}};
    run("linear-area-2", SmoothMap::linear(rows), area, 2.0, "derived");
  }
  {
    // f(x, y) = (x + y^2/4, y): unit Jacobian determinant.
    std::vector<CoeffFn> comps;
    comps.push_back(CoeffFn::coord(1) +
                    CoeffFn::constant(Scalar::of_mode(1, 4)) *
                        CoeffFn::pow(CoeffFn::coord(2), 2));
    comps.push_back(CoeffFn::coord(2));
    run("shear-unit-jacobian", SmoothMap(2, comps), area, 1.0, "derived");
  }
  return out;
}

std::vector<ExperimentReport> star_div_curl_suite(int levels) {
  std::vector<ExperimentReport> out;

  // Star pairing on the square: eval(star w, P) = eval(w, perp P).
  {
    ExperimentReport rep;
    rep.suite = "star";
    rep.name = "star-pairing-square";
    rep.expected = 1.0;
    rep.provenance = "derived";
    Form w = Form::constant_basis(2, MultiIndex(std::vector<int>{}));
    // 0-form 1: star w = dV; eval over square = area.
    Form sw = hodge_star(w);
    for (int level = 0; level <= levels; ++level) {
      Chain p = square_chain(level);
      ExperimentRow row;
      row.level = level;
      Scalar lhs = sw.eval(p);
      Scalar rhs = w.eval(perp_chain(p));
      row.residual = std::fabs((lhs - rhs).to_double());
      row.value = lhs.to_double();
      row.error = std::fabs(row.value - 1.0);
      rep.rows.push_back(row);
    }
    out.push_back(rep);
  }
  // Gauss on the unit cube with F = x1 dx1: net flux 1.
  {
    ExperimentReport rep;
    rep.suite = "divergence";
    rep.name = "gauss-x1dx1";
    rep.expected = 1.0;
    rep.provenance = "derived";
    Form f = Form::basis(3, MultiIndex({1}), CoeffFn::coord(1));
    Form dstar = exterior_d(hodge_star(f));
    auto faces = cube_boundary(unit_cube_cell(3, 3));
    for (int level = 0; level <= levels; ++level) {
      Chain p = cube_chain(level);
      ExperimentRow row;
      row.level = level;
      Scalar lhs = dstar.eval(p);
      Scalar rhs = f.eval(perp_chain(boundary(p)));
      row.residual = std::fabs((lhs - rhs).to_double());
      // Flux across the geometric boundary faces.
      Chain b = cells_to_chain(faces, level);
      row.value = hodge_star(f).eval(b).to_double();
      row.error = std::fabs(row.value - 1.0);
      rep.rows.push_back(row);
    }
    out.push_back(rep);
  }
  // Constant field: zero net flux across a closed boundary.
  {
    ExperimentReport rep;
    rep.suite = "divergence";
    rep.name = "gauss-constant-field";
    rep.expected = 0.0;
    rep.provenance = "trivial";
    Form f = Form::constant_basis(3, MultiIndex({1}));
    auto faces = cube_boundary(unit_cube_cell(3, 3));
    for (int level = 0; level <= levels; ++level) {
      ExperimentRow row;
      row.level = level;
      Chain b = cells_to_chain(faces, level);
      row.value = hodge_star(f).eval(b).to_double();
      row.residual = 0.0;
      row.error = std::fabs(row.value);
      rep.rows.push_back(row);
    }
    out.push_back(rep);
  }
  // Curl on the unit square inside R^3 with F = x1 dx2.
  {
    ExperimentReport rep;
    rep.suite = "curl";
    rep.name = "curl-x1dx2";
    rep.expected = 1.0;
    rep.provenance = "derived";
    Form f = Form::basis(3, MultiIndex({2}), CoeffFn::coord(1));
    Form sdf = hodge_star(exterior_d(f));
    CellSpec square;
    square.corner = zero_vec(3);
    square.edges = {basis_vec(3, 1), basis_vec(3, 2)};
    for (int level = 0; level <= levels; ++level) {
      Chain s = cube_to_chain(square, level);
      Chain q = perp_chain(s);
      ExperimentRow row;
      row.level = level;
      Scalar lhs = sdf.eval(q);
      Scalar rhs = f.eval(boundary(perp_chain(q)));
      row.residual = std::fabs((lhs - rhs).to_double());
      row.value = lhs.to_double();
      row.error = std::fabs(row.value - 1.0);
      rep.rows.push_back(row);
    }
    out.push_back(rep);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Consolidated identity fuzz.
// ---------------------------------------------------------------------------
namespace {

struct FuzzContext {
  InstanceGen gen;
  const IdentityFuzzConfig& cfg;
  std::vector<IdentityReport>& out;

  void record(const std::string& name, long instances, long violations,
              const std::string& note) {
    if (violations > 0 && !cfg.counterexample_dir.empty()) {
      std::ofstream os(cfg.counterexample_dir + "/" + name + ".counterexample.txt");
      os << note << '\n';
    }
    out.push_back({name, instances, violations, note});
  }

  // Runs `body` count times; body returns true on pass and may set note.
  void fuzz(const std::string& name, long count,
            const std::function<bool(std::string&)>& body) {
    long violations = 0;
    std::string note;
    for (long i = 0; i < count; ++i) {
      std::string local;
      if (!body(local)) {
        ++violations;
        if (note.empty()) note = local;
      }
    }
    record(name, count, violations, note);
  }
};

bool scalars_match(const Scalar& a, const Scalar& b) {
  return nearly_equal(a, b);
}

bool xelements_match(const XElement& a, const XElement& b) {
  if (a.n() != b.n()) return false;
  XElement d = a - b;
  if (d.is_zero()) return true;
  for (const auto& [key, c] : d.terms())
    if (std::fabs(c.to_double()) > kFloatIdentityTol) return false;
  return true;
}

bool chains_match(const Chain& a, const Chain& b) {
  Chain d = a - b;
  if (d.is_zero()) return true;
  for (const auto& [at, payload] : d.support())
    for (const auto& [key, c] : payload.terms())
      if (std::fabs(c.to_double()) > kFloatIdentityTol) return false;
  return true;
}

}  // namespace

std::vector<IdentityReport> identity_suite(const IdentityFuzzConfig& cfg) {
  std::vector<IdentityReport> out;
  FuzzContext ctx{InstanceGen(cfg.seed), cfg, out};
  auto& gen = ctx.gen;
  const long N = cfg.instances;

  ctx.fuzz("boundary-squared-zero", N, [&](std::string& note) {
    int n = gen.uniform_int(1, cfg.max_n);
    XElement a = gen.xelement(n, 2, n);
    XElement dd = boundary_x(boundary_x(a));
    if (dd.is_zero()) return true;
    note = "del del != 0 on " + a.str();
    return false;
  });

  ctx.fuzz("boundary-derivation-order0", N, [&](std::string& note) {
    int n = gen.uniform_int(2, cfg.max_n);
    XElement a = gen.pure_term(n, 0, gen.uniform_int(0, n));
    XElement b = gen.pure_term(n, 0, gen.uniform_int(0, n));
    int ka = a.the_bidegree().grade;
    XElement lhs = boundary_x(x_product(a, b));
    XElement rhs = x_product(boundary_x(a), b) +
                   (ka % 2 == 0 ? Scalar(1) : Scalar(-1)) *
                       x_product(a, boundary_x(b));
    if (xelements_match(lhs, rhs)) return true;
    note = "derivation failed on " + a.str() + " , " + b.str();
    return false;
  });

  ctx.fuzz("boundary-of-wedge-vectors", N, [&](std::string& note) {
    int n = gen.uniform_int(2, cfg.max_n);
    XElement u = XElement::from_kvector(KVector::from_vec(gen.vector(n)));
    XElement v = XElement::from_kvector(KVector::from_vec(gen.vector(n)));
    XElement lhs = boundary_x(x_product(u, v));
    XElement rhs =
        x_product(boundary_x(u), v) - x_product(u, boundary_x(v));
    if (xelements_match(lhs, rhs)) return true;
    note = "del(u^v) mismatch";
    return false;
  });

  ctx.fuzz("norm-submultiplicative", N, [&](std::string&) {
    int n = gen.uniform_int(1, cfg.max_n);
    XElement a = gen.xelement(n, 2, n);
    XElement b = gen.xelement(n, 2, n);
    Scalar lhs = x_norm(x_product(a, b));
    Scalar rhs = x_norm(a) * x_norm(b);
    return lhs <= rhs || nearly_equal(lhs, rhs);
  });

  ctx.fuzz("graded-commutativity", N, [&](std::string&) {
    int n = gen.uniform_int(1, cfg.max_n);
    XElement a = gen.pure_term(n, gen.uniform_int(0, 2), gen.uniform_int(0, n));
    XElement b = gen.pure_term(n, gen.uniform_int(0, 2), gen.uniform_int(0, n));
    int ka = a.the_bidegree().grade, kb = b.the_bidegree().grade;
    Scalar sign((ka * kb) % 2 == 0 ? 1 : -1);
    return xelements_match(x_product(a, b), sign * x_product(b, a));
  });

  {
    long instances = 0, violations = 0;
    for (int n = 1; n <= 6; ++n) {
      std::vector<MultiIndex> all;
      std::function<void(int, std::vector<int>&)> rec = [&](int start,
                                                            std::vector<int>& acc) {
        all.push_back(MultiIndex(acc));
        for (int i = start; i <= n; ++i) {
          acc.push_back(i);
          rec(i + 1, acc);
          acc.pop_back();
        }
      };
      std::vector<int> acc;
      rec(1, acc);
      for (const auto& mi : all) {
        ++instances;
        KVector a = KVector::basis(n, mi);
        int k = mi.grade();
        Scalar sign((k * (n - k)) % 2 == 0 ? 1 : -1);
        if (perp(perp(a)) != sign * a) ++violations;
      }
    }
    ctx.record("perp-involution-basis", instances, violations, "");
  }

  ctx.fuzz("dd-zero-forms", N, [&](std::string&) {
    int n = gen.uniform_int(2, cfg.max_n);
    int k = gen.uniform_int(0, n - 2);
    Form w = gen.poly_form(n, k);
    Form ddw = exterior_d(exterior_d(w));
    Chain p = gen.chain(n, 2, k + 2, 2);
    return scalars_match(ddw.eval(p), Scalar());
  });

  ctx.fuzz("stokes-pairing", N, [&](std::string& note) {
    int n = gen.uniform_int(1, cfg.max_n);
    int k = gen.uniform_int(0, n - 1);
    Form w = gen.poly_form(n, k);
    Chain p = gen.chain(n, 3, k + 1, 2);
    Scalar lhs = exterior_d(w).eval(p);
    Scalar rhs = w.eval(boundary(p));
    if (scalars_match(lhs, rhs)) return true;
    note = "stokes pairing failed on " + p.str();
    return false;
  });

  ctx.fuzz("prederivative-pairing", N, [&](std::string&) {
    int n = gen.uniform_int(1, cfg.max_n);
    int k = gen.uniform_int(0, n);
    Form w = gen.poly_form(n, k);
    Vec u = gen.vector(n);
    Chain p = gen.chain(n, 3, k, 1);
    return scalars_match(dir_derivative(u, w).eval(p),
                         w.eval(prederivative(u, p)));
  });

  ctx.fuzz("star-pairing", N, [&](std::string&) {
    int n = gen.uniform_int(1, cfg.max_n);
    int k = gen.uniform_int(0, n);
    Form w = gen.poly_form(n, k);
    Chain p = gen.chain(n, 3, n - k, 2);
    return scalars_match(hodge_star(w).eval(p), w.eval(perp_chain(p)));
  });

  ctx.fuzz("pullback-pairing", N, [&](std::string&) {
    int n = gen.uniform_int(1, 3);
    int k = gen.uniform_int(0, n);
    Form w = gen.poly_form(n, k);
    SmoothMap f = gen.poly_map(n, n);
    Chain p = gen.chain(n, 2, k, 0);
    return scalars_match(pullback(f, w).eval(p), w.eval(f.pushforward(p)));
  });

  ctx.fuzz("pullback-d-commutes", N, [&](std::string&) {
    int n = gen.uniform_int(2, 3);
    int k = gen.uniform_int(0, n - 1);
    Form w = gen.poly_form(n, k);
    SmoothMap f = gen.poly_map(n, n);
    Chain p = gen.chain(n, 2, k + 1, 0);
    return scalars_match(pullback(f, exterior_d(w)).eval(p),
                         exterior_d(pullback(f, w)).eval(p));
  });

  ctx.fuzz("pushforward-boundary-commutes", N, [&](std::string&) {
    int n = gen.uniform_int(1, 3);
    SmoothMap f = gen.poly_map(n, n);
    Chain p = gen.chain(n, 2, gen.uniform_int(1, n), 1);
    return chains_match(f.pushforward(boundary(p)), boundary(f.pushforward(p)));
  });

  ctx.fuzz("pushforward-chain-rule", N, [&](std::string&) {
    int n = gen.uniform_int(1, 3);
    SmoothMap f = gen.poly_map(n, n);
    SmoothMap g = gen.poly_map(n, n);
    Chain p = gen.chain(n, 2, gen.uniform_int(0, n), 1);
    return chains_match(compose(f, g).pushforward(p),
                        f.pushforward(g.pushforward(p)));
  });

  ctx.fuzz("magic-formula-1vector", N, [&](std::string& note) {
    int n = gen.uniform_int(1, cfg.max_n);
    Vec xv = gen.vector(n);
    KVector x = KVector::from_vec(xv);
    Chain p = gen.chain(n, 3, gen.uniform_int(0, n), 0);
    if (chains_match(magic_nabla(x, p), prederivative(xv, p))) return true;
    note = "magic formula failed on " + p.str();
    return false;
  });

  ctx.fuzz("magic-formula-2vector-expansion", N, [&](std::string&) {
    int n = gen.uniform_int(2, cfg.max_n);
    KVector x = gen.kvector(n, 2);
    Chain p = gen.chain(n, 3, gen.uniform_int(0, n), 0);
    // del(X . P) + X . del(P) == (del X) . P + 2 X . del(P), all products on
    // the left in the chain algebra.
    Chain lhs = magic_nabla(x, p);
    XElement dx = boundary_x(XElement::from_kvector(x));
    Chain rhs(p.n());
    for (const auto& [at, payload] : p.support()) {
      XElement t = x_product(dx, payload) +
                   Scalar(2) * x_product(XElement::from_kvector(x),
                                         boundary_x(payload));
      rhs.add_pole(at, t);
    }
    return chains_match(lhs, rhs);
  });

  ctx.fuzz("exterior-nilpotent", N, [&](std::string&) {
    int n = gen.uniform_int(2, cfg.max_n);
    int m = gen.uniform_int(1, n);
    KVector beta = KVector::basis(n, gen.multi_index(n, m));
    Chain p = gen.chain(n, 2, gen.uniform_int(0, n), 0);
    return exterior_product(beta, exterior_product(beta, p)).is_zero();
  });

  ctx.fuzz("exterior-function-scalars", N, [&](std::string&) {
    int n = gen.uniform_int(2, cfg.max_n);
    KVector beta = gen.kvector(n, gen.uniform_int(1, n - 1));
    Form phi(n, 0);
    phi.add_term(MultiIndex(), gen.poly_coeff(n));
    auto phi_fn = [&](const Point& at) { return phi.eval_at(at); };
    Chain p = gen.chain(n, 2, 1, 0);
    Chain a = scale_by_function(phi_fn, exterior_product(beta, p));
    Chain b = exterior_product(beta, scale_by_function(phi_fn, p));
    return chains_match(a, b);
  });

  ctx.fuzz("exterior-pushforward-linear", N, [&](std::string&) {
    int n = gen.uniform_int(2, 3);
    std::vector<Vec> rows;
    for (int i = 0; i < n; ++i) rows.push_back(gen.vector(n));
    SmoothMap f = SmoothMap::linear(rows);
    KVector beta = gen.kvector(n, 1);
    Chain p = gen.chain(n, 2, 1, 0);
    KVector pushed_beta = f.push_kvector(zero_vec(n), beta);
    return chains_match(f.pushforward(exterior_product(beta, p)),
                        exterior_product(pushed_beta, f.pushforward(p)));
  });

  ctx.fuzz("interior-nilpotent", N, [&](std::string&) {
    int n = gen.uniform_int(2, cfg.max_n);
    int m = gen.uniform_int(1, n / 2 > 0 ? n / 2 : 1);
    KVector beta = KVector::basis(n, gen.multi_index(n, m));
    Form w = gen.poly_form(n, gen.uniform_int(2 * m > n ? 2 * m - n : 0, n));
    Form iiw = interior_product(beta, interior_product(beta, w));
    Chain p = gen.chain(n, 2, std::max(w.grade() - 2 * m, 0), 1);
    return scalars_match(iiw.eval(p), Scalar());
  });

  ctx.fuzz("interior-exterior-duality", N, [&](std::string&) {
    int n = gen.uniform_int(2, cfg.max_n);
    int m = gen.uniform_int(1, n - 1);
    KVector beta = gen.kvector(n, m);
    int k = gen.uniform_int(0, n - m);
    Form w = gen.poly_form(n, k + m);
    Chain p = gen.chain(n, 2, k, 1);
    return scalars_match(interior_product(beta, w).eval(p),
                         w.eval(exterior_product(beta, p)));
  });

  ctx.fuzz("extrusion-slant-duality", N, [&](std::string&) {
    int n = gen.uniform_int(2, cfg.max_n);
    int m = gen.uniform_int(1, n - 1);
    KVector beta = KVector::basis(n, gen.multi_index(n, m),
                                  gen.small_scalar(3, 2, true));
    int k = gen.uniform_int(0, n - m);
    Form w = gen.poly_form(n, k);
    Chain p = gen.chain(n, 2, k + m, 1);
    return scalars_match(extrusion(beta, w).eval(p),
                         w.eval(pointwise_product(ProductMode::kSlant, p, beta)));
  });

  ctx.fuzz("laplace-duality", N, [&](std::string&) {
    int n = gen.uniform_int(2, 3);
    int k = gen.uniform_int(0, n);
    Form w = gen.poly_form(n, k);
    Chain p = gen.chain(n, 2, k, 0);
    return scalars_match(form_laplacian(w).eval(p), w.eval(geometric_laplace(p)));
  });

  ctx.fuzz("hodge-star-involution", N, [&](std::string&) {
    int n = gen.uniform_int(1, cfg.max_n);
    int k = gen.uniform_int(0, n);
    Form w = gen.poly_form(n, k);
    Chain p = gen.chain(n, 2, k, 1);
    Scalar sign((k * (n - k)) % 2 == 0 ? 1 : -1);
    return scalars_match(hodge_star(hodge_star(w)).eval(p),
                         (sign * w).eval(p));
  });

  ctx.fuzz("wedge-forms-leibniz", N, [&](std::string&) {
    int n = gen.uniform_int(2, cfg.max_n);
    int k = gen.uniform_int(0, 1);
    int m = gen.uniform_int(0, n - k - 1);
    Form w = gen.poly_form(n, k);
    Form eta = gen.poly_form(n, m);
    Form lhs = exterior_d(wedge_forms(w, eta));
    Form rhs = wedge_forms(exterior_d(w), eta) +
               (k % 2 == 0 ? Scalar(1) : Scalar(-1)) *
                   wedge_forms(w, exterior_d(eta));
    Chain p = gen.chain(n, 2, k + m + 1, 1);
    return scalars_match(lhs.eval(p), rhs.eval(p));
  });

  ctx.fuzz("vec0-boundary-zero", N, [&](std::string&) {
    int n = gen.uniform_int(1, cfg.max_n);
    Chain p = gen.chain(n, 3, gen.uniform_int(1, n), 1);
    return vec_part(0, boundary(p)).is_zero();
  });

  ctx.fuzz("vec0-difference-zero", N, [&](std::string&) {
    int n = gen.uniform_int(1, cfg.max_n);
    Chain d = difference_chain({gen.vector(n)}, gen.point(n),
                               gen.kvector(n, gen.uniform_int(0, n)));
    XElement v = vec_part(0, d);
    return xelements_match(v, XElement(n));
  });

  ctx.fuzz("vec0-contract-translate-invariant", N, [&](std::string&) {
    int n = gen.uniform_int(1, cfg.max_n);
    Chain p = gen.chain(n, 3, gen.uniform_int(0, n), 0);
    KVector v = vec0(p);
    Scalar lambda = Scalar::of_mode(Rational(gen.uniform_int(1, 4), 4));
    bool ok = vec0(contract(lambda, p)) == v;
    ok = ok && vec0(translate(gen.vector(n), p)) == v;
    return ok;
  });

  // Continuity bounds with bracket semantics.
  const long B = cfg.bound_checks;
  ctx.fuzz("bound-boundary", B, [&](std::string&) {
    int n = gen.uniform_int(1, 3);
    int k = gen.uniform_int(1, n);
    Chain p = gen.chain(n, 3, k, 0);
    return check_bound(boundary(p), p, k, 1, 0).ok;
  });

  ctx.fuzz("bound-prederivative", B, [&](std::string&) {
    int n = gen.uniform_int(1, 3);
    Vec u = gen.vector(n);
    Chain p = gen.chain(n, 3, gen.uniform_int(0, n), 0);
    return check_bound(prederivative(u, p), p, vec_norm(u), 1, 0).ok;
  });

  ctx.fuzz("bound-translation", B, [&](std::string&) {
    int n = gen.uniform_int(1, 3);
    Vec u = gen.vector(n);
    Chain p = gen.chain(n, 3, gen.uniform_int(0, n), 0);
    return check_bound(translate(u, p) - p, p, vec_norm(u), 1, 0).ok;
  });

  ctx.fuzz("bound-vec0-mass", B, [&](std::string&) {
    int n = gen.uniform_int(1, 3);
    Chain p = gen.chain(n, 3, gen.uniform_int(0, n), 0);
    double lhs = mass(vec0(p)).to_double();
    double rhs = norm_upper_bound(p, gen.uniform_int(1, 2)).cost();
    return lhs <= rhs + 1e-9;
  });

  ctx.fuzz("bound-pushforward", B, [&](std::string&) {
    int n = gen.uniform_int(1, 2);
    SmoothMap f = gen.poly_map(n, n);
    Chain p = gen.chain(n, 2, gen.uniform_int(0, n), 0);
    MapSampleSpec spec;
    spec.lo = zero_vec(n);
    spec.hi = zero_vec(n);
    for (int i = 0; i < n; ++i) {
      spec.lo[static_cast<size_t>(i)] = Scalar(-2);
      spec.hi[static_cast<size_t>(i)] = Scalar(2);
    }
    std::vector<int> grades;
    for (const auto& bd : p.bidegrees())
      if (bd.grade > 0) grades.push_back(bd.grade);
    if (grades.empty()) grades.push_back(1);
    spec.grades = grades;
    for (const auto& [at, payload] : p.support()) spec.extra_points.push_back(at);
    double est = mapping_norm(f, 0, spec);
    return check_bound(f.pushforward(p), p, est, 0, 0).ok;
  });

  return out;
}

void write_experiments_csv(const std::string& path,
                           const std::vector<ExperimentReport>& reports) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "suite,experiment,level,residual,value,expected,error\n";
  for (const auto& rep : reports)
    for (const auto& row : rep.rows) {
      os << rep.suite << ',' << rep.name << ',' << row.level << ','
         << row.residual << ',' << row.value << ',';
      if (rep.expected) os << *rep.expected;
      os << ',' << row.error << '\n';
    }
}

void write_summary_json(const std::string& path,
                        const std::vector<ExperimentReport>& reports,
                        const std::vector<IdentityReport>& identities) {
  nlohmann::json j;
  j["arithmetic_mode"] = arithmetic_mode_name();
  j["experiments"] = nlohmann::json::array();
  for (const auto& rep : reports) {
    nlohmann::json e;
    e["suite"] = rep.suite;
    e["name"] = rep.name;
    e["pass"] = rep.pass();
    e["identity_ok"] = rep.identity_ok();
    e["value_ok"] = rep.value_ok();
    e["ratio_ok"] = rep.ratio_ok();
    e["max_residual"] = rep.max_residual();
    if (rep.expected) e["expected"] = *rep.expected;
    e["provenance"] = rep.provenance;
    e["rows"] = nlohmann::json::array();
    for (const auto& row : rep.rows)
      e["rows"].push_back({{"level", row.level},
                           {"residual", row.residual},
                           {"value", row.value},
                           {"error", row.error}});
    j["experiments"].push_back(e);
  }
  j["identities"] = nlohmann::json::array();
  for (const auto& rep : identities)
    j["identities"].push_back({{"name", rep.name},
                               {"instances", rep.instances},
                               {"violations", rep.violations},
                               {"pass", rep.pass()},
                               {"note", rep.note}});
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << j.dump(2) << '\n';
}

}  // namespace chainlets
