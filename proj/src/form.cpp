#include "chainlets/form.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace chainlets {

bool FormNormEstimate::fully_analytic() const {
  for (auto m : methods)
    if (m != NormMethod::kAnalyticBound) return false;
  return true;
}

double FormNormEstimate::natural_value() const {
  double v = 0.0;
  for (double x : values) v = std::max(v, x);
  return v;
}

Form::Form(int n, int k) : n_(n), k_(k) {
  if (n < 0 || k < 0) throw std::invalid_argument("Form: negative shape");
}

Form Form::basis(int n, const MultiIndex& mi, CoeffFn coeff) {
  Form w(n, mi.grade());
  w.add_term(mi, coeff);
  return w;
}

Form Form::constant_basis(int n, const MultiIndex& mi, Scalar c) {
  return basis(n, mi, CoeffFn::constant(c));
}

void Form::add_term(const MultiIndex& mi, const CoeffFn& f) {
  if (mi.grade() != k_) throw std::invalid_argument("Form: grade mismatch");
  if (mi.max_index() > n_) throw std::invalid_argument("Form: index exceeds n");
  if (f.is_zero()) return;
  auto it = terms_.find(mi);
  if (it == terms_.end()) {
    terms_.emplace(mi, f);
  } else {
    CoeffFn sum = it->second + f;
    if (sum.is_zero())
      terms_.erase(it);
    else
      it->second = sum;
  }
}

Scalar Form::eval_pole(const Pole& pole) const {
  Scalar s;
  for (const auto& [key, c] : pole.payload.terms()) {
    if (key.second.grade() != k_) continue;  // mismatched grade pairs to zero
    auto it = terms_.find(key.second);
    if (it == terms_.end()) continue;
    s += c * it->second.mixed_partial(key.first.factors()).eval(pole.at);
  }
  return s;
}

Scalar Form::eval(const Chain& p) const {
  Scalar s;
  for (const auto& [at, payload] : p.support())
    s += eval_pole(Pole{at, payload});
  return s;
}

Scalar Form::eval_at(const Point& x) const {
  if (k_ != 0) throw std::invalid_argument("Form::eval_at: requires a 0-form");
  auto it = terms_.find(MultiIndex());
  return it == terms_.end() ? Scalar() : it->second.eval(x);
}

Form operator+(const Form& a, const Form& b) {
  if (a.n_ != b.n_ || a.k_ != b.k_)
    throw std::invalid_argument("Form: shape mismatch in +");
  Form r = a;
  for (const auto& [mi, f] : b.terms_) r.add_term(mi, f);
  return r;
}

Form operator-(const Form& a, const Form& b) {
  return a + Scalar(-1) * b;
}

Form operator*(const Scalar& c, const Form& a) {
  Form r(a.n_, a.k_);
  for (const auto& [mi, f] : a.terms_) r.add_term(mi, CoeffFn::constant(c) * f);
  return r;
}

bool Form::is_polynomial() const {
  for (const auto& [mi, f] : terms_)
    if (!f.is_polynomial()) return false;
  return true;
}

std::string Form::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mi, f] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << f.str();
    for (size_t i = 0; i < mi.indices().size(); ++i)
      os << (i == 0 ? "*" : "^") << "dx" << mi.indices()[i];
  }
  return os.str();
}

Form dir_derivative(const Vec& u, const Form& w) {
  Form r(w.n(), w.grade());
  for (const auto& [mi, f] : w.terms()) r.add_term(mi, f.directional(u));
  return r;
}

Form exterior_d(const Form& w) {
  Form r(w.n(), w.grade() + 1);
  for (const auto& [mi, f] : w.terms()) {
    for (int i = 1; i <= w.n(); ++i) {
      MultiIndex di({i});
      int s = merge_sign(di, mi);
      if (s == 0) continue;
      CoeffFn df = f.partial(i);
      if (df.is_zero()) continue;
      r.add_term(*merge_disjoint(di, mi), CoeffFn::constant(Scalar(s)) * df);
    }
  }
  return r;
}

Form hodge_star(const Form& w) {
  Form r(w.n(), w.n() - w.grade());
  for (const auto& [mi, f] : w.terms()) {
    MultiIndex c = mi.complement(w.n());
    int s = c.complement_sign(w.n());
    r.add_term(c, CoeffFn::constant(Scalar(s)) * f);
  }
  return r;
}

Form wedge_forms(const Form& a, const Form& b) {
  if (a.n() != b.n()) throw std::invalid_argument("wedge_forms: dimension mismatch");
  Form r(a.n(), a.grade() + b.grade());
  for (const auto& [mi, f] : a.terms()) {
    for (const auto& [mj, g] : b.terms()) {
      int s = merge_sign(mi, mj);
      if (s == 0) continue;
      r.add_term(*merge_disjoint(mi, mj), CoeffFn::constant(Scalar(s)) * f * g);
    }
  }
  return r;
}

Form pullback(const SmoothMap& f, const Form& w) {
  if (f.codomain_dim() != w.n())
    throw std::invalid_argument("pullback: form lives on the codomain");
  const int n = f.domain_dim();
  // df_i as symbolic 1-forms on the domain.
  std::vector<Form> df;
  df.reserve(f.components().size());
  for (const auto& comp : f.components()) {
    Form d(n, 1);
    for (int j = 1; j <= n; ++j) d.add_term(MultiIndex({j}), comp.partial(j));
    df.push_back(d);
  }
  Form r(n, w.grade());
  for (const auto& [mi, g] : w.terms()) {
    Form part(n, 0);
    part.add_term(MultiIndex(), g.substitute(f.components()));
    for (int idx : mi.indices())
      part = wedge_forms(part, df[static_cast<size_t>(idx - 1)]);
    r = r + part;
  }
  return r;
}

Form interior_product(const KVector& beta, const Form& w) {
  const int m = beta.grade();
  Form r(w.n(), std::max(w.grade() - m, 0));
  if (m > w.grade()) return r;
  // (i_b w)_J = sum_L b_L sign(J, L) w_{J u L}
  for (const auto& [mi, f] : w.terms()) {
    // Split mi into J (kept) and L (from beta): iterate beta terms instead.
    for (const auto& [ml, bc] : beta.coeffs()) {
      // need L subset of mi with J = mi \ L and sign merge_sign(J, L)
      std::vector<int> rest;
      bool subset = true;
      auto lt = ml.indices().begin();
      for (int x : mi.indices()) {
        if (lt != ml.indices().end() && *lt == x)
          ++lt;
        else
          rest.push_back(x);
      }
      subset = (lt == ml.indices().end());
      if (!subset) continue;
      MultiIndex mj(std::move(rest));
      int s = merge_sign(mj, ml);
      if (s == 0) continue;
      r.add_term(mj, CoeffFn::constant(Scalar(s) * bc) * f);
    }
  }
  return r;
}

Form extrusion(const KVector& beta, const Form& w) {
  if (beta.is_zero()) throw std::domain_error("extrusion: zero multivector");
  const int m = beta.grade();
  Scalar m2 = mass(beta) * mass(beta);
  Form r(w.n(), w.grade() + m);
  // (ext_b w)_J = sum_{L in beta, L subset J} (b_L / M^2) sign(L, J\L) w_{J\L}
  // Build by enlarging each w-term's index with each beta index.
  for (const auto& [mi, f] : w.terms()) {
    for (const auto& [ml, bc] : beta.coeffs()) {
      int s = merge_sign(ml, mi);
      if (s == 0) continue;
      r.add_term(*merge_disjoint(ml, mi),
                 CoeffFn::constant(Scalar(s) * bc / m2) * f);
    }
  }
  return r;
}

Form codifferential(const Form& w) {
  return hodge_star(exterior_d(hodge_star(w)));
}

Form form_laplacian(const Form& w) {
  Form a = exterior_d(codifferential(w));
  Form b = codifferential(exterior_d(w));
  return a + b;
}

double numeric_directional(const Form& w, const Vec& u, const Pole& pole,
                           double h) {
  Chain base(pole.payload.n());
  base.add_pole(pole.at, pole.payload);
  auto diff_quot = [&](double step) {
    Vec su = vec_scale(Scalar::fp(step), u);
    Chain d = translate(su, base) - translate(vec_scale(Scalar(-1), su), base);
    return w.eval(d).to_double() / (2.0 * step);
  };
  double d1 = diff_quot(h);
  double d2 = diff_quot(h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

FormNormEstimate form_norm(const Form& w, int r, const SampleSpec& spec) {
  FormNormEstimate est;
  est.r = r;
  est.values.assign(static_cast<size_t>(r + 1), 0.0);
  est.methods.assign(static_cast<size_t>(r + 1), NormMethod::kAnalyticBound);

  // Analytic path: per-order max over terms of the coefficient profile.
  std::vector<double> analytic(static_cast<size_t>(r + 1), 0.0);
  for (const auto& [mi, f] : w.terms()) {
    auto p = f.bound_profile(r);
    for (size_t j = 0; j < analytic.size(); ++j)
      analytic[j] = std::max(analytic[j], p[j]);
  }

  // Sampled path for orders whose analytic bound is infinite.
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int n = w.n();
  std::vector<Point> points;
  {
    int per = std::max(spec.points_per_axis, 1);
    std::vector<int> counter(static_cast<size_t>(n), 0);
    while (true) {
      Point p(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        double lo = i < static_cast<int>(spec.lo.size())
                        ? spec.lo[static_cast<size_t>(i)].to_double() : -1.0;
        double hi = i < static_cast<int>(spec.hi.size())
                        ? spec.hi[static_cast<size_t>(i)].to_double() : 1.0;
        double t = per == 1 ? 0.5
                            : static_cast<double>(counter[static_cast<size_t>(i)]) /
                                  (per - 1);
        p[static_cast<size_t>(i)] = Scalar::fp(lo + t * (hi - lo));
      }
      points.push_back(p);
      int carry = 0;
      while (carry < n) {
        if (++counter[static_cast<size_t>(carry)] < per) break;
        counter[static_cast<size_t>(carry)] = 0;
        ++carry;
      }
      if (carry == n) break;
    }
  }
  auto random_unit = [&]() {
    Vec u(static_cast<size_t>(n));
    double norm = 0.0;
    while (norm < 1e-9) {
      for (int i = 0; i < n; ++i) u[static_cast<size_t>(i)] = Scalar::fp(unit(rng));
      norm = vec_norm(u);
    }
    return vec_scale(Scalar::fp(1.0 / norm), u);
  };

  for (int j = 0; j <= r; ++j) {
    if (std::isfinite(analytic[static_cast<size_t>(j)])) {
      est.values[static_cast<size_t>(j)] = analytic[static_cast<size_t>(j)];
      continue;
    }
    est.methods[static_cast<size_t>(j)] = NormMethod::kSampled;
    double best = 0.0;
    std::vector<MultiIndex> alphas;
    {
      // all grade-k multi-indices present in w
      for (const auto& [mi, f] : w.terms()) alphas.push_back(mi);
    }
    for (const auto& x : points) {
      for (int d = 0; d < std::max(spec.random_directions, 1); ++d) {
        for (double scale : spec.scales) {
          std::vector<Vec> dirs;
          double unorm = 1.0;
          for (int t = 0; t < j; ++t) {
            Vec u = vec_scale(Scalar::fp(scale), random_unit());
            unorm *= scale;
            dirs.push_back(u);
          }
          for (const auto& mi : alphas) {
            KVector a = KVector::basis(n, mi);
            Chain delta = difference_chain(dirs, x, a);
            double v = std::fabs(w.eval(delta).to_double()) / unorm;
            best = std::max(best, v);
          }
          if (j == 0) break;  // no direction dependence at order 0
        }
        if (j == 0) break;
      }
    }
    est.values[static_cast<size_t>(j)] = best;
  }
  return est;
}

}  // namespace chainlets
