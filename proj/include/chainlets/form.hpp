#pragma once

#include <map>
#include <vector>

#include "chainlets/chain.hpp"
#include "chainlets/coeff_fn.hpp"
#include "chainlets/smooth_map.hpp"

namespace chainlets {

enum class NormMethod { kAnalyticBound, kSampled };

// Per-order norm estimates: analytic entries are certified upper bounds,
// sampled entries are lower estimates.
struct FormNormEstimate {
  int r = 0;
  std::vector<double> values;
  std::vector<NormMethod> methods;
  bool fully_analytic() const;
  // max over orders 0..r of the per-order values.
  double natural_value() const;
};

// Grid-and-directions specification for sampled suprema.
struct SampleSpec {
  Vec lo;
  Vec hi;
  int points_per_axis = 5;
  int random_directions = 8;
  std::vector<double> scales = {1.0, 0.5, 0.125};
  unsigned seed = 1;
};

// A differential k-form with symbolic coefficients: a linear functional on
// polypolar chains.  Evaluation on an order-j pole takes j directional
// derivatives of the coefficients.
class Form {
 public:
  Form() : n_(0), k_(0) {}
  Form(int n, int k);
  static Form basis(int n, const MultiIndex& mi, CoeffFn coeff);
  static Form constant_basis(int n, const MultiIndex& mi, Scalar c = Scalar(1));

  int n() const { return n_; }
  int grade() const { return k_; }
  bool has_terms() const { return !terms_.empty(); }
  const std::map<MultiIndex, CoeffFn>& terms() const { return terms_; }

  void add_term(const MultiIndex& mi, const CoeffFn& f);

  Scalar eval(const Chain& p) const;
  Scalar eval_pole(const Pole& pole) const;
  // Grade-0 helper: the coefficient function value at a point.
  Scalar eval_at(const Point& x) const;

  friend Form operator+(const Form& a, const Form& b);
  friend Form operator-(const Form& a, const Form& b);
  friend Form operator*(const Scalar& c, const Form& a);

  bool is_polynomial() const;

  std::string str() const;

 private:
  int n_;
  int k_;
  std::map<MultiIndex, CoeffFn> terms_;
};

// Coefficient-wise directional derivative; dual to the prederivative.
Form dir_derivative(const Vec& u, const Form& w);

// d(f dx_I) = sum_i (df/dx_i) dx_i ^ dx_I ; agrees with the boundary pairing
// eval(d w, P) = eval(w, boundary(P)) and satisfies d(d(w)) = 0.
Form exterior_d(const Form& w);

// star(w)(p; a) = w(p; perp(a)), term rule star(f dx_I) = sgn * f dx_{I^c}.
Form hodge_star(const Form& w);

// Grassmann wedge on coefficients.
Form wedge_forms(const Form& a, const Form& b);

// f^* w (x; a) = w(f(x); f_* a); exact for coefficient-class maps.
Form pullback(const SmoothMap& f, const Form& w);

// Interior product i_b w (p; a) = w(p; a ^ b); lowers grade by grade(b).
Form interior_product(const KVector& beta, const Form& w);

// Extrusion ext_b w (p; a) = w(p; a / b); raises grade by grade(b).
Form extrusion(const KVector& beta, const Form& w);

// delta = star d star ; laplacian = d delta + delta d.  Pairs with the
// geometric Laplace operator: eval(laplacian(w), P) = eval(w, box(P)).
Form codifferential(const Form& w);
Form form_laplacian(const Form& w);

// Central finite differences with Richardson extrapolation; cross-check for
// the exact directional derivative.
double numeric_directional(const Form& w, const Vec& u, const Pole& pole,
                           double h = 1e-3);

// Per-order norm estimation: certified analytic bounds where every
// coefficient has a finite derivative profile, sampled lower estimates
// otherwise.
FormNormEstimate form_norm(const Form& w, int r, const SampleSpec& spec);

}  // namespace chainlets
