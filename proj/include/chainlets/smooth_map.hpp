#pragma once

#include <vector>

#include "chainlets/chain.hpp"
#include "chainlets/coeff_fn.hpp"

namespace chainlets {

// A smooth map between Euclidean spaces with component functions in the
// coefficient class, so Jacobians are exact.
class SmoothMap {
 public:
  SmoothMap(int domain_dim, std::vector<CoeffFn> components);

  static SmoothMap identity(int n);
  // rows: codomain_dim vectors of length domain_dim.
  static SmoothMap linear(const std::vector<Vec>& rows);

  int domain_dim() const { return dom_; }
  int codomain_dim() const { return static_cast<int>(comps_.size()); }
  const std::vector<CoeffFn>& components() const { return comps_; }

  Point apply(const Point& x) const;
  // J[i][j] = d f_(i+1) / d x_(j+1) at x.
  std::vector<Vec> jacobian(const Point& x) const;
  Vec push_vector(const Point& x, const Vec& u) const;
  KVector push_kvector(const Point& x, const KVector& a) const;

  // f_*(x; D_U^j a) = (f(x); D_{J u_1, ..., J u_j} (L^k J) a), the Jacobian
  // frozen at each support point.
  Chain pushforward(const Chain& p) const;

  bool is_polynomial() const;

  // x -> f(g(x)); throws CompositionError outside the coefficient class.
  friend SmoothMap compose(const SmoothMap& f, const SmoothMap& g);

 private:
  int dom_;
  std::vector<CoeffFn> comps_;
  std::vector<std::vector<CoeffFn>> jac_;  // precomputed symbolic partials
};

}  // namespace chainlets
