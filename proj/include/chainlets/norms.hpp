#pragma once

#include <utility>
#include <vector>

#include "chainlets/chain.hpp"
#include "chainlets/form.hpp"
#include "chainlets/smooth_map.hpp"

namespace chainlets {

// One difference-chain summand coeff * Delta_dirs(base; payload): order-0
// parts have empty dirs.  Coefficients and geometry stay exact so the parts
// re-sum to the input chain bit for bit.
struct DecompositionPart {
  Scalar coeff;
  Point base;
  std::vector<Vec> dirs;
  KVector payload;  // unit basis k-vector

  int order() const { return static_cast<int>(dirs.size()); }
  Chain chain() const;
  double cost() const;
};

struct Decomposition {
  int n = 0;
  std::vector<DecompositionPart> parts;
  double cost() const;
  Chain reconstruct() const;
};

// Finite dual family: constant forms plus sine waves with analytically
// bounded natural norms.
struct DualFamilySpec {
  std::vector<double> frequencies = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  bool fit_displacements = true;  // aim sine directions at pole pairs
  bool axis_directions = true;
  size_t max_directions = 64;
};

struct NormBracket {
  int r = 0;
  double lower = 0.0;
  double upper = 0.0;
  Form lower_witness;
  Decomposition upper_witness;
};

// Optimal-decomposition upper bound: r=0 is the mass decomposition; r=1
// solves a min-cost transport between opposite-sign masses per basis
// direction (unmatched mass stays at order 0, so matches beyond distance 2
// never pay); r>=2 re-runs the matcher on the displacement structure of the
// lower-order parts.  Requires an order-0 chain.
Decomposition norm_upper_bound(const Chain& p, int r);

// Certified lower bound: max over the family of |w(P)| / upper(|w|^nat_r),
// with the denominator bounded analytically.  Returns value and witness.
std::pair<double, Form> norm_lower_bound(const Chain& p, int r,
                                         const DualFamilySpec& fam = {});

// Exhaustive infimum over decompositions whose difference parts connect
// existing supports; r <= 2 and at most brute_force_pole_limit poles.
double brute_force_norm(const Chain& p, int r);
inline constexpr size_t kBruteForcePoleLimit = 6;

NormBracket norm_bracket(const Chain& p, int r, const DualFamilySpec& fam = {});

struct BoundCheck {
  bool ok = false;
  double lhs_lower = 0.0;
  double rhs_upper = 0.0;
  double bound = 0.0;  // factor * rhs_upper
};

// Falsification semantics: asserts lower(|lhs|^r_lhs) <= factor *
// upper(|rhs|^r_rhs); a violation is a hard failure.
BoundCheck check_bound(const Chain& lhs, const Chain& rhs, double factor,
                       int r_lhs, int r_rhs, const DualFamilySpec& fam = {});

// Sampling grid for mapping norms.
struct MapSampleSpec {
  Vec lo;
  Vec hi;
  int points_per_axis = 3;
  int random_directions = 6;
  std::vector<int> grades = {1};
  unsigned seed = 7;
  std::vector<Point> extra_points;
};

// Sampled estimate-from-below of |f|_[r]: max over sampled unit difference
// chains of upper(|f_* Delta|) / ||Delta||.
double mapping_norm(const SmoothMap& f, int r, const MapSampleSpec& spec);

}  // namespace chainlets
