#pragma once

#include <random>

#include "chainlets/chain.hpp"
#include "chainlets/form.hpp"
#include "chainlets/smooth_map.hpp"

namespace chainlets {

// Seeded generators for fuzzed instances.  Values honor the global
// arithmetic mode (small exact rationals in rational mode).
class InstanceGen {
 public:
  explicit InstanceGen(unsigned seed) : eng_(seed) {}

  std::mt19937_64& engine() { return eng_; }

  int uniform_int(int lo, int hi);  // inclusive
  Scalar small_scalar(int max_abs_num = 4, int max_den = 4, bool nonzero = false);
  Vec vector(int n, bool nonzero = true);
  Point point(int n);
  MultiIndex multi_index(int n, int k);
  KVector kvector(int n, int k, int max_terms = 3, bool nonzero = true);
  SymMonomial sym_monomial(int n, int order);
  // A single nonzero term of the given bidegree.
  XElement pure_term(int n, int order, int grade);
  XElement xelement(int n, int max_order, int max_grade, int max_terms = 4);
  Chain chain(int n, int poles, int grade, int max_order = 0);
  CoeffFn poly_coeff(int n, int max_degree = 2, int terms = 3);
  CoeffFn trig_coeff(int n);
  Form poly_form(int n, int k, int max_degree = 2, int terms = 2);
  Form trig_form(int n, int k);
  SmoothMap poly_map(int n, int m, int max_degree = 2);

 private:
  std::mt19937_64 eng_;
};

}  // namespace chainlets
