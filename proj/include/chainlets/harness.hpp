#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chainlets/geometry.hpp"
#include "chainlets/norms.hpp"
#include "chainlets/random_gen.hpp"

namespace chainlets {

struct ExperimentRow {
  int level = 0;
  double residual = 0.0;  // discrete identity, must vanish
  double value = 0.0;     // integral under refinement
  double error = 0.0;     // |value - expected|
};

struct ExperimentReport {
  std::string suite;
  std::string name;
  std::optional<double> expected;
  std::string provenance;  // trivial | derived | paper
  std::vector<ExperimentRow> rows;
  double identity_tol = kFloatIdentityTol;
  double value_tol = 1e-3;
  double ratio_limit = 0.6;

  double max_residual() const;
  bool identity_ok() const;
  bool value_ok() const;   // final error under value_tol
  bool ratio_ok() const;   // consecutive errors shrink (or sit at the floor)
  bool pass() const;
};

// A custom Stokes-style experiment: a chain generator per level, the form,
// and an optional expected value.
struct StokesSpec {
  std::string name;
  std::function<Chain(int)> domain;
  Form form;
  std::optional<double> expected;
  std::string provenance = "derived";
};

ExperimentReport run_stokes_experiment(const StokesSpec& spec, int levels);

std::vector<ExperimentReport> stokes_suite(int levels);
std::vector<ExperimentReport> change_of_variables_suite(int levels);
std::vector<ExperimentReport> star_div_curl_suite(int levels);

struct IdentityFuzzConfig {
  unsigned seed = 1;
  long instances = 200;      // per identity
  long bound_checks = 50;    // per continuity bound
  int max_n = 4;
  std::string counterexample_dir;  // empty: do not serialize
};

struct IdentityReport {
  std::string name;
  long instances = 0;
  long violations = 0;
  std::string note;
  bool pass() const { return violations == 0; }
};

std::vector<IdentityReport> identity_suite(const IdentityFuzzConfig& cfg);

// CSV: one row per level per experiment.  JSON: experiments + identities.
void write_experiments_csv(const std::string& path,
                           const std::vector<ExperimentReport>& reports);
void write_summary_json(const std::string& path,
                        const std::vector<ExperimentReport>& reports,
                        const std::vector<IdentityReport>& identities);

}  // namespace chainlets
