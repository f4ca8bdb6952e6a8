#pragma once
/* Named reproducible experiments over the desk model (R^m with polynomial
 * coefficients, stated bounds) and over synthetic finite representations,
 * with machine-readable pass/fail reports. */

#include "affcoh/affine_rep.hpp"
#include "affcoh/poly_module.hpp"
#include "affcoh/tensor_fields.hpp"

#include <string>
#include <vector>

namespace affcoh {

struct exp_config {
  int m = 2;
  int degree = 4;          /* symbolic identity bound D */
  long w_lo = 0, w_hi = 5; /* weight window for graded sectors */
};

/* description of the violated bound, empty when the config is feasible;
 * pass an experiment name to also enforce its documented bounds */
std::string config_violation(const exp_config& c, const std::string& name = "");

struct exp_report {
  std::string name;
  exp_config cfg;
  std::string expected;
  std::string provenance; /* origin label for the expected value, echoed from the catalog */
  std::string computed;
  bool pass = false;
  long runtime_ms = 0;
  std::vector<std::string> notes;
};

const std::vector<std::string>& experiment_catalog();

/* throws error on an unknown name or an infeasible config */
exp_report run_experiment(const std::string& name, const exp_config& cfg,
                          exec ex = default_exec());
std::vector<exp_report> run_all(const exp_config& cfg, exec ex = default_exec());

/* canonical JSON: deterministic for a fixed config except the timestamp
 * field, which also carries the measured runtimes */
std::string reports_json(const std::vector<exp_report>& rs,
                         const std::string& timestamp);
std::string reports_csv(const std::vector<exp_report>& rs);
std::string reports_md(const std::vector<exp_report>& rs);

struct check_result {
  std::string name;
  bool pass = false;
  std::string detail;
};
/* axiom and property suites behind the `check` subcommand */
std::vector<check_result> check_suites(const exp_config& cfg, exec ex = default_exec());

} // namespace affcoh
