#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "crlab/report.hpp"

namespace crlab {

/// Everything a CLI run depends on. Persisted as flat `key = value` lines.
struct RunConfig {
  std::string command;  ///< solve | flow | vtype | verify | counterexample | examples

  // model
  std::string family = "one-nonminimal";
  std::string germ = "p1";
  double a = kDefaultExponent;
  int m = 2;

  // solve
  int jet = 5;
  double tau = kDefaultTau;
  bool vanish_at_origin = false;
  unsigned workers = 1;

  // flow: field = alpha z1 dz1 + i beta z2 dz2 + i gamma dz2 unless field_json is set
  double alpha = 1.0;
  double beta = 2.0;
  double gamma = 0.0;
  std::string field_json;
  double start_t = 0.1;
  double start_z2_re = 0.5;
  double start_z2_im = 0.0;
  double t_end = 5.0;
  double tol = kDefaultFlowTol;

  // vtype
  int k_max = kDefaultKMax;
  double radius_lo = 1e-3;
  double radius_hi = 1e-1;
  int n_radii = 10;
  std::string points;  ///< "re,im;re,im;..." (empty: default scan grid)

  // verify
  std::string map = "rotate:0.7";

  // counterexample (also used when germ = counterexample)
  double z20_re = 0.5;
  double z20_im = 0.0;
  double c = 0.3;
  double t0 = 0.5;
  double r = 0.1;

  // examples
  std::vector<std::string> which = {"4.1", "4.2", "4.3", "4.4", "A"};

  // output
  std::string out_dir;  ///< defaults to $CRLAB_OUT_DIR, then "."
  std::string out;      ///< report path; default <out_dir>/<command>.json
  std::string csv;      ///< CSV path for flow / vtype; default <out_dir>/<command>.csv

  std::string to_kv() const;
  /// Unknown keys or malformed values throw ParameterError.
  static RunConfig from_kv(const std::string& text);
  void set(const std::string& key, const std::string& value);
};

/// Output of a run before anything is written to disk.
struct RunResult {
  Json report;
  std::string csv;  ///< empty when the command produces no table
  bool pass = true;
};

/// Pure computation for a validated config. Invalid input throws crlab::Error.
RunResult execute(const RunConfig& config);

/// execute + write files. Returns 0 (pass), 1 (a verdict failed) or 2 (invalid input).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) on top of an optional `--config file` and runs.
int main_entry(int argc, char** argv);

}  // namespace crlab
