#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homckn/corpus.hpp"
#include "homckn/quadrature.hpp"
#include "homckn/report.hpp"
#include "homckn/sharpness.hpp"
#include "json.hpp"

namespace homckn {

struct ParameterGrid {
  std::vector<double> p{2.0};
  std::vector<double> alpha{0.0};
  std::vector<double> beta{1.0};
  std::vector<int> k{1};
  std::vector<int> m{1};
  /// Explicit (alpha, beta) pairs; when empty the product alpha x beta is used.
  std::vector<std::pair<double, double>> pairs;

  std::vector<std::pair<double, double>> alpha_beta() const;
};

struct OutputSpec {
  std::string json;
  std::string csv;
};

/// One batch run. JSON layout (every member optional):
///   {"group": "heis1", "norm": "koranyi", "checks": ["ckn", "hardy"],
///    "grid": {"p": [2], "alpha": [0], "beta": [1], "k": [1], "m": [1], "pairs": [[0, 1]]},
///    "corpus": {"kind": "mixed", "count": 10, "seed": 1, "r_min": 0.25, "r_max": 2.0},
///    "quadrature": {"radial_order": 32, "panels": 8, "box_points_per_axis": 64},
///    "sharpness": {"schedule": [[0.1, 10], [0.01, 100]], "transitions": "balanced"},
///    "output": {"json": "out.json", "csv": "out.csv"}}
struct RunConfig {
  std::string group = "r:3";
  std::string norm = "euclid";
  std::vector<std::string> checks{"ckn"};
  ParameterGrid grid;
  CorpusSpec corpus;
  QuadratureConfig quadrature;
  Schedule schedule = default_schedule();
  TransitionStyle transitions = TransitionStyle::balanced;
  OutputSpec output;

  /// Raises config-error (or incompatible-norm / unsupported-group) on bad input.
  void validate() const;
  nlohmann::ordered_json to_json() const;
  static RunConfig from_json(const nlohmann::ordered_json& j);
};

RunConfig load_run_config(const std::string& path);

/// Command-line overrides; unset members leave the config alone.
struct ConfigOverrides {
  std::optional<std::string> group, norm;
  std::optional<std::vector<double>> p, alpha, beta;
  std::optional<std::vector<int>> k, m;
  std::optional<int> resolution;  ///< Cartesian points per axis; radial panels = max(2, n/8)
  std::optional<std::uint64_t> seed;
  std::optional<int> count;
  std::optional<std::string> out;  ///< .csv paths go to output.csv, others to output.json
  std::optional<std::vector<std::string>> checks;
};

void apply_overrides(RunConfig& config, const ConfigOverrides& o);

/// Known check names: ckn, hardy, up1p, hpw1, hpw2, uncertainty (= up1p, hpw1,
/// hpw2), higher_order, higher_order_pair, l2_identity, l2_sharp_higher,
/// l2_combined (= a1 and a2), l2_combined_a1, l2_combined_a2, all.
std::vector<std::string> expand_checks(const std::vector<std::string>& checks);

struct VerifyResult {
  std::vector<InequalityReport> reports;
  std::vector<std::string> warnings;  ///< skipped grid entries
  std::vector<std::string> errors;    ///< failed evaluations
  int unsatisfied = 0;

  /// 0 iff every report is satisfied and nothing errored.
  int exit_code() const { return (unsatisfied == 0 && errors.empty()) ? 0 : 1; }
  nlohmann::ordered_json summary() const;
};

/// Runs the selected checks over corpus x grid. Degenerate-constant grid
/// entries (and entries outside a check's parameter range) are skipped with
/// a warning. Reports are ordered by field, then check, then grid position.
VerifyResult run_verify(const RunConfig& config);

/// Writes the configured outputs of a verify run.
void write_verify_outputs(const RunConfig& config, const VerifyResult& result);

struct SharpnessRun {
  ScanResult scan;
  int exit_code() const { return scan.lower_bound_ok ? 0 : 1; }
};

/// Scan for the first p, alpha, beta of the grid; writes output.json if set.
SharpnessRun run_sharpness(const RunConfig& config);

/// Sphere measure through the JSON side cache in $HOMCKN_CACHE_DIR (keyed by
/// group, norm and the quadrature hash); computes and stores on a miss. Without
/// the variable it just computes.
SphereMeasure cached_sphere_measure(const QuasiNormSpec& norm, const QuadratureConfig& config);

}  // namespace homckn
