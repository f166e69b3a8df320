#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gbvlab/families.hpp"
#include "gbvlab/rate.hpp"

namespace gbvlab {

using nlohmann::json;

struct Tolerances {
  double tail_tolerance = 1e-7;  // experiment-level default, overridable
  int grid_oversample = 4;
  std::int64_t N_max = 0;        // 0 -> 4n
  std::int64_t n0_cap = 8;
};

/// Declarative description of one family sweep.
struct ExperimentConfig {
  Family family;
  std::vector<std::int64_t> degrees;
  std::set<std::string> checks;  // subset of known_checks()
  Tolerances tol;
  std::string output_dir;        // empty -> stdout only
  std::string format = "csv";    // csv | json

  static const std::set<std::string>& known_checks();
  void validate() const;
};

/// Strict parse: unknown keys and unknown check/family names are errors.
ExperimentConfig parse_experiment_config(const json& j);

struct ExperimentReport {
  std::string family_label;
  std::map<std::string, ClassReport> class_reports;
  std::vector<RateRecord> rows;
  std::map<std::int64_t, std::string> row_errors;  // degree -> message
  json summary;
  bool ok = true;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// One row of the flat suite table.
struct SuiteRow {
  std::string family;
  std::int64_t n = 0;
  std::string class_verdict;
  double gbv_M = 0.0;
  std::int64_t gbv_N0 = 0;
  RateRecord rate;
  double ratio_en_qn = 0.0;
  std::string thm3_ratio;  // formatted or empty
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  std::map<std::string, std::string> skipped;  // family -> reason
  std::map<std::string, std::pair<double, double>> ratio_band;  // min/max
  std::vector<std::string> flags;  // families whose ratio drifts too far
  bool ok = true;
};

/// Theorem-1 equivalence study across several families.
SuiteReport run_equivalence_suite(const std::vector<Family>& families,
                                  const std::vector<std::int64_t>& degrees,
                                  const Tolerances& tol);

/// Fixed-schema CSV (deterministic formatting, 12 significant digits).
std::string to_csv(const ExperimentReport& rep);
std::string to_csv(const SuiteReport& rep);
json to_json(const ClassReport& rep);
json to_json(const ExperimentReport& rep);
json to_json(const SuiteReport& rep);

/// Atomic write (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// Deterministic float formatting used by every emitter.
std::string format_float(double v);

}  // namespace gbvlab
