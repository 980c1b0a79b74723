#pragma once

// Experiment configuration, dense random subsets of k-th powers,
// representation counts, and report emission.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "waring/arith.hpp"

namespace waring::harness {

using json = nlohmann::json;

enum class SubsetMode { bernoulli, exact_count, full };
enum class OutputFormat { json, csv };

std::string to_string(SubsetMode mode);
std::string to_string(OutputFormat format);
SubsetMode parse_subset_mode(const std::string& text);
OutputFormat parse_output_format(const std::string& text);

/// Parameters of a coverage experiment. The key=value file form uses the
/// field names below, one per line; '#' starts a comment.
struct ExperimentConfig {
  unsigned k = 2;
  unsigned w = 2;
  u64 N = 100000;        ///< largest n examined (n_max)
  unsigned s = 5;
  double density = 1.0;
  u64 seed = 1;
  double rho = 0.2;
  u64 grid = 0;          ///< 0 selects the default grid size
  SubsetMode subset_mode = SubsetMode::full;
  OutputFormat output_format = OutputFormat::json;
  u64 n_min = 1;
  /// Restrict to n = s (mod R_k).
  bool congruence_filter = true;

  /// Sets one field from its textual value. Throws PreconditionError for an
  /// unknown key or unparsable value.
  void set(const std::string& key, const std::string& value);
  void validate() const;
  std::string to_key_value() const;
  json to_json() const;
  static ExperimentConfig from_key_value(const std::string& text);
  static ExperimentConfig from_json(const json& j);
  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig load_config(const std::string& path);

/// k-th powers t^k <= range_max drawn at the given density; deterministic in
/// the seed.
std::vector<u64> random_dense_subset(unsigned k, u64 range_max, double density, u64 seed,
                                     SubsetMode mode);

/// |A cap [range_max]| / #{t^k <= range_max}.
double empirical_density(std::span<const u64> A, unsigned k, u64 range_max);

struct RepresentationCounts {
  std::vector<u64> counts;  ///< counts[n] = r_A^s(n), n in [0, n_max]
  /// Some count exceeded 2^64 - 1 and was saturated.
  bool overflow = false;
};

/// Ordered s-tuples from A summing to n, for every n <= n_max.
RepresentationCounts representation_count(std::span<const u64> A, unsigned s, u64 n_max);

/// min over 1 <= N <= n_max of |B cap [N]| / N.
double shnirelman_density(std::span<const u64> B, u64 n_max);

struct CheckResult {
  std::string name;
  bool holds = false;
  /// Reported but not counted as a failure.
  bool flag_only = false;
  json measured = json::object();
};

struct ExperimentReport {
  json config = json::object();
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
  std::optional<double> wall_time_seconds;
  std::string version;

  bool all_hold() const;
};

std::string library_version();

/// Samples A and measures coverage of s-fold sums over the configured window.
ExperimentReport coverage_experiment(const ExperimentConfig& config);

json to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const json& j);
/// Header "name,holds,flag_only,measured" plus one row per check.
std::string to_csv(const ExperimentReport& report);

/// Tabulates a JSON object (one row) or array of objects (one row each).
/// Nested values are written as compact JSON inside the cell.
std::string json_to_csv(const json& j);

/// Pretty JSON text with sorted keys and shortest round-trip doubles.
std::string dump_json(const json& j);

/// Writes the report to path, or stdout when path is empty or "-".
void emit_report(const ExperimentReport& report, OutputFormat format, const std::string& path);

}  // namespace waring::harness
