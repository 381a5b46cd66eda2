#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gruss/zoo.hpp"

namespace gruss {

/// Tolerances used by the property suites. Names match the keys accepted in
/// the "tolerances" object of a campaign config.
struct SuiteTolerances {
  double chain_abs = 1e-9;      // absolute slack on every <= link
  double chain_rel = 1e-9;      // extra slack per unit of ||A|| ||T||
  double normal_abs = 1e-8;     // |V_P| <= r_A r_T
  double normal_eq = 1e-6;      // dist dist == r_A r_T
  double identity = 1e-10;      // v1 = v2 = v3 = variance
  double dist_sq = 1e-8;        // v3 <= dist^2
  double prasanna_rel = 1e-5;   // sqrt(max variance) vs dist, times (1 + ||A||)
  double state_excess = 1e-8;   // full-rank variance over the rank-one max
  double characterization = 1e-4;
  double h_range = 1e-9;        // h in [1, 2], k in [1, 4]
  double k_anchor = 1e-10;      // theorem bound at (0, 0) vs 4 R_A R_T
  double normaloid = 1e-8;      // relative normaloid residual

  /// Applies {"name": value} overrides; throws ParseError on unknown keys.
  void apply(const nlohmann::json& overrides);
  nlohmann::json to_json() const;
};

struct TrialConfig {
  std::vector<std::size_t> dims{2, 3, 4, 6};
  int trials = 2000;  // per family
  std::vector<Family> families;  // empty means every generated family
  std::uint64_t seed = 42;
  SuiteTolerances tolerances;
  std::string output_path;
  int threads = 0;  // 0 picks the hardware concurrency
  /// Distance characterizations are costly; run them on every k-th trial
  /// whose dimension is at most 4.
  int characterization_stride = 10;
  int characterization_restarts = 64;

  /// Throws PreconditionError on an invalid configuration.
  void validate() const;
  std::vector<Family> effective_families() const;
};

/// Parses a config object; missing keys keep their defaults. Throws
/// ParseError on malformed input.
TrialConfig config_from_json(const nlohmann::json& j);

/// The three generator specs behind one chain trial.
struct TrialSpecs {
  ZooSpec a;
  ZooSpec t;
  ZooSpec p;
  std::uint64_t seed = 0;  // drives optimizer restarts and random shifts
};

/// Deterministic specs for trial `index` of family `family`.
TrialSpecs trial_specs(const TrialConfig& config, Family family, int index);

struct FailureRecord {
  std::string suite;
  TrialSpecs specs;
  double slack = 0.0;
  std::string detail;
};

struct SuiteSummary {
  std::string suite;
  long trials = 0;
  long failures = 0;
  long skipped = 0;
  double worst_slack = 0.0;  // min over evaluated checks; +inf if none
  std::vector<FailureRecord> failure_records;
};

struct CampaignResult {
  std::vector<SuiteSummary> suites;
  long total_trials = 0;

  long total_failures() const;
  const SuiteSummary& suite(const std::string& name) const;
};

/// Suite names in report order.
const std::vector<std::string>& suite_names();

/// Runs every suite over trials x families. Output is independent of the
/// thread count.
CampaignResult run_campaign(const TrialConfig& config);

/// JSON summary. The timestamp is the only field that varies between runs
/// of the same config.
nlohmann::json campaign_to_json(const CampaignResult& result,
                                const TrialConfig& config,
                                bool include_timestamp = true);

}  // namespace gruss
