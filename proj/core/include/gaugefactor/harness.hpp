#pragma once

// Seeded instance generation and the per-trial pipeline behind the CLI:
// normalize, factor through I_m^(inf) and I_m, run every checker.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gaugefactor/check_report.hpp"
#include "gaugefactor/factor_vm.hpp"
#include "gaugefactor/vector_measure.hpp"

namespace gaugefactor {

struct IntRange {
  int lo = 1;
  int hi = 1;
};

struct RunConfig {
  std::uint64_t seed = 0;
  int trials = 1;
  IntRange dims{1, 4};
  IntRange atoms{1, 5};
  std::vector<std::string> norm_pool{"l1", "linf", "custom"};
  /// Empty means {a_bar}.
  std::vector<double> a_values;
  /// "both", "linf" (I_m^(inf) only) or "l1" (I_m only).
  std::string which = "both";
  double tol = 1e-6;
  int sample_size = 200;
  /// 0: GAUGEFACTOR_THREADS if set, else hardware concurrency.
  int threads = 0;

  /// Throws InvalidArgument when a field is outside the module caps.
  void validate() const;
  std::vector<double> effective_a_values() const;
};

struct Instance {
  int index = 0;
  std::uint64_t seed = 0;
  std::string descriptor;
  VectorMeasure measure;
};

/// splitmix64 of seed ^ index.
std::uint64_t trial_seed(std::uint64_t seed, int index);

/// Reproducible random measure for trial `index`. Trial 0 carries a null
/// atom and trial 1 has semivariation < variation whenever the atom range
/// allows two atoms.
Instance generate_instance(const RunConfig& config, int index);

struct TrialReport {
  std::string which;  // "Iinfty" or "Im"
  double a = 0.0;
  double f_a = 0.0;
  double c_a = 0.0;
  CheckReport report;
};

struct TrialResult {
  Instance instance;
  /// ||m||(Omega) of the raw instance; checks run on m / scale.
  double scale = 0.0;
  std::vector<TrialReport> reports;
  /// Non-empty when the pipeline threw.
  std::string error;

  bool passed() const;
};

/// Runs both factorizations and every checker on one normalized measure.
TrialResult run_measure(const Instance& instance, const RunConfig& config);

struct ClaimSummary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skipped = 0;
  double worst_slack = 0.0;
  int worst_trial = -1;
};

struct RunSummary {
  std::vector<TrialResult> trials;
  /// Keyed by "<which>/<claim>".
  std::map<std::string, ClaimSummary> claims;
  std::size_t failed_trials = 0;

  bool passed() const { return failed_trials == 0; }
};

int thread_count(const RunConfig& config);

/// Generates and checks `config.trials` instances; results are ordered by
/// trial index regardless of scheduling.
RunSummary run_corpus(const RunConfig& config);

}  // namespace gaugefactor
