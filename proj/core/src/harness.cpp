#include "gaugefactor/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <thread>

#include "gaugefactor/error.hpp"

namespace gaugefactor {
namespace {

constexpr int kMaxDims = 6;
constexpr int kMaxRunAtoms = kMaxBallAtoms;
constexpr std::size_t kMaxCustomVertices = 32;

int draw(std::mt19937_64& rng, IntRange range) {
  return std::uniform_int_distribution<int>(range.lo, range.hi)(rng);
}

double unit(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Random H-rep with at most kMaxCustomVertices ball vertices; falls back to linf.
NormedSpace random_custom_space(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss;
  for (int attempt = 0; attempt < 20; ++attempt) {
    const int extra = std::uniform_int_distribution<int>(0, std::max(0, 3 - attempt / 5))(rng);
    Eigen::MatrixXd phi(d + extra, d);
    for (Eigen::Index r = 0; r < phi.rows(); ++r) {
      for (Eigen::Index c = 0; c < d; ++c) phi(r, c) = gauss(rng);
      phi.row(r) /= phi.row(r).norm();
    }
    try {
      NormedSpace space = NormedSpace::custom(phi);
      if (space.ball_vertices().size() <= kMaxCustomVertices) return space;
    } catch (const Error&) {
      // rank-deficient draw; try again
    }
  }
  return NormedSpace::linf(d);
}

Eigen::MatrixXd random_block(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, const std::string& dist) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (dist == "gaussian") {
        out(r, c) = gauss(rng);
      } else if (dist == "sparse") {
        const double v = uniform(rng);
        out(r, c) = unit(rng) < 0.5 ? 0.0 : v;
      } else {
        out(r, c) = uniform(rng);
      }
    }
  }
  return out;
}

struct Draw {
  std::string descriptor;
  NormedSpace space;
  Eigen::MatrixXd atoms;
};

Draw draw_measure(std::mt19937_64& rng, const RunConfig& config, int d, int p, bool force_null) {
  const std::string norm = config.norm_pool[std::uniform_int_distribution<std::size_t>(
      0, config.norm_pool.size() - 1)(rng)];
  NormedSpace space = norm == "l1" ? NormedSpace::l1(d) : norm == "linf" ? NormedSpace::linf(d)
                                                                       : random_custom_space(rng, d);

  static const char* const kDists[] = {"uniform", "sparse", "gaussian"};
  const std::string dist = kDists[std::uniform_int_distribution<int>(0, 2)(rng)];
  const bool deficient = d >= 2 && unit(rng) < 0.2;
  Eigen::MatrixXd atoms;
  int rank = d;
  if (deficient) {
    rank = std::uniform_int_distribution<int>(1, d - 1)(rng);
    atoms = random_block(rng, d, rank, "gaussian") * random_block(rng, rank, p, dist);
  } else {
    atoms = random_block(rng, d, p, dist);
  }

  if (p >= 2) {
    for (int i = 0; i < p; ++i) {
      if (unit(rng) < 0.1) atoms.col(i).setZero();
    }
    if (force_null) atoms.col(std::uniform_int_distribution<int>(0, p - 1)(rng)).setZero();
  }
  // Never identically zero.
  if (atoms.cwiseAbs().maxCoeff() == 0.0) atoms.col(0) = random_block(rng, d, 1, "gaussian");

  std::string descriptor = "d=" + std::to_string(d) + " p=" + std::to_string(p) + " norm=" +
                           (space.kind() == NormKind::CustomPolyhedral ? std::string("custom") : norm) +
                           " dist=" + dist + (deficient ? " rank=" + std::to_string(rank) : std::string());
  return Draw{std::move(descriptor), std::move(space), std::move(atoms)};
}

}  // namespace

void RunConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (dims.lo < 1 || dims.hi < dims.lo || dims.hi > kMaxDims) {
    throw Error(ErrorCode::InvalidArgument, "dims must satisfy 1 <= lo <= hi <= " + std::to_string(kMaxDims));
  }
  if (atoms.lo < 1 || atoms.hi < atoms.lo || atoms.hi > kMaxRunAtoms) {
    throw Error(ErrorCode::InvalidArgument, "atoms must satisfy 1 <= lo <= hi <= " + std::to_string(kMaxRunAtoms));
  }
  if (norm_pool.empty()) throw Error(ErrorCode::InvalidArgument, "norm pool is empty");
  for (const auto& n : norm_pool) {
    if (n != "l1" && n != "linf" && n != "custom") {
      throw Error(ErrorCode::InvalidArgument, "unknown norm '" + n + "' (expected l1, linf or custom)");
    }
  }
  for (double a : a_values) DfjpParams{a}.validate();
  if (which != "both" && which != "linf" && which != "l1") {
    throw Error(ErrorCode::InvalidArgument, "which must be both, linf or l1");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (sample_size < 0) throw Error(ErrorCode::InvalidArgument, "sample size must be >= 0");
  if (threads < 0) throw Error(ErrorCode::InvalidArgument, "threads must be >= 0");
}

std::vector<double> RunConfig::effective_a_values() const {
  return a_values.empty() ? std::vector<double>{lno_a_bar().value} : a_values;
}

std::uint64_t trial_seed(std::uint64_t seed, int index) {
  std::uint64_t z = seed ^ static_cast<std::uint64_t>(index);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Instance generate_instance(const RunConfig& config, int index) {
  config.validate();
  const std::uint64_t seed = trial_seed(config.seed, index);
  std::mt19937_64 rng(seed);
  const bool two_atoms = config.atoms.hi >= 2;
  const IntRange atom_range = (index <= 1 && two_atoms) ? IntRange{std::max(2, config.atoms.lo), config.atoms.hi}
                                                        : config.atoms;
  const bool force_null = index == 0 && two_atoms;
  const bool force_gap = index == 1 && two_atoms;

  for (int attempt = 0;; ++attempt) {
    const int d = draw(rng, config.dims);
    const int p = draw(rng, atom_range);
    Draw drawn = draw_measure(rng, config, d, p, force_null);
    VectorMeasure m(Codomain(drawn.space), std::move(drawn.atoms));
    const AtomSet all = full_set(m.atoms());
    if (force_gap && attempt < 50 && semivariation(m, all) >= variation(m, all) - 1e-9) continue;
    std::string descriptor = std::move(drawn.descriptor);
    if (m.null_mask() != 0) descriptor += " null=" + format_set(m.null_mask(), m.atoms());
    return Instance{index, seed, std::move(descriptor), std::move(m)};
  }
}

bool TrialResult::passed() const {
  if (!error.empty()) return false;
  return std::all_of(reports.begin(), reports.end(), [](const TrialReport& r) { return r.report.passed(); });
}

TrialResult run_measure(const Instance& instance, const RunConfig& config) {
  TrialResult result{instance, 0.0, {}, {}};
  try {
    const VectorMeasure& raw = instance.measure;
    result.scale = semivariation(raw, full_set(raw.atoms()));
    const VectorMeasure m = raw.scaled(1.0 / result.scale);

    CheckOptions options;
    options.sample_size = config.sample_size;
    options.tol = config.tol;
    options.seed = instance.seed;

    std::optional<FactoredMeasure> base_inf;
    std::optional<FactoredMeasure> base_l1;
    for (double a : config.effective_a_values()) {
      const DfjpParams params{a};
      if (config.which != "l1") {
        const FactoredMeasure inf = base_inf ? refactor(*base_inf, params) : factor_Iinfty(m, params);
        if (!base_inf) base_inf = inf;
        CheckReport inf_report = check_theorem_Iinfty(inf, options);
        inf_report.append(lorentz_factor_check(inf, options));
        result.reports.push_back(TrialReport{"Iinfty", a, inf.f_a(), inf.c_a(), std::move(inf_report)});
      }
      if (config.which == "linf") continue;

      const FactoredMeasure l1 = base_l1 ? refactor(*base_l1, params) : factor_Im(m, params);
      if (!base_l1) base_l1 = l1;
      CheckReport l1_report = check_theorem_Im(l1, options);
      l1_report.append(two_variation_check(l1, options));
      result.reports.push_back(TrialReport{"Im", a, l1.f_a(), l1.c_a(), std::move(l1_report)});
    }
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  return result;
}

int thread_count(const RunConfig& config) {
  int threads = config.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("GAUGEFACTOR_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) threads = static_cast<int>(std::min(v, 1024L));
    }
  }
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return std::max(1, std::min(threads, config.trials));
}

RunSummary run_corpus(const RunConfig& config) {
  config.validate();
  lno_a_bar();  // initialize before the workers start
  std::vector<std::optional<TrialResult>> slots(static_cast<std::size_t>(config.trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < config.trials; i = next++) {
      slots[static_cast<std::size_t>(i)] = run_measure(generate_instance(config, i), config);
    }
  };
  const int threads = thread_count(config);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  RunSummary summary;
  const bool several_a = config.effective_a_values().size() > 1;
  for (auto& slot : slots) {
    TrialResult& trial = *slot;
    if (!trial.passed()) ++summary.failed_trials;
    for (const auto& tr : trial.reports) {
      for (const auto& claim : tr.report.claims) {
        std::string key = tr.which + "/" + claim.name;
        if (several_a) key += "@a=" + format_double(tr.a);
        ClaimSummary& agg = summary.claims[key];
        switch (claim.status) {
          case ClaimStatus::Pass: ++agg.pass; break;
          case ClaimStatus::Fail: ++agg.fail; break;
          case ClaimStatus::Skipped: ++agg.skipped; continue;
        }
        if (agg.worst_trial < 0 || claim.worst_slack < agg.worst_slack) {
          agg.worst_slack = claim.worst_slack;
          agg.worst_trial = trial.instance.index;
        }
      }
    }
    summary.trials.push_back(std::move(trial));
  }
  return summary;
}

}  // namespace gaugefactor
