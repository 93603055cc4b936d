// gaugefactor: a_bar, instance generation, norm evaluation, factorization
// reports and the seeded check corpus.
//
// Exit codes: 0 all claims pass, 1 some claim failed, 2 usage or IO error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gaugefactor/dfjp.hpp"
#include "gaugefactor/error.hpp"
#include "gaugefactor/harness.hpp"
#include "gaugefactor/io.hpp"

namespace gf = gaugefactor;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

gf::IntRange parse_range(const std::string& text, const char* flag) {
  const auto sep = text.find("..");
  try {
    std::size_t used = 0;
    if (sep == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string lo = text.substr(0, sep);
    const std::string hi = text.substr(sep + 2);
    gf::IntRange out{std::stoi(lo, &used), 0};
    if (used != lo.size()) throw std::invalid_argument(text);
    out.hi = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
    return out;
  } catch (const std::exception&) {
    throw gf::Error(gf::ErrorCode::InvalidArgument,
                    std::string(flag) + " expects N or LO..HI, got '" + text + "'");
  }
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw gf::Error(gf::ErrorCode::InvalidArgument, "--point entry '" + item + "' is not a number");
    }
  }
  return out;
}

std::string fmt(double v) { return gf::format_double(v); }

struct CommonOptions {
  std::uint64_t seed = 0;
  int trials = 1;
  std::string dims = "1..4";
  std::string atoms = "1..5";
  std::vector<std::string> norms{"l1", "linf", "custom"};
  std::vector<double> a_values;
  double tol = 1e-6;
  int samples = 200;
  std::string which = "both";
  std::string out;

  gf::RunConfig config() const {
    gf::RunConfig c;
    c.seed = seed;
    c.trials = trials;
    c.dims = parse_range(dims, "--dims");
    c.atoms = parse_range(atoms, "--atoms");
    c.norm_pool = norms;
    c.a_values = a_values;
    c.tol = tol;
    c.sample_size = samples;
    c.which = which;
    c.validate();
    return c;
  }
};

void print_report_lines(const gf::TrialResult& trial) {
  if (!trial.error.empty()) std::cout << "error: " << trial.error << "\n";
  for (const auto& r : trial.reports) {
    std::cout << r.which << " a=" << fmt(r.a) << " f(a)=" << fmt(r.f_a) << " C(a)=" << fmt(r.c_a) << "\n";
    for (const auto& claim : r.report.claims) {
      std::printf("  %-8s %-30s worst_slack=%-24s %s\n", gf::to_string(claim.status), claim.name.c_str(),
                  fmt(claim.worst_slack).c_str(), claim.witness.c_str());
    }
    for (const auto& [name, value] : r.report.metrics) {
      std::printf("  %-8s %-30s %s\n", "metric", name.c_str(), fmt(value).c_str());
    }
    std::fflush(stdout);
  }
}

int cmd_abar(double tol) {
  const gf::ABar abar = gf::a_bar(tol);
  const gf::SeriesValue f = gf::f_of_a(abar.value);
  std::cout << "a_bar      " << fmt(abar.value) << "\n"
            << "bracket    [" << fmt(abar.lower) << ", " << fmt(abar.upper) << "]\n"
            << "f(a_bar)   " << fmt(f.value) << "\n"
            << "residual   " << fmt(abar.residual) << "\n"
            << "C(a_bar)   " << fmt(gf::c_constant(abar.value)) << "\n";
  return abar.residual <= tol ? 0 : kExitFail;
}

int cmd_gen(const CommonOptions& opts) {
  const gf::RunConfig config = opts.config();
  if (opts.out.empty()) throw gf::Error(gf::ErrorCode::InvalidArgument, "gen needs --out DIR");
  std::filesystem::create_directories(opts.out);
  for (int i = 0; i < config.trials; ++i) {
    const gf::Instance instance = gf::generate_instance(config, i);
    char name[32];
    std::snprintf(name, sizeof name, "measure_%04d.json", i);
    gf::write_file((std::filesystem::path(opts.out) / name).string(), gf::measure_to_json(instance.measure));
    std::cout << name << "  " << instance.descriptor << "\n";
  }
  return 0;
}

int cmd_gauge(const std::string& path, const std::string& point, const std::string& which, double a) {
  const gf::VectorMeasure m = gf::load_measure(path);
  const std::vector<double> values = parse_point(point);
  if (static_cast<int>(values.size()) != m.dim()) {
    throw gf::Error(gf::ErrorCode::InvalidArgument, "--point has " + std::to_string(values.size()) +
                                                        " entries, the space has dimension " + std::to_string(m.dim()));
  }
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(values.data(), m.dim());
  const double scale = gf::semivariation(m, gf::full_set(m.atoms()));
  const gf::VectorMeasure normalized = m.scaled(1.0 / scale);
  const gf::DfjpParams params{a > 0.0 ? a : gf::lno_a_bar().value};
  const gf::FactoredMeasure fm =
      which == "l1" ? gf::factor_Im(normalized, params) : gf::factor_Iinfty(normalized, params);
  const gf::DfjpSpace& space = fm.target();

  std::cout << "a            " << fmt(params.a) << "\n"
            << "||x||        " << fmt(space.ambient().norm(x)) << "\n"
            << "gauge_K(x)   " << fmt(gf::gauge(space.body(), x)) << "\n";
  if (space.in_carrier(x)) {
    const gf::SeriesValue k = space.norm(x);
    std::cout << "||x||_K      " << fmt(k.value) << "\n"
              << "error_bound  " << fmt(k.error_bound) << "\n"
              << "terms        " << k.terms << "\n";
  } else {
    std::cout << "||x||_K      undefined (x is not in span(K))\n";
  }
  return 0;
}

int cmd_factor(const std::string& path, const CommonOptions& opts) {
  gf::RunConfig config;
  config.a_values = opts.a_values;
  config.tol = opts.tol;
  config.sample_size = opts.samples;
  config.which = opts.which;
  config.validate();
  const gf::Instance instance{0, opts.seed, "file=" + path, gf::load_measure(path)};
  const gf::TrialResult trial = gf::run_measure(instance, config);
  std::cout << "||m||(Omega) " << fmt(trial.scale) << " (checks run on m / ||m||(Omega))\n";
  print_report_lines(trial);
  if (!opts.out.empty()) gf::write_file(opts.out, gf::trial_to_json(trial));
  return trial.passed() ? 0 : kExitFail;
}

int cmd_check(const CommonOptions& opts) {
  const gf::RunConfig config = opts.config();
  const auto start = std::chrono::steady_clock::now();
  const gf::RunSummary summary = gf::run_corpus(config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!opts.out.empty()) {
    const std::filesystem::path dir(opts.out);
    std::filesystem::create_directories(dir / "trials");
    std::string csv = gf::claims_csv_header();
    for (const auto& trial : summary.trials) {
      csv += gf::claims_csv_rows(trial);
      char name[32];
      std::snprintf(name, sizeof name, "trial_%04d.json", trial.instance.index);
      gf::write_file((dir / "trials" / name).string(), gf::trial_to_json(trial));
    }
    gf::write_file((dir / "claims.csv").string(), csv);
    gf::write_file((dir / "summary.json").string(), gf::summary_to_json(summary, config));
  }

  const std::size_t trials = summary.trials.size();
  std::printf("%-48s %9s %6s %8s  %s\n", "claim", "pass", "fail", "skipped", "worst_slack");
  for (const auto& [key, agg] : summary.claims) {
    std::printf("%-48s %4zu/%-4zu %6zu %8zu  %s\n", key.c_str(), agg.pass, trials, agg.fail, agg.skipped,
                agg.worst_trial < 0 ? "-" : fmt(agg.worst_slack).c_str());
  }
  for (const auto& trial : summary.trials) {
    if (!trial.error.empty()) std::printf("trial %d error: %s\n", trial.instance.index, trial.error.c_str());
  }
  std::printf("trials %zu, failed %zu, runtime %.2f s, threads %d\n", trials, summary.failed_trials, seconds,
              gf::thread_count(config));
  return summary.passed() ? 0 : kExitFail;
}

void add_corpus_flags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--seed", opts.seed, "Base seed");
  cmd->add_option("--trials", opts.trials, "Number of instances")->check(CLI::PositiveNumber);
  cmd->add_option("--dims", opts.dims, "Dimension range N or LO..HI");
  cmd->add_option("--atoms", opts.atoms, "Atom-count range N or LO..HI");
  cmd->add_option("--norms", opts.norms, "Norm pool (l1, linf, custom)")->delimiter(',');
}

void add_check_flags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--a", opts.a_values, "DFJP parameter(s); default a_bar")->delimiter(',');
  cmd->add_option("--tol", opts.tol, "Claim tolerance");
  cmd->add_option("--samples", opts.samples, "Random functions per instance");
  cmd->add_option("--which", opts.which, "both, linf or l1")->check(CLI::IsMember({"both", "linf", "l1"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpolation renorming and vector-measure factorization checks"};
  app.require_subcommand(1);

  double abar_tol = 1e-12;
  auto* abar = app.add_subcommand("abar", "Root a_bar of f(a) = 1 with bracket, residual and C(a_bar)");
  abar->add_option("--tol", abar_tol, "Residual tolerance");

  CommonOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "Write seeded random measure files");
  add_corpus_flags(gen, gen_opts);
  gen->add_option("--out", gen_opts.out, "Output directory")->required();

  std::string gauge_file;
  std::string gauge_point;
  std::string gauge_which = "linf";
  double gauge_a = 0.0;
  auto* gauge = app.add_subcommand("gauge", "Evaluate ||x||, gauge_K(x) and ||x||_K for a measure's body K");
  gauge->add_option("measure", gauge_file, "Measure file")->required();
  gauge->add_option("--point", gauge_point, "Comma-separated coordinates")->required();
  gauge->add_option("--which", gauge_which, "linf or l1 body")->check(CLI::IsMember({"linf", "l1"}));
  gauge->add_option("--a", gauge_a, "DFJP parameter; default a_bar");

  CommonOptions factor_opts;
  std::string factor_file;
  auto* factor = app.add_subcommand("factor", "Factor one measure file and run every checker");
  factor->add_option("measure", factor_file, "Measure file")->required();
  factor->add_option("--seed", factor_opts.seed, "Sampling seed");
  add_check_flags(factor, factor_opts);
  factor->add_option("--out", factor_opts.out, "Report file (JSON)");

  CommonOptions check_opts;
  auto* check = app.add_subcommand("check", "Generate a seeded corpus and run every checker");
  add_corpus_flags(check, check_opts);
  add_check_flags(check, check_opts);
  check->add_option("--out", check_opts.out, "Output directory for summary.json, claims.csv and trials/");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*abar) return cmd_abar(abar_tol);
    if (*gen) return cmd_gen(gen_opts);
    if (*gauge) return cmd_gauge(gauge_file, gauge_point, gauge_which, gauge_a);
    if (*factor) return cmd_factor(factor_file, factor_opts);
    if (*check) return cmd_check(check_opts);
  } catch (const gf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
