#include <random>

#include "doctest.h"
#include "gaugefactor/error.hpp"
#include "gaugefactor/harness.hpp"
#include "gaugefactor/io.hpp"
#include "gaugefactor/l1m.hpp"

using namespace gaugefactor;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Io;
}

std::string message_of(const std::string& text) {
  try {
    measure_from_json(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

RunConfig small_config(std::uint64_t seed, int trials) {
  RunConfig c;
  c.seed = seed;
  c.trials = trials;
  c.sample_size = 20;
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("measure JSON round trip") {
  Eigen::MatrixXd phi(3, 2);
  phi << 1, 0, 0, 1, 0.6, 0.8;
  Eigen::MatrixXd atoms(2, 3);
  atoms << 0.1, 0, -1.0 / 3.0, 2, 0, 1e-300;
  for (const NormedSpace& s : {NormedSpace::linf(2), NormedSpace::l1(2), NormedSpace::custom(phi)}) {
    const VectorMeasure m(Codomain(s), atoms);
    const VectorMeasure back = measure_from_json(measure_to_json(m));
    CHECK(back.values() == m.values());
    CHECK(back.codomain().polyhedral()->functionals() == s.functionals());
    CHECK(measure_to_json(back) == measure_to_json(m));
  }
}

TEST_CASE("schema errors name the offending field") {
  CHECK(message_of("{") .find("malformed JSON") != std::string::npos);
  CHECK(message_of(R"({"atoms": [[1]]})").find("space") != std::string::npos);
  CHECK(message_of(R"({"space": {"dim": 2, "norm": "l2"}, "atoms": [[1, 2]]})").find("space.norm") !=
        std::string::npos);
  CHECK(message_of(R"({"space": {"dim": 3, "norm": "linf"}, "atoms": [[1, 2, 3], [1, 2]]})")
            .find("atoms[1]: expected 3 entries, got 2") != std::string::npos);
  CHECK(message_of(R"({"space": {"dim": 1, "norm": "linf"}, "atoms": [["x"]]})").find("atoms[0][0]") !=
        std::string::npos);
  CHECK(message_of(R"({"space": {"dim": 0, "norm": "linf"}, "atoms": []})").find("space.dim") !=
        std::string::npos);
  CHECK(message_of(R"({"space": {"dim": 1, "norm": "linf"}, "atoms": [[0], [0]]})").find("atoms") !=
        std::string::npos);
  CHECK(code_of([] { measure_from_json(R"({"space": {"dim": 1, "norm": "linf"}})"); }) == ErrorCode::Schema);
  CHECK(code_of([] { read_file("/nonexistent/measure.json"); }) == ErrorCode::Io);
  CHECK(function_from_json(R"({"f": [1, -2.5]})") == Eigen::Vector2d(1, -2.5));
}

TEST_CASE("run config validation") {
  RunConfig c;
  c.dims = {1, 7};
  CHECK_THROWS_AS(c.validate(), Error);
  c = RunConfig{};
  c.atoms = {3, 2};
  CHECK_THROWS_AS(c.validate(), Error);
  c = RunConfig{};
  c.norm_pool = {"l2"};
  CHECK_THROWS_AS(c.validate(), Error);
  c = RunConfig{};
  c.a_values = {1.0};
  CHECK_THROWS_AS(c.validate(), Error);
  c = RunConfig{};
  c.which = "both ways";
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK(RunConfig{}.effective_a_values() == std::vector<double>{lno_a_bar().value});
}

TEST_CASE("instances are reproducible and respect the ranges") {
  RunConfig c = small_config(3, 40);
  c.dims = {2, 3};
  c.atoms = {1, 4};
  for (int i = 0; i < c.trials; ++i) {
    const Instance a = generate_instance(c, i);
    const Instance b = generate_instance(c, i);
    CHECK(a.measure.values() == b.measure.values());
    CHECK(a.descriptor == b.descriptor);
    CHECK(a.seed == trial_seed(3, i));
    CHECK(a.measure.dim() >= 2);
    CHECK(a.measure.dim() <= 3);
    CHECK(a.measure.atoms() <= 4);
  }
  CHECK(generate_instance(c, 0).measure.null_mask() != 0);
  const VectorMeasure& gap = generate_instance(c, 1).measure;
  CHECK(semivariation(gap, full_set(gap.atoms())) < variation(gap, full_set(gap.atoms())));
}

TEST_CASE("degenerate scalar trial passes") {
  RunConfig c = small_config(1, 1);
  c.dims = {1, 1};
  c.atoms = {1, 1};
  const RunSummary s = run_corpus(c);
  CHECK(s.passed());
  CHECK(s.trials.size() == 1);
}

TEST_CASE("checks are invariant under scaling the measure") {
  const RunConfig c = small_config(5, 1);
  const Instance base = generate_instance(c, 3);
  const TrialResult ref = run_measure(base, c);
  REQUIRE(ref.passed());
  for (double scale : {0.5, 2.0}) {
    Instance scaled = base;
    scaled.measure = base.measure.scaled(scale);
    const TrialResult r = run_measure(scaled, c);
    CHECK(r.scale == doctest::Approx(scale * ref.scale));
    REQUIRE(r.reports.size() == ref.reports.size());
    for (std::size_t k = 0; k < r.reports.size(); ++k) {
      const auto& a = r.reports[k].report.claims;
      const auto& b = ref.reports[k].report.claims;
      REQUIRE(a.size() == b.size());
      for (std::size_t j = 0; j < a.size(); ++j) {
        CHECK(a[j].status == b[j].status);
        CHECK(a[j].worst_slack == doctest::Approx(b[j].worst_slack).scale(1e-6));
      }
    }
  }
}

TEST_CASE("corpus results do not depend on the thread count") {
  RunConfig one = small_config(8, 6);
  RunConfig three = one;
  three.threads = 3;
  const RunSummary a = run_corpus(one);
  const RunSummary b = run_corpus(three);
  std::string csv_a, csv_b;
  for (const auto& t : a.trials) csv_a += claims_csv_rows(t);
  for (const auto& t : b.trials) csv_b += claims_csv_rows(t);
  CHECK(csv_a == csv_b);
  CHECK(summary_to_json(a, one) != "");
}

TEST_CASE("which selects the factorizations") {
  RunConfig c = small_config(2, 1);
  c.which = "linf";
  for (const auto& r : run_measure(generate_instance(c, 0), c).reports) CHECK(r.which == "Iinfty");
  c.which = "l1";
  for (const auto& r : run_measure(generate_instance(c, 0), c).reports) CHECK(r.which == "Im");
}

TEST_CASE("CSV quoting and pipeline errors") {
  const VectorMeasure m(Codomain(NormedSpace::linf(1)), Eigen::MatrixXd::Ones(1, 1));
  TrialResult t{Instance{4, 0, "", m}, 1.0, {}, {}};
  t.error = "bad, \"thing\"";
  const std::string rows = claims_csv_rows(t);
  CHECK(rows == "4,pipeline,nan,pipeline_error,pipeline completed,fail,-inf,\"bad, \"\"thing\"\"\"\n");
  CHECK_FALSE(t.passed());
}
