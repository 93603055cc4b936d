#include <random>

#include "doctest.h"
#include "gaugefactor/convex_gauge.hpp"
#include "gaugefactor/error.hpp"
#include "oracles.hpp"

using namespace gaugefactor;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

ConvexBody two_point_body() { return ConvexBody({vec({1, 0}), vec({1, 1})}); }

// Random K inside the unit ball of `space`, possibly lower-dimensional.
ConvexBody random_body(std::mt19937_64& rng, const NormedSpace& space, int rank) {
  std::normal_distribution<double> gauss;
  const int d = space.dim();
  Eigen::MatrixXd basis(d, rank);
  for (Eigen::Index i = 0; i < basis.size(); ++i) basis(i) = gauss(rng);
  std::vector<Eigen::VectorXd> points;
  for (int k = 0; k < rank + 2; ++k) {
    Eigen::VectorXd c(rank);
    for (Eigen::Index i = 0; i < rank; ++i) c(i) = gauss(rng);
    Eigen::VectorXd p = basis * c;
    points.push_back(p / space.norm(p) * std::uniform_real_distribution<double>(0.3, 1.0)(rng));
  }
  return ConvexBody(points);
}

}  // namespace

TEST_CASE("gauge of the unit square generators is the sup norm") {
  const ConvexBody k({vec({1, 1}), vec({1, -1}), vec({-1, 1}), vec({-1, -1})});
  CHECK(gauge(k, vec({0.5, 0})) == doctest::Approx(0.5));
  CHECK(gauge(k, vec({0, 0})) == 0.0);
}

TEST_CASE("gauge needs a difference of generators") {
  // (0,1) = 2 * [ (1,1)/2 - (1,0)/2 ].
  CHECK(gauge(two_point_body(), vec({0, 1})) == doctest::Approx(2.0));
  CHECK(oracle::bisection_gauge(two_point_body().generators(), vec({0, 1})) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("gauge is infinite off the span") {
  const ConvexBody line({vec({1, 1})});
  CHECK(line.rank() == 1);
  CHECK(gauge(line, vec({1, 0})) == kInfiniteGauge);
  CHECK(gauge(line, vec({-2, -2})) == doctest::Approx(2.0));
}

TEST_CASE("canonicalization keeps the body") {
  std::vector<Eigen::VectorXd> pts{vec({1, 0}), vec({-1, 0}), vec({0.2, 0.1}), vec({0, 0}), vec({1, 1})};
  const ConvexBody canon(pts, true);
  const ConvexBody raw(pts, false);
  CHECK(canon.num_generators() == 2);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd x = vec({gauss(rng), gauss(rng)});
    CHECK(gauge(canon, x) == doctest::Approx(gauge(raw, x)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(ConvexBody({vec({0, 0})}), Error);
}

TEST_CASE("gauge LP agrees with bisection membership") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + trial % 4;
    const NormedSpace space = oracle::random_space(rng, d);
    const ConvexBody k = random_body(rng, space, d);
    Eigen::VectorXd x(d);
    for (Eigen::Index i = 0; i < d; ++i) x(i) = gauss(rng);
    CHECK(gauge(k, x) == doctest::Approx(oracle::bisection_gauge(k.generators(), x)).epsilon(1e-7));
  }
}

TEST_CASE("gauge_n example against bisection") {
  const NormedSpace linf = NormedSpace::linf(2);
  const ConvexBody k = two_point_body();
  const double lp = gauge_n(k, linf, 2.0, 1, vec({0, 1}));
  CHECK(lp == doctest::Approx(oracle::bisection_gauge_n(k.generators(), linf, 2.0, 1, vec({0, 1}))).epsilon(1e-8));
  CHECK(gauge_n(k, linf, 2.0, 1, vec({0, 0})) == 0.0);
}

TEST_CASE("gauge_n stays inside its analytic bracket and matches bisection") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + trial % 3;
    const NormedSpace space = oracle::random_space(rng, d);
    const ConvexBody k = random_body(rng, space, d);
    Eigen::VectorXd x(d);
    for (Eigen::Index i = 0; i < d; ++i) x(i) = gauss(rng);
    const double a = 1.2 + 0.5 * (trial % 4);
    const int n = 1 + trial % 6;
    const double value = gauge_n(k, space, a, n, x);
    const GaugeBracket b = gauge_n_bounds(k, space, a, n, x);
    CHECK(value >= b.analytic_lower - 1e-12);
    CHECK(value <= b.analytic_upper + 1e-12);
    CHECK(value >= b.lower - 1e-12);
    CHECK(value <= b.upper + 1e-12);
    CHECK(value == doctest::Approx(oracle::bisection_gauge_n(k.generators(), space, a, n, x)).epsilon(1e-8));
  }
}

TEST_CASE("decomposition profile reproduces every gauge_n") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + trial % 4;
    const NormedSpace space = oracle::random_space(rng, d);
    const ConvexBody k = random_body(rng, space, 1 + trial % d);
    Eigen::VectorXd x = k.span_basis() * Eigen::VectorXd::NullaryExpr(k.rank(), [&] { return gauss(rng); });
    const DecompositionProfile profile(k, space, x);
    CHECK(profile.body_gauge() == doctest::Approx(gauge(k, x)));
    CHECK(profile.norm() == doctest::Approx(space.norm(x)));
    for (int n : {1, 2, 5, 20, 60}) {
      const double a = 1.25;
      const double direct = gauge_n(k, space, a, n, x);
      const double oracle_value = oracle::bisection_gauge_n(k.generators(), space, a, n, x);
      INFO("n=" << n << " profile=" << profile.gauge_n(a, n) << " lp=" << direct << " bisection=" << oracle_value);
      CHECK(std::abs(profile.gauge_n(a, n) - direct) <= 1e-8 * direct);
      CHECK(std::abs(profile.gauge_n(a, n) - oracle_value) <= 1e-8 * oracle_value);
    }
  }
}

TEST_CASE("decomposition profile rejects points off the carrier") {
  const ConvexBody line({vec({1, 1})});
  CHECK_THROWS_AS(DecompositionProfile(line, NormedSpace::linf(2), vec({1, 0})), Error);
}
