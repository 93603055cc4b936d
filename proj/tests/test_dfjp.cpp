#include <cmath>
#include <random>

#include "doctest.h"
#include "gaugefactor/dfjp.hpp"
#include "gaugefactor/error.hpp"
#include "oracles.hpp"

using namespace gaugefactor;

namespace {

// Root of f(a) = 1 from a 40-digit independent summation; it coincides with
// exp(2/9) to that precision, so C(a_bar) = 5/2.
constexpr double kABarReference = 1.2488488690016822;
// f(2) from the same computation.
constexpr double kF2Reference = 0.48547627415271018;

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

LinearMap random_operator(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int dz = std::uniform_int_distribution<int>(1, 3)(rng);
  const int dx = std::uniform_int_distribution<int>(1, 3)(rng);
  Eigen::MatrixXd m(dx, dz);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = u(rng);
  return LinearMap(m, oracle::random_space(rng, dz), oracle::random_space(rng, dx));
}

}  // namespace

TEST_CASE("f(a): series value and tail bound") {
  const SeriesValue f2 = f_of_a(2.0);
  CHECK(std::abs(f2.value - oracle::series_f(2.0, 200)) <= 1e-10);
  CHECK(std::abs(f2.value - kF2Reference) <= 1e-12);
  CHECK(f2.error_bound <= 1e-14);
  CHECK(f_of_a(1e6).value < 2e-6);
  CHECK_THROWS_AS(f_of_a(1.0 + 1e-9, 1e-14, 1000), Error);
}

TEST_CASE("f is decreasing on (1, inf)") {
  double prev = f_of_a(1.05).value;
  for (double a = 1.1; a < 6.0; a += 0.05) {
    const double cur = f_of_a(a).value;
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("a_bar: root, bracket and residual") {
  const ABar r = a_bar(1e-12);
  CHECK(r.lower <= r.value);
  CHECK(r.value <= r.upper);
  CHECK(f_of_a(r.lower).value > 1.0);
  CHECK(f_of_a(r.upper).value < 1.0);
  CHECK(r.residual <= 1e-12);
  CHECK(std::abs(r.value - kABarReference) <= 1e-11);
  CHECK(std::abs(oracle::series_f(r.value, 400) - 1.0) <= 1e-11);
  CHECK(&lno_a_bar() == &lno_a_bar());
}

TEST_CASE("C(a) constant") {
  CHECK(c_constant(std::exp(1.0)) == doctest::Approx(0.75));
  CHECK(c_constant(std::exp(0.5)) == doctest::Approx(1.25));
  CHECK(c_constant(lno_a_bar().value) == doctest::Approx(2.5).epsilon(1e-11));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(DfjpParams{1.0}.validate(), Error);
  CHECK_THROWS_AS((DfjpParams{2.0, 1e-15}.validate()), Error);
  CHECK_NOTHROW(DfjpParams::lno().validate());
}

TEST_CASE("DFJP norm: zero, homogeneity, profile vs per-term") {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 20; ++trial) {
    const LinearMap t = random_operator(rng);
    const Factorization fac = factor_operator(t, DfjpParams{1.3 + 0.4 * (trial % 3)});
    const DfjpSpace& s = *fac.space;
    CHECK(s.norm(Eigen::VectorXd::Zero(s.dim())).value == 0.0);
    const Eigen::VectorXd x = s.body().generators() * Eigen::VectorXd::Constant(s.body().num_generators(), 0.3);
    const SeriesValue fast = s.norm(x);
    const SeriesValue slow = s.norm_per_term(x);
    CHECK(fast.value == doctest::Approx(slow.value).epsilon(1e-9));
    CHECK(fast.error_bound <= 1e-12 * (1.0 + fast.value));
    CHECK(s.norm(-2.5 * x).value == doctest::Approx(2.5 * fast.value).epsilon(1e-10));
  }
}

TEST_CASE("DFJP norm: triangle inequality") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 15; ++trial) {
    const Factorization fac = factor_operator(random_operator(rng), DfjpParams::lno());
    const DfjpSpace& s = *fac.space;
    const auto& basis = s.body().span_basis();
    const Eigen::VectorXd x = basis * Eigen::VectorXd::NullaryExpr(basis.cols(), [&] { return gauss(rng); });
    const Eigen::VectorXd y = basis * Eigen::VectorXd::NullaryExpr(basis.cols(), [&] { return gauss(rng); });
    CHECK(s.norm(x + y).value <= s.norm(x).value + s.norm(y).value + 1e-10);
  }
}

TEST_CASE("DFJP norm off the carrier throws") {
  const NormedSpace linf = NormedSpace::linf(2);
  const DfjpSpace s(linf, ConvexBody({vec({1, 0})}), DfjpParams::lno());
  CHECK(s.carrier_dim() == 1);
  CHECK_FALSE(s.in_carrier(vec({0, 1})));
  CHECK_THROWS_AS(s.norm(vec({0, 1})), Error);
  CHECK_THROWS_AS(DfjpSpace(linf, ConvexBody({vec({2, 0})}), DfjpParams::lno()), Error);
}

// A one-dimensional body equal to the ball: each term is 1 / (a^n + a^-n),
// so ||x||_K = f(a) |x|.
TEST_CASE("DFJP norm on a segment equals f(a) times the norm") {
  const NormedSpace line = NormedSpace::linf(1);
  for (double a : {1.5, 2.0, 5.0}) {
    const DfjpSpace s(line, ConvexBody({vec({1.0})}), DfjpParams{a});
    CHECK(s.norm(vec({-3.0})).value == doctest::Approx(3.0 * f_of_a(a).value).epsilon(1e-12));
  }
}

TEST_CASE("factorization at a_bar is isometric") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const LinearMap t = random_operator(rng);
    const Factorization fac = factor_operator(t, DfjpParams::lno());
    CHECK(fac.norms.t_k == doctest::Approx(fac.norms.t).epsilon(1e-9));
    CHECK(fac.norms.j_k == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fac.norms.f_a == doctest::Approx(1.0).epsilon(1e-11));
    CHECK((fac.t_k - t.matrix).norm() == 0.0);
  }
}

TEST_CASE("inclusion bound and body bound away from a_bar") {
  std::mt19937_64 rng(33);
  for (double a : {1.5, 2.0, 5.0}) {
    const LinearMap t = random_operator(rng);
    const Factorization base = factor_operator(t, DfjpParams::lno());
    const Factorization fac = refactor(base, t, DfjpParams{a});
    CHECK(fac.norms.j_k <= fac.norms.j_k_bound + 1e-9);
    CHECK(fac.norms.j_k == doctest::Approx(1.0 / fac.norms.f_a).epsilon(1e-9));
    for (int i = 0; i < fac.space->body().num_generators(); ++i) {
      CHECK(fac.space->norm(fac.space->body().generator(i)).value <= fac.norms.f_a + 1e-9);
    }
    // refactor equals a fresh factorization
    const Factorization fresh = factor_operator(t, DfjpParams{a});
    CHECK(fresh.norms.t_k == doctest::Approx(fac.norms.t_k).epsilon(1e-12));
  }
}

TEST_CASE("zero operator cannot be factored") {
  const LinearMap zero(Eigen::MatrixXd::Zero(2, 2), NormedSpace::linf(2), NormedSpace::l1(2));
  try {
    factor_operator(zero, DfjpParams::lno());
    FAIL("expected ZeroOperator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroOperator);
  }
}
