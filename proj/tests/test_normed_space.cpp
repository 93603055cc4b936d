#include <random>

#include "doctest.h"
#include "gaugefactor/error.hpp"
#include "gaugefactor/normed_space.hpp"
#include "oracles.hpp"

using namespace gaugefactor;

namespace {
Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}
}  // namespace

TEST_CASE("norms of the standard spaces") {
  CHECK(NormedSpace::linf(2).norm(vec({3, -4})) == 4.0);
  CHECK(NormedSpace::l1(2).norm(vec({3, -4})) == 7.0);
  Eigen::MatrixXd phi(2, 2);
  phi << 1, 1, 1, -1;
  CHECK(NormedSpace::custom(phi).norm(vec({2, 1})) == 3.0);
}

TEST_CASE("dual norms") {
  CHECK(NormedSpace::linf(2).dual_norm(vec({1, 1})) == doctest::Approx(2.0));
  CHECK(NormedSpace::l1(2).dual_norm(vec({1, 1})) == doctest::Approx(1.0));
}

TEST_CASE("dual norm agrees with LP maximization") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 4;
    const NormedSpace s = oracle::random_space(rng, d);
    Eigen::VectorXd phi(d);
    for (Eigen::Index i = 0; i < d; ++i) phi(i) = gauss(rng);
    CHECK(s.dual_norm(phi) == doctest::Approx(oracle::lp_dual_norm(s, phi)).epsilon(1e-9));
  }
}

TEST_CASE("ball vertices lie on the unit sphere and come in pairs") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const NormedSpace s = oracle::random_space(rng, 1 + trial % 4);
    const auto& verts = s.ball_vertices();
    for (const auto& v : verts) {
      CHECK(s.norm(v) == doctest::Approx(1.0));
      bool has_negation = false;
      for (const auto& w : verts) has_negation = has_negation || (v + w).cwiseAbs().maxCoeff() < 1e-9;
      CHECK(has_negation);
    }
  }
}

TEST_CASE("custom space rejects functionals that do not span") {
  Eigen::MatrixXd phi(2, 2);
  phi << 1, 1, 2, 2;
  CHECK_THROWS_AS(NormedSpace::custom(phi).ball_vertices(), Error);
}

TEST_CASE("operator norm examples") {
  CHECK(operator_norm(LinearMap(Eigen::MatrixXd::Identity(2, 2), NormedSpace::linf(2), NormedSpace::linf(2))) ==
        doctest::Approx(1.0));
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = 2;
  diag(1, 1) = 3;
  CHECK(operator_norm(LinearMap(diag, NormedSpace::linf(2), NormedSpace::linf(2))) == doctest::Approx(3.0));
}

TEST_CASE("operator norm dominates boundary sampling") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd m(3, 3);
    for (Eigen::Index i = 0; i < 9; ++i) m(i) = u(rng);
    const LinearMap t(m, NormedSpace::l1(3), NormedSpace::linf(3));
    const double exact = operator_norm(t);
    CHECK(exact == doctest::Approx(m.cwiseAbs().maxCoeff()));
    const double sampled = oracle::sampled_operator_norm(t, 10000, static_cast<std::uint64_t>(trial));
    CHECK(sampled <= exact + 1e-12);
    CHECK(sampled >= 0.5 * exact);
  }
}

TEST_CASE("sign representative picks one of each pair") {
  CHECK(is_sign_representative(vec({0, 1, -1})));
  CHECK_FALSE(is_sign_representative(vec({0, -1, 1})));
  CHECK(is_sign_representative(vec({1e-17, -1, 1})) == is_sign_representative(vec({-1e-17, -1, 1})));
}

TEST_CASE("dimension mismatch is reported") {
  CHECK_THROWS_AS(NormedSpace::linf(2).norm(vec({1, 2, 3})), Error);
}
