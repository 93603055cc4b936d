#include <random>

#include "doctest.h"
#include "gaugefactor/error.hpp"
#include "gaugefactor/lp.hpp"

namespace lp = gaugefactor::lp;

TEST_CASE("lp: maximum of two lower bounds") {
  lp::LinearProgram prog;
  prog.objective = {1.0};
  prog.add({1.0}, lp::Relation::GreaterEq, 3.0);
  prog.add({1.0}, lp::Relation::GreaterEq, 5.0);
  const auto res = lp::solve(prog);
  REQUIRE(res.status == lp::Status::Optimal);
  CHECK(res.value == doctest::Approx(5.0));
  CHECK(res.point[0] == doctest::Approx(5.0));
}

TEST_CASE("lp: empty feasible set") {
  lp::LinearProgram prog;
  prog.objective = {0.0};
  prog.add({1.0}, lp::Relation::LessEq, -1.0);
  prog.add({1.0}, lp::Relation::GreaterEq, 1.0);
  CHECK(lp::solve(prog).status == lp::Status::Infeasible);
}

TEST_CASE("lp: unbounded ray") {
  lp::LinearProgram prog;
  prog.objective = {-1.0};
  prog.add({1.0}, lp::Relation::GreaterEq, 0.0);
  CHECK(lp::solve(prog).status == lp::Status::Unbounded);
}

TEST_CASE("lp: ragged rows are rejected") {
  lp::LinearProgram prog;
  prog.objective = {1.0, 1.0};
  prog.add({1.0}, lp::Relation::LessEq, 1.0);
  CHECK_THROWS_AS(lp::solve(prog), gaugefactor::Error);
}

TEST_CASE("lp: variable bounds") {
  lp::LinearProgram prog;
  prog.objective = {1.0, -1.0};
  prog.bounds = {{-2.0, 3.0}, {-1.0, 4.0}};
  const auto res = lp::solve(prog);
  REQUIRE(res.optimal());
  CHECK(res.value == doctest::Approx(-6.0));
}

TEST_CASE("lp: degenerate vertex terminates") {
  // Many constraints through the same optimal vertex.
  lp::LinearProgram prog;
  prog.objective = {-1.0, -1.0};
  prog.bounds = {{0.0, lp::kInf}, {0.0, lp::kInf}};
  for (int k = 0; k < 12; ++k) {
    const double s = 1.0 + 0.1 * k;
    prog.add({s, 1.0}, lp::Relation::LessEq, s + 1.0);
    prog.add({1.0, s}, lp::Relation::LessEq, s + 1.0);
  }
  const auto res = lp::solve(prog);
  REQUIRE(res.optimal());
  CHECK(res.value == doctest::Approx(-2.0));
}

// Random bounded LPs: strong duality b.y == c.x and complementary slackness.
TEST_CASE("lp: strong duality on random programs") {
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    const int m = n + 3;
    lp::LinearProgram prog;
    prog.objective.resize(static_cast<std::size_t>(n));
    for (auto& c : prog.objective) c = u(rng);
    for (int r = 0; r < m; ++r) {
      std::vector<double> row(static_cast<std::size_t>(n));
      for (auto& v : row) v = u(rng);
      prog.add(std::move(row), lp::Relation::LessEq, 1.0 + std::abs(u(rng)));
    }
    // Box rows keep the program bounded.
    for (int j = 0; j < n; ++j) {
      std::vector<double> row(static_cast<std::size_t>(n), 0.0);
      row[static_cast<std::size_t>(j)] = 1.0;
      prog.add(row, lp::Relation::LessEq, 5.0);
      row[static_cast<std::size_t>(j)] = -1.0;
      prog.add(row, lp::Relation::LessEq, 5.0);
    }
    const auto res = lp::solve(prog);
    REQUIRE(res.optimal());
    REQUIRE(res.duals.size() == prog.constraints.size());
    double dual_value = 0.0;
    std::vector<double> reduced = prog.objective;
    for (std::size_t r = 0; r < prog.constraints.size(); ++r) {
      const auto& con = prog.constraints[r];
      CHECK(res.duals[r] <= 1e-9);
      dual_value += res.duals[r] * con.rhs;
      for (std::size_t j = 0; j < con.coeffs.size(); ++j) reduced[j] -= res.duals[r] * con.coeffs[j];
      double lhs = 0.0;
      for (std::size_t j = 0; j < con.coeffs.size(); ++j) lhs += con.coeffs[j] * res.point[j];
      CHECK(lhs <= con.rhs + 1e-9);
      CHECK(std::abs(res.duals[r] * (con.rhs - lhs)) <= 1e-8);
    }
    CHECK(dual_value == doctest::Approx(res.value).epsilon(1e-9));
    for (double rc : reduced) CHECK(std::abs(rc) <= 1e-8);
  }
}
