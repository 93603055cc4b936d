#include <benchmark/benchmark.h>

#include <random>

#include "gaugefactor/convex_gauge.hpp"
#include "gaugefactor/dfjp.hpp"
#include "gaugefactor/lp.hpp"
#include "gaugefactor/normed_space.hpp"
#include "gaugefactor/polytope.hpp"

namespace gf = gaugefactor;

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd out(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) out(r, c) = gauss(rng);
  return out;
}

// Random bounded LP: min c.x over a box intersected with random halfspaces.
void BM_LpSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd a = random_matrix(2 * n, n, 1);
  const Eigen::MatrixXd c = random_matrix(1, n, 2);
  gf::lp::LinearProgram program;
  program.objective.assign(c.data(), c.data() + n);
  for (int r = 0; r < a.rows(); ++r) {
    std::vector<double> row(n);
    for (int j = 0; j < n; ++j) row[j] = a(r, j);
    program.add(row, gf::lp::Relation::LessEq, 1.0);
  }
  program.bounds.assign(n, gf::lp::Bound{-10.0, 10.0});
  for (auto _ : state) benchmark::DoNotOptimize(gf::lp::solve(program));
}
BENCHMARK(BM_LpSolve)->Arg(4)->Arg(16)->Arg(64);

void BM_VertexEnumeration(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Eigen::MatrixXd phi = random_matrix(d + 3, d, 3);
  phi.rowwise().normalize();
  gf::HPolytope poly{Eigen::MatrixXd(2 * phi.rows(), d), Eigen::VectorXd::Ones(2 * phi.rows())};
  poly.normals << phi, -phi;
  for (auto _ : state) benchmark::DoNotOptimize(gf::vertex_enumeration(poly));
}
BENCHMARK(BM_VertexEnumeration)->DenseRange(2, 5);

void BM_DfjpNorm(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const gf::NormedSpace space = gf::NormedSpace::linf(d);
  const Eigen::MatrixXd g = random_matrix(d, d + 2, 4);
  std::vector<Eigen::VectorXd> points;
  for (int i = 0; i < g.cols(); ++i) points.push_back(g.col(i) / space.norm(g.col(i)));
  const gf::ConvexBody body(points);
  const Eigen::VectorXd x = random_matrix(d, 1, 5).col(0);
  for (auto _ : state) {
    const gf::DecompositionProfile profile(body, space, x);
    benchmark::DoNotOptimize(profile.gauge_n(gf::lno_a_bar().value, 10));
  }
}
BENCHMARK(BM_DfjpNorm)->DenseRange(2, 4);

void BM_ABar(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gf::a_bar());
}
BENCHMARK(BM_ABar);

}  // namespace
BENCHMARK_MAIN();
