#pragma once

// Reference implementations the library is checked against. Each one takes a
// different route to the same quantity and is only meant for small inputs.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "gaugefactor/convex_gauge.hpp"
#include "gaugefactor/lp.hpp"
#include "gaugefactor/normed_space.hpp"
#include "gaugefactor/polytope.hpp"
#include "gaugefactor/vector_measure.hpp"

namespace oracle {

namespace gf = gaugefactor;

/// Vertices of {x : Ax <= b} from every d-subset of facets, kept if feasible.
inline std::vector<Eigen::VectorXd> brute_force_vertices(const gf::HPolytope& poly) {
  const int d = poly.dim();
  const int m = poly.num_facets();
  std::vector<Eigen::VectorXd> out;
  std::vector<int> idx(static_cast<std::size_t>(d));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == d) {
      Eigen::MatrixXd a(d, d);
      Eigen::VectorXd b(d);
      for (int k = 0; k < d; ++k) {
        a.row(k) = poly.normals.row(idx[static_cast<std::size_t>(k)]);
        b(k) = poly.offsets(idx[static_cast<std::size_t>(k)]);
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (lu.rank() < d) return;
      const Eigen::VectorXd x = lu.solve(b);
      if (!poly.contains(x, 1e-9)) return;
      for (const auto& v : out) {
        if ((v - x).cwiseAbs().maxCoeff() < 1e-8) return;
      }
      out.push_back(x);
      return;
    }
    for (int j = start; j < m; ++j) {
      idx[static_cast<std::size_t>(depth)] = j;
      rec(j + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

/// Same vertex set up to ordering and tolerance.
inline bool same_points(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b,
                        double tol = 1e-7) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    bool found = false;
    for (const auto& q : b) found = found || (p - q).cwiseAbs().maxCoeff() <= tol;
    if (!found) return false;
  }
  return true;
}

/// Is x in t * aco{generators}? Minimizes the l1 residual of G lambda = x
/// over sum |lambda| <= t; membership means a residual at roundoff level.
inline bool in_scaled_aco(const Eigen::MatrixXd& generators, const Eigen::VectorXd& x, double t) {
  const auto k = static_cast<std::size_t>(generators.cols());
  const auto d = static_cast<std::size_t>(generators.rows());
  const std::size_t n = 2 * k + 2 * d;
  gf::lp::LinearProgram prog;
  prog.objective.assign(n, 0.0);
  for (std::size_t j = 2 * k; j < n; ++j) prog.objective[j] = 1.0;
  prog.bounds.assign(n, gf::lp::Bound{0.0, gf::lp::kInf});
  for (std::size_t r = 0; r < d; ++r) {
    std::vector<double> row(n, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      row[j] = generators(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
      row[k + j] = -row[j];
    }
    row[2 * k + r] = 1.0;
    row[2 * k + d + r] = -1.0;
    prog.add(std::move(row), gf::lp::Relation::Equal, x(static_cast<Eigen::Index>(r)));
  }
  std::vector<double> budget(n, 0.0);
  for (std::size_t j = 0; j < 2 * k; ++j) budget[j] = 1.0;
  prog.add(std::move(budget), gf::lp::Relation::LessEq, t);
  const auto res = gf::lp::solve(prog);
  return res.optimal() && res.value <= 1e-13 * (1.0 + x.cwiseAbs().sum());
}

inline bool in_aco(const Eigen::MatrixXd& generators, const Eigen::VectorXd& x) {
  return in_scaled_aco(generators, x, 1.0);
}

/// Gauge by bisection on t over membership of x in tK.
inline double bisection_gauge(const Eigen::MatrixXd& generators, const Eigen::VectorXd& x, double hi = 1e6) {
  if (x.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  if (!in_scaled_aco(generators, x, hi)) return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (in_scaled_aco(generators, x, mid) ? hi : lo) = mid;
  }
  return hi;
}

/// Is x in a^n K + a^-n B_X? One LP over (y in K, z in ball).
inline bool in_interpolation_body(const Eigen::MatrixXd& generators, const gf::NormedSpace& space, double scale_k,
                                  double scale_b, const Eigen::VectorXd& x) {
  const auto k = static_cast<std::size_t>(generators.cols());
  const auto d = static_cast<std::size_t>(x.size());
  const std::size_t n = 2 * k + d;
  gf::lp::LinearProgram prog;
  prog.objective.assign(n, 0.0);
  prog.bounds.assign(n, gf::lp::Bound{});
  for (std::size_t j = 0; j < 2 * k; ++j) prog.bounds[j] = gf::lp::Bound{0.0, gf::lp::kInf};
  for (std::size_t r = 0; r < d; ++r) {
    std::vector<double> row(n, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      const double g = generators(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
      row[j] = scale_k * g;
      row[k + j] = -scale_k * g;
    }
    row[2 * k + r] = scale_b;
    prog.add(std::move(row), gf::lp::Relation::Equal, x(static_cast<Eigen::Index>(r)));
  }
  std::vector<double> simplex(n, 0.0);
  for (std::size_t j = 0; j < 2 * k; ++j) simplex[j] = 1.0;
  prog.add(std::move(simplex), gf::lp::Relation::LessEq, 1.0);
  const Eigen::MatrixXd& phi = space.functionals();
  for (Eigen::Index j = 0; j < phi.rows(); ++j) {
    std::vector<double> row(n, 0.0);
    for (std::size_t c = 0; c < d; ++c) row[2 * k + c] = phi(j, static_cast<Eigen::Index>(c));
    prog.add(row, gf::lp::Relation::LessEq, 1.0);
    for (auto& v : row) v = -v;
    prog.add(std::move(row), gf::lp::Relation::LessEq, 1.0);
  }
  return gf::lp::solve(prog).optimal();
}

inline double bisection_gauge_n(const Eigen::MatrixXd& generators, const gf::NormedSpace& space, double a, int n,
                                const Eigen::VectorXd& x) {
  if (x.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const double sk = std::pow(a, n);
  const double sb = std::pow(a, -n);
  double lo = 0.0;
  double hi = 1.0;
  while (!in_interpolation_body(generators, space, sk, sb, x / hi)) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (in_interpolation_body(generators, space, sk, sb, x / mid) ? hi : lo) = mid;
  }
  return hi;
}

/// Plain summation of the first `terms` terms of f(a)^2.
inline double series_f(double a, int terms) {
  long double sum = 0.0L;
  for (int n = 1; n <= terms; ++n) {
    const long double an = std::pow(static_cast<long double>(a), n);
    const long double t = an / (an * an + 1.0L);
    sum += t * t;
  }
  return static_cast<double>(std::sqrt(sum));
}

/// Set partitions of {0..k-1} through restricted growth strings.
inline std::vector<std::vector<int>> restricted_growth_strings(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int pos, int max_block) {
    if (pos == k) {
      out.push_back(s);
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      s[static_cast<std::size_t>(pos)] = b;
      rec(pos + 1, std::max(max_block, b));
    }
  };
  if (k == 0) return {{}};
  s[0] = 0;
  rec(1, 0);
  return out;
}

/// Largest ||T x|| over random points on the boundary of the domain ball.
inline double sampled_operator_norm(const gf::LinearMap& t, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd x(t.domain.dim());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = gauss(rng);
    const double n = t.domain.norm(x);
    if (n == 0.0) continue;
    best = std::max(best, t.codomain.norm(t.matrix * (x / n)));
  }
  return best;
}

/// max over x in the H-rep ball of <phi, x>, by LP.
inline double lp_dual_norm(const gf::NormedSpace& space, const Eigen::VectorXd& phi) {
  const auto d = static_cast<std::size_t>(space.dim());
  gf::lp::LinearProgram prog;
  prog.objective.resize(d);
  for (std::size_t i = 0; i < d; ++i) prog.objective[i] = -phi(static_cast<Eigen::Index>(i));
  const Eigen::MatrixXd& f = space.functionals();
  for (Eigen::Index j = 0; j < f.rows(); ++j) {
    std::vector<double> row(d);
    for (std::size_t i = 0; i < d; ++i) row[i] = f(j, static_cast<Eigen::Index>(i));
    prog.add(row, gf::lp::Relation::LessEq, 1.0);
    for (auto& v : row) v = -v;
    prog.add(std::move(row), gf::lp::Relation::LessEq, 1.0);
  }
  return -gf::lp::solve(prog).value;
}

/// sup over {-1,1}^p of ||sum g_i f_i m_i||, without the first-sign shortcut.
inline double full_sign_sup(const gf::VectorMeasure& m, const Eigen::VectorXd& f, gf::AtomSet set) {
  double best = 0.0;
  const int p = m.atoms();
  for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(m.dim());
    for (int i = 0; i < p; ++i) {
      if (!gf::contains(set, i)) continue;
      sum += ((mask >> i) & 1u ? -1.0 : 1.0) * f(i) * m.atom(i);
    }
    best = std::max(best, m.codomain().norm(sum));
  }
  return best;
}

/// Random measure with `p` atoms in a space of dimension `d`.
inline gf::VectorMeasure random_measure(std::mt19937_64& rng, const gf::NormedSpace& space, int p) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd atoms(space.dim(), p);
  for (Eigen::Index c = 0; c < p; ++c)
    for (Eigen::Index r = 0; r < space.dim(); ++r) atoms(r, c) = u(rng);
  return gf::VectorMeasure(gf::Codomain(space), atoms);
}

inline gf::NormedSpace random_space(std::mt19937_64& rng, int d) {
  const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
  if (kind == 0) return gf::NormedSpace::linf(d);
  if (kind == 1) return gf::NormedSpace::l1(d);
  std::normal_distribution<double> gauss;
  for (;;) {
    Eigen::MatrixXd phi(d + 2, d);
    for (Eigen::Index r = 0; r < phi.rows(); ++r)
      for (Eigen::Index c = 0; c < d; ++c) phi(r, c) = gauss(rng);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(phi);
    if (lu.rank() == d) return gf::NormedSpace::custom(phi);
  }
}

}  // namespace oracle
