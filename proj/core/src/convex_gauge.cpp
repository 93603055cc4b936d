#include "gaugefactor/convex_gauge.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "gaugefactor/error.hpp"
#include "gaugefactor/lp.hpp"
#include "gaugefactor/polytope.hpp"

namespace gaugefactor {
namespace {

void require_dim(const Eigen::VectorXd& x, int dim) {
  if (x.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected dimension " + std::to_string(dim) + ", got " + std::to_string(x.size()));
  }
}

// min sum|lambda| s.t. G lambda = x, with lambda = plus - minus.
double aco_gauge_lp(const Eigen::MatrixXd& gens, const Eigen::VectorXd& x) {
  const auto k = static_cast<std::size_t>(gens.cols());
  lp::LinearProgram program;
  program.objective.assign(2 * k, 1.0);
  program.bounds.assign(2 * k, lp::Bound{0.0, lp::kInf});
  for (Eigen::Index r = 0; r < gens.rows(); ++r) {
    std::vector<double> row(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
      row[i] = gens(r, static_cast<Eigen::Index>(i));
      row[k + i] = -row[i];
    }
    program.add(std::move(row), lp::Relation::Equal, x(r));
  }
  const lp::Result res = lp::solve(program);
  return res.optimal() ? std::max(res.value, 0.0) : kInfiniteGauge;
}

bool in_span_of(const Eigen::MatrixXd& basis, const Eigen::VectorXd& x) {
  const Eigen::VectorXd residual = x - basis * (basis.transpose() * x);
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  return residual.cwiseAbs().maxCoeff() <= 1e-9 * scale;
}

Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& gens) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gens);
  qr.setThreshold(1e-10);
  const Eigen::Index r = qr.rank();
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(gens.rows(), r);
  return q;
}

// min u s.t. x = G mu + slope * v, sum|mu| <= u, ||v|| <= u.
double scaled_decomposition_lp(const ConvexBody& body, const NormedSpace& ambient, double slope,
                               const Eigen::VectorXd& x) {
  const Eigen::MatrixXd& g = body.generators();
  const Eigen::MatrixXd& phi = ambient.functionals();
  const auto k = static_cast<std::size_t>(g.cols());
  const auto d = static_cast<std::size_t>(g.rows());
  const std::size_t n_vars = 2 * k + d + 1;
  const std::size_t u_col = n_vars - 1;

  lp::LinearProgram program;
  program.objective.assign(n_vars, 0.0);
  program.objective[u_col] = 1.0;
  program.bounds.assign(n_vars, lp::Bound{0.0, lp::kInf});
  for (std::size_t i = 0; i < d; ++i) program.bounds[2 * k + i] = lp::Bound{};

  for (std::size_t r = 0; r < d; ++r) {
    std::vector<double> row(n_vars, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      row[i] = g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i));
      row[k + i] = -row[i];
    }
    row[2 * k + r] = slope;
    program.add(std::move(row), lp::Relation::Equal, x(static_cast<Eigen::Index>(r)));
  }
  {
    std::vector<double> row(n_vars, 0.0);
    std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(2 * k), 1.0);
    row[u_col] = -1.0;
    program.add(std::move(row), lp::Relation::LessEq, 0.0);
  }
  for (Eigen::Index j = 0; j < phi.rows(); ++j) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> row(n_vars, 0.0);
      for (std::size_t i = 0; i < d; ++i) row[2 * k + i] = sign * phi(j, static_cast<Eigen::Index>(i));
      row[u_col] = -1.0;
      program.add(std::move(row), lp::Relation::LessEq, 0.0);
    }
  }
  const lp::Result res = lp::solve(program);
  if (!res.optimal()) throw Error(ErrorCode::InvalidArgument, "decomposition LP did not reach an optimum");
  return std::max(res.value, 0.0);
}

// Off span(K): min t s.t. x = G lam + w, sum|lam| <= s^2 t, ||w|| <= t.
double off_span_decomposition_lp(const ConvexBody& body, const NormedSpace& ambient, double s2,
                                 const Eigen::VectorXd& x) {
  const Eigen::MatrixXd& g = body.generators();
  const Eigen::MatrixXd& phi = ambient.functionals();
  const auto k = static_cast<std::size_t>(g.cols());
  const auto d = static_cast<std::size_t>(g.rows());
  const std::size_t n_vars = 2 * k + d + 1;
  const std::size_t t_col = n_vars - 1;

  lp::LinearProgram program;
  program.objective.assign(n_vars, 0.0);
  program.objective[t_col] = 1.0;
  program.bounds.assign(n_vars, lp::Bound{0.0, lp::kInf});
  for (std::size_t i = 0; i < d; ++i) program.bounds[2 * k + i] = lp::Bound{};
  for (std::size_t r = 0; r < d; ++r) {
    std::vector<double> row(n_vars, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      row[i] = g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i));
      row[k + i] = -row[i];
    }
    row[2 * k + r] = 1.0;
    program.add(std::move(row), lp::Relation::Equal, x(static_cast<Eigen::Index>(r)));
  }
  {
    std::vector<double> row(n_vars, 0.0);
    std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(2 * k), 1.0);
    row[t_col] = -s2;
    program.add(std::move(row), lp::Relation::LessEq, 0.0);
  }
  for (Eigen::Index j = 0; j < phi.rows(); ++j) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> row(n_vars, 0.0);
      for (std::size_t i = 0; i < d; ++i) row[2 * k + i] = sign * phi(j, static_cast<Eigen::Index>(i));
      row[t_col] = -1.0;
      program.add(std::move(row), lp::Relation::LessEq, 0.0);
    }
  }
  const lp::Result res = lp::solve(program);
  if (!res.optimal()) throw Error(ErrorCode::InvalidArgument, "decomposition LP did not reach an optimum");
  return std::max(res.value, 0.0);
}

}  // namespace

ConvexBody::ConvexBody(const std::vector<Eigen::VectorXd>& points, bool canonicalize) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "convex body needs at least one generator");
  const Eigen::Index d = points.front().size();
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "generator dimension must be >= 1");

  std::vector<Eigen::VectorXd> kept;
  for (const auto& p : points) {
    require_dim(p, static_cast<int>(d));
    if (p.cwiseAbs().maxCoeff() <= 1e-14) continue;
    Eigen::VectorXd q = is_sign_representative(p) ? p : Eigen::VectorXd(-p);
    if (canonicalize) {
      const bool dup = std::any_of(kept.begin(), kept.end(), [&](const Eigen::VectorXd& other) {
        return (other - q).cwiseAbs().maxCoeff() <= kGeomTolerance;
      });
      if (dup) continue;
    }
    kept.push_back(std::move(q));
  }
  if (kept.empty()) throw Error(ErrorCode::InvalidArgument, "convex body generators are all zero");

  if (canonicalize && kept.size() > 1) {
    // Longest first, so short interior points are tested against the rest.
    std::stable_sort(kept.begin(), kept.end(), [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
      return a.cwiseAbs().sum() > b.cwiseAbs().sum();
    });
    for (std::size_t i = kept.size(); i-- > 0;) {
      if (kept.size() == 1) break;
      Eigen::MatrixXd others(d, static_cast<Eigen::Index>(kept.size() - 1));
      Eigen::Index col = 0;
      for (std::size_t j = 0; j < kept.size(); ++j) {
        if (j != i) others.col(col++) = kept[j];
      }
      if (aco_gauge_lp(others, kept[i]) <= 1.0 + 1e-10) kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  generators_.resize(d, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) generators_.col(static_cast<Eigen::Index>(i)) = kept[i];
  span_basis_ = orthonormal_span(generators_);
}

bool ConvexBody::in_span(const Eigen::VectorXd& x) const {
  require_dim(x, dim());
  return in_span_of(span_basis_, x);
}

Eigen::VectorXd ConvexBody::coordinates(const Eigen::VectorXd& x) const {
  require_dim(x, dim());
  return span_basis_.transpose() * x;
}

double gauge(const ConvexBody& body, const Eigen::VectorXd& x) {
  require_dim(x, body.dim());
  if (x.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  if (!body.in_span(x)) return kInfiniteGauge;
  return aco_gauge_lp(body.generators(), x);
}

double gauge_n(const ConvexBody& body, const NormedSpace& ambient, double a, int n, const Eigen::VectorXd& x) {
  require_dim(x, body.dim());
  if (ambient.dim() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "body/ambient dimension");
  if (!(a > 1.0) || n < 1) throw Error(ErrorCode::InvalidArgument, "gauge_n needs a > 1 and n >= 1");
  if (x.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const double scale = std::pow(a, -n);
  if (body.in_span(x)) return scale * scaled_decomposition_lp(body, ambient, scale * scale, x);
  const double s = std::pow(a, n);
  return s * off_span_decomposition_lp(body, ambient, s * s, x);
}

GaugeBracket gauge_n_bounds(const ConvexBody& body, const NormedSpace& ambient, double a, int n,
                            const Eigen::VectorXd& x) {
  for (int i = 0; i < body.num_generators(); ++i) {
    if (ambient.norm(body.generator(i)) > 1.0 + kGeomTolerance) {
      throw Error(ErrorCode::InvalidArgument, "gauge bounds need K inside the unit ball");
    }
  }
  GaugeBracket out;
  const double value = gauge_n(body, ambient, a, n, x);
  const double an = std::pow(a, n);
  const double norm = ambient.norm(x);
  out.analytic_lower = norm / (an + 1.0 / an);
  out.analytic_upper = std::min(gauge(body, x) / an, an * norm);
  const double slack = lp::kTolerance * (1.0 + value);
  out.lower = std::max(out.analytic_lower, value - slack);
  out.upper = std::min(out.analytic_upper, value + slack);
  return out;
}

// ---------------------------------------------------------------------------

DecompositionProfile::DecompositionProfile(const ConvexBody& body, const NormedSpace& ambient,
                                           const Eigen::VectorXd& x) {
  require_dim(x, body.dim());
  if (ambient.dim() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "body/ambient dimension");
  norm_ = ambient.norm(x);
  if (norm_ == 0.0) {
    knots_.push_back({0.0, 0.0});
    return;
  }
  body_gauge_ = gauge(body, x);
  ++lp_solves_;
  if (!std::isfinite(body_gauge_)) throw Error(ErrorCode::NotInCarrier, "point is not in span(K)");

  const Eigen::MatrixXd& g = body.generators();
  const Eigen::MatrixXd& phi = ambient.functionals();
  const auto k = static_cast<std::size_t>(g.cols());
  const Eigen::MatrixXd phig = phi * g;
  const Eigen::VectorXd phix = phi * x;
  const std::size_t n_vars = 2 * k + 1;

  // psi(u) as an LP; the multiplier of the budget row is a subgradient.
  // The distance is written as norm_ + sigma with sigma free, so every rhs is
  // nonnegative and the slack basis is feasible from the start.
  lp::LinearProgram program;
  program.objective.assign(n_vars, 0.0);
  program.objective[2 * k] = 1.0;
  program.bounds.assign(n_vars, lp::Bound{0.0, lp::kInf});
  program.bounds[2 * k] = lp::Bound{};
  for (Eigen::Index j = 0; j < phi.rows(); ++j) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> row(n_vars, 0.0);
      for (std::size_t i = 0; i < k; ++i) {
        row[i] = -sign * phig(j, static_cast<Eigen::Index>(i));
        row[k + i] = sign * phig(j, static_cast<Eigen::Index>(i));
      }
      row[2 * k] = -1.0;
      program.add(std::move(row), lp::Relation::LessEq, std::max(norm_ - sign * phix(j), 0.0));
    }
  }
  {
    std::vector<double> row(n_vars, 0.0);
    std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(2 * k), 1.0);
    program.add(std::move(row), lp::Relation::LessEq, 0.0);
  }
  const std::size_t budget_row = program.constraints.size() - 1;

  struct Sample {
    double u, value, slope;
  };
  auto evaluate = [&](double u) {
    program.constraints[budget_row].rhs = u;
    const lp::Result res = lp::solve(program);
    ++lp_solves_;
    if (!res.optimal()) throw Error(ErrorCode::InvalidArgument, "profile LP did not reach an optimum");
    return Sample{u, std::max(norm_ + res.value, 0.0), std::min(res.duals[budget_row], 0.0)};
  };

  const double tol = 1e-11 * (1.0 + norm_);
  auto on_tangent = [&](const Sample& from, const Sample& to) {
    return std::abs(from.value + from.slope * (to.u - from.u) - to.value) <= tol;
  };

  // Sandwich refinement: split at the meeting point of the two tangents until
  // one endpoint's tangent passes through the other, which pins psi to the
  // chord on that interval.
  std::vector<Sample> done;
  std::function<void(const Sample&, const Sample&, int)> refine = [&](const Sample& lo, const Sample& hi, int depth) {
    const double width = hi.u - lo.u;
    if (on_tangent(lo, hi) || on_tangent(hi, lo) || depth > 60 || width <= 1e-13 * body_gauge_) {
      done.push_back(lo);
      return;
    }
    double mid = 0.5 * (lo.u + hi.u);
    if (lo.slope != hi.slope) {
      const double meet = (hi.value - lo.value + lo.slope * lo.u - hi.slope * hi.u) / (lo.slope - hi.slope);
      if (meet > lo.u + 1e-6 * width && meet < hi.u - 1e-6 * width) mid = meet;
    }
    const Sample m = evaluate(mid);
    refine(lo, m, depth + 1);
    refine(m, hi, depth + 1);
  };
  // At u = 0 the multiplier can be arbitrarily steep; it is still a valid
  // subgradient, so refinement only converges more slowly there.
  const Sample start = evaluate(0.0);
  const Sample end = evaluate(body_gauge_);
  refine(Sample{0.0, norm_, start.slope}, Sample{end.u, 0.0, end.slope}, 0);
  done.push_back(Sample{end.u, 0.0, end.slope});

  knots_.reserve(done.size());
  for (const Sample& s : done) {
    // Drop interior knots that sit on the line through their neighbours.
    if (knots_.size() >= 2) {
      const Knot& a = knots_[knots_.size() - 2];
      const Knot& b = knots_.back();
      const double interp = a.value + (s.value - a.value) * (b.u - a.u) / (s.u - a.u);
      if (std::abs(interp - b.value) <= tol) knots_.pop_back();
    }
    knots_.push_back({s.u, s.value});
  }
}

double DecompositionProfile::crossing(double slope) const {
  if (!(slope > 0.0)) throw Error(ErrorCode::InvalidArgument, "crossing slope must be positive");
  if (norm_ == 0.0) return 0.0;
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    const Knot& hi = knots_[i];
    if (hi.value - slope * hi.u > 0.0) continue;
    const Knot& lo = knots_[i - 1];
    const double s = (hi.value - lo.value) / (hi.u - lo.u);
    const double u = (lo.value - s * lo.u) / (slope - s);
    return std::clamp(u, lo.u, hi.u);
  }
  return body_gauge_;
}

double DecompositionProfile::gauge_n(double a, int n) const {
  const double scale = std::pow(a, -n);
  return scale * crossing(scale * scale);
}

}  // namespace gaugefactor
