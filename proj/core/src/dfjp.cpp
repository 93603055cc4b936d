#include "gaugefactor/dfjp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gaugefactor/error.hpp"
#include "gaugefactor/polytope.hpp"

namespace gaugefactor {
namespace {

// Smallest N >= 1 with scale^2 * a^-2N / (a^2 - 1) <= tol^2.
int tail_terms(double a, double scale, double tol) {
  if (scale == 0.0) return 1;
  const double target = (tol * tol * (a * a - 1.0)) / (scale * scale);
  if (target >= 1.0) return 1;
  const double n = std::ceil(std::log(1.0 / target) / (2.0 * std::log(a)));
  if (!(n < static_cast<double>(std::numeric_limits<int>::max()))) return std::numeric_limits<int>::max();
  return std::max(1, static_cast<int>(n));
}

double tail_sum(double a, int n) { return std::pow(a, -2.0 * n) / (a * a - 1.0); }

SeriesValue finish_series(double sum_sq, double tail_sq, int terms) {
  const double value = std::sqrt(sum_sq);
  return SeriesValue{value, std::sqrt(sum_sq + tail_sq) - value, terms};
}

}  // namespace

SeriesValue f_of_a(double a, double tol, int n_max) {
  if (!(a > 1.0)) throw Error(ErrorCode::InvalidArgument, "f(a) needs a > 1");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "f(a) needs a positive tolerance");
  const int terms = tail_terms(a, 1.0, tol);
  if (terms > n_max) {
    throw Error(ErrorCode::NonConvergent,
                "f(a) needs " + std::to_string(terms) + " terms, cap is " + std::to_string(n_max));
  }
  double sum = 0.0;
  // Smallest terms first.
  for (int n = terms; n >= 1; --n) {
    const double inv = std::pow(a, -n);
    const double term = inv / (1.0 + inv * inv);
    sum += term * term;
  }
  return finish_series(sum, tail_sum(a, terms), terms);
}

ABar a_bar(double tol) {
  if (!(tol >= 1e-13)) throw Error(ErrorCode::InvalidArgument, "a_bar tolerance must be >= 1e-13");
  const double eval_tol = std::max(tol * 1e-2, 1e-15);
  auto f = [&](double a) { return f_of_a(a, eval_tol).value; };

  double hi = 2.0;
  while (f(hi) >= 1.0) hi = 1.0 + 2.0 * (hi - 1.0);
  double lo = 1.0 + 0.5 * (hi - 1.0);
  while (f(lo) <= 1.0) lo = 1.0 + 0.5 * (lo - 1.0);

  ABar out;
  double mid = 0.5 * (lo + hi);
  double fm = f(mid);
  for (int iter = 0; iter < 200 && std::abs(fm - 1.0) > tol; ++iter) {
    if (fm > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next == lo || next == hi) break;
    mid = next;
    fm = f(mid);
  }
  out.value = mid;
  out.lower = lo;
  out.upper = hi;
  out.residual = std::abs(fm - 1.0);
  return out;
}

const ABar& lno_a_bar() {
  static const ABar cached = a_bar(1e-12);
  return cached;
}

double c_constant(double a) {
  if (!(a > 1.0)) throw Error(ErrorCode::InvalidArgument, "C(a) needs a > 1");
  return 0.25 + 1.0 / (2.0 * std::log(a));
}

void DfjpParams::validate() const {
  if (!(a > 1.0 + 1e-6)) throw Error(ErrorCode::InvalidArgument, "DFJP parameter a must exceed 1 + 1e-6");
  if (!(series_tol >= 1e-12)) throw Error(ErrorCode::InvalidArgument, "series_tol must be >= 1e-12");
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be positive");
}

DfjpParams DfjpParams::lno() { return DfjpParams{lno_a_bar().value}; }

// ---------------------------------------------------------------------------

std::shared_ptr<const DecompositionProfile> ProfileCache::get(const ConvexBody& body, const NormedSpace& ambient,
                                                               const Eigen::VectorXd& x) {
  std::vector<double> key(x.data(), x.data() + x.size());
  {
    const std::lock_guard<std::mutex> lock(mutex_);
    const auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  auto profile = std::make_shared<const DecompositionProfile>(body, ambient, x);
  const std::lock_guard<std::mutex> lock(mutex_);
  if (entries_.size() >= kMaxEntries) entries_.clear();
  return entries_.emplace(std::move(key), std::move(profile)).first->second;
}

std::size_t ProfileCache::size() const {
  const std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

DfjpSpace::DfjpSpace(NormedSpace ambient, ConvexBody body, DfjpParams params)
    : ambient_(std::move(ambient)),
      body_(std::move(body)),
      params_(params),
      cache_(std::make_shared<ProfileCache>()) {
  params_.validate();
  if (ambient_.dim() != body_.dim()) throw Error(ErrorCode::DimensionMismatch, "body/ambient dimension");
  for (int i = 0; i < body_.num_generators(); ++i) {
    if (ambient_.norm(body_.generator(i)) > 1.0 + kGeomTolerance) {
      throw Error(ErrorCode::InvalidArgument, "K must lie in the closed unit ball of X");
    }
  }
}

DfjpSpace DfjpSpace::with_params(DfjpParams params) const {
  params.validate();
  DfjpSpace out = *this;
  out.params_ = params;
  return out;
}

int DfjpSpace::terms_for(double body_gauge) const {
  const int terms = tail_terms(params_.a, body_gauge, params_.series_tol);
  if (terms > params_.n_max) {
    throw Error(ErrorCode::NonConvergent, "||x||_K needs " + std::to_string(terms) + " terms, cap is " +
                                              std::to_string(params_.n_max));
  }
  return terms;
}

SeriesValue DfjpSpace::norm(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension");
  if (x.cwiseAbs().maxCoeff() == 0.0) return {};
  if (!in_carrier(x)) throw Error(ErrorCode::NotInCarrier, "point is not in span(K)");
  const auto profile = cache_->get(body_, ambient_, x);
  const double gk = profile->body_gauge();
  const int terms = terms_for(gk);
  double sum = 0.0;
  for (int n = terms; n >= 1; --n) {
    const double g = profile->gauge_n(params_.a, n);
    sum += g * g;
  }
  return finish_series(sum, gk * gk * tail_sum(params_.a, terms), terms);
}

SeriesValue DfjpSpace::norm_per_term(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension");
  if (x.cwiseAbs().maxCoeff() == 0.0) return {};
  const double gk = gauge(body_, x);
  if (!std::isfinite(gk)) throw Error(ErrorCode::NotInCarrier, "point is not in span(K)");
  const int terms = terms_for(gk);
  double sum = 0.0;
  for (int n = terms; n >= 1; --n) {
    const double g = gauge_n(body_, ambient_, params_.a, n, x);
    sum += g * g;
  }
  return finish_series(sum, gk * gk * tail_sum(params_.a, terms), terms);
}

NormFn DfjpSpace::norm_fn() const {
  return [this](const Eigen::VectorXd& x) { return norm(x).value; };
}

double inclusion_norm(const DfjpSpace& space, const std::vector<Eigen::VectorXd>& candidates) {
  double best = 0.0;
  for (const auto& x : candidates) {
    const double k_norm = space.norm(x).value;
    if (k_norm > 0.0) best = std::max(best, space.ambient().norm(x) / k_norm);
  }
  return best;
}

namespace {

Factorization finish_factorization(std::shared_ptr<const DfjpSpace> space, const LinearMap& t, double t_norm) {
  const DfjpParams& params = space->params();
  Factorization out;
  out.t_k = t.matrix;
  out.j_k = Eigen::MatrixXd::Identity(t.codomain.dim(), t.codomain.dim());

  std::vector<Eigen::VectorXd> generators;
  for (int i = 0; i < space->body().num_generators(); ++i) generators.push_back(space->body().generator(i));

  const SeriesValue fa = f_of_a(params.a);
  out.norms.t = t_norm;
  out.norms.t_k = operator_norm(t.matrix, t.domain.ball_vertices(), space->norm_fn());
  out.norms.j_k = inclusion_norm(*space, generators);
  out.norms.j_k_bound = 1.0 / fa.value;
  out.norms.f_a = fa.value;
  out.norms.c_a = c_constant(params.a);
  out.space = std::move(space);
  return out;
}

}  // namespace

Factorization factor_operator(const LinearMap& t, const DfjpParams& params) {
  params.validate();
  const double t_norm = operator_norm(t);
  if (!(t_norm > 1e-14)) throw Error(ErrorCode::ZeroOperator, "cannot factor the zero operator");

  std::vector<Eigen::VectorXd> images;
  for (const auto& v : t.domain.ball_vertices()) {
    if (is_sign_representative(v)) images.push_back(t.matrix * v / t_norm);
  }
  auto space = std::make_shared<const DfjpSpace>(t.codomain, ConvexBody(images), params);
  return finish_factorization(std::move(space), t, t_norm);
}

Factorization refactor(const Factorization& base, const LinearMap& t, const DfjpParams& params) {
  auto space = std::make_shared<const DfjpSpace>(base.space->with_params(params));
  return finish_factorization(std::move(space), t, base.norms.t);
}

}  // namespace gaugefactor
