#pragma once

// Interpolation renorming X_K of span(K) with
//   ||x||_K = sqrt( sum_{n>=1} ||x||_n^2 ),  ||.||_n the gauge of a^n K + a^-n B_X,
// the scalar function f(a), its root a_bar with f(a_bar) = 1, the constant
// C(a) = 1/4 + 1/(2 ln a), and the factorization T = J_K o T_K.

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "gaugefactor/convex_gauge.hpp"
#include "gaugefactor/normed_space.hpp"

namespace gaugefactor {

/// A truncated series together with a certified bound on what was cut off.
struct SeriesValue {
  double value = 0.0;
  double error_bound = 0.0;
  int terms = 0;
};

/// f(a) = sqrt(sum_n (a^n / (a^2n + 1))^2). The tail after N terms is bounded
/// by a^-2N / (a^2 - 1); N is the first index where that drops below tol^2.
/// Throws NonConvergent if N would exceed n_max.
SeriesValue f_of_a(double a, double tol = 1e-14, int n_max = 1 << 20);

struct ABar {
  double value = 0.0;
  double lower = 0.0;  // f(lower) > 1
  double upper = 0.0;  // f(upper) < 1
  double residual = 0.0;  // |f(value) - 1|
};

/// Bisection for the unique root of f(a) = 1 on (1, inf).
ABar a_bar(double tol = 1e-12);

/// a_bar(1e-12), computed once per process.
const ABar& lno_a_bar();

double c_constant(double a);

struct DfjpParams {
  double a = 0.0;
  double series_tol = 1e-12;
  int n_max = 512;

  /// Throws InvalidArgument unless a > 1 + 1e-6 and series_tol >= 1e-12.
  void validate() const;
  /// Parameters at a = a_bar.
  static DfjpParams lno();
};

/// Profiles keyed by the exact coordinates of x. The profile depends on K and
/// X only, so spaces that differ only in `a` can share one cache.
class ProfileCache {
 public:
  std::shared_ptr<const DecompositionProfile> get(const ConvexBody& body, const NormedSpace& ambient,
                                                  const Eigen::VectorXd& x);
  std::size_t size() const;

 private:
  static constexpr std::size_t kMaxEntries = 1 << 16;
  mutable std::mutex mutex_;
  std::map<std::vector<double>, std::shared_ptr<const DecompositionProfile>> entries_;
};

class DfjpSpace {
 public:
  /// Throws InvalidArgument if some generator of `body` lies outside B_X.
  DfjpSpace(NormedSpace ambient, ConvexBody body, DfjpParams params);

  /// Same K and X at another parameter; shares the profile cache.
  DfjpSpace with_params(DfjpParams params) const;

  const NormedSpace& ambient() const { return ambient_; }
  const ConvexBody& body() const { return body_; }
  const DfjpParams& params() const { return params_; }
  int dim() const { return ambient_.dim(); }
  /// Dimension of the carrier span(K).
  int carrier_dim() const { return body_.rank(); }

  bool in_carrier(const Eigen::VectorXd& x) const { return body_.in_span(x); }

  /// ||x||_K; throws NotInCarrier off span(K) and NonConvergent past n_max.
  SeriesValue norm(const Eigen::VectorXd& x) const;
  /// Same series, one LP per term. Reference path for the profile shortcut.
  SeriesValue norm_per_term(const Eigen::VectorXd& x) const;

  NormFn norm_fn() const;

 private:
  int terms_for(double body_gauge) const;

  NormedSpace ambient_;
  ConvexBody body_;
  DfjpParams params_;
  std::shared_ptr<ProfileCache> cache_;
};

struct FactorizationNorms {
  double t = 0.0;            // ||T||
  double t_k = 0.0;          // ||T_K|| over the domain-ball vertices
  double j_k = 0.0;          // ||J_K||: max of ||x|| / ||x||_K over the generators of K
  double j_k_bound = 0.0;    // 1 / f(a), valid because K lies in B_X
  double f_a = 0.0;
  double c_a = 0.0;
};

struct Factorization {
  std::shared_ptr<const DfjpSpace> space;
  /// T_K: same matrix as T, codomain renormed (ambient coordinates).
  Eigen::MatrixXd t_k;
  /// J_K: inclusion of span(K) into X, the identity in ambient coordinates.
  Eigen::MatrixXd j_k;
  FactorizationNorms norms;
};

/// Factors T through X_K with K = T(B_Z) / ||T||. Throws ZeroOperator.
Factorization factor_operator(const LinearMap& t, const DfjpParams& params);
/// The factorization of the same operator at another parameter, reusing K.
Factorization refactor(const Factorization& base, const LinearMap& t, const DfjpParams& params);

/// max of ||x|| / ||x||_K over the given carrier points.
double inclusion_norm(const DfjpSpace& space, const std::vector<Eigen::VectorXd>& candidates);

}  // namespace gaugefactor
