#pragma once

// Absolutely convex bodies K = aco{v_1..v_k} and their Minkowski functionals,
// including the gauges of the interpolation bodies K_n = a^n K + a^-n B_X.

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "gaugefactor/normed_space.hpp"

namespace gaugefactor {

inline constexpr double kInfiniteGauge = std::numeric_limits<double>::infinity();

class ConvexBody {
 public:
  /// Body spanned by `points`. With `canonicalize`, zero points, ± duplicates
  /// and points inside the absolutely convex hull of the rest are dropped;
  /// the body itself is unchanged. Throws InvalidArgument if every point is 0.
  explicit ConvexBody(const std::vector<Eigen::VectorXd>& points, bool canonicalize = true);

  int dim() const { return static_cast<int>(generators_.rows()); }
  int num_generators() const { return static_cast<int>(generators_.cols()); }
  const Eigen::MatrixXd& generators() const { return generators_; }
  Eigen::VectorXd generator(int i) const { return generators_.col(i); }

  /// Orthonormal basis of span(K), one column per direction.
  const Eigen::MatrixXd& span_basis() const { return span_basis_; }
  int rank() const { return static_cast<int>(span_basis_.cols()); }

  bool in_span(const Eigen::VectorXd& x) const;
  /// Coefficients of x in span_basis().
  Eigen::VectorXd coordinates(const Eigen::VectorXd& x) const;

 private:
  Eigen::MatrixXd generators_;
  Eigen::MatrixXd span_basis_;
};

/// inf{t > 0 : x in tK}; +inf off span(K).
double gauge(const ConvexBody& body, const Eigen::VectorXd& x);

/// Minkowski functional of a^n K + a^-n B_X at x, as one LP.
double gauge_n(const ConvexBody& body, const NormedSpace& ambient, double a, int n, const Eigen::VectorXd& x);

struct GaugeBracket {
  double lower = 0.0;
  double upper = 0.0;
  /// ||x|| / (a^n + a^-n), valid whenever K lies in the unit ball.
  double analytic_lower = 0.0;
  /// min(a^-n gauge_K(x), a^n ||x||) from the two trivial decompositions.
  double analytic_upper = 0.0;
};

GaugeBracket gauge_n_bounds(const ConvexBody& body, const NormedSpace& ambient, double a, int n,
                            const Eigen::VectorXd& x);

/// Piecewise-linear distance profile
///   psi(u) = min { ||x - y|| : gauge_K(y) <= u },
/// built once per point. Since
///   gauge_n(x) = a^-n * min { u : psi(u) <= a^-2n u },
/// every term of the series follows from the profile without another LP.
class DecompositionProfile {
 public:
  /// Throws NotInCarrier when x is off span(K).
  DecompositionProfile(const ConvexBody& body, const NormedSpace& ambient, const Eigen::VectorXd& x);

  double body_gauge() const { return body_gauge_; }
  double norm() const { return norm_; }
  /// min { u >= 0 : psi(u) <= slope * u } for slope > 0.
  double crossing(double slope) const;
  double gauge_n(double a, int n) const;

  std::size_t lp_solves() const { return lp_solves_; }
  std::size_t pieces() const { return knots_.empty() ? 0 : knots_.size() - 1; }

 private:
  struct Knot {
    double u;
    double value;
  };

  double norm_ = 0.0;
  double body_gauge_ = 0.0;
  std::vector<Knot> knots_;  // breakpoints of psi on [0, body_gauge]
  std::size_t lp_solves_ = 0;
};

}  // namespace gaugefactor
