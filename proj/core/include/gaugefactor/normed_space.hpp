#pragma once

// Finite-dimensional real spaces with polyhedral norms
//   ||x|| = max_j |<phi_j, x>|
// given by a spanning list of dual functionals (the H-rep of the unit ball).
// The ball's vertex list (V-rep) is either supplied or enumerated lazily.

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace gaugefactor {

enum class NormKind { L1, Linf, CustomPolyhedral };

using NormFn = std::function<double(const Eigen::VectorXd&)>;

class NormedSpace {
 public:
  static NormedSpace linf(int dim);
  static NormedSpace l1(int dim);
  /// Rows of `functionals` are the phi_j. They must span the dual space.
  static NormedSpace custom(Eigen::MatrixXd functionals);
  /// Custom space whose ball vertices are already known; each vertex is
  /// validated against the functionals.
  static NormedSpace custom(Eigen::MatrixXd functionals, std::vector<Eigen::VectorXd> ball_vertices);

  int dim() const { return static_cast<int>(functionals_.cols()); }
  NormKind kind() const { return kind_; }
  const Eigen::MatrixXd& functionals() const { return functionals_; }

  double norm(const Eigen::VectorXd& x) const;
  /// max over ball vertices v of <phi, v>.
  double dual_norm(const Eigen::VectorXd& phi) const;

  /// Symmetric vertex list of the closed unit ball (computed once).
  const std::vector<Eigen::VectorXd>& ball_vertices() const;

  NormFn norm_fn() const;

 private:
  struct VertexCache {
    std::once_flag once;
    std::vector<Eigen::VectorXd> vertices;
  };

  NormedSpace(NormKind kind, Eigen::MatrixXd functionals);

  NormKind kind_;
  Eigen::MatrixXd functionals_;
  std::shared_ptr<VertexCache> cache_;
};

struct LinearMap {
  Eigen::MatrixXd matrix;  // rows = codomain dim, cols = domain dim
  NormedSpace domain;
  NormedSpace codomain;

  LinearMap(Eigen::MatrixXd m, NormedSpace dom, NormedSpace cod);
};

/// Max of codomain_norm(T v) over the domain-ball vertices. Exact because a
/// convex function on a polytope peaks at a vertex. Vertices are visited up
/// to sign.
double operator_norm(const Eigen::MatrixXd& matrix, std::span<const Eigen::VectorXd> domain_vertices,
                     const NormFn& codomain_norm);

double operator_norm(const LinearMap& map);

/// True when v's first nonzero coordinate is positive (one of each ±v pair).
bool is_sign_representative(const Eigen::VectorXd& v);

}  // namespace gaugefactor
