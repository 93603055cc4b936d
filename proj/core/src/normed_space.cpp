#include "gaugefactor/normed_space.hpp"

#include <cmath>
#include <string>

#include "gaugefactor/error.hpp"
#include "gaugefactor/polytope.hpp"

namespace gaugefactor {
namespace {

void require_dim(const Eigen::VectorXd& x, int dim) {
  if (x.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected dimension " + std::to_string(dim) + ", got " + std::to_string(x.size()));
  }
}

std::vector<Eigen::VectorXd> sign_vectors(int dim) {
  std::vector<Eigen::VectorXd> out;
  for (unsigned mask = 0; mask < (1u << dim); ++mask) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = (mask >> i) & 1u ? -1.0 : 1.0;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

NormedSpace::NormedSpace(NormKind kind, Eigen::MatrixXd functionals)
    : kind_(kind), functionals_(std::move(functionals)), cache_(std::make_shared<VertexCache>()) {
  if (functionals_.cols() < 1) throw Error(ErrorCode::InvalidArgument, "space dimension must be >= 1");
  if (functionals_.rows() < functionals_.cols()) {
    throw Error(ErrorCode::InvalidArgument, "functionals do not span the dual space");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(functionals_);
  lu.setThreshold(1e-10);
  if (lu.rank() < functionals_.cols()) {
    throw Error(ErrorCode::InvalidArgument, "functionals do not span the dual space (norm would be degenerate)");
  }
}

NormedSpace NormedSpace::linf(int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "space dimension must be >= 1");
  NormedSpace s(NormKind::Linf, Eigen::MatrixXd::Identity(dim, dim));
  std::call_once(s.cache_->once, [&] { s.cache_->vertices = sign_vectors(dim); });
  return s;
}

NormedSpace NormedSpace::l1(int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "space dimension must be >= 1");
  // ||x||_1 = max over sign vectors s of <s, x>; keep one of each ±s.
  const auto signs = sign_vectors(dim);
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(signs.size() / 2), dim);
  Eigen::Index row = 0;
  for (const auto& s : signs) {
    if (s(0) > 0.0) phi.row(row++) = s.transpose();
  }
  NormedSpace space(NormKind::L1, std::move(phi));
  std::call_once(space.cache_->once, [&] {
    for (int i = 0; i < dim; ++i) {
      space.cache_->vertices.push_back(Eigen::VectorXd::Unit(dim, i));
      space.cache_->vertices.push_back(-Eigen::VectorXd::Unit(dim, i));
    }
  });
  return space;
}

NormedSpace NormedSpace::custom(Eigen::MatrixXd functionals) {
  return NormedSpace(NormKind::CustomPolyhedral, std::move(functionals));
}

NormedSpace NormedSpace::custom(Eigen::MatrixXd functionals, std::vector<Eigen::VectorXd> ball_vertices) {
  NormedSpace space(NormKind::CustomPolyhedral, std::move(functionals));
  for (const auto& v : ball_vertices) {
    require_dim(v, space.dim());
    if (std::abs(space.norm(v) - 1.0) > kGeomTolerance) {
      throw Error(ErrorCode::InvalidArgument, "supplied ball vertex is not on the unit sphere");
    }
  }
  std::call_once(space.cache_->once, [&] { space.cache_->vertices = std::move(ball_vertices); });
  return space;
}

double NormedSpace::norm(const Eigen::VectorXd& x) const {
  require_dim(x, dim());
  switch (kind_) {
    case NormKind::Linf: return x.cwiseAbs().maxCoeff();
    case NormKind::L1: return x.cwiseAbs().sum();
    case NormKind::CustomPolyhedral: break;
  }
  return (functionals_ * x).cwiseAbs().maxCoeff();
}

const std::vector<Eigen::VectorXd>& NormedSpace::ball_vertices() const {
  std::call_once(cache_->once, [&] {
    const Eigen::Index j = functionals_.rows();
    HPolytope ball;
    ball.normals.resize(2 * j, dim());
    ball.normals.topRows(j) = functionals_;
    ball.normals.bottomRows(j) = -functionals_;
    ball.offsets = Eigen::VectorXd::Ones(2 * j);
    cache_->vertices = vertex_enumeration(ball).vertices;
  });
  return cache_->vertices;
}

double NormedSpace::dual_norm(const Eigen::VectorXd& phi) const {
  require_dim(phi, dim());
  double best = 0.0;
  for (const auto& v : ball_vertices()) best = std::max(best, phi.dot(v));
  return best;
}

NormFn NormedSpace::norm_fn() const {
  return [space = *this](const Eigen::VectorXd& x) { return space.norm(x); };
}

LinearMap::LinearMap(Eigen::MatrixXd m, NormedSpace dom, NormedSpace cod)
    : matrix(std::move(m)), domain(std::move(dom)), codomain(std::move(cod)) {
  if (matrix.rows() != codomain.dim() || matrix.cols() != domain.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shape does not match domain/codomain");
  }
}

bool is_sign_representative(const Eigen::VectorXd& v) {
  const double cutoff = kGeomTolerance * v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) > cutoff) return true;
    if (v(i) < -cutoff) return false;
  }
  return true;
}

double operator_norm(const Eigen::MatrixXd& matrix, std::span<const Eigen::VectorXd> domain_vertices,
                     const NormFn& codomain_norm) {
  double best = 0.0;
  for (const auto& v : domain_vertices) {
    if (v.size() != matrix.cols()) throw Error(ErrorCode::DimensionMismatch, "domain vertex dimension");
    if (!is_sign_representative(v)) continue;
    best = std::max(best, codomain_norm(matrix * v));
  }
  return best;
}

double operator_norm(const LinearMap& map) {
  return operator_norm(map.matrix, map.domain.ball_vertices(), map.codomain.norm_fn());
}

}  // namespace gaugefactor
