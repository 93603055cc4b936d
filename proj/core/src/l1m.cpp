#include "gaugefactor/l1m.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaugefactor/error.hpp"

namespace gaugefactor {
namespace {

void require_function(const VectorMeasure& m, const Eigen::VectorXd& f) {
  if (f.size() != m.atoms()) {
    throw Error(ErrorCode::DimensionMismatch,
                "function has " + std::to_string(f.size()) + " entries, measure has " + std::to_string(m.atoms()));
  }
  if (!f.allFinite()) throw Error(ErrorCode::InvalidArgument, "function values must be finite");
}

const NormedSpace& polyhedral_codomain(const VectorMeasure& m) {
  const NormedSpace* space = m.codomain().polyhedral();
  if (space == nullptr) throw Error(ErrorCode::InvalidArgument, "operation needs a polyhedral codomain");
  return *space;
}

// Rows s ⊙ w_j on the non-null atoms, one per functional and sign pattern on
// the support of w_j (first support sign fixed).
Eigen::MatrixXd l1m_functionals(const VectorMeasure& m, const std::vector<int>& live) {
  const Eigen::MatrixXd pairing = polyhedral_codomain(m).functionals() * m.values();
  const auto q = static_cast<Eigen::Index>(live.size());
  std::vector<Eigen::RowVectorXd> rows;
  for (Eigen::Index j = 0; j < pairing.rows(); ++j) {
    Eigen::RowVectorXd w(q);
    std::vector<Eigen::Index> support;
    for (Eigen::Index k = 0; k < q; ++k) {
      w(k) = std::abs(pairing(j, live[static_cast<std::size_t>(k)]));
      if (w(k) > 0.0) support.push_back(k);
    }
    if (support.empty()) continue;
    const unsigned patterns = 1u << (support.size() - 1);
    for (unsigned mask = 0; mask < patterns; ++mask) {
      Eigen::RowVectorXd row = w;
      for (std::size_t s = 1; s < support.size(); ++s) {
        if ((mask >> (s - 1)) & 1u) row(support[s]) = -row(support[s]);
      }
      rows.push_back(std::move(row));
    }
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), q);
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = rows[r];
  return out;
}

}  // namespace

Eigen::VectorXd canonicalize(const VectorMeasure& m, const Eigen::VectorXd& f) {
  require_function(m, f);
  Eigen::VectorXd out = f;
  for (int i = 0; i < m.atoms(); ++i) {
    if (contains(m.null_mask(), i)) out(i) = 0.0;
  }
  return out;
}

Eigen::VectorXd indicator(int atoms, AtomSet set) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(atoms);
  for (int i = 0; i < atoms; ++i) {
    if (contains(set, i)) out(i) = 1.0;
  }
  return out;
}

double linf_norm(const VectorMeasure& m, const Eigen::VectorXd& f) {
  require_function(m, f);
  double best = 0.0;
  for (int i : m.non_null_atoms()) best = std::max(best, std::abs(f(i)));
  return best;
}

double l1m_norm_closed_form(const VectorMeasure& m, const Eigen::VectorXd& f) {
  require_function(m, f);
  const Eigen::MatrixXd pairing = polyhedral_codomain(m).functionals() * m.values();
  const Eigen::VectorXd weights = canonicalize(m, f).cwiseAbs();
  return (pairing.cwiseAbs() * weights).maxCoeff();
}

double l1m_norm_enumerated(const VectorMeasure& m, const Eigen::VectorXd& f) {
  require_function(m, f);
  std::vector<int> idx;
  for (int i : m.non_null_atoms()) {
    if (f(i) != 0.0) idx.push_back(i);
  }
  if (idx.empty()) return 0.0;
  const unsigned patterns = 1u << (idx.size() - 1);
  double best = 0.0;
  for (unsigned mask = 0; mask < patterns; ++mask) {
    Eigen::VectorXd sum = f(idx[0]) * m.values().col(idx[0]);
    for (std::size_t k = 1; k < idx.size(); ++k) {
      const double sign = (mask >> (k - 1)) & 1u ? -1.0 : 1.0;
      sum += sign * f(idx[k]) * m.values().col(idx[k]);
    }
    best = std::max(best, m.codomain().norm(sum));
  }
  return best;
}

double l1m_norm(const VectorMeasure& m, const Eigen::VectorXd& f) {
  if (m.codomain().polyhedral() == nullptr) return l1m_norm_enumerated(m, f);
  const double closed = l1m_norm_closed_form(m, f);
  const double enumerated = l1m_norm_enumerated(m, f);
  if (std::abs(closed - enumerated) > kGeomTolerance * (1.0 + closed)) {
    throw Error(ErrorCode::OracleDisagreement, "L1(m) norm: closed form " + std::to_string(closed) +
                                                   " vs enumeration " + std::to_string(enumerated));
  }
  return closed;
}

Eigen::VectorXd integrate(const VectorMeasure& m, const Eigen::VectorXd& f, AtomSet set) {
  require_function(m, f);
  Eigen::VectorXd total = Eigen::VectorXd::Zero(m.dim());
  for (int i = 0; i < m.atoms(); ++i) {
    if (contains(set, i)) total += f(i) * m.values().col(i);
  }
  return total;
}

Eigen::VectorXd integrate(const VectorMeasure& m, const Eigen::VectorXd& f) {
  return integrate(m, f, full_set(m.atoms()));
}

NormedSpace l1m_space(const VectorMeasure& m) {
  const std::vector<int> live = m.non_null_atoms();
  if (static_cast<int>(live.size()) > kMaxBallAtoms) {
    throw Error(ErrorCode::ScaleLimit, "L1(m) ball geometry is capped at " + std::to_string(kMaxBallAtoms) +
                                           " non-null atoms, got " + std::to_string(live.size()));
  }
  Eigen::MatrixXd functionals = l1m_functionals(m, live);
  HPolytope ball;
  ball.normals.resize(2 * functionals.rows(), functionals.cols());
  ball.normals << functionals, -functionals;
  ball.offsets = Eigen::VectorXd::Ones(ball.normals.rows());
  std::vector<Eigen::VectorXd> vertices = vertex_enumeration(ball).vertices;
  return NormedSpace::custom(std::move(functionals), std::move(vertices));
}

VPolytope l1m_ball(const VectorMeasure& m) {
  const std::vector<int> live = m.non_null_atoms();
  const NormedSpace space = l1m_space(m);
  VPolytope out;
  out.dim = m.atoms();
  for (const auto& v : space.ball_vertices()) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(m.atoms());
    for (std::size_t k = 0; k < live.size(); ++k) full(live[k]) = v(static_cast<Eigen::Index>(k));
    out.vertices.push_back(std::move(full));
  }
  return out;
}

Eigen::VectorXd IntegrationOperator::lift(const Eigen::VectorXd& coords, int total_atoms) const {
  if (coords.size() != static_cast<Eigen::Index>(atoms.size())) {
    throw Error(ErrorCode::DimensionMismatch, "coordinate count does not match non-null atoms");
  }
  Eigen::VectorXd full = Eigen::VectorXd::Zero(total_atoms);
  for (std::size_t k = 0; k < atoms.size(); ++k) full(atoms[k]) = coords(static_cast<Eigen::Index>(k));
  return full;
}

IntegrationOperator integration_operator(const VectorMeasure& m, Domain which) {
  const std::vector<int> live = m.non_null_atoms();
  Eigen::MatrixXd matrix(m.dim(), static_cast<Eigen::Index>(live.size()));
  for (std::size_t k = 0; k < live.size(); ++k) matrix.col(static_cast<Eigen::Index>(k)) = m.atom(live[k]);
  NormedSpace domain =
      which == Domain::L1 ? l1m_space(m) : NormedSpace::linf(static_cast<int>(live.size()));
  return IntegrationOperator{LinearMap(std::move(matrix), std::move(domain), polyhedral_codomain(m)), live};
}

LinearMap linf_to_l1(const VectorMeasure& m) {
  const auto q = static_cast<int>(m.non_null_atoms().size());
  return LinearMap(Eigen::MatrixXd::Identity(q, q), NormedSpace::linf(q), l1m_space(m));
}

}  // namespace gaugefactor
