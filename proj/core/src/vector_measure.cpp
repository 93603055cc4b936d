#include "gaugefactor/vector_measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "gaugefactor/error.hpp"
#include "gaugefactor/polytope.hpp"

namespace gaugefactor {
namespace {

void require_set(const VectorMeasure& m, AtomSet set) {
  if ((set & ~full_set(m.atoms())) != 0) {
    throw Error(ErrorCode::InvalidArgument, "set mentions atoms outside 0.." + std::to_string(m.atoms() - 1));
  }
}

std::vector<int> members(AtomSet set) {
  std::vector<int> out;
  for (int i = 0; set != 0; ++i, set >>= 1) {
    if (set & 1u) out.push_back(i);
  }
  return out;
}

}  // namespace

AtomSet full_set(int atoms) { return atoms >= 32 ? ~AtomSet{0} : (AtomSet{1} << atoms) - 1; }
int set_size(AtomSet set) { return std::popcount(set); }
bool contains(AtomSet set, int atom) { return ((set >> atom) & 1u) != 0; }

Codomain::Codomain(NormedSpace space) : polyhedral_(std::make_shared<const NormedSpace>(std::move(space))) {}

Codomain::Codomain(std::shared_ptr<const DfjpSpace> space) : renormed_(std::move(space)) {
  if (!renormed_) throw Error(ErrorCode::InvalidArgument, "null renormed codomain");
}

int Codomain::dim() const { return polyhedral_ ? polyhedral_->dim() : renormed_->dim(); }

double Codomain::norm(const Eigen::VectorXd& x) const {
  return polyhedral_ ? polyhedral_->norm(x) : renormed_->norm(x).value;
}

VectorMeasure::VectorMeasure(Codomain codomain, Eigen::MatrixXd values)
    : codomain_(std::move(codomain)), values_(std::move(values)) {
  if (values_.cols() < 1 || values_.cols() > kMaxAtoms) {
    throw Error(ErrorCode::InvalidArgument, "number of atoms must be in 1.." + std::to_string(kMaxAtoms));
  }
  if (values_.rows() != codomain_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "atom dimension does not match the codomain");
  }
  if (!values_.allFinite()) throw Error(ErrorCode::InvalidArgument, "atom values must be finite");
  for (int i = 0; i < atoms(); ++i) {
    if (values_.col(i).cwiseAbs().maxCoeff() == 0.0) null_mask_ |= AtomSet{1} << i;
  }
  if (null_mask_ == full_set(atoms())) throw Error(ErrorCode::InvalidArgument, "measure is identically zero");
}

std::vector<int> VectorMeasure::non_null_atoms() const { return members(full_set(atoms()) & ~null_mask_); }

VectorMeasure VectorMeasure::scaled(double c) const {
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  return VectorMeasure(codomain_, c * values_);
}

VectorMeasure VectorMeasure::with_codomain(Codomain codomain) const {
  return VectorMeasure(std::move(codomain), values_);
}

double ScalarMeasure::on(AtomSet set) const {
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (contains(set, static_cast<int>(i))) total += weights[i];
  }
  return total;
}

AtomSet ScalarMeasure::null_mask() const {
  AtomSet mask = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0) mask |= AtomSet{1} << i;
  }
  return mask;
}

Eigen::VectorXd value_on(const VectorMeasure& m, AtomSet set) {
  require_set(m, set);
  Eigen::VectorXd total = Eigen::VectorXd::Zero(m.dim());
  for (int i : members(set)) total += m.values().col(i);
  return total;
}

double variation(const VectorMeasure& m, AtomSet set) {
  require_set(m, set);
  double total = 0.0;
  for (int i : members(set)) total += m.codomain().norm(m.atom(i));
  return total;
}

ScalarMeasure variation_measure(const VectorMeasure& m) {
  ScalarMeasure out;
  for (int i = 0; i < m.atoms(); ++i) out.weights.push_back(m.codomain().norm(m.atom(i)));
  return out;
}

double semivariation_signs(const VectorMeasure& m, AtomSet set) {
  require_set(m, set);
  const std::vector<int> idx = members(set & ~m.null_mask());
  if (idx.empty()) return 0.0;
  // The first sign is fixed to +1; the norm is even.
  const unsigned patterns = 1u << (idx.size() - 1);
  double best = 0.0;
  for (unsigned mask = 0; mask < patterns; ++mask) {
    Eigen::VectorXd sum = m.values().col(idx[0]);
    for (std::size_t k = 1; k < idx.size(); ++k) {
      const double sign = (mask >> (k - 1)) & 1u ? -1.0 : 1.0;
      sum += sign * m.values().col(idx[k]);
    }
    best = std::max(best, m.codomain().norm(sum));
  }
  return best;
}

double semivariation_dual(const VectorMeasure& m, AtomSet set) {
  require_set(m, set);
  const NormedSpace* space = m.codomain().polyhedral();
  if (space == nullptr) throw Error(ErrorCode::InvalidArgument, "dual formula needs a polyhedral codomain");
  const Eigen::MatrixXd pairing = space->functionals() * m.values();
  double best = 0.0;
  for (Eigen::Index j = 0; j < pairing.rows(); ++j) {
    double total = 0.0;
    for (int i : members(set)) total += std::abs(pairing(j, i));
    best = std::max(best, total);
  }
  return best;
}

double semivariation(const VectorMeasure& m, AtomSet set) {
  if (m.codomain().polyhedral() == nullptr) return semivariation_signs(m, set);
  const double dual = semivariation_dual(m, set);
  const double signs = semivariation_signs(m, set);
  if (std::abs(dual - signs) > kGeomTolerance * (1.0 + dual)) {
    throw Error(ErrorCode::OracleDisagreement, "semivariation: dual formula " + std::to_string(dual) +
                                                   " vs sign enumeration " + std::to_string(signs));
  }
  return dual;
}

bool is_null_set(const VectorMeasure& m, AtomSet set) {
  require_set(m, set);
  return (set & ~m.null_mask()) == 0;
}

RybakovResult rybakov(const VectorMeasure& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const std::vector<int> live = m.non_null_atoms();
  for (int attempt = 1; attempt <= 100; ++attempt) {
    Eigen::VectorXd phi(m.dim());
    for (Eigen::Index r = 0; r < phi.size(); ++r) phi(r) = gauss(rng);
    const NormedSpace* space = m.codomain().polyhedral();
    const double scale = space != nullptr ? space->dual_norm(phi) : phi.norm();
    if (!(scale > 0.0)) continue;
    phi /= scale;

    ScalarMeasure measure;
    measure.weights.assign(static_cast<std::size_t>(m.atoms()), 0.0);
    bool separates = true;
    for (int i : live) {
      const double w = std::abs(phi.dot(m.atom(i)));
      if (!(w > 1e-12 * m.atom(i).norm())) {
        separates = false;
        break;
      }
      measure.weights[static_cast<std::size_t>(i)] = w;
    }
    if (!separates) continue;
    if (measure.null_mask() != m.null_mask()) {
      throw Error(ErrorCode::OracleDisagreement, "Rybakov measure has different null sets");
    }
    return RybakovResult{std::move(phi), std::move(measure), attempt};
  }
  throw Error(ErrorCode::SearchExhausted, "no separating functional found in 100 draws");
}

Eigen::MatrixXd rn_derivative(const VectorMeasure& m, const ScalarMeasure& mu) {
  if (static_cast<int>(mu.weights.size()) != m.atoms()) {
    throw Error(ErrorCode::DimensionMismatch, "control measure has the wrong number of atoms");
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m.dim(), m.atoms());
  for (int i = 0; i < m.atoms(); ++i) {
    const double w = mu.weights[static_cast<std::size_t>(i)];
    if (w < 0.0) throw Error(ErrorCode::NotControlMeasure, "negative weight");
    if (w > 0.0) {
      g.col(i) = m.atom(i) / w;
    } else if (!contains(m.null_mask(), i)) {
      throw Error(ErrorCode::NotControlMeasure, "weight vanishes on non-null atom " + std::to_string(i));
    }
  }
  return g;
}

double lorentz_21(const VectorMeasure& m, const Eigen::VectorXd& f) {
  if (f.size() != m.atoms()) throw Error(ErrorCode::DimensionMismatch, "function length does not match atoms");
  std::vector<double> levels;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (f(i) != 0.0) levels.push_back(std::abs(f(i)));
  }
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  double total = 0.0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    AtomSet level_set = 0;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      if (std::abs(f(i)) >= levels[j]) level_set |= AtomSet{1} << i;
    }
    const double next = j + 1 < levels.size() ? levels[j + 1] : 0.0;
    total += (levels[j] - next) * std::sqrt(semivariation(m, level_set));
  }
  return 2.0 * total;
}

}  // namespace gaugefactor
