#pragma once

// Vector measures on a finite atom space. Sets of atoms are bitmasks; the
// measure of a set is the sum of its atom vectors.

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "gaugefactor/dfjp.hpp"
#include "gaugefactor/normed_space.hpp"

namespace gaugefactor {

using AtomSet = std::uint32_t;
inline constexpr int kMaxAtoms = 10;

AtomSet full_set(int atoms);
int set_size(AtomSet set);
bool contains(AtomSet set, int atom);

/// Target space of a measure: a polyhedral normed space or a DFJP renorming.
class Codomain {
 public:
  Codomain(NormedSpace space);  // NOLINT(google-explicit-constructor)
  Codomain(std::shared_ptr<const DfjpSpace> space);  // NOLINT(google-explicit-constructor)

  int dim() const;
  double norm(const Eigen::VectorXd& x) const;
  /// nullptr for a renormed codomain.
  const NormedSpace* polyhedral() const { return polyhedral_.get(); }
  const DfjpSpace* renormed() const { return renormed_.get(); }

 private:
  std::shared_ptr<const NormedSpace> polyhedral_;
  std::shared_ptr<const DfjpSpace> renormed_;
};

class VectorMeasure {
 public:
  /// `atoms` holds one column per atom. Throws InvalidArgument if the measure
  /// is identically zero or has more than kMaxAtoms atoms.
  VectorMeasure(Codomain codomain, Eigen::MatrixXd atoms);

  const Codomain& codomain() const { return codomain_; }
  int atoms() const { return static_cast<int>(values_.cols()); }
  int dim() const { return static_cast<int>(values_.rows()); }
  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::VectorXd atom(int i) const { return values_.col(i); }

  /// Atoms whose vector is exactly zero.
  AtomSet null_mask() const { return null_mask_; }
  std::vector<int> non_null_atoms() const;

  VectorMeasure scaled(double c) const;
  VectorMeasure with_codomain(Codomain codomain) const;

 private:
  Codomain codomain_;
  Eigen::MatrixXd values_;
  AtomSet null_mask_ = 0;
};

/// Nonnegative weights per atom.
struct ScalarMeasure {
  std::vector<double> weights;

  double on(AtomSet set) const;
  AtomSet null_mask() const;
};

Eigen::VectorXd value_on(const VectorMeasure& m, AtomSet set);
double variation(const VectorMeasure& m, AtomSet set);
ScalarMeasure variation_measure(const VectorMeasure& m);

/// max over sign patterns on `set` of ||sum e_i m_i||.
double semivariation_signs(const VectorMeasure& m, AtomSet set);
/// max over the dual functionals of sum |<phi_j, m_i>|; polyhedral codomain only.
double semivariation_dual(const VectorMeasure& m, AtomSet set);
/// Dual formula cross-checked against sign enumeration (OracleDisagreement)
/// on a polyhedral codomain; sign enumeration otherwise.
double semivariation(const VectorMeasure& m, AtomSet set);

bool is_null_set(const VectorMeasure& m, AtomSet set);

struct RybakovResult {
  Eigen::VectorXd functional;
  ScalarMeasure measure;
  int attempts = 0;
};

/// Random unit functional x* with <x*, m_i> != 0 on every non-null atom;
/// returns |x* m|. Throws SearchExhausted after 100 draws.
RybakovResult rybakov(const VectorMeasure& m, std::uint64_t seed);

/// G_i = m_i / mu_i where mu_i > 0, else 0. One column per atom.
/// Throws NotControlMeasure if mu vanishes on a non-null atom.
Eigen::MatrixXd rn_derivative(const VectorMeasure& m, const ScalarMeasure& mu);

/// 2 * integral of sqrt(||m||({|f| > t})) dt, exact for functions on atoms.
double lorentz_21(const VectorMeasure& m, const Eigen::VectorXd& f);

}  // namespace gaugefactor
