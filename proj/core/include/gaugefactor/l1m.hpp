#pragma once

// L1(m) and Linf(m) over a finite atom space, their norms, the L1(m) unit
// ball, and the integration operators I_m and I_m^(inf).
//
// Functions are vectors with one entry per atom. Ball geometry and operators
// work on the non-null atoms only; `atoms` in IntegrationOperator maps those
// coordinates back to atom indices.

#include <Eigen/Dense>
#include <vector>

#include "gaugefactor/normed_space.hpp"
#include "gaugefactor/polytope.hpp"
#include "gaugefactor/vector_measure.hpp"

namespace gaugefactor {

inline constexpr int kMaxBallAtoms = 6;

/// f with the entries on m-null atoms set to zero.
Eigen::VectorXd canonicalize(const VectorMeasure& m, const Eigen::VectorXd& f);
Eigen::VectorXd indicator(int atoms, AtomSet set);

double linf_norm(const VectorMeasure& m, const Eigen::VectorXd& f);

/// max_j sum_i |f_i| |<phi_j, m_i>|; polyhedral codomain only.
double l1m_norm_closed_form(const VectorMeasure& m, const Eigen::VectorXd& f);
/// max over g in {-1,1}^p of ||sum f_i g_i m_i||; any codomain.
double l1m_norm_enumerated(const VectorMeasure& m, const Eigen::VectorXd& f);
/// Closed form checked against enumeration (OracleDisagreement) when the
/// codomain is polyhedral, enumeration otherwise.
double l1m_norm(const VectorMeasure& m, const Eigen::VectorXd& f);

/// sum over i in `set` of f_i m_i.
Eigen::VectorXd integrate(const VectorMeasure& m, const Eigen::VectorXd& f, AtomSet set);
Eigen::VectorXd integrate(const VectorMeasure& m, const Eigen::VectorXd& f);

/// Unit ball of L1(m) in full atom coordinates (zero on null atoms).
/// Throws ScaleLimit above kMaxBallAtoms non-null atoms.
VPolytope l1m_ball(const VectorMeasure& m);

/// L1(m) on the non-null atoms as a polyhedral normed space.
NormedSpace l1m_space(const VectorMeasure& m);

enum class Domain { L1, Linf };

struct IntegrationOperator {
  LinearMap map;
  std::vector<int> atoms;

  /// Embeds coordinates on the non-null atoms into a full atom vector.
  Eigen::VectorXd lift(const Eigen::VectorXd& coords, int total_atoms) const;
};

IntegrationOperator integration_operator(const VectorMeasure& m, Domain which);

/// The identity Linf(m) -> L1(m) on the non-null atoms.
LinearMap linf_to_l1(const VectorMeasure& m);

}  // namespace gaugefactor
