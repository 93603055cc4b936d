#pragma once

// Factorization of a vector measure through the renorming of its integration
// operator, and the checkers for the resulting inequalities.
//
// With T = I_m^(inf) (K = I_m^(inf)(B_Linf) / ||m||(Omega)) or T = I_m
// (K = I_m(B_L1(m))), the factored measure m~ has the same atom vectors as m
// but takes values in X_K.

#include <cstdint>

#include "gaugefactor/check_report.hpp"
#include "gaugefactor/dfjp.hpp"
#include "gaugefactor/l1m.hpp"
#include "gaugefactor/vector_measure.hpp"

namespace gaugefactor {

struct FactoredMeasure {
  VectorMeasure original;
  VectorMeasure m_tilde;
  Domain which = Domain::L1;
  IntegrationOperator t;
  Factorization factorization;

  const DfjpSpace& target() const { return *factorization.space; }
  double a() const { return target().params().a; }
  double f_a() const { return factorization.norms.f_a; }
  double c_a() const { return factorization.norms.c_a; }
};

FactoredMeasure factor_Iinfty(const VectorMeasure& m, const DfjpParams& params);
FactoredMeasure factor_Im(const VectorMeasure& m, const DfjpParams& params);
/// Same measure and K at another parameter.
FactoredMeasure refactor(const FactoredMeasure& fm, const DfjpParams& params);

/// True when a is the isometric parameter a_bar (to 1e-9).
bool is_lno(double a);

struct CheckOptions {
  int sample_size = 200;
  double tol = 1e-6;
  /// Bound on the weight |m|/|m~| above 1.
  double weight_tol = 1e-9;
  std::uint64_t seed = 0;
};

CheckReport check_theorem_Iinfty(const FactoredMeasure& fm, const CheckOptions& options);
/// Includes the claims of bochner_check.
CheckReport check_theorem_Im(const FactoredMeasure& fm, const CheckOptions& options);
CheckReport bochner_check(const FactoredMeasure& fm, const CheckOptions& options);
CheckReport two_variation_check(const FactoredMeasure& fm, const CheckOptions& options);
CheckReport lorentz_factor_check(const FactoredMeasure& fm, const CheckOptions& options);

/// Random functions for the checkers: entries uniform in [-1, 1], about a
/// third of them zero, canonicalized to m.
std::vector<Eigen::VectorXd> sample_functions(const VectorMeasure& m, int count, std::uint64_t seed);

/// Every set partition of `set` (Bell-number many), blocks as bitmasks.
std::vector<std::vector<AtomSet>> set_partitions(AtomSet set);

}  // namespace gaugefactor
