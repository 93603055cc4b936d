#include "gaugefactor/factor_vm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gaugefactor/error.hpp"

namespace gaugefactor {
namespace {

constexpr const char* kNotLno = "a differs from a_bar";

FactoredMeasure build(const VectorMeasure& m, Domain which, IntegrationOperator t, Factorization fz) {
  VectorMeasure m_tilde = m.with_codomain(Codomain(fz.space));
  return FactoredMeasure{m, std::move(m_tilde), which, std::move(t), std::move(fz)};
}

void require_which(const FactoredMeasure& fm, Domain which, const char* checker) {
  if (fm.which != which) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(checker) + " expects the " + (which == Domain::L1 ? "I_m" : "I_m^(inf)") +
                    " factorization");
  }
}

std::string set_witness(AtomSet set, int atoms) { return "A=" + format_set(set, atoms); }
std::string function_witness(const Eigen::VectorXd& f) { return "f=" + format_vector(f); }

// Sign functions on the non-null atoms, both signs of each.
std::vector<Eigen::VectorXd> sign_functions(const VectorMeasure& m) {
  const std::vector<int> live = m.non_null_atoms();
  std::vector<Eigen::VectorXd> out;
  for (unsigned mask = 0; mask < (1u << live.size()); ++mask) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m.atoms());
    for (std::size_t k = 0; k < live.size(); ++k) g(live[k]) = (mask >> k) & 1u ? -1.0 : 1.0;
    out.push_back(std::move(g));
  }
  return out;
}

void push_lno(CheckReport& report, const ClaimBuilder& builder, bool lno) {
  report.claims.push_back(lno ? builder.finish() : builder.skipped(kNotLno));
}

// Claims shared by both factorizations.
void common_claims(const FactoredMeasure& fm, const CheckOptions& options, CheckReport& report) {
  const VectorMeasure& m = fm.original;
  const VectorMeasure& mt = fm.m_tilde;
  const int p = m.atoms();
  const auto& norms = fm.factorization.norms;
  const bool lno = is_lno(fm.a());

  ClaimBuilder identity("factorization_identity", "m(A) = J(m~(A)) for every set A", options.tol);
  ClaimBuilder nulls("null_sets_preserved", "m and m~ have the same null sets", options.tol);
  for (AtomSet set = 0; set <= full_set(p); ++set) {
    const double diff = (value_on(mt, set) - value_on(m, set)).cwiseAbs().maxCoeff();
    identity.observe(-diff, [&] { return set_witness(set, p); });
    const bool agree = is_null_set(m, set) == (semivariation(mt, set) == 0.0);
    nulls.observe(agree ? 0.0 : -1.0, [&] { return set_witness(set, p); });
  }
  report.claims.push_back(identity.finish());
  report.claims.push_back(nulls.finish());

  ClaimBuilder isometric("isometric_operators", "||T_K|| = ||T|| and ||J_K|| = 1 at a_bar", options.tol, true);
  isometric.observe(-std::max(std::abs(norms.t_k - norms.t), std::abs(norms.j_k - 1.0)), [&] {
    return "||T||=" + format_double(norms.t) + " ||T_K||=" + format_double(norms.t_k) +
           " ||J_K||=" + format_double(norms.j_k);
  });
  push_lno(report, isometric, lno);

  ClaimBuilder j_bound("inclusion_norm_bound", "||J_K|| <= 1/f(a)", options.tol);
  j_bound.observe(norms.j_k_bound - norms.j_k, [&] { return "||J_K||=" + format_double(norms.j_k); });
  report.claims.push_back(j_bound.finish());
}

}  // namespace

bool is_lno(double a) { return std::abs(a - lno_a_bar().value) <= 1e-9; }

FactoredMeasure factor_Iinfty(const VectorMeasure& m, const DfjpParams& params) {
  IntegrationOperator t = integration_operator(m, Domain::Linf);
  Factorization fz = factor_operator(t.map, params);
  return build(m, Domain::Linf, std::move(t), std::move(fz));
}

FactoredMeasure factor_Im(const VectorMeasure& m, const DfjpParams& params) {
  IntegrationOperator t = integration_operator(m, Domain::L1);
  Factorization fz = factor_operator(t.map, params);
  return build(m, Domain::L1, std::move(t), std::move(fz));
}

FactoredMeasure refactor(const FactoredMeasure& fm, const DfjpParams& params) {
  Factorization fz = refactor(fm.factorization, fm.t.map, params);
  return build(fm.original, fm.which, fm.t, std::move(fz));
}

std::vector<Eigen::VectorXd> sample_functions(const VectorMeasure& m, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int s = 0; s < count; ++s) {
    Eigen::VectorXd f(m.atoms());
    for (int i = 0; i < m.atoms(); ++i) {
      const double v = value(rng);
      f(i) = unit(rng) < 1.0 / 3.0 ? 0.0 : v;
    }
    out.push_back(canonicalize(m, f));
  }
  return out;
}

std::vector<std::vector<AtomSet>> set_partitions(AtomSet set) {
  if (set == 0) return {{}};
  const AtomSet lowest = set & (~set + 1);
  const AtomSet rest = set & ~lowest;
  std::vector<std::vector<AtomSet>> out;
  // Every subset of `rest` joins the lowest element in its block.
  AtomSet sub = rest;
  while (true) {
    for (auto tail : set_partitions(rest & ~sub)) {
      tail.insert(tail.begin(), lowest | sub);
      out.push_back(std::move(tail));
    }
    if (sub == 0) break;
    sub = (sub - 1) & rest;
  }
  return out;
}

CheckReport check_theorem_Iinfty(const FactoredMeasure& fm, const CheckOptions& options) {
  require_which(fm, Domain::Linf, "check_theorem_Iinfty");
  const VectorMeasure& m = fm.original;
  const VectorMeasure& mt = fm.m_tilde;
  const int p = m.atoms();
  const bool lno = is_lno(fm.a());
  const double c = fm.c_a();
  const double j_norm = fm.factorization.norms.j_k;
  const double total = semivariation(m, full_set(p));

  CheckReport report;
  report.checker = "I_m^(inf) factorization";
  common_claims(fm, options, report);

  ClaimBuilder preserved("semivariation_preserved", "||m~||(Omega) = ||m||(Omega) at a_bar", options.tol, true);
  if (lno) {
    const double tilde_total = semivariation(mt, full_set(p));
    preserved.observe(-std::abs(tilde_total - total), [&] {
      return "||m||(Omega)=" + format_double(total) + " ||m~||(Omega)=" + format_double(tilde_total);
    });
  }
  push_lno(report, preserved, lno);

  std::vector<Eigen::VectorXd> functions = sign_functions(m);
  for (auto& f : sample_functions(m, options.sample_size, options.seed)) functions.push_back(std::move(f));

  ClaimBuilder interpolation("interpolation_inequality",
                             "||I_m~(f)||_K^2 <= C ||m||(Omega) ||f||_inf ||I_m(f)|| on B_Linf", options.tol);
  ClaimBuilder embedding("embedding_bound", "||f||_L1(m) <= ||J|| ||f||_L1(m~)", options.tol);
  for (const auto& f : functions) {
    const Eigen::VectorXd image = integrate(m, f);
    const double k_norm = mt.codomain().norm(image);
    const double rhs = c * total * linf_norm(m, f) * m.codomain().norm(image);
    interpolation.observe(rhs - k_norm * k_norm, [&] { return function_witness(f); });
    embedding.observe(j_norm * l1m_norm(mt, f) - l1m_norm(m, f), [&] { return function_witness(f); });
  }
  report.claims.push_back(interpolation.finish());
  report.claims.push_back(embedding.finish());

  ClaimBuilder dominated("variation_dominated", "|m|(A) <= ||J|| |m~|(A)", options.tol);
  for (AtomSet set = 0; set <= full_set(p); ++set) {
    dominated.observe(j_norm * variation(mt, set) - variation(m, set), [&] { return set_witness(set, p); });
  }
  report.claims.push_back(dominated.finish());
  return report;
}

CheckReport check_theorem_Im(const FactoredMeasure& fm, const CheckOptions& options) {
  require_which(fm, Domain::L1, "check_theorem_Im");
  const VectorMeasure& m = fm.original;
  const VectorMeasure& mt = fm.m_tilde;
  const int p = m.atoms();
  const bool lno = is_lno(fm.a());
  const double c = fm.c_a();
  const auto& norms = fm.factorization.norms;

  CheckReport report;
  report.checker = "I_m factorization";
  common_claims(fm, options, report);

  ClaimBuilder op_norm("integration_operator_norm", "||I_m|| = 1", options.tol);
  op_norm.observe(-std::abs(norms.t - 1.0), [&] { return "||I_m||=" + format_double(norms.t); });
  report.claims.push_back(op_norm.finish());

  std::vector<Eigen::VectorXd> functions = l1m_ball(m).vertices;
  for (auto& f : sample_functions(m, options.sample_size, options.seed)) functions.push_back(std::move(f));

  ClaimBuilder equal("equal_norms", "||f||_L1(m~) = ||f||_L1(m) at a_bar", options.tol, true);
  ClaimBuilder sandwich("norm_sandwich", "||f||_L1(m~) / ||T|| <= ||f||_L1(m) <= ||J|| ||f||_L1(m~)", options.tol);
  ClaimBuilder interpolation("interpolation_inequality", "||I_m~(f)||_K^2 <= C ||f||_L1(m) ||I_m(f)||",
                             options.tol);
  auto observe_interpolation = [&](const Eigen::VectorXd& f, double l1_norm, const std::string& witness) {
    const Eigen::VectorXd image = integrate(m, f);
    const double k_norm = mt.codomain().norm(image);
    interpolation.observe(c * l1_norm * m.codomain().norm(image) - k_norm * k_norm, [&] { return witness; });
  };
  for (const auto& f : functions) {
    const double plain = l1m_norm(m, f);
    const double tilde = l1m_norm(mt, f);
    if (lno) equal.observe(-std::abs(plain - tilde), [&] { return function_witness(f); });
    sandwich.observe(std::min(plain - tilde / norms.t, norms.j_k * tilde - plain),
                     [&] { return function_witness(f); });
    observe_interpolation(f, plain, function_witness(f));
  }

  ClaimBuilder semivar("semivariation_equal", "||m~||(A) = ||m||(A) at a_bar", options.tol, true);
  ClaimBuilder variation_bounds("variation_sandwich", "||J||^-1 |m|(A) <= |m~|(A) <= sqrt(C) |m|(A)", options.tol);
  for (AtomSet set = 0; set <= full_set(p); ++set) {
    const double semi = semivariation(m, set);
    if (lno) semivar.observe(-std::abs(semi - semivariation(mt, set)), [&] { return set_witness(set, p); });
    observe_interpolation(indicator(p, set), semi, "f=chi" + format_set(set, p));
    const double var = variation(m, set);
    const double var_tilde = variation(mt, set);
    variation_bounds.observe(std::min(norms.j_k * var_tilde - var, std::sqrt(c) * var - var_tilde),
                             [&] { return set_witness(set, p); });
  }
  push_lno(report, equal, lno);
  push_lno(report, semivar, lno);
  report.claims.push_back(sandwich.finish());
  report.claims.push_back(interpolation.finish());
  report.claims.push_back(variation_bounds.finish());

  report.append(bochner_check(fm, options));
  return report;
}

CheckReport bochner_check(const FactoredMeasure& fm, const CheckOptions& options) {
  require_which(fm, Domain::L1, "bochner_check");
  const VectorMeasure& m = fm.original;
  const VectorMeasure& mt = fm.m_tilde;
  const bool lno = is_lno(fm.a());
  const double c = fm.c_a();

  const ScalarMeasure var = variation_measure(m);
  const ScalarMeasure var_tilde = variation_measure(mt);
  const Eigen::MatrixXd g = rn_derivative(m, var);
  const Eigen::MatrixXd g_tilde = rn_derivative(mt, var_tilde);

  CheckReport report;
  report.checker = "Bochner derivative";

  ClaimBuilder weight("bochner_weight", "0 <= |m|/|m~| <= 1 atom-wise at a_bar", options.weight_tol, true);
  ClaimBuilder inequality("bochner_inequality", "sum ||F~||_K^2 |m~| <= C sum ||G|| |m|", options.tol, true);
  ClaimBuilder in_body("derivative_in_body", "gauge_K(G_i) <= 1 for G = dm/d|m|", options.tol);
  double lhs = 0.0;
  double rhs = 0.0;
  for (int i = 0; i < m.atoms(); ++i) {
    const auto w = static_cast<std::size_t>(i);
    const double phi = var_tilde.weights[w] > 0.0 ? var.weights[w] / var_tilde.weights[w] : 0.0;
    weight.observe(std::min(phi, 1.0 - phi), [&] { return "atom=" + std::to_string(i) + " phi=" + format_double(phi); });
    const double f_norm = mt.codomain().norm(g_tilde.col(i));
    lhs += f_norm * f_norm * var_tilde.weights[w];
    rhs += m.codomain().norm(g.col(i)) * var.weights[w];
    if (var.weights[w] > 0.0) {
      in_body.observe(1.0 - gauge(fm.target().body(), g.col(i)), [&] { return "atom=" + std::to_string(i); });
    }
  }
  inequality.observe(c * rhs - lhs, [&] { return "lhs=" + format_double(lhs) + " rhs=" + format_double(c * rhs); });
  push_lno(report, weight, lno);
  push_lno(report, inequality, lno);
  report.claims.push_back(in_body.finish());
  return report;
}

CheckReport two_variation_check(const FactoredMeasure& fm, const CheckOptions& options) {
  require_which(fm, Domain::L1, "two_variation_check");
  const VectorMeasure& m = fm.original;
  const VectorMeasure& mt = fm.m_tilde;
  const int p = m.atoms();
  const double c = fm.c_a();

  CheckReport report;
  report.checker = "2-variation";
  ClaimBuilder partition("partition_inequality", "sum ||m~(A_j)||_K^2 / |m|(A_j) <= C |m|(A)", options.tol);
  ClaimBuilder bound("two_variation_bound", "2-variation of m~ w.r.t. |m| <= sqrt(C |m|(Omega))", options.tol);

  const AtomSet live = full_set(p) & ~m.null_mask();
  if (set_size(live) > 5) {
    report.claims.push_back(partition.skipped("more than 5 non-null atoms"));
    report.claims.push_back(bound.skipped("more than 5 non-null atoms"));
    return report;
  }
  auto ratio_sum = [&](const std::vector<AtomSet>& blocks) {
    double total = 0.0;
    for (AtomSet block : blocks) {
      const double var = variation(m, block);
      if (var == 0.0) continue;  // 0/0 = 0
      const double k_norm = mt.codomain().norm(value_on(mt, block));
      total += k_norm * k_norm / var;
    }
    return total;
  };
  auto partition_witness = [&](const std::vector<AtomSet>& blocks) {
    std::string out = "partition=";
    for (AtomSet block : blocks) out += format_set(block, p);
    return out;
  };

  double two_variation_sq = 0.0;
  std::vector<AtomSet> worst_partition;
  for (AtomSet set = live; ; set = (set - 1) & live) {
    for (const auto& blocks : set_partitions(set)) {
      const double sum = ratio_sum(blocks);
      partition.observe(c * variation(m, set) - sum, [&] { return partition_witness(blocks); });
      if (set == live && sum > two_variation_sq) {
        two_variation_sq = sum;
        worst_partition = blocks;
      }
    }
    if (set == 0) break;
  }
  bound.observe(std::sqrt(c * variation(m, full_set(p))) - std::sqrt(two_variation_sq),
                [&] { return partition_witness(worst_partition); });
  report.claims.push_back(partition.finish());
  report.claims.push_back(bound.finish());
  report.metrics.emplace_back("two_variation", std::sqrt(two_variation_sq));
  return report;
}

CheckReport lorentz_factor_check(const FactoredMeasure& fm, const CheckOptions& options) {
  require_which(fm, Domain::Linf, "lorentz_factor_check");
  const VectorMeasure& m = fm.original;
  const VectorMeasure& mt = fm.m_tilde;
  const int p = m.atoms();
  const double total = semivariation(m, full_set(p));
  const double factor = std::sqrt(fm.c_a() * total) / 2.0;

  CheckReport report;
  report.checker = "Lorentz L_{2,1}";
  ClaimBuilder closed("lorentz_indicator", "||chi_A||_L21 = 2 sqrt(||m||(A))", options.tol);
  ClaimBuilder bound("lorentz_characteristic", "||m~(A)||_K <= sqrt(C ||m||(Omega)) / 2 * ||chi_A||_L21",
                     options.tol);
  for (AtomSet set = 0; set <= full_set(p); ++set) {
    const double quasi = lorentz_21(m, indicator(p, set));
    closed.observe(-std::abs(quasi - 2.0 * std::sqrt(semivariation(m, set))), [&] { return set_witness(set, p); });
    bound.observe(factor * quasi - mt.codomain().norm(value_on(mt, set)), [&] { return set_witness(set, p); });
  }
  report.claims.push_back(closed.finish());
  report.claims.push_back(bound.finish());

  double ratio = 0.0;
  for (const auto& f : sample_functions(m, options.sample_size, options.seed)) {
    const double quasi = lorentz_21(m, f);
    if (quasi > 0.0) ratio = std::max(ratio, mt.codomain().norm(integrate(m, f)) / quasi);
  }
  report.metrics.emplace_back("lorentz_empirical_ratio", ratio);
  return report;
}

}  // namespace gaugefactor
