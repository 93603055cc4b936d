#pragma once

// Dense two-phase simplex for the small programs behind every gauge and norm.

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace gaugefactor::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Optimality and feasibility tolerance.
inline constexpr double kTolerance = 1e-9;

enum class Relation { LessEq, Equal, GreaterEq };

struct Constraint {
  std::vector<double> coeffs;
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
};

struct Bound {
  double lower = -kInf;
  double upper = kInf;
};

/// minimize objective·x subject to constraints and per-variable bounds.
/// An empty `bounds` vector leaves every variable free.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<Bound> bounds;

  std::size_t num_vars() const { return objective.size(); }

  void add(std::vector<double> coeffs, Relation rel, double rhs) {
    constraints.push_back({std::move(coeffs), rel, rhs});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  double value = 0.0;
  std::vector<double> point;
  /// One multiplier per constraint: d(value)/d(rhs). Sign follows the
  /// relation (<= rows carry y <= 0, >= rows y >= 0 for a minimization).
  std::vector<double> duals;
  std::size_t pivots = 0;

  bool optimal() const { return status == Status::Optimal; }
};

struct Options {
  double tolerance = kTolerance;
  std::size_t pivot_limit = 200000;
};

/// Throws Error(CycleLimitExceeded) when the pivot cap is hit and
/// Error(DimensionMismatch) on ragged input.
Result solve(const LinearProgram& program, const Options& options = {});

}  // namespace gaugefactor::lp
