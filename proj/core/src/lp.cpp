#include "gaugefactor/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaugefactor/error.hpp"

namespace gaugefactor::lp {
namespace {

// Original variable j is `offset + sum(sign * x_std[col])` over its terms.
struct VarMap {
  double offset = 0.0;
  int col_a = -1;
  double sign_a = 1.0;
  int col_b = -1;  // second column of a split free variable (sign -1)
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), width_(cols + 1), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * width_ + c]; }
  double& rhs(std::size_t r) { return data_[r * width_ + cols_]; }
  double rhs(std::size_t r) const { return data_[r * width_ + cols_]; }
  double* row(std::size_t r) { return data_.data() + r * width_; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t objective_row() const { return rows_; }

  void pivot(std::size_t pr, std::size_t pc) {
    double* prow = row(pr);
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < width_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double* trow = row(r);
      const double factor = trow[pc];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) trow[c] -= factor * prow[c];
      trow[pc] = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  std::vector<double> data_;
};

enum class PhaseOutcome { Optimal, Unbounded };

// Dantzig pricing; after a run of degenerate pivots it falls back to Bland's
// rule (lowest-index improving column, lowest-index basic variable on ratio
// ties), which cannot cycle.
PhaseOutcome run_phase(Tableau& t, std::vector<std::size_t>& basis, std::size_t enter_limit,
                       const Options& options, std::size_t& pivots) {
  constexpr std::size_t kDegenerateRun = 50;
  const std::size_t obj = t.objective_row();
  const double tol = options.tolerance;
  std::size_t degenerate = 0;
  while (true) {
    const bool bland = degenerate >= kDegenerateRun;
    std::size_t enter = enter_limit;
    double most_negative = -tol;
    for (std::size_t c = 0; c < enter_limit; ++c) {
      if (t.at(obj, c) < most_negative) {
        enter = c;
        if (bland) break;
        most_negative = t.at(obj, c);
      }
    }
    if (enter == enter_limit) return PhaseOutcome::Optimal;

    std::size_t leave = t.rows();
    double best_ratio = kInf;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double coef = t.at(r, enter);
      if (coef <= tol) continue;
      const double ratio = std::max(t.rhs(r), 0.0) / coef;
      const double slack = 1e-12 * (1.0 + std::abs(ratio));
      if (leave == t.rows() || ratio < best_ratio - slack) {
        leave = r;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + slack && basis[r] < basis[leave]) {
        leave = r;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
    if (leave == t.rows()) return PhaseOutcome::Unbounded;

    if (++pivots > options.pivot_limit) {
      throw Error(ErrorCode::CycleLimitExceeded,
                  "simplex exceeded " + std::to_string(options.pivot_limit) + " pivots");
    }
    degenerate = best_ratio <= tol ? degenerate + 1 : 0;
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
}

}  // namespace

Result solve(const LinearProgram& program, const Options& options) {
  const std::size_t n = program.num_vars();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "linear program has no variables");
  if (!program.bounds.empty() && program.bounds.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "bounds size does not match objective");
  }
  for (const auto& con : program.constraints) {
    if (con.coeffs.size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "constraint width does not match objective");
    }
  }

  Result result;

  // Shift/split variables so every standard-form column is >= 0.
  std::vector<VarMap> vars(n);
  std::size_t n_std = 0;
  struct UpperRow {
    std::size_t col;
    double bound;
  };
  std::vector<UpperRow> upper_rows;
  for (std::size_t j = 0; j < n; ++j) {
    const Bound b = program.bounds.empty() ? Bound{} : program.bounds[j];
    if (b.lower > b.upper) {
      result.status = Status::Infeasible;
      return result;
    }
    VarMap& v = vars[j];
    if (std::isfinite(b.lower)) {
      v.offset = b.lower;
      v.col_a = static_cast<int>(n_std++);
      if (std::isfinite(b.upper)) upper_rows.push_back({static_cast<std::size_t>(v.col_a), b.upper - b.lower});
    } else if (std::isfinite(b.upper)) {
      v.offset = b.upper;
      v.col_a = static_cast<int>(n_std++);
      v.sign_a = -1.0;
    } else {
      v.col_a = static_cast<int>(n_std++);
      v.col_b = static_cast<int>(n_std++);
    }
  }

  const std::size_t m_orig = program.constraints.size();
  const std::size_t m = m_orig + upper_rows.size();

  std::vector<std::vector<double>> rows(m, std::vector<double>(n_std, 0.0));
  std::vector<double> rhs(m, 0.0);
  std::vector<Relation> rel(m, Relation::LessEq);
  for (std::size_t i = 0; i < m_orig; ++i) {
    const auto& con = program.constraints[i];
    double shift = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = con.coeffs[j];
      if (a == 0.0) continue;
      const VarMap& v = vars[j];
      shift += a * v.offset;
      rows[i][v.col_a] += a * v.sign_a;
      if (v.col_b >= 0) rows[i][v.col_b] -= a;
    }
    rhs[i] = con.rhs - shift;
    rel[i] = con.rel;
  }
  for (std::size_t k = 0; k < upper_rows.size(); ++k) {
    rows[m_orig + k][upper_rows[k].col] = 1.0;
    rhs[m_orig + k] = upper_rows[k].bound;
  }

  std::vector<double> cost(n_std, 0.0);
  double cost_shift = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double c = program.objective[j];
    const VarMap& v = vars[j];
    cost_shift += c * v.offset;
    cost[v.col_a] += c * v.sign_a;
    if (v.col_b >= 0) cost[v.col_b] -= c;
  }

  std::vector<bool> negated(m, false);
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (rhs[i] < 0.0) {
      negated[i] = true;
      rhs[i] = -rhs[i];
      for (double& a : rows[i]) a = -a;
      if (rel[i] == Relation::LessEq) {
        rel[i] = Relation::GreaterEq;
      } else if (rel[i] == Relation::GreaterEq) {
        rel[i] = Relation::LessEq;
      }
    }
    if (rel[i] != Relation::Equal) ++n_slack;
    if (rel[i] != Relation::LessEq) ++n_art;
  }

  const std::size_t art_begin = n_std + n_slack;
  const std::size_t n_cols = art_begin + n_art;
  Tableau t(m, n_cols);
  std::vector<std::size_t> basis(m);
  std::vector<std::size_t> identity_col(m);
  {
    std::size_t next_slack = n_std;
    std::size_t next_art = art_begin;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t c = 0; c < n_std; ++c) t.at(i, c) = rows[i][c];
      t.rhs(i) = rhs[i];
      if (rel[i] == Relation::LessEq) {
        t.at(i, next_slack) = 1.0;
        identity_col[i] = next_slack++;
      } else {
        if (rel[i] == Relation::GreaterEq) t.at(i, next_slack++) = -1.0;
        t.at(i, next_art) = 1.0;
        identity_col[i] = next_art++;
      }
      basis[i] = identity_col[i];
    }
  }

  const std::size_t obj = t.objective_row();
  double rhs_scale = 1.0;
  for (double b : rhs) rhs_scale = std::max(rhs_scale, std::abs(b));

  if (n_art > 0) {
    for (std::size_t c = 0; c <= n_cols; ++c) t.at(obj, c) = 0.0;
    for (std::size_t c = art_begin; c < n_cols; ++c) t.at(obj, c) = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art_begin) continue;
      for (std::size_t c = 0; c <= n_cols; ++c) t.at(obj, c) -= t.at(i, c);
    }
    run_phase(t, basis, art_begin, options, result.pivots);
    if (-t.rhs(obj) > options.tolerance * rhs_scale) {
      result.status = Status::Infeasible;
      return result;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art_begin) continue;
      std::size_t best = art_begin;
      double best_abs = options.tolerance;
      for (std::size_t c = 0; c < art_begin; ++c) {
        const double a = std::abs(t.at(i, c));
        if (a > best_abs) {
          best_abs = a;
          best = c;
        }
      }
      if (best < art_begin) {
        t.pivot(i, best);
        basis[i] = best;
      }
    }
  }

  for (std::size_t c = 0; c <= n_cols; ++c) t.at(obj, c) = c < n_std ? cost[c] : 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double cb = basis[i] < n_std ? cost[basis[i]] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= n_cols; ++c) t.at(obj, c) -= cb * t.at(i, c);
  }
  if (run_phase(t, basis, art_begin, options, result.pivots) == PhaseOutcome::Unbounded) {
    result.status = Status::Unbounded;
    return result;
  }

  std::vector<double> x_std(n_cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) x_std[basis[i]] = t.rhs(i);

  result.status = Status::Optimal;
  result.value = -t.rhs(obj) + cost_shift;
  result.point.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& v = vars[j];
    double x = v.offset + v.sign_a * x_std[v.col_a];
    if (v.col_b >= 0) x -= x_std[v.col_b];
    result.point[j] = x;
  }
  result.duals.resize(m_orig);
  for (std::size_t i = 0; i < m_orig; ++i) {
    const double y = -t.at(obj, identity_col[i]);
    result.duals[i] = negated[i] ? -y : y;
  }
  return result;
}

}  // namespace gaugefactor::lp
