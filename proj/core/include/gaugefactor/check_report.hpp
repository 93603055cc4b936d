#pragma once

// Per-claim results of the theorem checkers. Every claim records its tightest
// margin (worst slack) and the input that produced it.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace gaugefactor {

enum class ClaimStatus { Pass, Fail, Skipped };

const char* to_string(ClaimStatus status);

struct Claim {
  std::string name;
  std::string anchor;
  ClaimStatus status = ClaimStatus::Pass;
  /// Smallest rhs - lhs over all cases; -|difference| for equalities.
  double worst_slack = 0.0;
  double tolerance = 0.0;
  std::string witness;
  bool lno_only = false;
  std::size_t cases = 0;
};

struct CheckReport {
  std::string checker;
  std::vector<Claim> claims;
  /// Reported quantities that are not asserted.
  std::vector<std::pair<std::string, double>> metrics;

  bool passed() const;
  std::size_t count(ClaimStatus status) const;
  const Claim* find(const std::string& name) const;
  void append(const CheckReport& other);
};

class ClaimBuilder {
 public:
  ClaimBuilder(std::string name, std::string anchor, double tolerance, bool lno_only = false);

  /// Records one case; `witness` is only evaluated when the slack is a new minimum.
  void observe(double slack, const std::function<std::string()>& witness);
  Claim finish() const;
  Claim skipped(const std::string& reason) const;

 private:
  Claim claim_;
  double worst_ = std::numeric_limits<double>::infinity();
};

std::string format_double(double value);
std::string format_vector(const Eigen::VectorXd& v);
std::string format_set(std::uint32_t set, int atoms);

}  // namespace gaugefactor
