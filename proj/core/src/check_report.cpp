#include "gaugefactor/check_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gaugefactor {

const char* to_string(ClaimStatus status) {
  switch (status) {
    case ClaimStatus::Pass: return "pass";
    case ClaimStatus::Fail: return "fail";
    case ClaimStatus::Skipped: return "skipped";
  }
  return "unknown";
}

bool CheckReport::passed() const { return count(ClaimStatus::Fail) == 0; }

std::size_t CheckReport::count(ClaimStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(claims.begin(), claims.end(), [&](const Claim& c) { return c.status == status; }));
}

const Claim* CheckReport::find(const std::string& name) const {
  const auto it = std::find_if(claims.begin(), claims.end(), [&](const Claim& c) { return c.name == name; });
  return it == claims.end() ? nullptr : &*it;
}

void CheckReport::append(const CheckReport& other) {
  claims.insert(claims.end(), other.claims.begin(), other.claims.end());
  metrics.insert(metrics.end(), other.metrics.begin(), other.metrics.end());
}

ClaimBuilder::ClaimBuilder(std::string name, std::string anchor, double tolerance, bool lno_only) {
  claim_.name = std::move(name);
  claim_.anchor = std::move(anchor);
  claim_.tolerance = tolerance;
  claim_.lno_only = lno_only;
}

void ClaimBuilder::observe(double slack, const std::function<std::string()>& witness) {
  ++claim_.cases;
  // NaN counts as the worst possible case.
  if (std::isnan(slack)) slack = -std::numeric_limits<double>::infinity();
  if (slack < worst_) {
    worst_ = slack;
    claim_.witness = witness();
  }
}

Claim ClaimBuilder::finish() const {
  Claim out = claim_;
  out.worst_slack = claim_.cases == 0 ? 0.0 : worst_;
  if (claim_.cases == 0) out.witness = "no cases";
  out.status = out.worst_slack >= -claim_.tolerance ? ClaimStatus::Pass : ClaimStatus::Fail;
  return out;
}

Claim ClaimBuilder::skipped(const std::string& reason) const {
  Claim out = claim_;
  out.status = ClaimStatus::Skipped;
  out.worst_slack = 0.0;
  out.cases = 0;
  out.witness = reason;
  return out;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_vector(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += format_double(v(i));
  }
  return out + "]";
}

std::string format_set(std::uint32_t set, int atoms) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < atoms; ++i) {
    if (((set >> i) & 1u) == 0) continue;
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

}  // namespace gaugefactor
