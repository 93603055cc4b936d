#pragma once

// JSON measure/function files and report serialization (JSON and flat CSV).
//
// Measure schema:
//   {"space": {"dim": d, "norm": "linf" | "l1" | {"hrep": [[...d reals...], ...]}},
//    "atoms": [[...d reals...], ...]}
// Function schema: {"f": [...p reals...]}

#include <Eigen/Dense>
#include <string>

#include "gaugefactor/harness.hpp"
#include "gaugefactor/vector_measure.hpp"

namespace gaugefactor {

/// Throws Schema with the offending field path in the message.
VectorMeasure measure_from_json(const std::string& text);
std::string measure_to_json(const VectorMeasure& m);
Eigen::VectorXd function_from_json(const std::string& text);

/// Throws Io if the file cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
VectorMeasure load_measure(const std::string& path);

std::string trial_to_json(const TrialResult& trial);
std::string summary_to_json(const RunSummary& summary, const RunConfig& config);

/// One row per claim: trial,which,a,claim,anchor,status,worst_slack,witness.
std::string claims_csv_header();
std::string claims_csv_rows(const TrialResult& trial);

}  // namespace gaugefactor
