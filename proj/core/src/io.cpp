#include "gaugefactor/io.hpp"

#include <fstream>
#include <sstream>

#include "gaugefactor/error.hpp"
#include "json.hpp"

namespace gaugefactor {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::Schema, field + ": " + message);
}

const json& require_field(const json& object, const std::string& key, const std::string& path) {
  if (!object.is_object()) schema_error(path, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) schema_error(path + "." + key, "missing field");
  return *it;
}

double require_number(const json& value, const std::string& path) {
  if (!value.is_number()) schema_error(path, "expected a number, got " + std::string(value.type_name()));
  return value.get<double>();
}

Eigen::VectorXd require_vector(const json& value, const std::string& path, Eigen::Index expected = -1) {
  if (!value.is_array()) schema_error(path, "expected an array, got " + std::string(value.type_name()));
  if (expected >= 0 && static_cast<Eigen::Index>(value.size()) != expected) {
    schema_error(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(value.size()));
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = require_number(value[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string("malformed JSON: ") + e.what());
  }
}

NormedSpace space_from_json(const json& space) {
  const json& dim_field = require_field(space, "dim", "space");
  if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1) {
    schema_error("space.dim", "expected a positive integer");
  }
  const int dim = static_cast<int>(dim_field.get<long long>());
  const json& norm = require_field(space, "norm", "space");
  try {
    if (norm.is_string()) {
      const std::string name = norm.get<std::string>();
      if (name == "linf") return NormedSpace::linf(dim);
      if (name == "l1") return NormedSpace::l1(dim);
      schema_error("space.norm", "unknown norm '" + name + "' (expected \"linf\", \"l1\" or {\"hrep\": ...})");
    }
    const json& rows = require_field(norm, "hrep", "space.norm");
    if (!rows.is_array() || rows.empty()) schema_error("space.norm.hrep", "expected a non-empty array of rows");
    Eigen::MatrixXd phi(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      phi.row(static_cast<Eigen::Index>(r)) =
          require_vector(rows[r], "space.norm.hrep[" + std::to_string(r) + "]", dim).transpose();
    }
    return NormedSpace::custom(std::move(phi));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Schema) throw;
    schema_error("space.norm", e.what());
  }
}

ordered_json space_to_json(const NormedSpace& space) {
  ordered_json out;
  out["dim"] = space.dim();
  switch (space.kind()) {
    case NormKind::Linf: out["norm"] = "linf"; break;
    case NormKind::L1: out["norm"] = "l1"; break;
    case NormKind::CustomPolyhedral: {
      ordered_json rows = ordered_json::array();
      for (Eigen::Index r = 0; r < space.functionals().rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index c = 0; c < space.dim(); ++c) row.push_back(space.functionals()(r, c));
        rows.push_back(std::move(row));
      }
      out["norm"] = ordered_json{{"hrep", std::move(rows)}};
      break;
    }
  }
  return out;
}

ordered_json measure_json(const VectorMeasure& m) {
  const NormedSpace* space = m.codomain().polyhedral();
  if (space == nullptr) throw Error(ErrorCode::InvalidArgument, "only polyhedral codomains can be serialized");
  ordered_json atoms = ordered_json::array();
  for (int i = 0; i < m.atoms(); ++i) {
    ordered_json atom = ordered_json::array();
    for (int r = 0; r < m.dim(); ++r) atom.push_back(m.values()(r, i));
    atoms.push_back(std::move(atom));
  }
  ordered_json out;
  out["space"] = space_to_json(*space);
  out["atoms"] = std::move(atoms);
  return out;
}

ordered_json claim_json(const Claim& claim) {
  ordered_json out;
  out["name"] = claim.name;
  out["anchor"] = claim.anchor;
  out["status"] = to_string(claim.status);
  out["worst_slack"] = claim.worst_slack;
  out["tolerance"] = claim.tolerance;
  out["witness"] = claim.witness;
  out["lno_only"] = claim.lno_only;
  out["cases"] = claim.cases;
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

VectorMeasure measure_from_json(const std::string& text) {
  const json doc = parse_document(text);
  NormedSpace space = space_from_json(require_field(doc, "space", "$"));
  const json& atoms = require_field(doc, "atoms", "$");
  if (!atoms.is_array() || atoms.empty()) schema_error("atoms", "expected a non-empty array of atom vectors");
  if (atoms.size() > static_cast<std::size_t>(kMaxAtoms)) {
    schema_error("atoms", "at most " + std::to_string(kMaxAtoms) + " atoms are supported");
  }
  Eigen::MatrixXd values(space.dim(), static_cast<Eigen::Index>(atoms.size()));
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    values.col(static_cast<Eigen::Index>(i)) = require_vector(atoms[i], "atoms[" + std::to_string(i) + "]", space.dim());
  }
  try {
    return VectorMeasure(Codomain(std::move(space)), std::move(values));
  } catch (const Error& e) {
    schema_error("atoms", e.what());
  }
}

std::string measure_to_json(const VectorMeasure& m) { return measure_json(m).dump(2) + "\n"; }

Eigen::VectorXd function_from_json(const std::string& text) {
  const json doc = parse_document(text);
  return require_vector(require_field(doc, "f", "$"), "f");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

VectorMeasure load_measure(const std::string& path) {
  try {
    return measure_from_json(read_file(path));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Schema) throw;
    throw Error(ErrorCode::Schema, path + ": " + e.what());
  }
}

std::string trial_to_json(const TrialResult& trial) {
  const ABar& abar = lno_a_bar();
  ordered_json out;
  out["trial"] = trial.instance.index;
  out["seed"] = trial.instance.seed;
  out["instance"] = trial.instance.descriptor;
  out["measure"] = measure_json(trial.instance.measure);
  out["scale"] = trial.scale;
  out["a_bar"] = ordered_json{{"value", abar.value},
                              {"lower", abar.lower},
                              {"upper", abar.upper},
                              {"residual", abar.residual},
                              {"c", c_constant(abar.value)}};
  out["passed"] = trial.passed();
  if (!trial.error.empty()) out["error"] = trial.error;
  ordered_json reports = ordered_json::array();
  for (const auto& r : trial.reports) {
    ordered_json entry;
    entry["which"] = r.which;
    entry["a"] = r.a;
    entry["f_a"] = r.f_a;
    entry["c_a"] = r.c_a;
    ordered_json claims = ordered_json::array();
    for (const auto& claim : r.report.claims) claims.push_back(claim_json(claim));
    entry["claims"] = std::move(claims);
    ordered_json metrics = ordered_json::object();
    for (const auto& [name, value] : r.report.metrics) metrics[name] = value;
    entry["metrics"] = std::move(metrics);
    reports.push_back(std::move(entry));
  }
  out["reports"] = std::move(reports);
  return out.dump(2) + "\n";
}

std::string summary_to_json(const RunSummary& summary, const RunConfig& config) {
  const ABar& abar = lno_a_bar();
  ordered_json out;
  ordered_json cfg;
  cfg["seed"] = config.seed;
  cfg["trials"] = config.trials;
  cfg["dims"] = {config.dims.lo, config.dims.hi};
  cfg["atoms"] = {config.atoms.lo, config.atoms.hi};
  cfg["norm_pool"] = config.norm_pool;
  cfg["a_values"] = config.effective_a_values();
  cfg["tol"] = config.tol;
  cfg["sample_size"] = config.sample_size;
  out["config"] = std::move(cfg);
  out["a_bar"] = ordered_json{{"value", abar.value}, {"lower", abar.lower}, {"upper", abar.upper},
                              {"residual", abar.residual}, {"c", c_constant(abar.value)}};
  out["trials"] = summary.trials.size();
  out["failed_trials"] = summary.failed_trials;
  out["passed"] = summary.passed();
  ordered_json claims = ordered_json::object();
  for (const auto& [key, agg] : summary.claims) {
    claims[key] = ordered_json{{"pass", agg.pass},
                               {"fail", agg.fail},
                               {"skipped", agg.skipped},
                               {"worst_slack", agg.worst_slack},
                               {"worst_trial", agg.worst_trial}};
  }
  out["claims"] = std::move(claims);
  ordered_json errors = ordered_json::array();
  for (const auto& t : summary.trials) {
    if (!t.error.empty()) errors.push_back(ordered_json{{"trial", t.instance.index}, {"error", t.error}});
  }
  out["errors"] = std::move(errors);
  return out.dump(2) + "\n";
}

std::string claims_csv_header() { return "trial,which,a,claim,anchor,status,worst_slack,witness\n"; }

std::string claims_csv_rows(const TrialResult& trial) {
  std::string out;
  const std::string index = std::to_string(trial.instance.index);
  for (const auto& r : trial.reports) {
    for (const auto& claim : r.report.claims) {
      out += index + "," + r.which + "," + format_double(r.a) + "," + csv_field(claim.name) + "," +
             csv_field(claim.anchor) + "," + to_string(claim.status) + "," + format_double(claim.worst_slack) +
             "," + csv_field(claim.witness) + "\n";
    }
  }
  if (!trial.error.empty()) {
    out += index + ",pipeline,nan,pipeline_error,pipeline completed,fail,-inf," + csv_field(trial.error) + "\n";
  }
  return out;
}

}  // namespace gaugefactor
