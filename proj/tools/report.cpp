#include <sstream>

#include "cli.hpp"

namespace phaselab::cli {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tols{
      {"covariance", 1e-12},    {"defect_law", 1e-10},   {"distribution", 1e-10},
      {"eigen", 1e-12},         {"log_series", 1e-15},   {"membership", 1e-13},
      {"moment", 1e-14},        {"phi_entry", 1e-15},    {"positivity", 1e-10},
      {"residual_zero", 1e-10}, {"resolution", 1e-13},   {"riemann_slack", 1e-10},
      {"spectrum_slack", 1e-10}, {"stabilization", 0.05}, {"step", 1e-13},
      {"weyl_trivial", 1e-10},
  };
  return tols;
}

double RunConfig::tol(std::string_view name) const {
  const auto it = tolerances.find(std::string(name));
  if (it == tolerances.end()) throw std::logic_error("unknown tolerance " + std::string(name));
  return it->second;
}

EigenOptions RunConfig::eigen() const {
  EigenOptions o;
  o.tol = tol("eigen");
  return o;
}

void RunConfig::check_dim(std::size_t dim, std::size_t min_dim) const {
  if (dim > dim_cap)
    throw UsageError("dimension " + std::to_string(dim) + " exceeds the cap " + std::to_string(dim_cap));
  if (dim < min_dim)
    throw UsageError("dimension " + std::to_string(dim) + " is below the minimum " + std::to_string(min_dim));
}

void Report::add_row(Json row) {
  if (!row.is_array() || row.size() != columns.size())
    throw std::logic_error("report row does not match the column list");
  rows.push_back(std::move(row));
}

void Report::require(bool ok, std::string_view what) {
  if (ok) return;
  pass = false;
  if (!summary.contains("failed")) summary["failed"] = Json::array();
  summary["failed"].push_back(what);
}

std::string to_json(const Report& report, const RunConfig& config) {
  Json doc;
  doc["schema"] = 1;
  doc["command"] = report.command;
  Json cfg;
  cfg["dim_cap"] = config.dim_cap;
  cfg["seed"] = config.seed;
  cfg["format"] = config.format == Format::json ? "json" : "csv";
  cfg["tolerances"] = Json(config.tolerances);
  cfg["params"] = report.params;
  doc["config"] = std::move(cfg);
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < report.columns.size(); ++i) obj[report.columns[i]] = r[i];
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  doc["summary"] = report.summary;
  doc["pass"] = report.pass;
  return doc.dump(2) + "\n";
}

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  return v.dump();
}

}  // namespace

std::string to_csv(const Report& report) {
  std::ostringstream os;
  for (std::size_t i = 0; i < report.columns.size(); ++i) os << (i ? "," : "") << report.columns[i];
  os << "\n";
  for (const auto& r : report.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace phaselab::cli
