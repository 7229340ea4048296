#pragma once

// Command-line front end: RunConfig, the report model and its JSON/CSV
// serialisation, and the `run` entry point used by the phaselab binary.

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "phaselab/linalg.hpp"

namespace phaselab::cli {

using Json = nlohmann::ordered_json;

/// Bad flags, unreadable inputs, dimensions over the cap. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

/// Named tolerances and their defaults; `--tol name=value` overrides these.
const std::map<std::string, double>& default_tolerances();

struct RunConfig {
  std::size_t dim_cap = kDefaultDimCap;
  std::map<std::string, double> tolerances = default_tolerances();
  std::uint64_t seed = 0x5EED;
  Format format = Format::json;
  std::string out_path;

  double tol(std::string_view name) const;
  EigenOptions eigen() const;
  /// Throws UsageError for dim > dim_cap or dim < min_dim.
  void check_dim(std::size_t dim, std::size_t min_dim = 1) const;
};

struct Report {
  std::string command;
  Json params = Json::object();
  std::vector<std::string> columns;
  std::vector<Json> rows;  // each an array aligned with `columns`
  Json summary = Json::object();
  bool pass = true;
  std::string headline;

  void add_row(Json row);
  /// pass &= ok; a failing check is also named in summary["failed"].
  void require(bool ok, std::string_view what);
};

std::string to_json(const Report& report, const RunConfig& config);
std::string to_csv(const Report& report);

/// Parses the command line, runs one subcommand, writes the report and the
/// one-line summary. Returns 0 (all checks pass), 1 (invariant violation or
/// convergence failure) or 2 (usage error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phaselab::cli
