#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "clusterforge/potentials.hpp"

namespace clusterforge::cli {

/// Invalid command line or config document; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PotentialConfig {
  std::string name;
  std::string family = "lennard-jones";
  std::map<std::string, double> parameters;
  std::optional<double> stability_constant;
  int dimension = 3;
};

struct RunConfig {
  std::string command;
  PotentialConfig potential;
  std::vector<double> betas{1.0};
  std::vector<int> ns{4};
  int configs = 20;
  std::uint64_t seed = 42;
  double box = 1.0;
  /// Explicit configuration; replaces the random ones when present.
  std::optional<std::vector<std::vector<double>>> points;
  bool degenerate = true;
  std::uint64_t samples = 100000;
  double tolerance = 1e-9;
  double quad_tolerance = 1e-6;
  std::string format = "json";
  std::string output;
  bool deterministic = false;
  bool slow = false;
  bool literal_lp = false;
  double u_min = 1.0;
  double u_max = 1e6;
  int u_points = 100;
  /// "path", "star", or a comma-separated 1-based Pruefer code.
  std::string tree = "path";
  int threads = 0;
};

/// Known commands.
const std::vector<std::string>& command_names();

/// Fill `cfg` from a JSON document. Unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& doc);

/// "5" or "2-6" or "2,3,5".
std::vector<int> parse_int_list(const std::string& text);
/// "0.5,1,10".
std::vector<double> parse_double_list(const std::string& text);
/// "x,y,z;x,y,z".
std::vector<std::vector<double>> parse_points(const std::string& text);

/// Check ranges and cross-field constraints; throws ConfigError.
void validate(const RunConfig& cfg);

PairPotential build_potential(const PotentialConfig& pc);

nlohmann::ordered_json to_json(const RunConfig& cfg);

}  // namespace clusterforge::cli
