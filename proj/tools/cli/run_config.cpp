#include "cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace clusterforge::cli {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"verify-partition", "verify-identity", "radii", "ursell",
                                              "gfun",             "mayer-mc",        "lemma3"};
  return names;
}

namespace {

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get_as(const nlohmann::json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

std::vector<double> number_or_list(const nlohmann::json& v, const std::string& key) {
  if (v.is_array()) return get_as<std::vector<double>>(v, key);
  return {get_as<double>(v, key)};
}

std::vector<int> int_or_list(const nlohmann::json& v, const std::string& key) {
  if (v.is_array()) return get_as<std::vector<int>>(v, key);
  if (v.is_string()) return parse_int_list(v.get<std::string>());
  return {get_as<int>(v, key)};
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    const auto dash = part.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(parse_int(part));
      continue;
    }
    const int lo = parse_int(part.substr(0, dash));
    const int hi = parse_int(part.substr(dash + 1));
    if (hi < lo) throw ConfigError("empty range '" + part + "'");
    for (int k = lo; k <= hi; ++k) out.push_back(k);
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_double(part));
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

std::vector<std::vector<double>> parse_points(const std::string& text) {
  std::vector<std::vector<double>> out;
  for (const auto& row : split(text, ';')) out.push_back(parse_double_list(row));
  return out;
}

void apply_json(RunConfig& cfg, const nlohmann::json& doc) {
  reject_unknown_keys(doc,
                      {"command", "potential", "beta", "n", "configs", "seed", "box", "points", "degenerate",
                       "samples", "tolerance", "quad_tolerance", "format", "output", "deterministic", "slow",
                       "literal_lp", "u_min", "u_max", "u_points", "tree", "threads"},
                      "config document");
  if (doc.contains("command")) cfg.command = get_as<std::string>(doc["command"], "command");
  if (doc.contains("potential")) {
    const auto& p = doc["potential"];
    reject_unknown_keys(p, {"name", "family", "parameters", "stability_constant", "dimension"}, "potential");
    if (p.contains("name")) cfg.potential.name = get_as<std::string>(p["name"], "potential.name");
    if (p.contains("family")) cfg.potential.family = get_as<std::string>(p["family"], "potential.family");
    if (p.contains("parameters")) {
      cfg.potential.parameters = get_as<std::map<std::string, double>>(p["parameters"], "potential.parameters");
    }
    if (p.contains("stability_constant")) {
      cfg.potential.stability_constant = get_as<double>(p["stability_constant"], "potential.stability_constant");
    }
    if (p.contains("dimension")) cfg.potential.dimension = get_as<int>(p["dimension"], "potential.dimension");
  }
  if (doc.contains("beta")) cfg.betas = number_or_list(doc["beta"], "beta");
  if (doc.contains("n")) cfg.ns = int_or_list(doc["n"], "n");
  if (doc.contains("configs")) cfg.configs = get_as<int>(doc["configs"], "configs");
  if (doc.contains("seed")) cfg.seed = get_as<std::uint64_t>(doc["seed"], "seed");
  if (doc.contains("box")) cfg.box = get_as<double>(doc["box"], "box");
  if (doc.contains("points")) cfg.points = get_as<std::vector<std::vector<double>>>(doc["points"], "points");
  if (doc.contains("degenerate")) cfg.degenerate = get_as<bool>(doc["degenerate"], "degenerate");
  if (doc.contains("samples")) cfg.samples = get_as<std::uint64_t>(doc["samples"], "samples");
  if (doc.contains("tolerance")) cfg.tolerance = get_as<double>(doc["tolerance"], "tolerance");
  if (doc.contains("quad_tolerance")) cfg.quad_tolerance = get_as<double>(doc["quad_tolerance"], "quad_tolerance");
  if (doc.contains("format")) cfg.format = get_as<std::string>(doc["format"], "format");
  if (doc.contains("output")) cfg.output = get_as<std::string>(doc["output"], "output");
  if (doc.contains("deterministic")) cfg.deterministic = get_as<bool>(doc["deterministic"], "deterministic");
  if (doc.contains("slow")) cfg.slow = get_as<bool>(doc["slow"], "slow");
  if (doc.contains("literal_lp")) cfg.literal_lp = get_as<bool>(doc["literal_lp"], "literal_lp");
  if (doc.contains("u_min")) cfg.u_min = get_as<double>(doc["u_min"], "u_min");
  if (doc.contains("u_max")) cfg.u_max = get_as<double>(doc["u_max"], "u_max");
  if (doc.contains("u_points")) cfg.u_points = get_as<int>(doc["u_points"], "u_points");
  if (doc.contains("tree")) cfg.tree = get_as<std::string>(doc["tree"], "tree");
  if (doc.contains("threads")) cfg.threads = get_as<int>(doc["threads"], "threads");
}

void validate(const RunConfig& cfg) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), cfg.command) == names.end()) {
    throw ConfigError("unknown command '" + cfg.command + "'");
  }
  if (cfg.betas.empty()) throw ConfigError("at least one beta is required");
  for (double b : cfg.betas) {
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("beta must be positive and finite");
  }
  if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("format must be 'json' or 'csv'");
  if (cfg.configs < 0) throw ConfigError("configs must be >= 0");
  if (!(cfg.box > 0.0)) throw ConfigError("box half-width must be positive");
  if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
  if (!(cfg.tolerance > 0.0) || !(cfg.quad_tolerance > 0.0)) throw ConfigError("tolerances must be positive");
  if (cfg.threads < 0) throw ConfigError("threads must be >= 0");
  if (cfg.potential.dimension < 1) throw ConfigError("dimension must be positive");

  if (cfg.points) {
    if (cfg.points->size() < 2) throw ConfigError("an explicit configuration needs at least 2 points");
    for (const auto& row : *cfg.points) {
      if (static_cast<int>(row.size()) != cfg.potential.dimension) {
        throw ConfigError("every point must have " + std::to_string(cfg.potential.dimension) + " coordinates");
      }
    }
  }

  int n_max = 7;
  int n_min = 2;
  std::string cap_message = "n exceeds exhaustive cap";
  if (cfg.command == "verify-identity") {
    n_max = cfg.slow ? 7 : 6;
    if (!cfg.slow) cap_message = "n exceeds exhaustive cap (use --slow for n = 7)";
  } else if (cfg.command == "mayer-mc") {
    n_max = 4;
    cap_message = "mayer-mc supports 2 <= n <= 4";
  } else if (cfg.command == "lemma3") {
    n_max = 6;
    cap_message = "lemma3 supports 2 <= n <= 6";
  }
  const bool uses_n = cfg.command != "radii" && cfg.command != "gfun";
  if (uses_n) {
    std::vector<int> ns = cfg.ns;
    if (cfg.points) ns = {static_cast<int>(cfg.points->size())};
    for (int n : ns) {
      if (n > n_max) throw ConfigError(cap_message + ": n = " + std::to_string(n));
      if (n < n_min) throw ConfigError("n must be >= 2");
    }
  }
  if (cfg.command == "gfun") {
    if (!(cfg.u_min >= 1.0) || !(cfg.u_max >= cfg.u_min)) throw ConfigError("need 1 <= u_min <= u_max");
    if (cfg.u_points < 1) throw ConfigError("u_points must be >= 1");
  }
  if ((cfg.command == "verify-partition" || cfg.command == "verify-identity") && !cfg.points &&
      cfg.configs == 0 && !cfg.degenerate) {
    throw ConfigError("nothing to verify: configs = 0 and degenerate cases disabled");
  }
}

PairPotential build_potential(const PotentialConfig& pc) {
  auto params = pc.parameters;
  if (pc.stability_constant) params["stability_constant"] = *pc.stability_constant;
  try {
    return make_potential(pc.family, params, pc.dimension);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["command"] = cfg.command;
  nlohmann::ordered_json pot;
  pot["name"] = cfg.potential.name.empty() ? cfg.potential.family : cfg.potential.name;
  pot["family"] = cfg.potential.family;
  pot["parameters"] = cfg.potential.parameters;
  if (cfg.potential.stability_constant) pot["stability_constant"] = *cfg.potential.stability_constant;
  pot["dimension"] = cfg.potential.dimension;
  j["potential"] = pot;
  j["beta"] = cfg.betas;
  j["n"] = cfg.ns;
  j["configs"] = cfg.configs;
  j["seed"] = cfg.seed;
  j["box"] = cfg.box;
  if (cfg.points) j["points"] = *cfg.points;
  j["degenerate"] = cfg.degenerate;
  j["samples"] = cfg.samples;
  j["tolerance"] = cfg.tolerance;
  j["quad_tolerance"] = cfg.quad_tolerance;
  j["deterministic"] = cfg.deterministic;
  j["literal_lp"] = cfg.literal_lp;
  return j;
}

}  // namespace clusterforge::cli
