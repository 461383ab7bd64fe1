#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "cli/commands.hpp"
#include "clusterforge/version.hpp"

namespace clusterforge::cli {

namespace {

struct Flags {
  std::string config_file;
  std::optional<std::string> potential;
  std::optional<std::string> name;
  std::optional<double> a;
  std::optional<double> epsilon;
  std::optional<double> range;
  std::optional<double> s;
  std::optional<double> stability;
  std::optional<int> dimension;
  std::optional<std::string> beta;
  std::optional<std::string> n;
  std::optional<int> configs;
  std::optional<std::uint64_t> seed;
  std::optional<double> box;
  std::optional<std::string> points;
  bool no_degenerate = false;
  std::optional<std::uint64_t> samples;
  std::optional<double> tol;
  std::optional<double> quad_tol;
  std::optional<std::string> format;
  std::optional<std::string> output;
  bool deterministic = false;
  bool slow = false;
  bool literal_lp = false;
  std::optional<double> u_min;
  std::optional<double> u_max;
  std::optional<int> u_points;
  std::optional<std::string> tree;
  std::optional<int> threads;
};

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config_file, "JSON config document; command-line flags override it");
  app.add_option("--potential", f.potential, "lennard-jones | hard-sphere | square-well | inverse-power | ideal");
  app.add_option("--name", f.name, "Label for the potential in the output");
  app.add_option("--a", f.a, "Hard-core diameter");
  app.add_option("--epsilon", f.epsilon, "Well depth or strength");
  app.add_option("--range", f.range, "Square-well outer radius");
  app.add_option("--s", f.s, "Inverse-power exponent");
  app.add_option("--stability", f.stability, "Stability constant B");
  app.add_option("--dimension", f.dimension, "Spatial dimension");
  app.add_option("--beta", f.beta, "Inverse temperature(s), e.g. 0.5,1,10");
  app.add_option("--n", f.n, "Number of particles, e.g. 5 or 2-6");
  app.add_option("--configs", f.configs, "Random configurations per n");
  app.add_option("--seed", f.seed, "Master seed");
  app.add_option("--box", f.box, "Half-width of the sampling box");
  app.add_option("--points", f.points, "Explicit configuration 'x,y,z;x,y,z;...'");
  app.add_flag("--no-degenerate", f.no_degenerate, "Skip the coincident and lattice configurations");
  app.add_option("--samples", f.samples, "Monte Carlo sample count");
  app.add_option("--tol", f.tol, "Relative tolerance for the identity check");
  app.add_option("--quad-tol", f.quad_tol, "Relative tolerance for quadrature");
  app.add_option("--format", f.format, "json | csv");
  app.add_option("--output", f.output, "Write to this file instead of stdout");
  app.add_flag("--deterministic", f.deterministic, "Single-threaded, byte-identical output");
  app.add_option("--threads", f.threads, "Worker threads (0 = automatic)");
  app.add_flag("--slow", f.slow, "Allow n = 7 for verify-identity");
  app.add_flag("--literal-lp", f.literal_lp, "Use C_hat in the Lebowitz-Penrose virial radius");
  app.add_option("--u-min", f.u_min, "gfun: smallest u");
  app.add_option("--u-max", f.u_max, "gfun: largest u");
  app.add_option("--u-points", f.u_points, "gfun: number of log-spaced points");
  app.add_option("--tree", f.tree, "lemma3: path | star | 1-based Pruefer code");
}

void overlay(RunConfig& cfg, const Flags& f) {
  if (f.potential) {
    if (*f.potential != cfg.potential.family) cfg.potential.parameters.clear();
    cfg.potential.family = *f.potential;
  }
  if (f.name) cfg.potential.name = *f.name;
  if (f.a) cfg.potential.parameters["a"] = *f.a;
  if (f.epsilon) cfg.potential.parameters["epsilon"] = *f.epsilon;
  if (f.range) cfg.potential.parameters["range"] = *f.range;
  if (f.s) cfg.potential.parameters["s"] = *f.s;
  if (f.stability) cfg.potential.stability_constant = *f.stability;
  if (f.dimension) cfg.potential.dimension = *f.dimension;
  if (f.beta) cfg.betas = parse_double_list(*f.beta);
  if (f.n) cfg.ns = parse_int_list(*f.n);
  if (f.configs) cfg.configs = *f.configs;
  if (f.seed) cfg.seed = *f.seed;
  if (f.box) cfg.box = *f.box;
  if (f.points) cfg.points = parse_points(*f.points);
  if (f.no_degenerate) cfg.degenerate = false;
  if (f.samples) cfg.samples = *f.samples;
  if (f.tol) cfg.tolerance = *f.tol;
  if (f.quad_tol) cfg.quad_tolerance = *f.quad_tol;
  if (f.format) cfg.format = *f.format;
  if (f.output) cfg.output = *f.output;
  if (f.deterministic) cfg.deterministic = true;
  if (f.threads) cfg.threads = *f.threads;
  if (f.slow) cfg.slow = true;
  if (f.literal_lp) cfg.literal_lp = true;
  if (f.u_min) cfg.u_min = *f.u_min;
  if (f.u_max) cfg.u_max = *f.u_max;
  if (f.u_points) cfg.u_points = *f.u_points;
  if (f.tree) cfg.tree = *f.tree;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  RunConfig cfg;
  apply_json(cfg, doc);
  return cfg;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tree-graph identities and cluster-expansion convergence radii", "clusterforge"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"verify-partition", "Check that MST intervals partition the connected graphs"},
      {"verify-identity", "Compare the Ursell function with the tree-graph identity and its bounds"},
      {"radii", "Convergence radii of the Mayer and virial series"},
      {"ursell", "Ursell function and bounds for a single configuration"},
      {"gfun", "Table of g(u) on a log grid"},
      {"mayer-mc", "Monte Carlo Mayer coefficient against its bound"},
      {"lemma3", "Monte Carlo tree integral against |T| C_hat^(n-1)"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_flags(*sub, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kPass;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kPass;
    }
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();

  CommandResult result;
  RunConfig cfg;
  try {
    if (!flags.config_file.empty()) cfg = load_config_file(flags.config_file);
    if (!cfg.command.empty() && cfg.command != command) {
      throw ConfigError("config file is for '" + cfg.command + "', not '" + command + "'");
    }
    cfg.command = command;
    overlay(cfg, flags);
    result = execute(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  std::ostringstream text;
  if (cfg.format == "csv") {
    write_csv(text, result);
  } else {
    write_json(text, result);
  }
  if (cfg.output.empty()) {
    out << text.str();
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << cfg.output << "'\n";
      return kUsageError;
    }
    file << text.str();
  }
  if (result.exit_code == kVerificationFailure) {
    err << cfg.command << ": verification failed (see records)\n";
  }
  return result.exit_code;
}

}  // namespace clusterforge::cli
