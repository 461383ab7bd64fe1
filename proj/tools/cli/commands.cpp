#include "cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "clusterforge/bounds.hpp"
#include "clusterforge/parallel.hpp"
#include "clusterforge/rng.hpp"
#include "clusterforge/scheme.hpp"
#include "clusterforge/ursell.hpp"
#include "clusterforge/version.hpp"

namespace clusterforge::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string fmt(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

std::string fmt(std::uint64_t x) { return std::to_string(x); }
std::string fmt(int x) { return std::to_string(x); }
std::string fmt(bool x) { return x ? "true" : "false"; }

int worker_threads(const RunConfig& cfg) {
  if (cfg.deterministic) return 1;
  return cfg.threads > 0 ? cfg.threads : default_thread_count();
}

std::string display_name(const RunConfig& cfg, const PairPotential& p) {
  return cfg.potential.name.empty() ? p.name() : cfg.potential.name;
}

struct Sample {
  std::string kind;
  std::uint64_t seed = 0;
  Configuration config;
};

std::vector<Sample> samples_for(const RunConfig& cfg, int n, int dimension) {
  std::vector<Sample> out;
  if (cfg.points) {
    std::vector<double> coords;
    for (const auto& row : *cfg.points) coords.insert(coords.end(), row.begin(), row.end());
    out.push_back({"explicit", 0, Configuration(dimension, std::move(coords))});
    return out;
  }
  const std::uint64_t base = derive_seed(cfg.seed, static_cast<std::uint64_t>(n));
  for (int k = 0; k < cfg.configs; ++k) {
    const std::uint64_t s = derive_seed(base, static_cast<std::uint64_t>(k));
    out.push_back({"random", s, random_configuration(n, dimension, cfg.box, s)});
  }
  if (cfg.degenerate) {
    out.push_back({"coincident", 0, coincident_configuration(n, dimension)});
    out.push_back({"lattice", 0, lattice_configuration(n, dimension, 1.0)});
  }
  return out;
}

ojson header(const RunConfig& cfg, const PairPotential* p) {
  ojson doc;
  doc["tool"] = "clusterforge";
  doc["version"] = kVersion;
  doc["command"] = cfg.command;
  ojson c = to_json(cfg);
  if (p) c["potential"]["stability_constant"] = p->stability_constant();
  doc["config"] = c;
  return doc;
}

CommandResult cmd_verify_partition(const RunConfig& cfg) {
  const PairPotential p = build_potential(cfg.potential);
  CommandResult r;
  r.document = header(cfg, &p);
  r.csv_columns = {"n", "config", "kind", "seed", "passed", "connected_graphs", "interval_total"};
  ojson records = ojson::array();
  bool all = true;
  const int threads = worker_threads(cfg);
  std::vector<int> ns = cfg.ns;
  if (cfg.points) ns = {static_cast<int>(cfg.points->size())};
  for (int n : ns) {
    const auto samples = samples_for(cfg, n, p.dimension());
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const EdgeWeights w = edge_weights(p, samples[k].config);
      const PartitionReport rep = verify_partition(n, w, threads);
      all = all && rep.passed;
      ojson rec;
      rec["n"] = n;
      rec["config"] = k;
      rec["kind"] = samples[k].kind;
      rec["seed"] = samples[k].seed;
      rec["passed"] = rep.passed;
      rec["connected_graphs"] = rep.connected_graphs;
      rec["interval_total"] = rep.interval_total;
      ojson hist = ojson::object();
      for (const auto& [size, count] : rep.interval_histogram) hist[std::to_string(size)] = count;
      rec["interval_histogram"] = hist;
      if (rep.counterexample) {
        const auto& ce = *rep.counterexample;
        rec["counterexample"] = {{"graph", format_edges(EdgeSet(n, ce.graph))},
                                 {"tree", ce.tree ? format_edges(EdgeSet(n, ce.tree)) : ""},
                                 {"top", ce.top ? format_edges(EdgeSet(n, ce.top)) : ""},
                                 {"reason", ce.reason}};
      }
      records.push_back(rec);
      r.csv_rows.push_back({fmt(n), fmt(static_cast<std::uint64_t>(k)), samples[k].kind, fmt(samples[k].seed),
                            fmt(rep.passed), fmt(rep.connected_graphs), fmt(rep.interval_total)});
    }
  }
  r.document["records"] = records;
  r.document["passed"] = all;
  r.exit_code = all ? kPass : kVerificationFailure;
  return r;
}

struct IdentityRecord {
  double beta = 0.0;
  int n = 0;
  std::size_t config = 0;
  std::string kind;
  std::uint64_t seed = 0;
  UrsellEvaluation eval;
  bool identity_ok = false;
  bool chain_ok = false;
  bool stability_ok = false;
  double stability_margin = 0.0;
};

CommandResult cmd_verify_identity(const RunConfig& cfg) {
  const PairPotential p = build_potential(cfg.potential);
  const double b = p.stability_constant();
  CommandResult r;
  r.document = header(cfg, &p);
  r.document["config"]["tolerance_chain_slack"] = 1e-12;
  r.csv_columns = {"beta", "n",     "config",        "kind",        "seed",    "lhs",         "rhs",
                   "rel_discrepancy", "corollary_bound", "prop1_bound", "identity_ok", "chain_ok", "stability_ok"};

  std::vector<IdentityRecord> jobs;
  std::vector<Configuration> configs;
  std::vector<int> ns = cfg.ns;
  if (cfg.points) ns = {static_cast<int>(cfg.points->size())};
  for (double beta : cfg.betas) {
    for (int n : ns) {
      const auto samples = samples_for(cfg, n, p.dimension());
      for (std::size_t k = 0; k < samples.size(); ++k) {
        IdentityRecord rec;
        rec.beta = beta;
        rec.n = n;
        rec.config = k;
        rec.kind = samples[k].kind;
        rec.seed = samples[k].seed;
        jobs.push_back(rec);
        configs.push_back(samples[k].config);
      }
    }
  }

  run_chunks(jobs.size(), worker_threads(cfg), [&](std::size_t idx) {
    IdentityRecord& rec = jobs[idx];
    const EdgeWeights w = edge_weights(p, configs[idx]);
    rec.eval = evaluate_ursell(rec.beta, w, b);
    rec.identity_ok = rec.eval.rel_discrepancy <= cfg.tolerance;
    rec.chain_ok = rec.eval.chain_holds();
    rec.stability_ok = true;
    rec.stability_margin = kInfinity;
    for (const Tree& t : enumerate_trees(rec.n)) {
      const StabilityGap gap = stability_gap(t, w, b);
      rec.stability_ok = rec.stability_ok && gap.bound_ok;
      rec.stability_margin = std::min(rec.stability_margin, gap.sum + b * rec.n);
    }
  });

  ojson records = ojson::array();
  std::size_t identity_failures = 0;
  std::size_t chain_failures = 0;
  std::size_t stability_failures = 0;
  double worst = 0.0;
  for (const auto& rec : jobs) {
    identity_failures += !rec.identity_ok;
    chain_failures += !rec.chain_ok;
    stability_failures += !rec.stability_ok;
    worst = std::max(worst, rec.eval.rel_discrepancy);
    ojson j;
    j["beta"] = rec.beta;
    j["n"] = rec.n;
    j["config"] = rec.config;
    j["kind"] = rec.kind;
    j["seed"] = rec.seed;
    j["lhs"] = rec.eval.lhs_direct;
    j["rhs"] = rec.eval.rhs_identity;
    j["rel_discrepancy"] = rec.eval.rel_discrepancy;
    j["corollary_bound"] = rec.eval.corollary_bound;
    j["prop1_bound"] = rec.eval.prop1_bound;
    j["identity_ok"] = rec.identity_ok;
    j["chain_ok"] = rec.chain_ok;
    j["stability_ok"] = rec.stability_ok;
    j["stability_margin"] = rec.stability_margin;
    records.push_back(j);
    r.csv_rows.push_back({fmt(rec.beta), fmt(rec.n), fmt(static_cast<std::uint64_t>(rec.config)), rec.kind,
                          fmt(rec.seed), fmt(rec.eval.lhs_direct), fmt(rec.eval.rhs_identity),
                          fmt(rec.eval.rel_discrepancy), fmt(rec.eval.corollary_bound), fmt(rec.eval.prop1_bound),
                          fmt(rec.identity_ok), fmt(rec.chain_ok), fmt(rec.stability_ok)});
  }
  const bool all = identity_failures == 0 && chain_failures == 0 && stability_failures == 0;
  r.document["records"] = records;
  r.document["summary"] = {{"instances", jobs.size()},
                           {"identity_failures", identity_failures},
                           {"chain_failures", chain_failures},
                           {"stability_failures", stability_failures},
                           {"max_rel_discrepancy", worst}};
  r.document["passed"] = all;
  r.exit_code = all ? kPass : kVerificationFailure;
  return r;
}

CommandResult cmd_radii(const RunConfig& cfg) {
  const PairPotential p = build_potential(cfg.potential);
  CommandResult r;
  r.document = header(cfg, &p);
  QuadratureOptions opts;
  opts.rel_tol = cfg.quad_tolerance;
  ojson records = ojson::array();
  for (double beta : cfg.betas) {
    BoundsReport rep;
    try {
      rep = bounds_report(p, beta, opts, cfg.literal_lp);
    } catch (const NonTemperedError& e) {
      throw ConfigError(e.what());
    }
    rep.potential = display_name(cfg, p);
    if (r.csv_columns.empty()) {
      r.csv_columns.push_back("potential");
      for (const auto& [name, value] : rep.fields()) r.csv_columns.push_back(name);
    }
    ojson j;
    j["potential"] = rep.potential;
    std::vector<std::string> row{rep.potential};
    for (const auto& [name, value] : rep.fields()) {
      j[name] = value;
      row.push_back(fmt(value));
    }
    j["lp_denominator"] = cfg.literal_lp ? "C_hat" : "C";
    records.push_back(j);
    r.csv_rows.push_back(row);
  }
  r.document["records"] = records;
  r.document["passed"] = true;
  return r;
}

CommandResult cmd_ursell(const RunConfig& cfg) {
  const PairPotential p = build_potential(cfg.potential);
  CommandResult r;
  r.document = header(cfg, &p);
  const int n = cfg.points ? static_cast<int>(cfg.points->size()) : cfg.ns.front();
  Configuration c = cfg.points ? samples_for(cfg, n, p.dimension()).front().config
                               : random_configuration(n, p.dimension(), cfg.box, cfg.seed);
  const EdgeWeights w = edge_weights(p, c);
  ojson pts = ojson::array();
  for (int i = 0; i < c.size(); ++i) {
    auto x = c.point(i);
    pts.push_back(std::vector<double>(x.begin(), x.end()));
  }
  r.document["points"] = pts;
  ojson energies = ojson::array();
  for (int k = 0; k < edge_count(n); ++k) {
    const Edge e = edge_at(n, k);
    energies.push_back({{"edge", format_edges(EdgeSet(n, std::uint64_t{1} << k))},
                        {"i", e.i + 1},
                        {"j", e.j + 1},
                        {"energy", w.energy(k)}});
  }
  r.document["energies"] = energies;
  r.csv_columns = {"beta", "n", "lhs", "rhs", "rel_discrepancy", "corollary_bound", "prop1_bound", "chain_ok"};
  ojson records = ojson::array();
  bool all = true;
  for (double beta : cfg.betas) {
    const auto e = evaluate_ursell(beta, w, p.stability_constant());
    const bool ok = e.rel_discrepancy <= cfg.tolerance && e.chain_holds();
    all = all && ok;
    records.push_back({{"beta", beta},
                       {"n", n},
                       {"lhs", e.lhs_direct},
                       {"rhs", e.rhs_identity},
                       {"rel_discrepancy", e.rel_discrepancy},
                       {"corollary_bound", e.corollary_bound},
                       {"prop1_bound", e.prop1_bound},
                       {"chain_ok", e.chain_holds()}});
    r.csv_rows.push_back({fmt(beta), fmt(n), fmt(e.lhs_direct), fmt(e.rhs_identity), fmt(e.rel_discrepancy),
                          fmt(e.corollary_bound), fmt(e.prop1_bound), fmt(e.chain_holds())});
  }
  r.document["records"] = records;
  r.document["passed"] = all;
  r.exit_code = all ? kPass : kVerificationFailure;
  return r;
}

CommandResult cmd_gfun(const RunConfig& cfg) {
  CommandResult r;
  r.document = header(cfg, nullptr);
  r.document["config"]["u_grid"] = {{"min", cfg.u_min}, {"max", cfg.u_max}, {"points", cfg.u_points}};
  r.csv_columns = {"u", "g", "argmax_w"};
  ojson records = ojson::array();
  for (int k = 0; k < cfg.u_points; ++k) {
    const double t = cfg.u_points == 1 ? 0.0 : static_cast<double>(k) / (cfg.u_points - 1);
    const double u = cfg.u_min * std::pow(cfg.u_max / cfg.u_min, t);
    const GMaximum g = g_function(u);
    records.push_back({{"u", u}, {"g", g.value}, {"argmax_w", g.argmax}});
    r.csv_rows.push_back({fmt(u), fmt(g.value), fmt(g.argmax)});
  }
  r.document["records"] = records;
  r.document["passed"] = true;
  return r;
}

Tree tree_from_spec(const std::string& spec, int n) {
  if (spec == "path" || spec == "star") {
    EdgeSet edges(n, 0);
    for (int k = 1; k < n; ++k) edges.insert(spec == "path" ? edge_index(n, k - 1, k) : edge_index(n, 0, k));
    return Tree(edges);
  }
  std::vector<int> code;
  for (int label : parse_int_list(spec)) code.push_back(label - 1);
  if (static_cast<int>(code.size()) != n - 2) {
    throw ConfigError("Pruefer code for n = " + std::to_string(n) + " needs " + std::to_string(n - 2) + " labels");
  }
  try {
    return prufer_decode(n, code);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid Pruefer code: ") + e.what());
  }
}

CommandResult cmd_monte_carlo(const RunConfig& cfg, bool tree_integral) {
  const PairPotential p = build_potential(cfg.potential);
  CommandResult r;
  r.document = header(cfg, &p);
  r.csv_columns = {"beta", "n", "estimate", "std_error", "bound", "ok"};
  if (tree_integral) r.csv_columns.insert(r.csv_columns.begin() + 2, "tree");
  MonteCarloOptions opts;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  opts.threads = worker_threads(cfg);
  ojson records = ojson::array();
  bool all = true;
  for (double beta : cfg.betas) {
    for (int n : cfg.ns) {
      MonteCarloResult res;
      std::string tree_text;
      try {
        if (tree_integral) {
          const Tree t = tree_from_spec(cfg.tree, n);
          tree_text = format_edges(t.edges());
          res = tree_integral_check(p, beta, t, cfg.box, opts);
        } else {
          res = mayer_cn_mc(p, beta, n, cfg.box, opts);
        }
      } catch (const NonTemperedError& e) {
        throw ConfigError(e.what());
      }
      all = all && res.ok;
      ojson j{{"beta", beta}, {"n", n}};
      if (tree_integral) j["tree"] = tree_text;
      j["estimate"] = res.estimate;
      j["std_error"] = res.std_error;
      j["bound"] = res.bound;
      j["ok"] = res.ok;
      j["samples"] = res.samples;
      j["seed"] = res.seed;
      if (!res.warning.empty()) j["warning"] = res.warning;
      records.push_back(j);
      std::vector<std::string> row{fmt(beta), fmt(n), fmt(res.estimate), fmt(res.std_error), fmt(res.bound),
                                   fmt(res.ok)};
      if (tree_integral) row.insert(row.begin() + 2, tree_text);
      r.csv_rows.push_back(row);
    }
  }
  r.document["records"] = records;
  r.document["passed"] = all;
  r.exit_code = all ? kPass : kVerificationFailure;
  return r;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

CommandResult execute(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.command == "verify-partition") return cmd_verify_partition(cfg);
  if (cfg.command == "verify-identity") return cmd_verify_identity(cfg);
  if (cfg.command == "radii") return cmd_radii(cfg);
  if (cfg.command == "ursell") return cmd_ursell(cfg);
  if (cfg.command == "gfun") return cmd_gfun(cfg);
  if (cfg.command == "mayer-mc") return cmd_monte_carlo(cfg, false);
  if (cfg.command == "lemma3") return cmd_monte_carlo(cfg, true);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

void write_json(std::ostream& out, const CommandResult& r) { out << r.document.dump(2) << '\n'; }

void write_csv(std::ostream& out, const CommandResult& r) {
  for (std::size_t k = 0; k < r.csv_columns.size(); ++k) out << (k ? "," : "") << csv_escape(r.csv_columns[k]);
  out << '\n';
  for (const auto& row : r.csv_rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_escape(row[k]);
    out << '\n';
  }
}

}  // namespace clusterforge::cli
