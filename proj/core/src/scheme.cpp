#include "clusterforge/scheme.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "clusterforge/parallel.hpp"

namespace clusterforge {

std::strong_ordering operator<=>(const TomonoidWeight& a, const TomonoidWeight& b) {
  if (a.value < b.value) return std::strong_ordering::less;
  if (a.value > b.value) return std::strong_ordering::greater;
  // Earlier coordinate carrying the 1 is the larger element.
  return b.position <=> a.position;
}

std::strong_ordering operator<=>(const TomonoidSum& a, const TomonoidSum& b) {
  if (auto c = a.infinite_terms <=> b.infinite_terms; c != 0) return c;
  if (a.finite_sum < b.finite_sum) return std::strong_ordering::less;
  if (a.finite_sum > b.finite_sum) return std::strong_ordering::greater;
  const std::uint64_t diff = a.indicator ^ b.indicator;
  if (diff == 0) return std::strong_ordering::equal;
  const bool a_has_first = (a.indicator >> std::countr_zero(diff)) & 1U;
  return a_has_first ? std::strong_ordering::greater : std::strong_ordering::less;
}

EdgeWeights::EdgeWeights(int n, std::vector<double> energies, EdgeOrder order)
    : n_(n), order_(order), energies_(std::move(energies)) {
  const int m = edge_count(n);
  if (n < 2 || n > kMaxVertices) throw std::out_of_range("edge weights need 2 <= n <= 9");
  if (static_cast<int>(energies_.size()) != m) throw std::invalid_argument("need one energy per edge of K_n");
  for (double v : energies_) {
    if (std::isnan(v) || v == -kInfinity) throw std::domain_error("edge energy must lie in R u {+inf}");
  }
  positions_.resize(m);
  for (int k = 0; k < m; ++k) positions_[k] = order == EdgeOrder::Lexicographic ? k + 1 : m - k;
  ascending_.resize(m);
  for (int k = 0; k < m; ++k) ascending_[k] = k;
  std::sort(ascending_.begin(), ascending_.end(), [this](int a, int b) { return weight(a) < weight(b); });
}

EdgeWeights edge_weights(const PairPotential& p, const Configuration& c, EdgeOrder order) {
  const int n = c.size();
  std::vector<double> energies(edge_count(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) energies[edge_index(n, i, j)] = pair_energy(p, c, i, j);
  }
  return EdgeWeights(n, std::move(energies), order);
}

TomonoidWeight edge_weight(const PairPotential& p, const Configuration& c, Edge e, EdgeOrder order) {
  const int n = c.size();
  const int k = edge_index(n, e.i, e.j);
  const int m = edge_count(n);
  return {pair_energy(p, c, e.i, e.j), order == EdgeOrder::Lexicographic ? k + 1 : m - k};
}

TomonoidSum tomonoid_sum(const EdgeSet& edges, const EdgeWeights& w) {
  TomonoidSum s;
  std::array<double, edge_count(kMaxVertices)> finite{};
  int count = 0;
  for (std::uint64_t b = edges.bits(); b; b &= b - 1) {
    const int k = std::countr_zero(b);
    s.indicator |= std::uint64_t{1} << (w.position(k) - 1);
    if (w.energy(k) == kInfinity) {
      ++s.infinite_terms;
    } else {
      finite[count++] = w.energy(k);
    }
  }
  // Summing in sorted order makes equal multisets give bit-identical sums.
  std::sort(finite.begin(), finite.begin() + count);
  for (int k = 0; k < count; ++k) s.finite_sum += finite[k];
  return s;
}

namespace {

std::uint64_t kruskal(int n, std::uint64_t graph, const EdgeWeights& w) {
  std::array<int, kMaxVertices> component{};
  for (int v = 0; v < n; ++v) component[v] = v;
  std::uint64_t tree = 0;
  int taken = 0;
  for (int k : w.ascending()) {
    if (!((graph >> k) & 1U)) continue;
    const Edge e = edge_at(n, k);
    const int a = component[e.i];
    const int b = component[e.j];
    if (a == b) continue;
    for (int v = 0; v < n; ++v) {
      if (component[v] == b) component[v] = a;
    }
    tree |= std::uint64_t{1} << k;
    if (++taken == n - 1) break;
  }
  return taken == n - 1 ? tree : 0;
}

std::uint64_t interval_top(int n, std::uint64_t tree, const EdgeWeights& w) {
  std::array<std::uint32_t, kMaxVertices> adj{};
  for (std::uint64_t b = tree; b; b &= b - 1) {
    const Edge e = edge_at(n, std::countr_zero(b));
    adj[e.i] |= 1U << e.j;
    adj[e.j] |= 1U << e.i;
  }
  std::uint64_t top = 0;
  struct Frame {
    int vertex;
    int parent;
    int heaviest;  // edge index of the heaviest edge on the path so far
  };
  for (int root = 0; root < n; ++root) {
    std::array<Frame, kMaxVertices> stack{};
    int depth = 0;
    stack[depth++] = {root, -1, -1};
    while (depth > 0) {
      const Frame f = stack[--depth];
      if (f.vertex > root) {
        const int k = edge_index(n, root, f.vertex);
        if (w.weight(k) >= w.weight(f.heaviest)) top |= std::uint64_t{1} << k;
      }
      for (std::uint32_t nb = adj[f.vertex]; nb; nb &= nb - 1) {
        const int next = std::countr_zero(nb);
        if (next == f.parent) continue;
        const int k = edge_index(n, f.vertex, next);
        const int heaviest = (f.heaviest < 0 || w.weight(k) > w.weight(f.heaviest)) ? k : f.heaviest;
        stack[depth++] = {next, f.vertex, heaviest};
      }
    }
  }
  return top;
}

void check_same_n(int n, const EdgeWeights& w) {
  if (n != w.vertex_count()) throw std::invalid_argument("graph and weights disagree on n");
}

}  // namespace

namespace detail {
std::uint64_t kruskal_mask(int n, std::uint64_t graph, const EdgeWeights& w) { return kruskal(n, graph, w); }
std::uint64_t interval_top_mask(int n, std::uint64_t tree, const EdgeWeights& w) {
  return interval_top(n, tree, w);
}
}  // namespace detail

Tree mst(const LabeledGraph& g, const EdgeWeights& w) {
  const int n = g.vertex_count();
  check_same_n(n, w);
  const std::uint64_t t = kruskal(n, g.edges.bits(), w);
  if (t == 0) throw std::invalid_argument("mst: graph " + format_edges(g.edges) + " is disconnected");
  return Tree(EdgeSet(n, t));
}

Tree mst_oracle(const LabeledGraph& g, const EdgeWeights& w) {
  const int n = g.vertex_count();
  check_same_n(n, w);
  if (n > 6) throw std::out_of_range("mst_oracle is exhaustive and limited to n <= 6");
  if (!is_connected(g)) throw std::invalid_argument("mst_oracle: graph is disconnected");
  std::optional<TomonoidSum> best;
  std::uint64_t best_tree = 0;
  for (std::uint64_t t : tree_masks(n)) {
    if ((t & ~g.edges.bits()) != 0) continue;
    const TomonoidSum s = tomonoid_sum(EdgeSet(n, t), w);
    if (!best || s < *best) {
      best = s;
      best_tree = t;
    }
  }
  return Tree(EdgeSet(n, best_tree));
}

LabeledGraph build_M(const Tree& t, const EdgeWeights& w) {
  const int n = t.vertex_count();
  check_same_n(n, w);
  return LabeledGraph{EdgeSet(n, interval_top(n, t.edges().bits(), w))};
}

EdgeSet positive_edges(const Tree& t, const EdgeWeights& w) {
  check_same_n(t.vertex_count(), w);
  EdgeSet out(t.vertex_count(), 0);
  for (std::uint64_t b = t.edges().bits(); b; b &= b - 1) {
    const int k = std::countr_zero(b);
    if (w.energy(k) >= 0.0) out.insert(k);
  }
  return out;
}

StabilityGap stability_gap(const Tree& t, const EdgeWeights& w, double stability_constant) {
  const int n = t.vertex_count();
  const std::uint64_t top = build_M(t, w).edges.bits();
  const std::uint64_t plus = positive_edges(t, w).bits();
  StabilityGap gap;
  for (std::uint64_t b = top & ~plus; b; b &= b - 1) gap.sum += w.energy(std::countr_zero(b));
  gap.bound_ok = gap.sum >= -stability_constant * n;
  return gap;
}

PartitionReport verify_partition(int n, const EdgeWeights& w, int threads) {
  if (n < 2 || n > 7) throw std::out_of_range("verify_partition is exhaustive and limited to 2 <= n <= 7");
  check_same_n(n, w);

  PartitionReport report;
  report.n = n;

  const auto& trees = tree_masks(n);
  std::unordered_map<std::uint64_t, std::uint64_t> top_of;
  top_of.reserve(trees.size() * 2);
  for (std::uint64_t t : trees) {
    const std::uint64_t top = interval_top(n, t, w);
    top_of.emplace(t, top);
    const std::uint64_t size = std::uint64_t{1} << (std::popcount(top) - (n - 1));
    report.interval_total += size;
    ++report.interval_histogram[size];
  }

  const auto& graphs = connected_masks(n);
  report.connected_graphs = graphs.size();

  constexpr std::size_t kChunks = 64;
  std::vector<std::optional<PartitionCounterexample>> failures(kChunks);
  run_chunks(kChunks, threads, [&](std::size_t chunk) {
    const std::size_t begin = graphs.size() * chunk / kChunks;
    const std::size_t end = graphs.size() * (chunk + 1) / kChunks;
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::uint64_t g = graphs[idx];
      const std::uint64_t t = kruskal(n, g, w);
      const auto it = top_of.find(t);
      if (t == 0 || it == top_of.end()) {
        failures[chunk] = PartitionCounterexample{g, t, 0, "minimum spanning tree is not a tree on [n]"};
        return;
      }
      if ((t & ~g) != 0 || (g & ~it->second) != 0) {
        failures[chunk] = PartitionCounterexample{g, t, it->second, "graph outside [T(g), M(T(g))]"};
        return;
      }
    }
  });

  // Chunks cover increasing mask ranges, so the first failing chunk holds the
  // smallest counterexample.
  for (auto& f : failures) {
    if (f) {
      report.counterexample = std::move(f);
      break;
    }
  }
  if (!report.counterexample && report.interval_total != report.connected_graphs) {
    report.counterexample = PartitionCounterexample{
        0, 0, 0,
        "interval sizes sum to " + std::to_string(report.interval_total) + " but |G_n| = " +
            std::to_string(report.connected_graphs)};
  }
  report.passed = !report.counterexample.has_value();
  return report;
}

}  // namespace clusterforge
