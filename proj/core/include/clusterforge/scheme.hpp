#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clusterforge/graphs.hpp"
#include "clusterforge/potentials.hpp"

namespace clusterforge {

/// Which canonical order of E_n supplies the tie-break coordinates.
enum class EdgeOrder { Lexicographic, ReverseLexicographic };

/// Element V(x_i - x_j) x 1_{i,j} of R* x N0^{E_n}. The integer part has a
/// single 1, so storing its (1-based) position is enough.
///
/// Order: larger energy is larger; on equal energy the edge whose 1 sits at
/// the earlier coordinate is larger (lexicographic, left to right).
struct TomonoidWeight {
  double value = 0.0;
  int position = 1;

  friend std::strong_ordering operator<=>(const TomonoidWeight& a, const TomonoidWeight& b);
  friend bool operator==(const TomonoidWeight& a, const TomonoidWeight& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

/// Sum of edge weights over an edge set.
///
/// The real part is kept as (number of +inf terms, finite sum), which orders
/// exactly like R* whenever at most one side is infinite and stays
/// cancellative when both are. The indicator is the N0^{E_n} component
/// expressed in tie-break positions (bit p-1 for position p).
struct TomonoidSum {
  int infinite_terms = 0;
  double finite_sum = 0.0;
  std::uint64_t indicator = 0;

  double real_sum() const { return infinite_terms > 0 ? kInfinity : finite_sum; }

  friend std::strong_ordering operator<=>(const TomonoidSum& a, const TomonoidSum& b);
  friend bool operator==(const TomonoidSum& a, const TomonoidSum& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

/// Pair energies of one configuration, indexed by lexicographic edge index,
/// together with the tie-break position of each edge.
class EdgeWeights {
 public:
  EdgeWeights(int n, std::vector<double> energies, EdgeOrder order = EdgeOrder::Lexicographic);

  int vertex_count() const { return n_; }
  EdgeOrder order() const { return order_; }
  double energy(int edge) const { return energies_[edge]; }
  const std::vector<double>& energies() const { return energies_; }
  int position(int edge) const { return positions_[edge]; }
  TomonoidWeight weight(int edge) const { return {energies_[edge], positions_[edge]}; }
  /// Edge indices sorted by increasing TomonoidWeight.
  const std::vector<int>& ascending() const { return ascending_; }

 private:
  int n_;
  EdgeOrder order_;
  std::vector<double> energies_;
  std::vector<int> positions_;
  std::vector<int> ascending_;
};

/// V(x_i - x_j) for every edge of K_n.
EdgeWeights edge_weights(const PairPotential& p, const Configuration& c,
                         EdgeOrder order = EdgeOrder::Lexicographic);

TomonoidWeight edge_weight(const PairPotential& p, const Configuration& c, Edge e,
                           EdgeOrder order = EdgeOrder::Lexicographic);

TomonoidSum tomonoid_sum(const EdgeSet& edges, const EdgeWeights& w);

/// Unique minimum spanning tree of g (Kruskal under the TomonoidWeight order).
Tree mst(const LabeledGraph& g, const EdgeWeights& w);
/// Same result by minimizing TomonoidSum over every spanning tree of g (n <= 6).
Tree mst_oracle(const LabeledGraph& g, const EdgeWeights& w);

/// Graph whose edges {i,j} weigh at least as much as every edge on the
/// tree path from i to j.
LabeledGraph build_M(const Tree& t, const EdgeWeights& w);

/// Tree edges with non-negative energy (+inf included).
EdgeSet positive_edges(const Tree& t, const EdgeWeights& w);

struct StabilityGap {
  double sum = 0.0;
  bool bound_ok = false;
};

/// Sum of V over E_{M(t)} \ E_t^+, checked against -B n.
StabilityGap stability_gap(const Tree& t, const EdgeWeights& w, double stability_constant);

struct PartitionCounterexample {
  std::uint64_t graph = 0;
  std::uint64_t tree = 0;
  std::uint64_t top = 0;
  std::string reason;
};

struct PartitionReport {
  int n = 0;
  bool passed = false;
  std::uint64_t connected_graphs = 0;
  /// Sum over trees of |[t, M(t)]|.
  std::uint64_t interval_total = 0;
  /// interval size -> number of trees with that size.
  std::map<std::uint64_t, std::uint64_t> interval_histogram;
  std::optional<PartitionCounterexample> counterexample;
};

/// Exhaustive check over every connected graph on [n] (2 <= n <= 7) that g
/// lies in [mst(g), M(mst(g))] and that the interval sizes add up to |G_n|.
/// Together these imply each graph lies in exactly one interval.
PartitionReport verify_partition(int n, const EdgeWeights& w, int threads = 1);

namespace detail {
/// Mask-level forms of mst and build_M for inner loops (no validation).
std::uint64_t kruskal_mask(int n, std::uint64_t graph, const EdgeWeights& w);
std::uint64_t interval_top_mask(int n, std::uint64_t tree, const EdgeWeights& w);
}  // namespace detail

}  // namespace clusterforge
