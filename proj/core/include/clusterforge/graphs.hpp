#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace clusterforge {

/// Largest vertex count for which K_n fits the 64-bit edge mask (36 edges at n = 9).
inline constexpr int kMaxVertices = 9;
inline constexpr int kMaxConnectedVertices = 8;

/// Unordered pair {i, j} with 0-based i < j.
struct Edge {
  int i = 0;
  int j = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

constexpr int edge_count(int n) { return n * (n - 1) / 2; }

/// Position of {i, j} in the lexicographic edge order of K_n (0-based; the
/// 1-based position m(e) is edge_index + 1).
int edge_index(int n, int i, int j);
Edge edge_at(int n, int index);

/// Subset of E_n as a fixed-width bit vector: bit k is the k-th edge in
/// lexicographic order.
class EdgeSet {
 public:
  EdgeSet() = default;
  EdgeSet(int n, std::uint64_t bits);
  static EdgeSet complete(int n);
  static EdgeSet from_edges(int n, std::span<const Edge> edges);

  int vertex_count() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  bool contains(int index) const { return (bits_ >> index) & 1U; }
  bool contains(Edge e) const { return contains(edge_index(n_, e.i, e.j)); }
  void insert(int index) { bits_ |= std::uint64_t{1} << index; }
  void erase(int index) { bits_ &= ~(std::uint64_t{1} << index); }
  bool subset_of(const EdgeSet& other) const { return (bits_ & ~other.bits_) == 0; }
  std::vector<Edge> edges() const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

/// Graph on exactly the vertex set [n].
struct LabeledGraph {
  EdgeSet edges;
  int vertex_count() const { return edges.vertex_count(); }
  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;
};

/// Spanning tree on [n]; construction validates n - 1 edges and connectivity.
class Tree {
 public:
  explicit Tree(EdgeSet edges);
  const EdgeSet& edges() const { return edges_; }
  int vertex_count() const { return edges_.vertex_count(); }
  LabeledGraph as_graph() const { return LabeledGraph{edges_}; }
  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  EdgeSet edges_;
};

/// Human-readable edge list with 1-based labels, e.g. "{1,2},{2,3}".
std::string format_edges(const EdgeSet& edges);

bool is_connected(int n, std::uint64_t bits);
bool is_connected(const LabeledGraph& g);
bool is_tree(int n, std::uint64_t bits);

/// Visits every connected graph on [n] in increasing bit-vector order;
/// the mask range [first, last) restricts the scan for parallel partitioning.
void for_each_connected(int n, const std::function<void(std::uint64_t)>& visit);
void for_each_connected(int n, std::uint64_t first, std::uint64_t last,
                        const std::function<void(std::uint64_t)>& visit);

/// Cached list of connected-graph masks in increasing order (n <= 7).
const std::vector<std::uint64_t>& connected_masks(int n);

std::vector<LabeledGraph> enumerate_connected(int n);

/// Labeled trees on [n] via Pruefer decoding, sorted by bit vector (n <= 9).
/// The list is cached.
const std::vector<std::uint64_t>& tree_masks(int n);
std::vector<Tree> enumerate_trees(int n);

/// Pruefer code (0-based labels, length n - 2) of a tree and its inverse.
std::vector<int> prufer_encode(const Tree& t);
Tree prufer_decode(int n, std::span<const int> code);

/// Edges on the unique path from i to j through the tree, in path order.
std::vector<Edge> tree_path_edges(const Tree& t, int i, int j);

/// Number of graphs g with tree <= g <= top: 2^(|E_top| - (n - 1)).
std::uint64_t interval_size(const Tree& t, const LabeledGraph& top);

}  // namespace clusterforge
