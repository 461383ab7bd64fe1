#include "clusterforge/graphs.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <stdexcept>

namespace clusterforge {

namespace {

struct EdgeTable {
  std::array<Edge, edge_count(kMaxVertices)> edges{};
  std::array<std::array<int, kMaxVertices>, kMaxVertices> index{};
};

const EdgeTable& edge_table(int n) {
  static const auto tables = [] {
    std::array<EdgeTable, kMaxVertices + 1> t{};
    for (int m = 0; m <= kMaxVertices; ++m) {
      int k = 0;
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
          t[m].edges[k] = Edge{i, j};
          t[m].index[i][j] = k;
          t[m].index[j][i] = k;
          ++k;
        }
      }
    }
    return t;
  }();
  return tables[n];
}

void check_vertex_count(int n) {
  if (n < 1 || n > kMaxVertices) {
    throw std::out_of_range("vertex count " + std::to_string(n) + " outside [1, " +
                            std::to_string(kMaxVertices) + "]");
  }
}

std::uint64_t full_mask(int n) {
  int m = edge_count(n);
  return m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
}

/// Vertex-adjacency bitmasks of an edge mask.
std::array<std::uint32_t, kMaxVertices> adjacency(int n, std::uint64_t bits) {
  std::array<std::uint32_t, kMaxVertices> adj{};
  const auto& table = edge_table(n);
  while (bits) {
    int k = std::countr_zero(bits);
    bits &= bits - 1;
    const Edge e = table.edges[k];
    adj[e.i] |= 1U << e.j;
    adj[e.j] |= 1U << e.i;
  }
  return adj;
}

}  // namespace

int edge_index(int n, int i, int j) {
  check_vertex_count(n);
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
    throw std::out_of_range("invalid edge {" + std::to_string(i) + "," + std::to_string(j) + "}");
  }
  return edge_table(n).index[i][j];
}

Edge edge_at(int n, int index) {
  check_vertex_count(n);
  if (index < 0 || index >= edge_count(n)) throw std::out_of_range("edge index out of range");
  return edge_table(n).edges[index];
}

EdgeSet::EdgeSet(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  check_vertex_count(n);
  if ((bits & ~full_mask(n)) != 0) throw std::invalid_argument("edge bits exceed |E_n|");
}

EdgeSet EdgeSet::complete(int n) {
  check_vertex_count(n);
  return EdgeSet(n, full_mask(n));
}

EdgeSet EdgeSet::from_edges(int n, std::span<const Edge> edges) {
  EdgeSet s(n, 0);
  for (const Edge& e : edges) s.insert(edge_index(n, e.i, e.j));
  return s;
}

std::vector<Edge> EdgeSet::edges() const {
  std::vector<Edge> out;
  out.reserve(size());
  std::uint64_t b = bits_;
  while (b) {
    out.push_back(edge_table(n_).edges[std::countr_zero(b)]);
    b &= b - 1;
  }
  return out;
}

Tree::Tree(EdgeSet edges) : edges_(edges) {
  if (!is_tree(edges.vertex_count(), edges.bits())) {
    throw std::invalid_argument("edge set " + format_edges(edges) + " is not a spanning tree");
  }
}

std::string format_edges(const EdgeSet& edges) {
  std::string out;
  for (const Edge& e : edges.edges()) {
    if (!out.empty()) out += ',';
    out += '{' + std::to_string(e.i + 1) + ',' + std::to_string(e.j + 1) + '}';
  }
  return out;
}

bool is_connected(int n, std::uint64_t bits) {
  check_vertex_count(n);
  if (n == 1) return true;
  const auto adj = adjacency(n, bits);
  const std::uint32_t all = (1U << n) - 1;
  std::uint32_t seen = 1U;
  std::uint32_t frontier = 1U;
  while (frontier) {
    std::uint32_t next = 0;
    while (frontier) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      next |= adj[v];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == all;
}

bool is_connected(const LabeledGraph& g) { return is_connected(g.vertex_count(), g.edges.bits()); }

bool is_tree(int n, std::uint64_t bits) {
  return std::popcount(bits) == n - 1 && is_connected(n, bits);
}

void for_each_connected(int n, std::uint64_t first, std::uint64_t last,
                        const std::function<void(std::uint64_t)>& visit) {
  if (n < 2 || n > kMaxConnectedVertices) {
    throw std::out_of_range("connected-graph enumeration supports 2 <= n <= " +
                            std::to_string(kMaxConnectedVertices));
  }
  last = std::min(last, full_mask(n) + 1);
  // A connected graph needs at least n - 1 edges.
  for (std::uint64_t mask = first; mask < last; ++mask) {
    if (std::popcount(mask) >= n - 1 && is_connected(n, mask)) visit(mask);
  }
}

void for_each_connected(int n, const std::function<void(std::uint64_t)>& visit) {
  for_each_connected(n, 0, ~std::uint64_t{0}, visit);
}

const std::vector<std::uint64_t>& connected_masks(int n) {
  if (n < 2 || n > 7) throw std::out_of_range("cached connected-graph list supports 2 <= n <= 7");
  static std::array<std::vector<std::uint64_t>, 8> cache;
  static std::array<std::once_flag, 8> once;
  std::call_once(once[n], [n] {
    for_each_connected(n, [n](std::uint64_t m) { cache[n].push_back(m); });
  });
  return cache[n];
}

std::vector<LabeledGraph> enumerate_connected(int n) {
  std::vector<LabeledGraph> out;
  for_each_connected(n, [&](std::uint64_t m) { out.push_back(LabeledGraph{EdgeSet(n, m)}); });
  return out;
}

Tree prufer_decode(int n, std::span<const int> code) {
  check_vertex_count(n);
  if (n < 2) throw std::invalid_argument("trees need n >= 2");
  if (static_cast<int>(code.size()) != n - 2) throw std::invalid_argument("Pruefer code must have length n - 2");
  std::array<int, kMaxVertices> degree{};
  for (int v = 0; v < n; ++v) degree[v] = 1;
  for (int v : code) {
    if (v < 0 || v >= n) throw std::out_of_range("Pruefer label out of range");
    ++degree[v];
  }
  std::uint64_t bits = 0;
  for (int v : code) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    bits |= std::uint64_t{1} << edge_table(n).index[leaf][v];
    --degree[leaf];
    --degree[v];
  }
  int u = -1;
  int w = -1;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) (u < 0 ? u : w) = v;
  }
  bits |= std::uint64_t{1} << edge_table(n).index[u][w];
  return Tree(EdgeSet(n, bits));
}

std::vector<int> prufer_encode(const Tree& t) {
  const int n = t.vertex_count();
  auto adj = adjacency(n, t.edges().bits());
  std::vector<int> code;
  code.reserve(std::max(0, n - 2));
  for (int step = 0; step < n - 2; ++step) {
    int leaf = 0;
    while (std::popcount(adj[leaf]) != 1) ++leaf;
    int parent = std::countr_zero(adj[leaf]);
    code.push_back(parent);
    adj[leaf] = 0;
    adj[parent] &= ~(1U << leaf);
  }
  return code;
}

const std::vector<std::uint64_t>& tree_masks(int n) {
  if (n < 2 || n > kMaxVertices) {
    throw std::out_of_range("tree enumeration supports 2 <= n <= " + std::to_string(kMaxVertices));
  }
  static std::array<std::vector<std::uint64_t>, kMaxVertices + 1> cache;
  static std::array<std::once_flag, kMaxVertices + 1> once;
  std::call_once(once[n], [n] {
    auto& out = cache[n];
    std::vector<int> code(static_cast<std::size_t>(n - 2), 0);
    while (true) {
      out.push_back(prufer_decode(n, code).edges().bits());
      int pos = n - 3;
      while (pos >= 0 && code[pos] == n - 1) code[pos--] = 0;
      if (pos < 0) break;
      ++code[pos];
    }
    std::sort(out.begin(), out.end());
  });
  return cache[n];
}

std::vector<Tree> enumerate_trees(int n) {
  std::vector<Tree> out;
  const auto& masks = tree_masks(n);
  out.reserve(masks.size());
  for (std::uint64_t m : masks) out.emplace_back(EdgeSet(n, m));
  return out;
}

std::vector<Edge> tree_path_edges(const Tree& t, int i, int j) {
  const int n = t.vertex_count();
  if (i == j) throw std::invalid_argument("tree_path_edges needs distinct endpoints");
  if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("vertex out of range");
  const auto adj = adjacency(n, t.edges().bits());
  std::array<int, kMaxVertices> parent{};
  parent.fill(-1);
  parent[i] = i;
  std::array<int, kMaxVertices> queue{};
  int head = 0;
  int tail = 0;
  queue[tail++] = i;
  while (head < tail) {
    int v = queue[head++];
    std::uint32_t nb = adj[v];
    while (nb) {
      int w = std::countr_zero(nb);
      nb &= nb - 1;
      if (parent[w] < 0) {
        parent[w] = v;
        queue[tail++] = w;
      }
    }
  }
  std::vector<Edge> path;
  for (int v = j; v != i; v = parent[v]) {
    int p = parent[v];
    path.push_back(Edge{std::min(p, v), std::max(p, v)});
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::uint64_t interval_size(const Tree& t, const LabeledGraph& top) {
  if (t.vertex_count() != top.vertex_count() || !t.edges().subset_of(top.edges)) {
    throw std::invalid_argument("interval_size: tree is not a subgraph of the top graph");
  }
  return std::uint64_t{1} << (top.edges.size() - (t.vertex_count() - 1));
}

}  // namespace clusterforge
