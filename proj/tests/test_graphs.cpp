#include <numeric>
#include <set>

#include "doctest.h"

#include "clusterforge/graphs.hpp"

using namespace clusterforge;

namespace {

// Union-find over an explicit edge list, independent of the library's BFS.
bool connected_by_union_find(int n, std::uint64_t mask) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) {
      if (!((mask >> k) & 1)) continue;
      const int a = find(i);
      const int b = find(j);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components == 1;
}

std::uint64_t count_by_oracle(int n) {
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << edge_count(n);
  for (std::uint64_t m = 0; m < total; ++m) count += connected_by_union_find(n, m);
  return count;
}

}  // namespace

TEST_CASE("edge indexing is lexicographic") {
  CHECK(edge_index(4, 0, 1) == 0);
  CHECK(edge_index(4, 0, 3) == 2);
  CHECK(edge_index(4, 1, 2) == 3);
  CHECK(edge_index(4, 2, 3) == 5);
  CHECK(edge_index(4, 3, 2) == 5);
  for (int n = 2; n <= kMaxVertices; ++n) {
    for (int k = 0; k < edge_count(n); ++k) {
      const Edge e = edge_at(n, k);
      CHECK(e.i < e.j);
      CHECK(edge_index(n, e.i, e.j) == k);
    }
  }
}

TEST_CASE("connected graph counts match the union-find oracle") {
  const std::vector<std::uint64_t> expected{1, 4, 38, 728, 26704};
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(connected_masks(n).size() == expected[n - 2]);
    CHECK(count_by_oracle(n) == expected[n - 2]);
  }
  CHECK(connected_masks(7).size() == 1866256);
}

TEST_CASE("every enumerated graph is connected and distinct") {
  for (int n = 2; n <= 5; ++n) {
    const auto& masks = connected_masks(n);
    CHECK(std::set<std::uint64_t>(masks.begin(), masks.end()).size() == masks.size());
    for (auto m : masks) CHECK(connected_by_union_find(n, m));
  }
}

TEST_CASE("tree counts follow Cayley") {
  for (int n = 2; n <= 8; ++n) {
    CAPTURE(n);
    std::uint64_t cayley = 1;
    for (int k = 0; k < n - 2; ++k) cayley *= n;
    CHECK(tree_masks(n).size() == cayley);
    for (auto m : tree_masks(n)) {
      REQUIRE(is_tree(n, m));
      REQUIRE(connected_by_union_find(n, m));
    }
  }
}

TEST_CASE("prufer round trip") {
  for (int n = 2; n <= 7; ++n) {
    for (const Tree& t : enumerate_trees(n)) {
      const auto code = prufer_encode(t);
      REQUIRE(static_cast<int>(code.size()) == n - 2);
      CHECK(prufer_decode(n, code) == t);
    }
  }
  // The path 1-2-3-4 has code (2, 3) in 1-based labels.
  const std::vector<int> code{1, 2};
  const Tree path = prufer_decode(4, code);
  CHECK(format_edges(path.edges()) == "{1,2},{2,3},{3,4}");
  const std::vector<int> bad{0, 9};
  CHECK_THROWS(prufer_decode(4, bad));
}

TEST_CASE("tree construction validates") {
  CHECK_NOTHROW(Tree(EdgeSet(4, 0b000111)));  // star at 1
  CHECK_NOTHROW(Tree(EdgeSet(4, 0b100011)));
  CHECK_THROWS(Tree(EdgeSet(4, 0b001011)));  // triangle 1,2,3 leaves 4 isolated
  CHECK_THROWS(Tree(EdgeSet(4, 0b000011)));
}

TEST_CASE("tree paths and intervals") {
  // path 1-2-3-4
  EdgeSet e(4, 0);
  e.insert(edge_index(4, 0, 1));
  e.insert(edge_index(4, 1, 2));
  e.insert(edge_index(4, 2, 3));
  const Tree t(e);
  const auto p = tree_path_edges(t, 0, 3);
  REQUIRE(p.size() == 3);
  CHECK(p.front() == Edge{0, 1});
  CHECK(p.back() == Edge{2, 3});
  CHECK(tree_path_edges(t, 2, 1).size() == 1);

  CHECK(interval_size(t, LabeledGraph{EdgeSet::complete(4)}) == 8);
  CHECK(interval_size(t, t.as_graph()) == 1);
  CHECK_THROWS(interval_size(t, LabeledGraph{EdgeSet(4, 1)}));
}

TEST_CASE("connectivity helper") {
  CHECK(is_connected(3, 0b011));
  CHECK_FALSE(is_connected(3, 0b001));
  CHECK_FALSE(is_connected(4, 0b100001));
  CHECK(EdgeSet::complete(5).size() == 10);
}
