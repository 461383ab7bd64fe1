#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "doctest.h"

#include "clusterforge/rng.hpp"
#include "clusterforge/scheme.hpp"

using namespace clusterforge;

namespace {

EdgeSet edges_of(int n, std::initializer_list<std::pair<int, int>> one_based) {
  EdgeSet e(n, 0);
  for (auto [i, j] : one_based) e.insert(edge_index(n, i - 1, j - 1));
  return e;
}

EdgeWeights ties(int n, double v = 0.0) { return EdgeWeights(n, std::vector<double>(edge_count(n), v)); }

EdgeWeights random_weights(int n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<double> e(edge_count(n));
  for (double& x : e) x = rng.uniform(-1.0, 1.0);
  return EdgeWeights(n, std::move(e));
}

}  // namespace

TEST_CASE("tomonoid weight order") {
  CHECK(TomonoidWeight{-1.0, 3} < TomonoidWeight{0.0, 1});
  // equal value: earlier position is heavier
  CHECK(TomonoidWeight{0.5, 1} > TomonoidWeight{0.5, 2});
  CHECK(TomonoidWeight{kInfinity, 4} > TomonoidWeight{1e300, 1});
  CHECK(TomonoidWeight{kInfinity, 1} > TomonoidWeight{kInfinity, 2});

  const Configuration c(3, {0, 0, 0, 1, 0, 0, 0.2, 0, 0});
  const auto w = edge_weight(lennard_jones(), c, Edge{0, 1});
  CHECK(w.value == doctest::Approx(-1.0));
  CHECK(w.position == 1);
  CHECK(edge_weight(lennard_jones(), c, Edge{0, 2}).value > 1e6);
  CHECK(edge_weight(hard_sphere(), c, Edge{0, 2}).value == kInfinity);
}

TEST_CASE("tomonoid sums with infinite terms") {
  const EdgeWeights w(3, {kInfinity, kInfinity, 0.0});
  const auto a = tomonoid_sum(edges_of(3, {{1, 2}, {2, 3}}), w);
  const auto b = tomonoid_sum(edges_of(3, {{1, 3}, {2, 3}}), w);
  const auto c = tomonoid_sum(edges_of(3, {{1, 2}, {1, 3}}), w);
  CHECK(a.real_sum() == kInfinity);
  CHECK(c > a);
  // one infinite term each; the tree holding the earlier edge {1,2} is heavier
  CHECK(a > b);
}

TEST_CASE("edge weights reject invalid energies") {
  CHECK_THROWS(EdgeWeights(3, {0.0, std::nan(""), 1.0}));
  CHECK_THROWS(EdgeWeights(3, {0.0, -kInfinity, 1.0}));
  CHECK_THROWS(EdgeWeights(3, {0.0, 1.0}));
}

TEST_CASE("reverse order positions") {
  const EdgeWeights w(3, {0.0, 0.0, 0.0}, EdgeOrder::ReverseLexicographic);
  CHECK(w.position(0) == 3);
  CHECK(w.position(2) == 1);
}

TEST_CASE("mst triangle cases") {
  const LabeledGraph k3{EdgeSet::complete(3)};
  const EdgeWeights increasing(3, {-0.5, 0.1, 0.7});  // V12 < V13 < V23
  CHECK(mst(k3, increasing).edges() == edges_of(3, {{1, 2}, {1, 3}}));
  CHECK(mst_oracle(k3, increasing) == mst(k3, increasing));

  CHECK(mst(k3, ties(3)).edges() == edges_of(3, {{1, 3}, {2, 3}}));
  CHECK(mst_oracle(k3, ties(3)) == mst(k3, ties(3)));

  const LabeledGraph path{edges_of(3, {{1, 2}, {2, 3}})};
  CHECK(mst(path, increasing).edges() == path.edges);

  CHECK_THROWS(mst(LabeledGraph{edges_of(3, {{1, 2}})}, increasing));
}

TEST_CASE("mst of K_n with all ties is the star at the last vertex") {
  for (int n = 2; n <= 7; ++n) {
    EdgeSet star(n, 0);
    for (int i = 0; i < n - 1; ++i) star.insert(edge_index(n, i, n - 1));
    CHECK(mst(LabeledGraph{EdgeSet::complete(n)}, ties(n, -0.3)).edges() == star);
  }
}

TEST_CASE("mst equals the exhaustive oracle for n <= 5") {
  for (int n = 2; n <= 5; ++n) {
    std::vector<EdgeWeights> cases{ties(n), ties(n, kInfinity)};
    for (std::uint64_t s = 0; s < 3; ++s) cases.push_back(random_weights(n, 100 + s));
    cases.push_back(edge_weights(lennard_jones(8.61, 2), lattice_configuration(n, 2, 1.0)));
    cases.push_back(edge_weights(lennard_jones(), random_configuration(n, 3, 1.0, 9)));
    for (const auto& w : cases) {
      for (auto g : connected_masks(n)) {
        const LabeledGraph graph{EdgeSet(n, g)};
        REQUIRE(mst(graph, w) == mst_oracle(graph, w));
      }
    }
  }
}

TEST_CASE("mst of a tree is the tree") {
  const auto w = random_weights(6, 5);
  for (const Tree& t : enumerate_trees(6)) CHECK(mst(t.as_graph(), w) == t);
}

TEST_CASE("tree sums are pairwise distinct") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& w : {ties(n), random_weights(n, 3)}) {
      std::vector<TomonoidSum> sums;
      for (auto t : tree_masks(n)) sums.push_back(tomonoid_sum(EdgeSet(n, t), w));
      std::sort(sums.begin(), sums.end());
      for (std::size_t k = 1; k < sums.size(); ++k) CHECK(sums[k - 1] < sums[k]);
    }
  }
}

TEST_CASE("build_M examples") {
  const Tree star3(edges_of(3, {{1, 3}, {2, 3}}));
  const Tree star1(edges_of(3, {{1, 2}, {1, 3}}));
  CHECK(build_M(star3, ties(3)).edges == EdgeSet::complete(3));
  CHECK(build_M(star1, ties(3)).edges == star1.edges());

  // star at 1 with every non-tree edge heavier
  const EdgeWeights w(4, {-1.0, -1.0, -1.0, 0.5, 0.5, 0.5});
  const Tree star(edges_of(4, {{1, 2}, {1, 3}, {1, 4}}));
  CHECK(build_M(star, w).edges == EdgeSet::complete(4));

  const auto rw = random_weights(5, 77);
  for (const Tree& t : enumerate_trees(5)) CHECK(t.edges().subset_of(build_M(t, rw).edges));
}

TEST_CASE("positive edges") {
  const Tree path(edges_of(3, {{1, 2}, {2, 3}}));
  CHECK(positive_edges(path, EdgeWeights(3, {-1.0, 2.0, -0.5})).empty());
  CHECK(positive_edges(path, ties(3)) == path.edges());
  CHECK(positive_edges(path, EdgeWeights(3, {kInfinity, 0.0, -2.0})) == edges_of(3, {{1, 2}}));
}

TEST_CASE("stability gap") {
  const Tree edge(edges_of(2, {{1, 2}}));
  const auto g = stability_gap(edge, EdgeWeights(2, {-1.0}), 8.61);
  CHECK(g.sum == -1.0);
  CHECK(g.bound_ok);
  CHECK_FALSE(stability_gap(edge, EdgeWeights(2, {-20.0}), 8.61).bound_ok);

  const PairPotential lj = lennard_jones();
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto w = edge_weights(lj, random_configuration(6, 3, 1.0, s));
    for (const Tree& t : enumerate_trees(6)) REQUIRE(stability_gap(t, w, 8.61).bound_ok);
  }
  const auto hs = edge_weights(hard_sphere(), random_configuration(5, 3, 1.0, 3));
  for (const Tree& t : enumerate_trees(5)) CHECK(stability_gap(t, hs, 0.0).sum >= 0.0);
}

TEST_CASE("partition examples") {
  const auto r3 = verify_partition(3, ties(3));
  CHECK(r3.passed);
  CHECK(r3.connected_graphs == 4);
  CHECK(r3.interval_histogram.at(1) == 2);
  CHECK(r3.interval_histogram.at(2) == 1);

  const auto r2 = verify_partition(2, ties(2, -1.0));
  CHECK(r2.passed);
  CHECK(r2.interval_total == 1);
  CHECK_THROWS(verify_partition(8, ties(8)));
}

TEST_CASE("partition holds on random and degenerate configurations") {
  const PairPotential lj = lennard_jones();
  for (int n = 2; n <= 6; ++n) {
    std::vector<Configuration> cs{coincident_configuration(n, 3), lattice_configuration(n, 3, 1.0)};
    for (std::uint64_t s = 0; s < 5; ++s) cs.push_back(random_configuration(n, 3, 1.0, s));
    for (const auto& c : cs) {
      for (auto order : {EdgeOrder::Lexicographic, EdgeOrder::ReverseLexicographic}) {
        const auto r = verify_partition(n, edge_weights(lj, c, order), 2);
        CHECK(r.passed);
        CHECK(r.interval_total == connected_masks(n).size());
      }
    }
  }
  const auto hs = verify_partition(5, edge_weights(hard_sphere(), random_configuration(5, 3, 0.7, 1)));
  CHECK(hs.passed);
}

TEST_CASE("partition detects a broken scheme") {
  // Feeding Kruskal one order and the interval builder another must fail.
  const int n = 4;
  const auto w = random_weights(n, 11);
  std::vector<double> flipped = w.energies();
  for (double& x : flipped) x = -x;
  const EdgeWeights other(n, flipped);
  std::uint64_t total = 0;
  for (auto t : tree_masks(n)) total += std::uint64_t{1} << (std::popcount(detail::interval_top_mask(n, t, other)) - (n - 1));
  bool all_inside = true;
  for (auto g : connected_masks(n)) {
    const auto t = detail::kruskal_mask(n, g, w);
    all_inside = all_inside && (g & ~detail::interval_top_mask(n, t, other)) == 0;
  }
  CHECK_FALSE(all_inside);
  // the counting half alone still balances
  CHECK(total == connected_masks(n).size());
}
