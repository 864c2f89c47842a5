#include <numeric>

#include "doctest.h"
#include "mfembed/cutpack.hpp"
#include "mfembed/errors.hpp"
#include "oracles.hpp"

using namespace mfembed;

namespace {

SimpleGraph simple(int n, std::vector<std::pair<int, int>> edges) {
  SimpleGraph h(n);
  for (auto [a, b] : edges) h.add_edge(a, b);
  h.finalize();
  return h;
}

SimpleGraph random_simple(int n, double p, Rng& rng) {
  SimpleGraph h(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (rng.uniform01() < p) h.add_edge(a, b);
    }
  }
  h.finalize();
  return h;
}

ClusteringChain chain_for(const WeightedGraph& g, std::uint64_t seed) {
  for (std::uint64_t k = 0;; ++k) {
    Rng rng(mix_seed(seed, k));
    auto r = build_chain(g, {0.2}, rng);
    if (auto* c = std::get_if<ClusteringChain>(&r)) return *c;
  }
}

WeightedGraph star(int leaves, double len) {
  std::vector<Edge> edges;
  for (int k = 1; k <= leaves; ++k) edges.push_back({0, k, len});
  return WeightedGraph::from_edges(leaves + 1, edges);
}

}  // namespace

TEST_SUITE("cutpack") {
  TEST_CASE("cut_edges") {
    const auto path = WeightedGraph::from_edges(4, {{0, 1, 2}, {1, 2, 2}, {2, 3, 2}});
    Cut whole{{CutMember{2, 0, {0, 1, 2, 3}, 0}}};
    CHECK(cut_edges(path, whole).empty());
    Cut middle{{CutMember{0, 1, {1}, 1}}};
    CHECK(cut_edges(path, middle) == std::vector<std::size_t>{0, 1});
    CHECK(cut_edges(path, Cut{}).empty());
  }

  TEST_CASE("tree decomposition widths") {
    const auto tree = simple(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    const auto k4 = simple(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    const auto c4 = simple(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    for (const auto* h : {&tree, &k4, &c4}) CHECK(is_valid_tree_decomposition(*h, heuristic_tree_decomposition(*h)));
    CHECK(heuristic_tree_decomposition(tree).width() == 1);
    CHECK(heuristic_tree_decomposition(k4).width() == 3);
    CHECK(heuristic_tree_decomposition(c4).width() == 2);
    CHECK(oracle::exact_treewidth(tree) == 1);
    CHECK(oracle::exact_treewidth(k4) == 3);
    CHECK(oracle::exact_treewidth(c4) == 2);
  }

  TEST_CASE("decompositions are valid and near the exact treewidth") {
    Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + static_cast<int>(rng.below(8));
      const auto h = random_simple(n, 0.2 + 0.6 * rng.uniform01(), rng);
      const auto td = heuristic_tree_decomposition(h);
      REQUIRE(is_valid_tree_decomposition(h, td));
      const int exact = oracle::exact_treewidth(h);
      CHECK(td.width() >= exact);
      CHECK(td.width() <= exact + 2);
    }
  }

  TEST_CASE("validity checker rejects broken decompositions") {
    const auto c4 = simple(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    TreeDecomposition missing{{{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {1, 2}}};
    CHECK_FALSE(is_valid_tree_decomposition(c4, missing));
    TreeDecomposition split{{{0, 1, 3}, {1, 2}, {2, 3}}, {{0, 1}, {1, 2}}};
    CHECK_FALSE(is_valid_tree_decomposition(c4, split));
  }

  TEST_CASE("centroid bags") {
    const auto one = simple(1, {});
    const auto td1 = heuristic_tree_decomposition(one);
    const std::vector<double> w1{1.0};
    CHECK(centroid_bag(one, td1, w1) == 0);

    const auto p5 = simple(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    const TreeDecomposition pd{{{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {{0, 1}, {1, 2}, {2, 3}}};
    const std::vector<double> unit(5, 1.0);
    const int x = centroid_bag(p5, pd, unit);
    // Brute force: bags {1,2} and {2,3} leave components of size <= 2.
    CHECK((x == 1 || x == 2));

    const auto k15 = simple(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    const auto tds = heuristic_tree_decomposition(k15);
    const std::vector<double> w6(6, 1.0);
    const int y = centroid_bag(k15, tds, w6);
    CHECK(std::binary_search(tds.bags[y].begin(), tds.bags[y].end(), 0));
  }

  TEST_CASE("star: the center singleton is the only single-cluster balanced cut") {
    const auto g = star(6, 1.5);
    const auto chain = chain_for(g, 3);
    const auto cuts = oracle::balanced_chain_cuts(g, chain);
    std::vector<std::vector<std::vector<Vertex>>> singles;
    for (const auto& c : cuts) {
      if (c.size() == 1 && c[0].size() < 7) singles.push_back(c);
    }
    REQUIRE(singles.size() == 1);
    CHECK(singles[0][0] == std::vector<Vertex>{0});

    // Empty packing contracts everything to {V}; once {V} is used the center is chosen.
    const auto first = find_balanced_cut(g, chain, {}, 10);
    CHECK(first.cut.vertex_sets() == std::vector<std::vector<Vertex>>{{0, 1, 2, 3, 4, 5, 6}});
    const auto second = find_balanced_cut(g, chain, CutPacking{{first.cut}}, 10);
    const auto second_sets = second.cut.vertex_sets();
    CHECK(second_sets.front() == std::vector<Vertex>{0});
    CHECK(is_balanced(g, second.cut));

    const auto packed = build_cut_packing(g, chain, 4, 10);
    CHECK(packed.discarded_whole);
    CHECK(is_cut_packing(g, chain, packed.packing));
    for (const auto& cut : packed.packing.cuts) {
      CHECK(is_balanced(g, cut));
      const auto sets = cut.vertex_sets();
      CHECK(std::find(sets.begin(), sets.end(), std::vector<Vertex>{0}) != sets.end());
    }
  }

  TEST_CASE("two vertices") {
    const auto g = WeightedGraph::from_edges(2, {{0, 1, 2.0}});
    const auto chain = chain_for(g, 0);
    const auto packed = build_cut_packing(g, chain, 1, 1);
    REQUIRE_FALSE(packed.packing.cuts.empty());
    for (const auto& cut : packed.packing.cuts) {
      CHECK(cut.size() == 1);
      CHECK(cut.members[0].vertices.size() == 1);
      CHECK(cut_edges(g, cut).size() == 1);
    }
    CHECK_THROWS_AS(build_cut_packing(g, chain, 0, 1), PreconditionViolation);
  }

  TEST_CASE("predicates") {
    const auto path = WeightedGraph::from_edges(4, {{0, 1, 2}, {1, 2, 2}, {2, 3, 2}});
    CHECK(is_balanced(path, Cut{{CutMember{0, 1, {1}, 1}}}));
    CHECK_FALSE(is_balanced(path, Cut{{CutMember{0, 0, {0}, 0}}}));
    CHECK_FALSE(is_cut(path, Cut{{CutMember{0, 0, {0, 2}, 0}}}));
    const Cut a{{CutMember{1, 0, {0, 1}, 0}}};
    const Cut b{{CutMember{1, 0, {0, 1}, 0}, CutMember{0, 3, {3}, 3}}};
    const Cut c{{CutMember{0, 0, {0}, 0}, CutMember{0, 3, {3}, 3}}};
    CHECK_FALSE(non_conflicting(a, b));
    CHECK(non_conflicting(b, c));
  }

  TEST_CASE("balanced cuts match the brute-force oracle on small graphs") {
    Rng rng(8);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(7));
      std::vector<Edge> edges;
      for (int v = 1; v < n; ++v) edges.push_back({static_cast<Vertex>(rng.below(v)), v, 1.5 + rng.uniform01()});
      for (int extra = 0; extra < n / 2; ++extra) {
        const auto a = static_cast<Vertex>(rng.below(n));
        const auto b = static_cast<Vertex>(rng.below(n));
        if (a != b) edges.push_back({a, b, 1.5 + rng.uniform01()});
      }
      const auto g = metric_closure_weights(WeightedGraph::from_edges(n, edges));
      const auto chain = chain_for(g, static_cast<std::uint64_t>(trial));
      const auto all = oracle::balanced_chain_cuts(g, chain);
      const auto packed = build_cut_packing(g, chain, 6, 100);
      CHECK(is_cut_packing(g, chain, packed.packing));
      for (const auto& cut : packed.packing.cuts) {
        CHECK(all.contains(cut.vertex_sets()));
        CHECK(respects_chain(cut, chain));
      }
    }
  }

  TEST_CASE("cluster forest deduplicates repeated vertex sets") {
    const auto g = WeightedGraph::from_edges(2, {{0, 1, 1.5}});
    const auto chain = chain_for(g, 0);
    const auto forest = cluster_forest(chain);
    REQUIRE(forest.size() == 3);
    CHECK(forest[0].parent == -1);
    CHECK(forest[0].children.size() == 2);
  }
}
