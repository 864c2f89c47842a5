#include <cmath>

#include "doctest.h"
#include "mfembed/errors.hpp"
#include "mfembed/partition.hpp"
#include "oracles.hpp"

using namespace mfembed;

namespace {

WeightedGraph path5() {
  return WeightedGraph::from_edges(5, {{0, 1, 1.1}, {1, 2, 1.1}, {2, 3, 1.1}, {3, 4, 1.1}});
}

// Replays the carving definition against a finished clustering.
void check_carving(const WeightedGraph& g, const Clustering& c, const TieBreakOrder& order) {
  const int n = g.vertex_count();
  std::vector<char> free(static_cast<std::size_t>(n), 1);
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Vertex center = c.centers[k];
    for (Vertex v = 0; v < n; ++v) {
      if (free[v]) CHECK(order.rank(center) <= order.rank(v));
    }
    // Distances inside the free-induced subgraph.
    std::vector<Vertex> alive;
    for (Vertex v = 0; v < n; ++v) {
      if (free[v]) alive.push_back(v);
    }
    const auto sub = induced_subgraph(g, alive);
    const auto local = std::find(alive.begin(), alive.end(), center) - alive.begin();
    const auto fw = oracle::floyd_warshall(sub.graph);
    std::vector<Vertex> expect;
    for (std::size_t i = 0; i < alive.size(); ++i) {
      if (fw[local][i] <= c.radii[k]) expect.push_back(alive[i]);
    }
    CHECK(c.clusters[k] == expect);
    CHECK(induced_diameter(g, c.clusters[k]) < kInfinity);
    for (Vertex v : c.clusters[k]) {
      CHECK_FALSE(covered[v]);
      covered[v] = 1;
      free[v] = 0;
      CHECK(c.assignment[v] == static_cast<int>(k));
    }
  }
  for (Vertex v = 0; v < n; ++v) CHECK(covered[v]);
}

}  // namespace

TEST_SUITE("partition") {
  TEST_CASE("exponential samples") {
    CHECK(sample_exponential(1.0) == 0.0);
    CHECK(sample_exponential(std::exp(-1.0)) == doctest::Approx(1.0));
    Rng rng(2024);
    double sum = 0.0;
    constexpr int kDraws = 100000;
    for (int i = 0; i < kDraws; ++i) {
      const double x = sample_exponential(rng);
      CHECK(x >= 0.0);
      sum += x;
    }
    CHECK(std::abs(sum / kDraws - 1.0) <= 0.02);
  }

  TEST_CASE("single vertex and large radius") {
    Rng rng(1);
    const auto one = single_level_partition(WeightedGraph::from_edges(1, {}), 0.5, TieBreakOrder::identity(1), rng);
    REQUIRE(one.size() == 1);
    CHECK(one.clusters[0] == std::vector<Vertex>{0});

    const auto g = path5();
    const auto whole = single_level_partition(g, 4.4, TieBreakOrder::identity(5), rng);
    REQUIRE(whole.size() == 1);
    CHECK(whole.clusters[0].size() == 5);
    CHECK(count_cut_edges(g, std::vector<Vertex>{0, 1, 2, 3, 4}, whole) == 0);
  }

  TEST_CASE("five-path with zero offsets") {
    const auto g = path5();
    const auto c = single_level_partition(g, 1.2, TieBreakOrder::identity(5), [] { return 0.0; });
    REQUIRE(c.size() == 3);
    CHECK(c.clusters[0] == std::vector<Vertex>{0, 1});
    CHECK(c.clusters[1] == std::vector<Vertex>{2, 3});
    CHECK(c.clusters[2] == std::vector<Vertex>{4});
    CHECK(c.centers == std::vector<Vertex>{0, 2, 4});
    CHECK(count_cut_edges(g, std::vector<Vertex>{0, 1, 2, 3, 4}, c) == 2);
  }

  TEST_CASE("ties at exactly the radius are included") {
    const auto g = WeightedGraph::from_edges(3, {{0, 1, 1.5}, {1, 2, 1.5}});
    const auto c = single_level_partition(g, 1.5, TieBreakOrder::identity(3), [] { return 0.0; });
    CHECK(c.clusters[0] == std::vector<Vertex>{0, 1});
  }

  TEST_CASE("discrete clustering cuts every path edge") {
    const auto g = path5();
    const std::vector<int> discrete{0, 1, 2, 3, 4};
    CHECK(count_cut_edges(g, std::vector<Vertex>{0, 1, 2, 3, 4}, discrete) == 4);
    CHECK_THROWS_AS(count_cut_edges(g, std::vector<Vertex>{0, 2}, discrete), EdgeNotInGraph);
  }

  TEST_CASE("custom order changes the first center") {
    const auto g = path5();
    const auto order = TieBreakOrder::from_sequence({4, 3, 2, 1, 0});
    const auto c = single_level_partition(g, 1.2, order, [] { return 0.0; });
    CHECK(c.centers.front() == 4);
    CHECK(c.clusters.front() == std::vector<Vertex>{3, 4});
    CHECK_THROWS_AS(TieBreakOrder::from_sequence({0, 0, 1}), InvalidPartition);
  }

  TEST_CASE("carving invariants and determinism on random grids") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto g = generate({GraphKind::grid, 5, 5, 1}, WeightModel::uniform(1.0, 3.0), seed);
      const auto order = TieBreakOrder::identity(g.vertex_count());
      Rng a(seed);
      Rng b(seed);
      const auto c = single_level_partition(g, 1.0 + static_cast<double>(seed % 4), order, a);
      const auto d = single_level_partition(g, 1.0 + static_cast<double>(seed % 4), order, b);
      CHECK(c.clusters == d.clusters);
      CHECK(c.radii == d.radii);
      check_carving(g, c, order);
    }
  }

  TEST_CASE("errors") {
    Rng rng(0);
    const auto split = WeightedGraph::from_edges(2, {});
    CHECK_THROWS_AS(single_level_partition(split, 1.0, TieBreakOrder::identity(2), rng), DisconnectedGraph);
    CHECK_THROWS_AS(single_level_partition(path5(), 0.0, TieBreakOrder::identity(5), rng), PreconditionViolation);
  }
}
