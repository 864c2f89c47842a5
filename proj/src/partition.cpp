#include "mfembed/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfembed/errors.hpp"

namespace mfembed {

TieBreakOrder TieBreakOrder::identity(int n) {
  std::vector<Vertex> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), 0);
  return from_sequence(std::move(seq));
}

TieBreakOrder TieBreakOrder::from_sequence(std::vector<Vertex> order) {
  TieBreakOrder t;
  t.rank_.assign(order.size(), -1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Vertex v = order[k];
    if (v < 0 || static_cast<std::size_t>(v) >= order.size() || t.rank_[v] >= 0) {
      throw InvalidPartition("tie-break order is not a permutation");
    }
    t.rank_[v] = static_cast<int>(k);
  }
  t.order_ = std::move(order);
  return t;
}

double sample_exponential(double u) { return -std::log(u); }

double sample_exponential(Rng& rng) { return sample_exponential(rng.uniform_open_closed()); }

Clustering single_level_partition(const WeightedGraph& g, double r, const TieBreakOrder& order, Rng& rng) {
  return single_level_partition(g, r, order, [&rng] { return sample_exponential(rng); });
}

Clustering single_level_partition(const WeightedGraph& g, double r, const TieBreakOrder& order,
                                  const RadiusSource& radius_source) {
  return single_level_partition(g, r, order, radius_source, diameter(g));
}

Clustering single_level_partition(const WeightedGraph& g, double r, const TieBreakOrder& order,
                                  const RadiusSource& radius_source, double known_diameter) {
  const int n = g.vertex_count();
  if (!(r > 0.0)) throw PreconditionViolation("radius must be positive");
  if (order.size() != n) throw PreconditionViolation("tie-break order size mismatch");
  if (n == 0) return Clustering{r, {}, {}, {}, {}, {}};

  Clustering c;
  c.base_radius = r;
  c.assignment.assign(static_cast<std::size_t>(n), -1);

  if (r >= known_diameter) {
    c.clusters.emplace_back(static_cast<std::size_t>(n));
    std::iota(c.clusters[0].begin(), c.clusters[0].end(), 0);
    c.centers.push_back(order.sequence().front());
    c.samples.push_back(0.0);
    c.radii.push_back(r);
    std::fill(c.assignment.begin(), c.assignment.end(), 0);
    return c;
  }

  std::vector<char> free_mask(static_cast<std::size_t>(n), 1);
  std::size_t cursor = 0;
  const auto seq = order.sequence();
  int remaining = n;
  while (remaining > 0) {
    while (!free_mask[seq[cursor]]) ++cursor;
    const Vertex center = seq[cursor];
    const double x = radius_source();
    const double radius = r * (1.0 + x);
    const auto dist = dijkstra_within(g, center, free_mask, radius);

    const int id = static_cast<int>(c.clusters.size());
    std::vector<Vertex> members;
    for (Vertex v = 0; v < n; ++v) {
      if (free_mask[v] && dist[v] <= radius) members.push_back(v);
    }
    for (Vertex v : members) {
      free_mask[v] = 0;
      c.assignment[v] = id;
    }
    remaining -= static_cast<int>(members.size());
    c.clusters.push_back(std::move(members));
    c.centers.push_back(center);
    c.samples.push_back(x);
    c.radii.push_back(radius);
  }
  return c;
}

std::size_t count_cut_edges(const WeightedGraph& g, std::span<const Vertex> path,
                            std::span<const int> assignment) {
  std::size_t cut = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!g.find_edge(path[i], path[i + 1])) throw EdgeNotInGraph(path[i], path[i + 1]);
    if (assignment[path[i]] != assignment[path[i + 1]]) ++cut;
  }
  return cut;
}

std::size_t count_cut_edges(const WeightedGraph& g, std::span<const Vertex> path, const Clustering& c) {
  return count_cut_edges(g, path, c.assignment);
}

}  // namespace mfembed
