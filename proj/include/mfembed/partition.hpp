#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mfembed/graph.hpp"
#include "mfembed/rng.hpp"

namespace mfembed {

// Total order used to pick the next carving center.
class TieBreakOrder {
 public:
  // Ascending vertex id.
  static TieBreakOrder identity(int n);
  // order[k] is the k-th smallest vertex; throws InvalidPartition unless a permutation.
  static TieBreakOrder from_sequence(std::vector<Vertex> order);

  int size() const noexcept { return static_cast<int>(order_.size()); }
  std::span<const Vertex> sequence() const noexcept { return order_; }
  int rank(Vertex v) const { return rank_[v]; }

 private:
  std::vector<Vertex> order_;
  std::vector<int> rank_;
};

// One level of ball carving over a connected graph.
struct Clustering {
  double base_radius = 0.0;
  // Clusters in creation order; each sorted ascending.
  std::vector<std::vector<Vertex>> clusters;
  std::vector<Vertex> centers;
  std::vector<double> samples;  // X_v per cluster
  std::vector<double> radii;    // base_radius * (1 + X_v)
  std::vector<int> assignment;  // vertex -> cluster index

  std::size_t size() const noexcept { return clusters.size(); }
  VertexPartition partition() const { return {clusters}; }
};

// Source of the Exp(1) offsets X_v, one call per created cluster.
using RadiusSource = std::function<double()>;

// Inverse CDF of Exp(1): -ln(u) for u in (0, 1].
double sample_exponential(double u);
double sample_exponential(Rng& rng);

// Randomized ball carving: repeatedly take the order-minimal free vertex v,
// draw r_v = r (1 + X_v) and carve every free vertex within distance r_v of v
// in the subgraph induced by the free vertices. Returns the single cluster V
// when r >= diameter. Throws DisconnectedGraph / PreconditionViolation.
Clustering single_level_partition(const WeightedGraph& g, double r, const TieBreakOrder& order, Rng& rng);
Clustering single_level_partition(const WeightedGraph& g, double r, const TieBreakOrder& order,
                                  const RadiusSource& radius_source);

// Same, with the diameter of g supplied by the caller.
Clustering single_level_partition(const WeightedGraph& g, double r, const TieBreakOrder& order,
                                  const RadiusSource& radius_source, double known_diameter);

// Number of consecutive path edges whose endpoints lie in different parts.
// path is a vertex sequence; throws EdgeNotInGraph.
std::size_t count_cut_edges(const WeightedGraph& g, std::span<const Vertex> path,
                            std::span<const int> assignment);
std::size_t count_cut_edges(const WeightedGraph& g, std::span<const Vertex> path, const Clustering& c);

}  // namespace mfembed
