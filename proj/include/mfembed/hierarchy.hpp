#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mfembed/graph.hpp"
#include "mfembed/rng.hpp"

namespace mfembed {

struct ChainCluster {
  std::vector<Vertex> vertices;  // sorted
  Vertex center = 0;
  int parent = -1;  // index into the next level; -1 at the top
};

// Nested partitions levels[0] (singletons) ... levels[top_level] ({V}).
struct ClusteringChain {
  int top_level = 0;
  double delta = 0.0;
  double sigma = 0.0;                  // quotient-diameter bound used for goodness
  std::vector<double> radii;           // radii[i] = r_i (radii[0] only used in literal mode)
  std::vector<std::vector<ChainCluster>> levels;
  std::vector<std::vector<int>> assignment;  // assignment[i][v] = cluster index at level i

  int vertex_count() const { return levels.empty() ? 0 : static_cast<int>(assignment[0].size()); }
};

enum class FailureReason { DiameterExceeded, QuotientDiameterExceeded, NonSingletonLevel0 };

const char* to_string(FailureReason r);

struct ChainFailure {
  int level = 0;    // level of the offending cluster
  FailureReason reason = FailureReason::DiameterExceeded;
  int cluster = 0;  // index at that level
};

struct ChainOptions {
  double delta = 0.1;
  // Run the partitioner with r_0 at level 0 instead of setting singletons.
  bool literal_level0 = false;
};

using ChainResult = std::variant<ClusteringChain, ChainFailure>;

// ln(2 l n^2 / delta) + 1
double chain_log_term(int ell, int n, double delta);
// r_i = 2^(i-1) / (ln(2 l n^2 / delta) + 1)
double chain_radius(int level, int ell, int n, double delta);
// sigma = 480 (ln(2 l n^2 / delta) + 1)^2
double quotient_diameter_bound(int ell, int n, double delta);

// Least L >= 1 with diameter <= 2^L (requires diameter > 1 for L's lower bound).
int top_level_for_diameter(double diameter);

// Builds the chain top-down and verifies goodness; never returns an un-good chain.
// Cluster j of level i+1 is partitioned with the stream rng.fork(i, j).
// Throws PreconditionViolation if some distance is <= 1, DisconnectedGraph.
ChainResult build_chain(const WeightedGraph& g, const ChainOptions& options, Rng& rng);

// Largest i with endpoints in different parts of level i; throws EdgeNotInGraph.
int edge_level(const WeightedGraph& g, const ClusteringChain& chain, Vertex u, Vertex v);

// Histogram of edge levels along a vertex path, indexed 0..top_level-1.
std::vector<std::size_t> level_cut_counts(const WeightedGraph& g, const ClusteringChain& chain,
                                          std::span<const Vertex> path);

// Exact recomputation of goodness (Q1 cluster diameters, Q2 quotient diameters).
std::optional<ChainFailure> check_goodness(const WeightedGraph& g, const ClusteringChain& chain);

// Structural chain invariants; returns a description of the first violation.
std::optional<std::string> check_chain_structure(const WeightedGraph& g, const ClusteringChain& chain);

}  // namespace mfembed
