#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mfembed/graph.hpp"
#include "mfembed/hierarchy.hpp"

namespace mfembed {

struct CutMember {
  int level = 0;    // highest chain level at which this vertex set is a cluster
  int cluster = 0;  // index at that level
  std::vector<Vertex> vertices;  // sorted
  Vertex center = 0;

  std::size_t size() const noexcept { return vertices.size(); }
};

// Family of pairwise disjoint connected vertex sets (members sorted by smallest vertex).
struct Cut {
  std::vector<CutMember> members;

  std::size_t size() const noexcept { return members.size(); }
  std::vector<std::vector<Vertex>> vertex_sets() const;
  bool same_sets(const Cut& other) const { return vertex_sets() == other.vertex_sets(); }
};

struct CutPacking {
  std::vector<Cut> cuts;
};

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;        // sorted
  std::vector<std::pair<int, int>> tree_edges;  // node pairs

  int node_count() const noexcept { return static_cast<int>(bags.size()); }
  int width() const;
};

// Laminar family of distinct chain clusters, rooted at V.
struct ClusterNode {
  std::vector<Vertex> vertices;
  int level = 0;
  int index = 0;
  Vertex center = 0;
  int parent = -1;
  std::vector<int> children;
};

std::vector<ClusterNode> cluster_forest(const ClusteringChain& chain);

// F(A): indices of edges with exactly one endpoint in some member.
std::vector<std::size_t> cut_edges(const WeightedGraph& g, const Cut& cut);

// Min-degree elimination (ties to the lowest id) with fill-in. Node k holds
// the bag of the k-th eliminated vertex.
TreeDecomposition heuristic_tree_decomposition(const SimpleGraph& h);

bool is_valid_tree_decomposition(const SimpleGraph& h, const TreeDecomposition& td);

// A node whose removal leaves components of weight <= total / 2. Among
// qualifying nodes the smallest bag wins, then the lowest node id.
int centroid_bag(const SimpleGraph& h, const TreeDecomposition& td, std::span<const double> weight);

struct BalancedCut {
  Cut cut;
  bool oversize = false;           // |cut| > tau
  std::size_t free_clusters = 0;   // |D|, vertices of the contracted graph
  int decomposition_width = 0;
};

// Contract maximal free clusters, decompose the quotient, return the centroid
// bag as a cut. Free: singleton or not a member of any cut in the packing.
BalancedCut find_balanced_cut(const WeightedGraph& g, const ClusteringChain& chain, const CutPacking& packing,
                              std::size_t tau);

struct PackingResult {
  CutPacking packing;            // {V} removed
  std::size_t calls = 0;         // find_balanced_cut invocations
  std::size_t oversize = 0;      // oversize cuts kept in the packing
  bool discarded_whole = false;  // {V} was present and removed
};

// Accumulate up to xi + 1 distinct cuts, then drop {V}. Throws EmptyPacking.
PackingResult build_cut_packing(const WeightedGraph& g, const ClusteringChain& chain, std::size_t xi,
                                std::size_t tau);

// --- exact predicates ------------------------------------------------------

bool is_cut(const WeightedGraph& g, const Cut& cut);
bool is_balanced(const WeightedGraph& g, const Cut& cut);
bool non_conflicting(const Cut& a, const Cut& b);
bool is_cut_packing(const WeightedGraph& g, const ClusteringChain& chain, const CutPacking& packing);
bool respects_chain(const Cut& cut, const ClusteringChain& chain);

}  // namespace mfembed
