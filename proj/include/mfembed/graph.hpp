#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mfembed {

using Vertex = int;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double length = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Arc {
  Vertex to;
  double length;
  std::size_t edge;
};

enum class LengthPolicy { positive, nonnegative };

// Undirected edge-weighted graph on vertices 0..n-1.
//
// Immutable once built. Edges are stored once in canonical form (u < v,
// sorted lexicographically); parallel edges passed to from_edges collapse to
// the minimum length. Input graphs require strictly positive lengths; host
// graphs of an embedding are built with LengthPolicy::nonnegative because a
// portal copy is joined to its original by a zero-length edge.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  static WeightedGraph from_edges(int vertex_count, std::vector<Edge> edges,
                                  LengthPolicy policy = LengthPolicy::positive);

  int vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  std::span<const Arc> neighbors(Vertex v) const {
    return {arcs_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  std::optional<std::size_t> find_edge(Vertex a, Vertex b) const;

  double min_edge_length() const;
  double total_length() const;

  // Same vertex and edge sets, every length multiplied by factor.
  WeightedGraph scaled(double factor) const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
};

// Unweighted undirected simple graph (quotients, tree-decomposition input).
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int n) : adj_(static_cast<std::size_t>(n)) {}

  int vertex_count() const noexcept { return static_cast<int>(adj_.size()); }
  // Ignores self-loops and duplicates; call finalize() before queries.
  void add_edge(Vertex a, Vertex b);
  void finalize();

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  bool adjacent(Vertex a, Vertex b) const;
  std::size_t edge_count() const;
  std::vector<std::pair<Vertex, Vertex>> edge_list() const;

  static SimpleGraph from(const WeightedGraph& g);

 private:
  std::vector<std::vector<Vertex>> adj_;
};

// Disjoint nonempty parts covering 0..n-1.
struct VertexPartition {
  std::vector<std::vector<Vertex>> parts;

  // Throws InvalidPartition unless the parts are a partition of 0..n-1.
  void validate(int n) const;
  // Part index per vertex; validates first.
  std::vector<int> assignment(int n) const;

  static VertexPartition discrete(int n);
  static VertexPartition whole(int n);
};

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n)
      : n_(n), d_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kInfinity) {}

  int size() const noexcept { return n_; }
  double operator()(Vertex a, Vertex b) const { return d_[index(a, b)]; }
  double& at(Vertex a, Vertex b) { return d_[index(a, b)]; }
  std::span<const double> row(Vertex a) const {
    return {d_.data() + index(a, 0), static_cast<std::size_t>(n_)};
  }

 private:
  std::size_t index(Vertex a, Vertex b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b);
  }
  int n_ = 0;
  std::vector<double> d_;
};

// --- shortest paths and metric utilities ------------------------------------

std::vector<double> dijkstra(const WeightedGraph& g, Vertex src);

// Dijkstra restricted to vertices with allowed[v] != 0 (src must be allowed).
// Vertices farther than cutoff are reported as infinity.
std::vector<double> dijkstra_within(const WeightedGraph& g, Vertex src, std::span<const char> allowed,
                                    double cutoff = kInfinity);

DistanceMatrix all_pairs(const WeightedGraph& g);

bool is_connected(const WeightedGraph& g);

// Throws DisconnectedGraph.
double diameter(const WeightedGraph& g);

// Least integer l with (max distance / min distance) < 2^l.
int stretch_exponent(const WeightedGraph& g);

// Least integer l with (total edge length / min edge length) < 2^l.
int hat_ell(const WeightedGraph& g);

// Least integer k with ratio < 2^k; ratio >= 1.
int least_power_exponent_above(double ratio);

struct NormalizedGraph {
  WeightedGraph graph;
  double scale = 1.0;  // scaled = original * scale
};

// Scales by 2 / (min distance) when the minimum distance is <= 1.
NormalizedGraph normalize(const WeightedGraph& g);

WeightedGraph metric_closure_weights(const WeightedGraph& g);

SimpleGraph quotient(const WeightedGraph& g, const VertexPartition& p);
SimpleGraph quotient(const WeightedGraph& g, std::span<const int> assignment, int part_count);

// --- subgraphs and components ----------------------------------------------

struct InducedSubgraph {
  WeightedGraph graph;
  std::vector<Vertex> to_parent;  // local id -> parent id
};

// Vertices are kept in the given order; local id i corresponds to vertices[i].
InducedSubgraph induced_subgraph(const WeightedGraph& g, std::span<const Vertex> vertices);

// Components of g after removing the edges flagged in removed (may be empty).
// Each component is sorted; components are ordered by their smallest vertex.
std::vector<std::vector<Vertex>> connected_components(const WeightedGraph& g,
                                                      std::span<const char> removed_edges = {});

// Weighted diameter of g[vertices]; infinity if g[vertices] is disconnected.
double induced_diameter(const WeightedGraph& g, std::span<const Vertex> vertices);

// Hop diameter of an unweighted graph; infinity if disconnected.
double hop_diameter(const SimpleGraph& g);

// Sum of edge lengths along consecutive vertices; throws EdgeNotInGraph.
double path_length(const WeightedGraph& g, std::span<const Vertex> path);

// One shortest path from src to dst as a vertex sequence (ties to smaller ids).
std::vector<Vertex> shortest_path(const WeightedGraph& g, Vertex src, Vertex dst);

// --- generators ------------------------------------------------------------

enum class GraphKind { grid, cycle, star, path };

struct WeightModel {
  enum class Kind { unit, uniform } kind = Kind::unit;
  double lo = 1.0;
  double hi = 1.0;

  static WeightModel unit() { return {}; }
  static WeightModel uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }
};

struct GeneratorSpec {
  GraphKind kind = GraphKind::grid;
  int rows = 1;
  int cols = 1;
  int n = 1;  // vertex count for cycle, star (center + n-1 leaves) and path
};

// Deterministic per seed; throws BadSize.
WeightedGraph generate(const GeneratorSpec& spec, const WeightModel& weights, std::uint64_t seed);

GraphKind parse_graph_kind(const std::string& s);
WeightModel parse_weight_model(const std::string& s);

// --- file I/O --------------------------------------------------------------

WeightedGraph read_graph(std::istream& in);
void write_graph(const WeightedGraph& g, std::ostream& out);
WeightedGraph load_graph(const std::string& path);
void save_graph(const WeightedGraph& g, const std::string& path);

}  // namespace mfembed
