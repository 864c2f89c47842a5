#include "mfembed/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <utility>

#include "mfembed/errors.hpp"

namespace mfembed {

// ---------------------------------------------------------------------------
// WeightedGraph

WeightedGraph WeightedGraph::from_edges(int vertex_count, std::vector<Edge> edges, LengthPolicy policy) {
  if (vertex_count < 0) throw BadSize("negative vertex count");
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count) {
      throw InvariantViolation("edge endpoint out of range: " + std::to_string(e.u) + "-" +
                               std::to_string(e.v));
    }
    if (e.u == e.v) throw InvariantViolation("self-loop at vertex " + std::to_string(e.u));
    if (!std::isfinite(e.length) || e.length < 0.0 ||
        (policy == LengthPolicy::positive && e.length <= 0.0)) {
      throw InvariantViolation("nonpositive or non-finite edge length on " + std::to_string(e.u) + "-" +
                               std::to_string(e.v));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.length < b.length;
  });
  // Parallel edges: the first of each run has the minimum length.
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());

  WeightedGraph g;
  g.n_ = vertex_count;
  g.edges_ = std::move(edges);
  g.offsets_.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
  for (const auto& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.arcs_.resize(g.edges_.size() * 2);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    const auto& e = g.edges_[i];
    g.arcs_[fill[e.u]++] = Arc{e.v, e.length, i};
    g.arcs_[fill[e.v]++] = Arc{e.u, e.length, i};
  }
  return g;
}

std::optional<std::size_t> WeightedGraph::find_edge(Vertex a, Vertex b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) return std::nullopt;
  for (const auto& arc : neighbors(a)) {
    if (arc.to == b) return arc.edge;
  }
  return std::nullopt;
}

double WeightedGraph::min_edge_length() const {
  if (edges_.empty()) throw NoEdges();
  double m = kInfinity;
  for (const auto& e : edges_) m = std::min(m, e.length);
  return m;
}

double WeightedGraph::total_length() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.length;
  return s;
}

WeightedGraph WeightedGraph::scaled(double factor) const {
  std::vector<Edge> out(edges_.begin(), edges_.end());
  for (auto& e : out) e.length *= factor;
  return from_edges(n_, std::move(out), LengthPolicy::nonnegative);
}

// ---------------------------------------------------------------------------
// SimpleGraph

void SimpleGraph::add_edge(Vertex a, Vertex b) {
  if (a == b) return;
  adj_[a].push_back(b);
  adj_[b].push_back(a);
}

void SimpleGraph::finalize() {
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

bool SimpleGraph::adjacent(Vertex a, Vertex b) const {
  return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::size_t SimpleGraph::edge_count() const {
  std::size_t s = 0;
  for (const auto& list : adj_) s += list.size();
  return s / 2;
}

std::vector<std::pair<Vertex, Vertex>> SimpleGraph::edge_list() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex a = 0; a < vertex_count(); ++a) {
    for (Vertex b : adj_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

SimpleGraph SimpleGraph::from(const WeightedGraph& g) {
  SimpleGraph h(g.vertex_count());
  for (const auto& e : g.edges()) h.add_edge(e.u, e.v);
  h.finalize();
  return h;
}

// ---------------------------------------------------------------------------
// VertexPartition

void VertexPartition::validate(int n) const {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::size_t covered = 0;
  for (const auto& part : parts) {
    if (part.empty()) throw InvalidPartition("empty part");
    for (Vertex v : part) {
      if (v < 0 || v >= n) throw InvalidPartition("vertex " + std::to_string(v) + " out of range");
      if (seen[v]) throw InvalidPartition("vertex " + std::to_string(v) + " in two parts");
      seen[v] = 1;
      ++covered;
    }
  }
  if (covered != static_cast<std::size_t>(n)) throw InvalidPartition("parts do not cover all vertices");
}

std::vector<int> VertexPartition::assignment(int n) const {
  validate(n);
  std::vector<int> a(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (Vertex v : parts[i]) a[v] = static_cast<int>(i);
  }
  return a;
}

VertexPartition VertexPartition::discrete(int n) {
  VertexPartition p;
  for (Vertex v = 0; v < n; ++v) p.parts.push_back({v});
  return p;
}

VertexPartition VertexPartition::whole(int n) {
  VertexPartition p;
  p.parts.emplace_back(static_cast<std::size_t>(n));
  std::iota(p.parts[0].begin(), p.parts[0].end(), 0);
  return p;
}

// ---------------------------------------------------------------------------
// Shortest paths

namespace {

using QueueItem = std::pair<double, Vertex>;
using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>>;

}  // namespace

std::vector<double> dijkstra(const WeightedGraph& g, Vertex src) {
  if (src < 0 || src >= g.vertex_count()) throw PreconditionViolation("source out of range");
  std::vector<double> dist(static_cast<std::size_t>(g.vertex_count()), kInfinity);
  MinQueue q;
  dist[src] = 0.0;
  q.emplace(0.0, src);
  while (!q.empty()) {
    auto [d, v] = q.top();
    q.pop();
    if (d > dist[v]) continue;
    for (const auto& arc : g.neighbors(v)) {
      const double nd = d + arc.length;
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        q.emplace(nd, arc.to);
      }
    }
  }
  return dist;
}

std::vector<double> dijkstra_within(const WeightedGraph& g, Vertex src, std::span<const char> allowed,
                                    double cutoff) {
  std::vector<double> dist(static_cast<std::size_t>(g.vertex_count()), kInfinity);
  if (!allowed[src]) return dist;
  MinQueue q;
  dist[src] = 0.0;
  q.emplace(0.0, src);
  while (!q.empty()) {
    auto [d, v] = q.top();
    q.pop();
    if (d > dist[v]) continue;
    for (const auto& arc : g.neighbors(v)) {
      if (!allowed[arc.to]) continue;
      const double nd = d + arc.length;
      if (nd <= cutoff && nd < dist[arc.to]) {
        dist[arc.to] = nd;
        q.emplace(nd, arc.to);
      }
    }
  }
  return dist;
}

DistanceMatrix all_pairs(const WeightedGraph& g) {
  DistanceMatrix m(g.vertex_count());
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    // Rows are filled from the smaller endpoint so the matrix is exactly symmetric.
    const auto d = dijkstra(g, s);
    m.at(s, s) = 0.0;
    for (Vertex t = s + 1; t < g.vertex_count(); ++t) {
      m.at(s, t) = d[t];
      m.at(t, s) = d[t];
    }
  }
  return m;
}

bool is_connected(const WeightedGraph& g) {
  return g.vertex_count() <= 1 || connected_components(g).size() == 1;
}

double diameter(const WeightedGraph& g) {
  double best = 0.0;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    for (double d : dijkstra(g, s)) {
      if (d == kInfinity) throw DisconnectedGraph();
      best = std::max(best, d);
    }
  }
  return best;
}

int least_power_exponent_above(double ratio) {
  int k = 0;
  while (!(ratio < std::ldexp(1.0, k))) ++k;
  return k;
}

int stretch_exponent(const WeightedGraph& g) {
  if (g.vertex_count() < 2) throw SingleVertex();
  const double dmax = diameter(g);
  return least_power_exponent_above(dmax / g.min_edge_length());
}

int hat_ell(const WeightedGraph& g) {
  if (g.edge_count() == 0) throw NoEdges();
  return least_power_exponent_above(g.total_length() / g.min_edge_length());
}

NormalizedGraph normalize(const WeightedGraph& g) {
  if (!is_connected(g)) throw DisconnectedGraph();
  if (g.edge_count() == 0) return {g, 1.0};
  const double dmin = g.min_edge_length();  // min pairwise distance
  const double total = g.total_length();
  const double cap = std::ldexp(1.0, hat_ell(g));
  double scale = 1.0;
  if (dmin <= 1.0) {
    scale = 2.0 / dmin;
    if (scale * total > cap) scale = cap / total;
  } else if (total > cap) {
    scale = cap / total;
  }
  if (scale == 1.0) return {g, 1.0};
  return {g.scaled(scale), scale};
}

WeightedGraph metric_closure_weights(const WeightedGraph& g) {
  std::vector<Edge> out(g.edges().begin(), g.edges().end());
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (g.degree(s) == 0) continue;
    const auto d = dijkstra(g, s);
    for (const auto& arc : g.neighbors(s)) {
      auto& e = out[arc.edge];
      if (e.u == s) e.length = std::min(e.length, d[e.v]);
    }
  }
  return WeightedGraph::from_edges(g.vertex_count(), std::move(out));
}

SimpleGraph quotient(const WeightedGraph& g, std::span<const int> assignment, int part_count) {
  SimpleGraph q(part_count);
  for (const auto& e : g.edges()) q.add_edge(assignment[e.u], assignment[e.v]);
  q.finalize();
  return q;
}

SimpleGraph quotient(const WeightedGraph& g, const VertexPartition& p) {
  const auto a = p.assignment(g.vertex_count());
  return quotient(g, a, static_cast<int>(p.parts.size()));
}

// ---------------------------------------------------------------------------
// Subgraphs

InducedSubgraph induced_subgraph(const WeightedGraph& g, std::span<const Vertex> vertices) {
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (const auto& arc : g.neighbors(vertices[i])) {
      const int j = local[arc.to];
      if (j > static_cast<int>(i)) edges.push_back({static_cast<Vertex>(i), j, arc.length});
    }
  }
  return {WeightedGraph::from_edges(static_cast<int>(vertices.size()), std::move(edges),
                                    LengthPolicy::nonnegative),
          std::vector<Vertex>(vertices.begin(), vertices.end())};
}

std::vector<std::vector<Vertex>> connected_components(const WeightedGraph& g,
                                                      std::span<const char> removed_edges) {
  const int n = g.vertex_count();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<Vertex>> comps;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    comps.emplace_back();
    auto& comp = comps.back();
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const auto& arc : g.neighbors(v)) {
        if (!removed_edges.empty() && removed_edges[arc.edge]) continue;
        if (!seen[arc.to]) {
          seen[arc.to] = 1;
          stack.push_back(arc.to);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
  }
  return comps;
}

double induced_diameter(const WeightedGraph& g, std::span<const Vertex> vertices) {
  if (vertices.size() <= 1) return 0.0;
  std::vector<char> allowed(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : vertices) allowed[v] = 1;
  double best = 0.0;
  for (Vertex s : vertices) {
    const auto d = dijkstra_within(g, s, allowed);
    for (Vertex t : vertices) best = std::max(best, d[t]);
    if (best == kInfinity) break;
  }
  return best;
}

double hop_diameter(const SimpleGraph& g) {
  const int n = g.vertex_count();
  int best = 0;
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::queue<Vertex> q;
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    q.push(s);
    int reached = 0;
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      ++reached;
      best = std::max(best, dist[v]);
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
      }
    }
    if (reached != n) return kInfinity;
  }
  return best;
}

double path_length(const WeightedGraph& g, std::span<const Vertex> path) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto e = g.find_edge(path[i], path[i + 1]);
    if (!e) throw EdgeNotInGraph(path[i], path[i + 1]);
    s += g.edge(*e).length;
  }
  return s;
}

std::vector<Vertex> shortest_path(const WeightedGraph& g, Vertex src, Vertex dst) {
  const auto dist = dijkstra(g, dst);
  if (dist[src] == kInfinity) throw DisconnectedGraph();
  // Walk from src toward dst along tight arcs, preferring the smallest id.
  std::vector<Vertex> path{src};
  Vertex v = src;
  while (v != dst) {
    Vertex next = -1;
    for (const auto& arc : g.neighbors(v)) {
      if (dist[arc.to] + arc.length == dist[v] && (next < 0 || arc.to < next)) next = arc.to;
    }
    if (next < 0) {
      // Rounding can break exact tightness; fall back to the best arc.
      double best = kInfinity;
      for (const auto& arc : g.neighbors(v)) {
        if (dist[arc.to] < dist[v] && dist[arc.to] + arc.length < best) {
          best = dist[arc.to] + arc.length;
          next = arc.to;
        }
      }
    }
    v = next;
    path.push_back(v);
  }
  return path;
}

}  // namespace mfembed
