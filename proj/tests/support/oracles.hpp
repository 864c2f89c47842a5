#pragma once

// Reference implementations used only by tests. Each one is written without
// calling into the library algorithm it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "mfembed/cutpack.hpp"
#include "mfembed/graph.hpp"
#include "mfembed/hierarchy.hpp"

namespace oracle {

using mfembed::Edge;
using mfembed::Vertex;
using Matrix = std::vector<std::vector<double>>;

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline Matrix floyd_warshall(int n, const std::vector<Edge>& edges) {
  Matrix d(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : edges) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.length);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.length);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

inline Matrix floyd_warshall(const mfembed::WeightedGraph& g) {
  return floyd_warshall(g.vertex_count(), {g.edges().begin(), g.edges().end()});
}

// Shortest s-t distance by enumerating every simple path (tiny graphs only).
inline double brute_force_distance(const mfembed::WeightedGraph& g, Vertex s, Vertex t) {
  const int n = g.vertex_count();
  std::vector<char> on(static_cast<std::size_t>(n), 0);
  double best = inf;
  std::function<void(Vertex, double)> go = [&](Vertex v, double len) {
    if (v == t) {
      best = std::min(best, len);
      return;
    }
    on[v] = 1;
    for (const auto& e : g.edges()) {
      Vertex w = -1;
      if (e.u == v) w = e.v;
      if (e.v == v) w = e.u;
      if (w >= 0 && !on[w]) go(w, len + e.length);
    }
    on[v] = 0;
  };
  go(s, 0.0);
  return best;
}

// Exact treewidth by dynamic programming over vertex subsets (n <= 12).
inline int exact_treewidth(const mfembed::SimpleGraph& h) {
  const int n = h.vertex_count();
  if (n == 0) return -1;
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : h.edge_list()) {
    adj[a] |= 1u << b;
    adj[b] |= 1u << a;
  }
  // q(S, v): vertices outside S + v reachable from v through S.
  auto q = [&](std::uint32_t s, int v) {
    std::uint32_t seen = 1u << v;
    std::uint32_t frontier = 1u << v;
    std::uint32_t outside = 0;
    while (frontier) {
      const int x = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      const std::uint32_t nb = adj[x] & ~seen;
      seen |= nb;
      outside |= nb & ~s;
      frontier |= nb & s;
    }
    return __builtin_popcount(outside & ~(1u << v));
  };
  std::vector<int> tw(static_cast<std::size_t>(full) + 1, std::numeric_limits<int>::max());
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    for (int v = 0; v < n; ++v) {
      if (!(s >> v & 1u)) continue;
      const std::uint32_t rest = s & ~(1u << v);
      tw[s] = std::min(tw[s], std::max(tw[rest], q(rest, v)));
    }
  }
  return std::max(tw[full], 0);
}

// Components of g after deleting every edge with exactly one endpoint inside
// a member of the family; union-find over the kept edges.
inline std::vector<std::vector<Vertex>> components_after_cut(const mfembed::WeightedGraph& g,
                                                             const std::vector<std::vector<Vertex>>& family) {
  const int n = g.vertex_count();
  std::vector<int> member(static_cast<std::size_t>(n), -1);
  for (std::size_t k = 0; k < family.size(); ++k) {
    for (Vertex v : family[k]) member[v] = static_cast<int>(k);
  }
  std::vector<int> root(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) root[i] = i;
  std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
  for (const auto& e : g.edges()) {
    if (member[e.u] == member[e.v]) root[find(e.u)] = find(e.v);
  }
  std::vector<std::vector<Vertex>> groups(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<Vertex>> out;
  for (auto& grp : groups) {
    if (!grp.empty()) out.push_back(std::move(grp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool family_is_balanced(const mfembed::WeightedGraph& g, const std::vector<std::vector<Vertex>>& family) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  for (const auto& comp : components_after_cut(g, family)) {
    if (2 * comp.size() <= n) continue;
    if (std::find(family.begin(), family.end(), comp) == family.end()) return false;
  }
  return true;
}

// Every balanced cut whose members are distinct clusters of the chain, as
// sorted families of sorted vertex sets.
inline std::set<std::vector<std::vector<Vertex>>> balanced_chain_cuts(const mfembed::WeightedGraph& g,
                                                                      const mfembed::ClusteringChain& chain) {
  std::set<std::vector<Vertex>> distinct;
  for (const auto& level : chain.levels) {
    for (const auto& c : level) distinct.insert(c.vertices);
  }
  const std::vector<std::vector<Vertex>> clusters(distinct.begin(), distinct.end());
  std::set<std::vector<std::vector<Vertex>>> out;
  std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<std::vector<Vertex>> family;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == clusters.size()) {
      if (family.empty()) return;
      auto sorted = family;
      std::sort(sorted.begin(), sorted.end());
      if (family_is_balanced(g, sorted)) out.insert(sorted);
      return;
    }
    go(k + 1);
    const auto& c = clusters[k];
    if (std::any_of(c.begin(), c.end(), [&](Vertex v) { return used[v] != 0; })) return;
    for (Vertex v : c) used[v] = 1;
    family.push_back(c);
    go(k + 1);
    family.pop_back();
    for (Vertex v : c) used[v] = 0;
  };
  go(0);
  return out;
}

// Host distance between two host vertices by Bellman-Ford relaxation.
inline double bellman_ford(const mfembed::WeightedGraph& h, Vertex s, Vertex t) {
  std::vector<double> d(static_cast<std::size_t>(h.vertex_count()), inf);
  d[s] = 0.0;
  for (int round = 0; round < h.vertex_count(); ++round) {
    bool changed = false;
    for (const auto& e : h.edges()) {
      if (d[e.u] + e.length < d[e.v]) {
        d[e.v] = d[e.u] + e.length;
        changed = true;
      }
      if (d[e.v] + e.length < d[e.u]) {
        d[e.u] = d[e.v] + e.length;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return d[t];
}

}  // namespace oracle
