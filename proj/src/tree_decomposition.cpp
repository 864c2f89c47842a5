#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "mfembed/cutpack.hpp"

namespace mfembed {

int TreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return static_cast<int>(w) - 1;
}

TreeDecomposition heuristic_tree_decomposition(const SimpleGraph& h) {
  const int n = h.vertex_count();
  TreeDecomposition td;
  if (n == 0) return td;

  std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) adj[v].insert(h.neighbors(v).begin(), h.neighbors(v).end());

  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) queue.emplace(adj[v].size(), v);

  std::vector<int> position(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Vertex>> later_neighbors;
  std::vector<Vertex> eliminated;
  while (!queue.empty()) {
    const Vertex v = queue.begin()->second;
    queue.erase(queue.begin());
    position[v] = static_cast<int>(eliminated.size());
    eliminated.push_back(v);

    std::vector<Vertex> nbrs(adj[v].begin(), adj[v].end());
    std::vector<Vertex> bag = nbrs;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(std::move(bag));
    later_neighbors.push_back(nbrs);

    for (Vertex a : nbrs) {
      queue.erase({adj[a].size(), a});
      adj[a].erase(v);
    }
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        adj[nbrs[i]].insert(nbrs[j]);
        adj[nbrs[j]].insert(nbrs[i]);
      }
    }
    for (Vertex a : nbrs) queue.emplace(adj[a].size(), a);
    adj[v].clear();
  }

  // Parent of node k: the node of its earliest-eliminated later neighbor.
  int previous_root = -1;
  for (int k = 0; k < n; ++k) {
    int parent = -1;
    for (Vertex a : later_neighbors[k]) {
      if (parent < 0 || position[a] < parent) parent = position[a];
    }
    if (parent >= 0) {
      td.tree_edges.emplace_back(k, parent);
    } else {
      // Root of a component's elimination tree; chain roots into one tree.
      if (previous_root >= 0) td.tree_edges.emplace_back(previous_root, k);
      previous_root = k;
    }
  }
  return td;
}

bool is_valid_tree_decomposition(const SimpleGraph& h, const TreeDecomposition& td) {
  const int n = h.vertex_count();
  const int nodes = td.node_count();
  if (n == 0) return nodes == 0;
  if (nodes == 0) return false;
  if (td.tree_edges.size() != static_cast<std::size_t>(nodes - 1)) return false;

  std::vector<std::vector<int>> tree(static_cast<std::size_t>(nodes));
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b) return false;
    tree[a].push_back(b);
    tree[b].push_back(a);
  }
  auto connected_over = [&](const std::vector<char>& keep) {
    int start = -1;
    int count = 0;
    for (int x = 0; x < nodes; ++x) {
      if (keep[x]) {
        ++count;
        if (start < 0) start = x;
      }
    }
    if (count == 0) return false;
    std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int reached = 0;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      ++reached;
      for (int y : tree[x]) {
        if (keep[y] && !seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    return reached == count;
  };
  if (!connected_over(std::vector<char>(static_cast<std::size_t>(nodes), 1))) return false;

  std::vector<std::vector<int>> holders(static_cast<std::size_t>(n));
  for (int x = 0; x < nodes; ++x) {
    for (Vertex v : td.bags[x]) {
      if (v < 0 || v >= n) return false;
      holders[v].push_back(x);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    std::vector<char> keep(static_cast<std::size_t>(nodes), 0);
    for (int x : holders[v]) keep[x] = 1;
    if (!connected_over(keep)) return false;
  }
  for (auto [a, b] : h.edge_list()) {
    bool covered = false;
    for (int x : holders[a]) {
      if (std::binary_search(td.bags[x].begin(), td.bags[x].end(), b)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

int centroid_bag(const SimpleGraph& h, const TreeDecomposition& td, std::span<const double> weight) {
  const int n = h.vertex_count();
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
  int best = -1;
  std::vector<char> removed(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n));
  std::vector<Vertex> stack;
  for (int x = 0; x < td.node_count(); ++x) {
    if (best >= 0 && td.bags[x].size() >= td.bags[best].size()) continue;
    std::fill(removed.begin(), removed.end(), 0);
    std::fill(seen.begin(), seen.end(), 0);
    for (Vertex v : td.bags[x]) removed[v] = 1;
    bool ok = true;
    for (Vertex s = 0; s < n && ok; ++s) {
      if (removed[s] || seen[s]) continue;
      double w = 0.0;
      seen[s] = 1;
      stack.push_back(s);
      while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        w += weight[v];
        for (Vertex u : h.neighbors(v)) {
          if (!removed[u] && !seen[u]) {
            seen[u] = 1;
            stack.push_back(u);
          }
        }
      }
      if (w > total / 2.0) ok = false;
    }
    stack.clear();
    if (ok) best = x;
  }
  // A qualifying node always exists for a valid decomposition.
  return best;
}

}  // namespace mfembed
