#include "mfembed/cutpack.hpp"

#include <algorithm>
#include <set>

#include "mfembed/errors.hpp"

namespace mfembed {

std::vector<std::vector<Vertex>> Cut::vertex_sets() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.vertices);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ClusterNode> cluster_forest(const ClusteringChain& chain) {
  std::vector<ClusterNode> nodes;
  std::vector<std::vector<int>> node_of(chain.levels.size());
  for (int i = chain.top_level; i >= 0; --i) {
    const auto& level = chain.levels[i];
    node_of[i].resize(level.size());
    for (std::size_t j = 0; j < level.size(); ++j) {
      const auto& c = level[j];
      if (i < chain.top_level) {
        const int pn = node_of[i + 1][c.parent];
        if (nodes[pn].vertices.size() == c.vertices.size()) {
          node_of[i][j] = pn;
          continue;
        }
        node_of[i][j] = static_cast<int>(nodes.size());
        nodes.push_back(ClusterNode{c.vertices, i, static_cast<int>(j), c.center, pn, {}});
        nodes[pn].children.push_back(node_of[i][j]);
      } else {
        node_of[i][j] = static_cast<int>(nodes.size());
        nodes.push_back(ClusterNode{c.vertices, i, static_cast<int>(j), c.center, -1, {}});
      }
    }
  }
  return nodes;
}

std::vector<std::size_t> cut_edges(const WeightedGraph& g, const Cut& cut) {
  std::vector<int> member_of(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t k = 0; k < cut.members.size(); ++k) {
    for (Vertex v : cut.members[k].vertices) member_of[v] = static_cast<int>(k);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edge(i);
    if (member_of[e.u] != member_of[e.v]) out.push_back(i);
  }
  return out;
}

BalancedCut find_balanced_cut(const WeightedGraph& g, const ClusteringChain& chain, const CutPacking& packing,
                              std::size_t tau) {
  const int n = g.vertex_count();
  std::set<std::vector<Vertex>> used;
  for (const auto& cut : packing.cuts) {
    for (const auto& m : cut.members) {
      if (m.vertices.size() > 1) used.insert(m.vertices);
    }
  }
  const auto forest = cluster_forest(chain);

  // Maximal free clusters: free nodes all of whose ancestors are used.
  std::vector<int> maximal;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    const auto& node = forest[x];
    if (node.vertices.size() == 1 || !used.contains(node.vertices)) {
      maximal.push_back(x);
    } else {
      for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back(*it);
    }
  }
  std::sort(maximal.begin(), maximal.end(),
            [&](int a, int b) { return forest[a].vertices.front() < forest[b].vertices.front(); });

  std::vector<int> part_of(static_cast<std::size_t>(n), -1);
  std::vector<double> weight;
  for (std::size_t k = 0; k < maximal.size(); ++k) {
    for (Vertex v : forest[maximal[k]].vertices) part_of[v] = static_cast<int>(k);
    weight.push_back(static_cast<double>(forest[maximal[k]].vertices.size()));
  }
  const auto h = quotient(g, part_of, static_cast<int>(maximal.size()));
  const auto td = heuristic_tree_decomposition(h);
  const int x = centroid_bag(h, td, weight);

  BalancedCut out;
  out.free_clusters = maximal.size();
  out.decomposition_width = td.width();
  for (Vertex d : td.bags[x]) {
    const auto& node = forest[maximal[d]];
    out.cut.members.push_back(CutMember{node.level, node.index, node.vertices, node.center});
  }
  std::sort(out.cut.members.begin(), out.cut.members.end(),
            [](const CutMember& a, const CutMember& b) { return a.vertices.front() < b.vertices.front(); });
  out.oversize = out.cut.size() > tau;
  return out;
}

PackingResult build_cut_packing(const WeightedGraph& g, const ClusteringChain& chain, std::size_t xi,
                                std::size_t tau) {
  if (xi < 1 || tau < 1) throw PreconditionViolation("xi and tau must be >= 1");
  PackingResult result;
  CutPacking all;
  int consecutive_repeats = 0;
  const std::size_t target = xi + 1;
  while (all.cuts.size() < target) {
    auto found = find_balanced_cut(g, chain, all, tau);
    ++result.calls;
    const bool repeat = std::any_of(all.cuts.begin(), all.cuts.end(),
                                    [&](const Cut& c) { return c.same_sets(found.cut); });
    if (repeat) {
      if (++consecutive_repeats == 3) break;
      continue;
    }
    consecutive_repeats = 0;
    all.cuts.push_back(std::move(found.cut));
  }
  const auto n = static_cast<std::size_t>(g.vertex_count());
  for (auto& cut : all.cuts) {
    if (cut.size() == 1 && cut.members[0].vertices.size() == n) {
      result.discarded_whole = true;
      continue;
    }
    if (cut.size() > tau) ++result.oversize;
    result.packing.cuts.push_back(std::move(cut));
  }
  if (result.packing.cuts.empty()) throw EmptyPacking();
  return result;
}

// ---------------------------------------------------------------------------

bool is_cut(const WeightedGraph& g, const Cut& cut) {
  std::vector<char> taken(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const auto& m : cut.members) {
    if (m.vertices.empty()) return false;
    for (Vertex v : m.vertices) {
      if (v < 0 || v >= g.vertex_count() || taken[v]) return false;
      taken[v] = 1;
    }
    if (induced_diameter(g, m.vertices) == kInfinity) return false;
  }
  return true;
}

bool is_balanced(const WeightedGraph& g, const Cut& cut) {
  if (!is_cut(g, cut)) return false;
  const auto f = cut_edges(g, cut);
  std::vector<char> removed(g.edge_count(), 0);
  for (auto i : f) removed[i] = 1;
  const auto sets = cut.vertex_sets();
  const auto n = static_cast<std::size_t>(g.vertex_count());
  for (const auto& comp : connected_components(g, removed)) {
    if (2 * comp.size() <= n) continue;
    if (!std::binary_search(sets.begin(), sets.end(), comp)) return false;
  }
  return true;
}

bool non_conflicting(const Cut& a, const Cut& b) {
  const auto sa = a.vertex_sets();
  for (const auto& s : b.vertex_sets()) {
    if (s.size() > 1 && std::binary_search(sa.begin(), sa.end(), s)) return false;
  }
  return true;
}

bool respects_chain(const Cut& cut, const ClusteringChain& chain) {
  for (const auto& m : cut.members) {
    bool found = false;
    for (int i = 0; i <= chain.top_level && !found; ++i) {
      const int idx = chain.assignment[i][m.vertices.front()];
      found = chain.levels[i][idx].vertices == m.vertices;
    }
    if (!found) return false;
  }
  return true;
}

bool is_cut_packing(const WeightedGraph& g, const ClusteringChain& chain, const CutPacking& packing) {
  for (std::size_t i = 0; i < packing.cuts.size(); ++i) {
    if (!is_cut(g, packing.cuts[i]) || !respects_chain(packing.cuts[i], chain)) return false;
    for (std::size_t j = i + 1; j < packing.cuts.size(); ++j) {
      if (!non_conflicting(packing.cuts[i], packing.cuts[j])) return false;
    }
  }
  return true;
}

}  // namespace mfembed
