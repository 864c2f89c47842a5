#include "mfembed/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfembed/errors.hpp"
#include "mfembed/partition.hpp"

namespace mfembed {

const char* to_string(FailureReason r) {
  switch (r) {
    case FailureReason::DiameterExceeded: return "DiameterExceeded";
    case FailureReason::QuotientDiameterExceeded: return "QuotientDiameterExceeded";
    case FailureReason::NonSingletonLevel0: return "NonSingletonLevel0";
  }
  return "?";
}

double chain_log_term(int ell, int n, double delta) {
  const double nn = static_cast<double>(n);
  return std::log(2.0 * ell * nn * nn / delta) + 1.0;
}

double chain_radius(int level, int ell, int n, double delta) {
  return std::ldexp(1.0, level - 1) / chain_log_term(ell, n, delta);
}

double quotient_diameter_bound(int ell, int n, double delta) {
  const double t = chain_log_term(ell, n, delta);
  return 480.0 * t * t;
}

int top_level_for_diameter(double diameter) {
  int level = 1;
  while (diameter > std::ldexp(1.0, level)) ++level;
  return level;
}

namespace {

// Quotient G[C] / (sub-clusters of C): child_of[v] gives the local child id.
double quotient_hop_diameter(const WeightedGraph& g, std::span<const Vertex> cluster,
                             std::span<const int> part_of, int part_count) {
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (Vertex v : cluster) local[v] = 1;
  SimpleGraph q(part_count);
  for (Vertex v : cluster) {
    for (const auto& arc : g.neighbors(v)) {
      if (local[arc.to] > 0) q.add_edge(part_of[v], part_of[arc.to]);
    }
  }
  q.finalize();
  return hop_diameter(q);
}

void rebuild_assignment(ClusteringChain& chain, int n) {
  chain.assignment.assign(chain.levels.size(), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (std::size_t i = 0; i < chain.levels.size(); ++i) {
    for (std::size_t j = 0; j < chain.levels[i].size(); ++j) {
      for (Vertex v : chain.levels[i][j].vertices) chain.assignment[i][v] = static_cast<int>(j);
    }
  }
}

// Splits every cluster of chain.levels[level + 1] with radius r and fills
// chain.levels[level]. diameters[j] is the induced diameter of parent j.
void carve_level(const WeightedGraph& g, ClusteringChain& chain, int level, double r,
                 std::span<const double> diameters, Rng& rng) {
  auto& parents = chain.levels[level + 1];
  auto& out = chain.levels[level];
  out.clear();
  for (std::size_t j = 0; j < parents.size(); ++j) {
    const auto& parent = parents[j];
    const auto sub = induced_subgraph(g, parent.vertices);
    Rng stream = rng.fork(static_cast<std::uint64_t>(level), j);
    const auto order = TieBreakOrder::identity(sub.graph.vertex_count());
    const auto c = single_level_partition(
        sub.graph, r, order, [&stream] { return sample_exponential(stream); }, diameters[j]);
    for (std::size_t k = 0; k < c.clusters.size(); ++k) {
      ChainCluster cc;
      cc.vertices.reserve(c.clusters[k].size());
      for (Vertex local : c.clusters[k]) cc.vertices.push_back(sub.to_parent[local]);
      cc.center = sub.to_parent[c.centers[k]];
      cc.parent = static_cast<int>(j);
      out.push_back(std::move(cc));
    }
  }
}

}  // namespace

ChainResult build_chain(const WeightedGraph& g, const ChainOptions& options, Rng& rng) {
  const int n = g.vertex_count();
  if (!(options.delta > 0.0 && options.delta < 1.0)) throw PreconditionViolation("delta must lie in (0,1)");
  if (n == 0) throw PreconditionViolation("empty graph");

  ClusteringChain chain;
  chain.delta = options.delta;
  if (n == 1) {
    chain.top_level = 0;
    chain.levels = {{ChainCluster{{0}, 0, -1}}};
    rebuild_assignment(chain, n);
    return chain;
  }
  if (!(g.min_edge_length() > 1.0)) throw PreconditionViolation("all distances must exceed 1");

  const double diam = diameter(g);
  const int top = top_level_for_diameter(diam);
  chain.top_level = top;
  chain.sigma = quotient_diameter_bound(top, n, options.delta);
  chain.radii.resize(static_cast<std::size_t>(top) + 1);
  for (int i = 0; i <= top; ++i) chain.radii[i] = chain_radius(i, top, n, options.delta);

  chain.levels.resize(static_cast<std::size_t>(top) + 1);
  ChainCluster all;
  all.vertices.resize(static_cast<std::size_t>(n));
  std::iota(all.vertices.begin(), all.vertices.end(), 0);
  all.center = 0;
  chain.levels[top].push_back(std::move(all));

  std::vector<double> diameters{diam};
  for (int i = top - 1; i >= 0; --i) {
    // Q1 for level i + 1, measured before its clusters are split.
    const double bound = std::ldexp(1.0, i + 1);
    for (std::size_t j = 0; j < diameters.size(); ++j) {
      if (diameters[j] > bound) return ChainFailure{i + 1, FailureReason::DiameterExceeded, static_cast<int>(j)};
    }
    const bool literal = i == 0 && options.literal_level0;
    if (i > 0 || literal) {
      carve_level(g, chain, i, chain.radii[i], diameters, rng);
    } else {
      for (std::size_t j = 0; j < chain.levels[1].size(); ++j) {
        for (Vertex v : chain.levels[1][j].vertices) {
          chain.levels[0].push_back(ChainCluster{{v}, v, static_cast<int>(j)});
        }
      }
      std::sort(chain.levels[0].begin(), chain.levels[0].end(),
                [](const ChainCluster& a, const ChainCluster& b) { return a.vertices[0] < b.vertices[0]; });
    }

    // Q2 for every parent at level i + 1.
    std::vector<int> part_of(static_cast<std::size_t>(n), -1);
    std::vector<int> child_count(chain.levels[i + 1].size(), 0);
    for (const auto& c : chain.levels[i]) {
      const int local = child_count[c.parent]++;
      for (Vertex v : c.vertices) part_of[v] = local;
    }
    for (std::size_t j = 0; j < chain.levels[i + 1].size(); ++j) {
      const double qd =
          quotient_hop_diameter(g, chain.levels[i + 1][j].vertices, part_of, child_count[j]);
      if (qd > chain.sigma) {
        return ChainFailure{i + 1, FailureReason::QuotientDiameterExceeded, static_cast<int>(j)};
      }
    }

    diameters.clear();
    for (std::size_t k = 0; k < chain.levels[i].size(); ++k) {
      const auto& c = chain.levels[i][k];
      if (i == 0 && c.vertices.size() > 1) {
        return ChainFailure{0, FailureReason::NonSingletonLevel0, static_cast<int>(k)};
      }
      diameters.push_back(i == 0 ? 0.0 : induced_diameter(g, c.vertices));
    }
  }
  // Level 0 clusters in literal mode carry partitioner order; store singletons by vertex.
  std::sort(chain.levels[0].begin(), chain.levels[0].end(),
            [](const ChainCluster& a, const ChainCluster& b) { return a.vertices[0] < b.vertices[0]; });
  rebuild_assignment(chain, n);
  return chain;
}

int edge_level(const WeightedGraph& g, const ClusteringChain& chain, Vertex u, Vertex v) {
  if (!g.find_edge(u, v)) throw EdgeNotInGraph(u, v);
  for (int i = chain.top_level; i >= 0; --i) {
    if (chain.assignment[i][u] != chain.assignment[i][v]) return i;
  }
  return 0;
}

std::vector<std::size_t> level_cut_counts(const WeightedGraph& g, const ClusteringChain& chain,
                                          std::span<const Vertex> path) {
  std::vector<std::size_t> hist(static_cast<std::size_t>(std::max(chain.top_level, 1)), 0);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) ++hist[edge_level(g, chain, path[k], path[k + 1])];
  return hist;
}

std::optional<ChainFailure> check_goodness(const WeightedGraph& g, const ClusteringChain& chain) {
  const int n = g.vertex_count();
  for (int i = 0; i <= chain.top_level; ++i) {
    const double bound = std::ldexp(1.0, i);
    for (std::size_t j = 0; j < chain.levels[i].size(); ++j) {
      if (induced_diameter(g, chain.levels[i][j].vertices) > bound) {
        return ChainFailure{i, i == 0 ? FailureReason::NonSingletonLevel0 : FailureReason::DiameterExceeded,
                            static_cast<int>(j)};
      }
    }
  }
  for (int i = 0; i < chain.top_level; ++i) {
    std::vector<int> part_of(static_cast<std::size_t>(n), -1);
    std::vector<int> count(chain.levels[i + 1].size(), 0);
    for (const auto& c : chain.levels[i]) {
      const int local = count[chain.assignment[i + 1][c.vertices[0]]]++;
      for (Vertex v : c.vertices) part_of[v] = local;
    }
    for (std::size_t j = 0; j < chain.levels[i + 1].size(); ++j) {
      if (quotient_hop_diameter(g, chain.levels[i + 1][j].vertices, part_of, count[j]) > chain.sigma) {
        return ChainFailure{i + 1, FailureReason::QuotientDiameterExceeded, static_cast<int>(j)};
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_chain_structure(const WeightedGraph& g, const ClusteringChain& chain) {
  const int n = g.vertex_count();
  if (chain.levels.size() != static_cast<std::size_t>(chain.top_level) + 1) return "level count mismatch";
  if (chain.levels[chain.top_level].size() != 1 ||
      chain.levels[chain.top_level][0].vertices.size() != static_cast<std::size_t>(n)) {
    return "top level is not {V}";
  }
  if (chain.levels[0].size() != static_cast<std::size_t>(n)) return "level 0 is not discrete";
  for (int i = 0; i <= chain.top_level; ++i) {
    VertexPartition p;
    for (const auto& c : chain.levels[i]) p.parts.push_back(c.vertices);
    try {
      p.validate(n);
    } catch (const InvalidPartition& e) {
      return "level " + std::to_string(i) + ": " + e.what();
    }
    for (std::size_t j = 0; j < chain.levels[i].size(); ++j) {
      const auto& c = chain.levels[i][j];
      if (!std::is_sorted(c.vertices.begin(), c.vertices.end())) return "unsorted cluster";
      if (std::find(c.vertices.begin(), c.vertices.end(), c.center) == c.vertices.end()) {
        return "center outside its cluster";
      }
      if (induced_diameter(g, c.vertices) == kInfinity) {
        return "level " + std::to_string(i) + " cluster " + std::to_string(j) + " is disconnected";
      }
      for (Vertex v : c.vertices) {
        if (chain.assignment[i][v] != static_cast<int>(j)) return "assignment mismatch";
      }
      if (i < chain.top_level) {
        for (Vertex v : c.vertices) {
          if (chain.assignment[i + 1][v] != c.parent) return "refinement violated";
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace mfembed
