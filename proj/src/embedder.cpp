#include "mfembed/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mfembed/errors.hpp"

namespace mfembed {

const char* to_string(Mode m) { return m == Mode::theory ? "theory" : "practical"; }

Mode parse_mode(const std::string& s) {
  if (s == "theory") return Mode::theory;
  if (s == "practical") return Mode::practical;
  throw PreconditionViolation("mode must be theory or practical, got '" + s + "'");
}

namespace {

std::size_t saturating_count(double x) {
  constexpr auto cap = static_cast<double>(std::numeric_limits<std::size_t>::max() / 2);
  return x >= cap ? static_cast<std::size_t>(cap) : static_cast<std::size_t>(x);
}

}  // namespace

std::size_t Params::xi_count() const { return saturating_count(xi); }
std::size_t Params::tau_count() const { return saturating_count(tau); }

int ceil_log2(std::uint64_t n) {
  int k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

Params derive_params(int n, int hat_ell, double epsilon, Mode mode, const ParamOverrides& overrides) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw BadEpsilon(epsilon);
  if (n < 2) throw PreconditionViolation("derive_params needs n >= 2");
  if (hat_ell < 1) throw PreconditionViolation("derive_params needs hat_ell >= 1");

  Params p;
  p.n = n;
  p.hat_ell = hat_ell;
  p.epsilon = epsilon;
  p.mode = mode;
  p.gamma = overrides.gamma;
  p.c_fallback = overrides.c_fallback;

  const double nn = static_cast<double>(n);
  const double lh = static_cast<double>(hat_ell);
  const double ln_n = std::log(nn);
  p.delta = epsilon / (p.c_fallback * lh * nn * ln_n * ln_n);
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw PreconditionViolation("derived delta outside (0,1)");
  const double log_term = std::log(2.0 * lh * nn * nn / p.delta) + 1.0;
  p.xi = std::ceil(64.0 * lh * lh * lh * ceil_log2(static_cast<std::uint64_t>(n)) * log_term / epsilon);
  p.sigma = 480.0 * log_term * log_term;
  p.tau = std::ceil((p.xi + 1.0) * p.gamma * lh * lh * p.sigma * p.sigma);

  p.xi_cap = overrides.xi_cap.value_or(16.0);
  p.tau_cap = overrides.tau_cap.value_or(4.0 * std::ceil(std::sqrt(nn)));
  if (mode == Mode::practical) {
    p.xi = std::min(p.xi, p.xi_cap);
    p.tau = std::min(p.tau, p.tau_cap);
  }
  if (p.xi < 1.0 || p.tau < 1.0) throw PreconditionViolation("xi and tau must be >= 1");
  return p;
}

int subgraph_level(double diameter) {
  if (!(diameter > 0.0)) throw SingleVertex();
  if (!(diameter > 1.0)) throw PreconditionViolation("subgraph diameter must exceed 1");
  return top_level_for_diameter(diameter);
}

int subgraph_level(const WeightedGraph& g) {
  if (g.vertex_count() < 2) throw SingleVertex();
  return subgraph_level(diameter(g));
}

double depth_bound(const Params& params) {
  return 1.0 + params.tau * params.hat_ell * ceil_log2(static_cast<std::uint64_t>(params.n));
}

std::variant<SplitResult, SplitFailure> split(const WeightedGraph& g, const Params& params, Rng& rng,
                                              const SplitOptions& options) {
  if (g.vertex_count() < 2) throw SingleVertex();
  if (options.force_chain_failure) return SplitFailure{std::nullopt, "injected failure"};

  Rng chain_rng = rng.fork(0);
  auto built = build_chain(g, ChainOptions{params.delta, options.literal_level0}, chain_rng);
  if (auto* failure = std::get_if<ChainFailure>(&built)) {
    return SplitFailure{*failure, std::string("chain failure: ") + to_string(failure->reason) + " at level " +
                                      std::to_string(failure->level)};
  }
  SplitResult out;
  out.chain = std::move(std::get<ClusteringChain>(built));
  out.level = out.chain.top_level;

  PackingResult packed;
  try {
    packed = build_cut_packing(g, out.chain, params.xi_count(), params.tau_count());
  } catch (const EmptyPacking&) {
    return SplitFailure{std::nullopt, "empty cut packing"};
  }
  out.packing = std::move(packed.packing);
  out.oversize_cuts = packed.oversize;

  Rng pick = rng.fork(1);
  out.cut = out.packing.cuts[pick.below(out.packing.cuts.size())];
  out.cutedges = cut_edges(g, out.cut);
  for (const auto& m : out.cut.members) out.portals.push_back(m.center);
  return out;
}

// ---------------------------------------------------------------------------
// Recursive embedding

namespace {

struct SplitFailed {
  std::string reason;
};

struct Builder {
  const WeightedGraph& scaled;    // normalized metric graph
  const WeightedGraph& original;  // metric graph in input scale
  const Params& params;
  const EmbedOptions& options;
  std::vector<Edge> host_edges;
  std::vector<int> parent;
  int next_host = 0;
  EmbeddingMeta meta;

  // Returns the roots of the sub-forest built for vertices.
  std::vector<int> embed(const std::vector<Vertex>& vertices, int depth, const Rng& rng) {
    meta.recursion_depth = std::max(meta.recursion_depth, depth);
    if (vertices.size() == 1) return {vertices[0]};

    const auto sub = induced_subgraph(scaled, vertices);
    const std::size_t call = meta.split_calls++;
    Rng split_rng = rng.fork(0);
    SplitOptions so{options.literal_level0, options.fail_at_split && *options.fail_at_split == call};
    auto res = split(sub.graph, params, split_rng, so);
    if (auto* f = std::get_if<SplitFailure>(&res)) throw SplitFailed{f->reason};
    const auto& s = std::get<SplitResult>(res);
    meta.packing_sizes.push_back(s.packing.cuts.size());
    if (s.cut.size() > params.tau_count()) ++meta.oversize_cuts;
    meta.max_portals = std::max(meta.max_portals, s.portals.size());
    if (options.observer) options.observer(SplitTrace{depth, vertices, &sub.graph, &s});

    std::vector<char> removed(sub.graph.edge_count(), 0);
    for (auto e : s.cutedges) removed[e] = 1;
    const auto comps = connected_components(sub.graph, removed);

    std::vector<int> roots;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      std::vector<Vertex> child;
      child.reserve(comps[k].size());
      for (Vertex local : comps[k]) child.push_back(sub.to_parent[local]);
      if (2 * child.size() > vertices.size() && subgraph_level(induced_diameter(scaled, child)) >= s.level) {
        ++meta.progress_violations;
      }
      const auto child_roots = embed(child, depth + 1, rng.fork(k + 1));
      roots.insert(roots.end(), child_roots.begin(), child_roots.end());
    }

    std::vector<double> full;
    std::vector<double> local_dist;
    InducedSubgraph sub_original;
    if (!options.global_portal_distances) sub_original = induced_subgraph(original, vertices);
    for (Vertex z_local : s.portals) {
      const int copy = next_host++;
      parent.push_back(-1);
      if (options.global_portal_distances) {
        full = dijkstra(original, vertices[z_local]);
        for (Vertex u : vertices) host_edges.push_back({copy, u, full[u]});
      } else {
        local_dist = dijkstra(sub_original.graph, z_local);
        for (std::size_t i = 0; i < vertices.size(); ++i) host_edges.push_back({copy, vertices[i], local_dist[i]});
      }
      for (int r : roots) parent[r] = copy;
      roots.assign(1, copy);
    }
    return roots;
  }
};

HostEmbedding trivial_embedding(int n, std::uint64_t seed) {
  HostEmbedding emb;
  emb.host = WeightedGraph::from_edges(n, {}, LengthPolicy::nonnegative);
  emb.eta.resize(static_cast<std::size_t>(n));
  std::iota(emb.eta.begin(), emb.eta.end(), 0);
  emb.forest_parent.assign(static_cast<std::size_t>(n), -1);
  emb.meta.seed = seed;
  return emb;
}

}  // namespace

HostEmbedding embed_top(const WeightedGraph& g, double epsilon, Mode mode, std::uint64_t seed,
                        const EmbedOptions& options) {
  const int n = g.vertex_count();
  if (n == 0) throw PreconditionViolation("empty graph");
  if (!is_connected(g)) throw DisconnectedGraph();
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw BadEpsilon(epsilon);
  if (n == 1) {
    auto emb = trivial_embedding(1, seed);
    emb.meta.params.n = 1;
    emb.meta.params.epsilon = epsilon;
    emb.meta.params.mode = mode;
    return emb;
  }

  const auto metric = metric_closure_weights(g);
  const auto norm = normalize(metric);
  const Params params = derive_params(n, hat_ell(metric), epsilon, mode, options.overrides);

  Builder b{norm.graph, metric, params, options, {}, std::vector<int>(static_cast<std::size_t>(n), -1), n, {}};
  b.meta.seed = seed;
  b.meta.params = params;
  b.meta.scale = norm.scale;

  std::vector<Vertex> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  try {
    b.embed(all, 0, Rng(seed));
  } catch (const SplitFailed& failure) {
    auto emb = frt_embed(g, mix_seed(seed, 0xf47));
    emb.meta.seed = seed;
    emb.meta.params = params;
    emb.meta.scale = norm.scale;
    emb.meta.fallback_used = true;
    emb.meta.fallback_reason = failure.reason;
    emb.meta.split_calls = b.meta.split_calls;
    return emb;
  }

  HostEmbedding emb;
  emb.host = WeightedGraph::from_edges(b.next_host, std::move(b.host_edges), LengthPolicy::nonnegative);
  emb.eta.resize(static_cast<std::size_t>(n));
  std::iota(emb.eta.begin(), emb.eta.end(), 0);
  emb.forest_parent = std::move(b.parent);
  emb.meta = std::move(b.meta);
  return emb;
}

// ---------------------------------------------------------------------------
// FRT

HostEmbedding frt_embed(const WeightedGraph& g, std::uint64_t seed) {
  const int n = g.vertex_count();
  Rng rng(seed);
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  const double beta = std::exp2(rng.uniform01());
  auto emb = frt_embed_with(g, perm, beta);
  emb.meta.seed = seed;
  return emb;
}

HostEmbedding frt_embed_with(const WeightedGraph& g, std::span<const Vertex> permutation, double beta) {
  const int n = g.vertex_count();
  if (n == 0) throw PreconditionViolation("empty graph");
  if (!is_connected(g)) throw DisconnectedGraph();
  if (!(beta >= 1.0 && beta < 2.0)) throw PreconditionViolation("beta must lie in [1,2)");
  if (permutation.size() != static_cast<std::size_t>(n)) throw PreconditionViolation("permutation size mismatch");
  if (n == 1) {
    auto emb = trivial_embedding(1, 0);
    emb.meta.fallback_used = false;
    return emb;
  }

  const auto dist = all_pairs(g);
  const double dmin = g.min_edge_length();
  double diam = 0.0;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) diam = std::max(diam, dist(a, b));
  }
  int top = 1;
  while (std::ldexp(dmin, top - 1) < diam) ++top;

  // Internal nodes get ids n, n+1, ... top-down; leaves are the vertices.
  std::vector<Edge> edges;
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> cluster_node(static_cast<std::size_t>(n));
  int next = n;
  parent.push_back(-1);
  std::fill(cluster_node.begin(), cluster_node.end(), next++);

  for (int level = top - 1; level >= 0; --level) {
    const double radius = beta * std::ldexp(dmin, level - 1);
    const double edge_len = std::ldexp(dmin, level + 1);
    // (parent node, center) -> node at this level
    std::vector<std::pair<std::pair<int, Vertex>, int>> made;
    std::vector<int> next_node(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      Vertex center = v;
      for (Vertex c : permutation) {
        if (dist(v, c) <= radius) {
          center = c;
          break;
        }
      }
      const std::pair<int, Vertex> key{cluster_node[v], center};
      auto it = std::find_if(made.begin(), made.end(), [&](const auto& e) { return e.first == key; });
      int node;
      if (level == 0) {
        node = v;  // singletons at the bottom level
        parent[v] = cluster_node[v];
        edges.push_back({v, cluster_node[v], edge_len});
      } else if (it != made.end()) {
        node = it->second;
      } else {
        node = next++;
        parent.push_back(cluster_node[v]);
        edges.push_back({node, cluster_node[v], edge_len});
        made.emplace_back(key, node);
      }
      next_node[v] = node;
    }
    cluster_node = std::move(next_node);
  }

  HostEmbedding emb;
  emb.host = WeightedGraph::from_edges(next, std::move(edges));
  emb.eta.resize(static_cast<std::size_t>(n));
  std::iota(emb.eta.begin(), emb.eta.end(), 0);
  emb.forest_parent = std::move(parent);
  return emb;
}

// ---------------------------------------------------------------------------

int treedepth_of(std::span<const int> parent) {
  const auto n = parent.size();
  std::vector<int> depth(n, 0);  // 0 = unknown
  std::vector<char> on_path(n, 0);
  int best = 0;
  std::vector<std::size_t> path;
  for (std::size_t v = 0; v < n; ++v) {
    if (depth[v]) continue;
    std::size_t x = v;
    while (!depth[x]) {
      if (on_path[x]) throw CyclicParentArray();
      on_path[x] = 1;
      path.push_back(x);
      const int p = parent[x];
      if (p < 0) break;
      if (static_cast<std::size_t>(p) >= n) throw CyclicParentArray();
      x = static_cast<std::size_t>(p);
    }
    int d = depth[x] ? depth[x] : 0;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      d = (*it == x && !depth[x]) ? 1 : d + 1;
      depth[*it] = d;
      on_path[*it] = 0;
    }
    path.clear();
    best = std::max(best, depth[v]);
  }
  return best;
}

bool is_elimination_forest(const WeightedGraph& host, std::span<const int> parent) {
  const int n = host.vertex_count();
  if (parent.size() != static_cast<std::size_t>(n)) return false;
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  auto depth_of = [&](int v) {
    int d = 0;
    for (int x = v; x >= 0; x = parent[x]) {
      if (depth[x] >= 0) {
        d += depth[x];
        break;
      }
      ++d;
    }
    return d;
  };
  for (int v = 0; v < n; ++v) depth[v] = depth_of(v);
  for (const auto& e : host.edges()) {
    int a = e.u;
    int b = e.v;
    if (depth[a] < depth[b]) std::swap(a, b);
    while (depth[a] > depth[b]) a = parent[a];
    if (a != b) return false;
  }
  return true;
}

}  // namespace mfembed
