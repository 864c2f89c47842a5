#include "mfembed/harness.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

#include "mfembed/errors.hpp"

namespace mfembed {

std::vector<PairSample> evaluate(const WeightedGraph& g, const HostEmbedding& emb,
                                 std::span<const VertexPair> pairs) {
  const int n = g.vertex_count();
  if (emb.eta.size() != static_cast<std::size_t>(n)) throw PreconditionViolation("embedding does not match graph");
  for (auto [u, v] : pairs) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw PairOutOfRange("pair (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
    }
  }
  // One Dijkstra per distinct source in each graph.
  std::map<Vertex, std::pair<std::vector<double>, std::vector<double>>> from;
  std::vector<PairSample> out;
  out.reserve(pairs.size());
  for (auto [u, v] : pairs) {
    auto it = from.find(u);
    if (it == from.end()) {
      it = from.emplace(u, std::make_pair(dijkstra(g, u), dijkstra(emb.host, emb.eta[u]))).first;
    }
    PairSample s{u, v, it->second.first[v], it->second.second[emb.eta[v]], 0.0};
    s.ratio = s.dist_h / s.dist_g;
    out.push_back(s);
  }
  return out;
}

std::vector<VertexPair> sample_pairs(int n, std::optional<std::size_t> count, Rng& rng) {
  std::vector<VertexPair> all;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) all.emplace_back(u, v);
  }
  if (!count || *count >= all.size()) return all;
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < *count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(all.size() - i));
    std::swap(all[i], all[j]);
  }
  all.resize(*count);
  std::sort(all.begin(), all.end());
  return all;
}

DistortionStats aggregate(std::span<const std::vector<PairSample>> runs) {
  DistortionStats st;
  if (runs.empty()) return st;
  const std::size_t pairs = runs[0].size();
  double sum_means = 0.0;
  for (std::size_t p = 0; p < pairs; ++p) {
    PairRecord rec{runs[0][p].u, runs[0][p].v, runs[0][p].dist_g, {}, {}, 0.0};
    double sum = 0.0;
    for (const auto& run : runs) {
      rec.dist_h.push_back(run[p].dist_h);
      rec.ratio.push_back(run[p].ratio);
      sum += run[p].ratio;
      st.max_single_ratio = std::max(st.max_single_ratio, run[p].ratio);
      if (run[p].ratio < 1.0 - kContractionTolerance) ++st.violations;
    }
    rec.mean_ratio = sum / static_cast<double>(runs.size());
    st.max_pair_mean = std::max(st.max_pair_mean, rec.mean_ratio);
    sum_means += rec.mean_ratio;
    st.pairs.push_back(std::move(rec));
  }
  if (pairs > 0) st.global_mean = sum_means / static_cast<double>(pairs);
  return st;
}

RunSummary summarize_run(const HostEmbedding& emb, std::uint64_t seed) {
  RunSummary s;
  s.seed = seed;
  s.treedepth = treedepth_of(emb.forest_parent);
  s.host_vertices = emb.host.vertex_count();
  s.host_edges = emb.host.edge_count();
  s.fallback_used = emb.meta.fallback_used;
  s.packing_sizes = emb.meta.packing_sizes;
  s.oversize_cuts = emb.meta.oversize_cuts;
  s.recursion_depth = emb.meta.recursion_depth;
  s.progress_violations = emb.meta.progress_violations;
  s.forest_valid = is_elimination_forest(emb.host, emb.forest_parent);
  if (!emb.meta.fallback_used && emb.meta.params.n >= 2) {
    s.depth_within_bound = s.treedepth <= depth_bound(emb.meta.params);
  }
  return s;
}

StructureMetrics structure_of(std::span<const RunSummary> runs) {
  StructureMetrics m;
  if (runs.empty()) return m;
  double depth_sum = 0.0;
  double packing_sum = 0.0;
  std::size_t packing_calls = 0;
  std::size_t fallbacks = 0;
  for (const auto& r : runs) {
    m.max_treedepth = std::max(m.max_treedepth, r.treedepth);
    depth_sum += r.treedepth;
    m.max_host_vertices = std::max(m.max_host_vertices, r.host_vertices);
    if (r.fallback_used) ++fallbacks;
    for (auto p : r.packing_sizes) packing_sum += static_cast<double>(p);
    packing_calls += r.packing_sizes.size();
    m.oversize_cuts += r.oversize_cuts;
    if (!r.forest_valid) ++m.forest_violations;
    if (!r.depth_within_bound) ++m.depth_bound_violations;
    m.progress_violations += r.progress_violations;
  }
  const auto count = static_cast<double>(runs.size());
  m.mean_treedepth = depth_sum / count;
  m.fallback_rate = static_cast<double>(fallbacks) / count;
  if (packing_calls > 0) m.mean_packing_size = packing_sum / static_cast<double>(packing_calls);
  return m;
}

bool Report::has_violations() const {
  auto bad = [](const MethodReport& m) {
    return m.stats.violations > 0 || m.structure.forest_violations > 0 || m.structure.depth_bound_violations > 0 ||
           m.structure.progress_violations > 0;
  };
  return bad(primary) || (reference && bad(*reference));
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

MethodReport run_method(const std::string& name, int runs, const std::vector<VertexPair>& pairs,
                        const WeightedGraph& g, const std::function<std::uint64_t(int)>& seed_of,
                        const std::function<HostEmbedding(std::uint64_t)>& make) {
  MethodReport out;
  out.method = name;
  std::vector<std::vector<PairSample>> samples;
  for (int k = 0; k < runs; ++k) {
    const auto seed = seed_of(k);
    const auto start = Clock::now();
    const auto emb = make(seed);
    const double ms = elapsed_ms(start);
    samples.push_back(evaluate(g, emb, pairs));
    out.runs.push_back(summarize_run(emb, seed));
    out.runs.back().wall_ms = ms;
  }
  out.stats = aggregate(samples);
  out.structure = structure_of(out.runs);
  return out;
}

}  // namespace

Report run_experiment(const ExperimentConfig& config) {
  if (config.runs < 1) throw PreconditionViolation("runs must be >= 1");
  if (config.pairs && *config.pairs == 0) throw PreconditionViolation("pair count must be >= 1");
  const auto& g = config.graph;
  if (g.vertex_count() == 0) throw PreconditionViolation("empty graph");
  if (!is_connected(g)) throw DisconnectedGraph();
  const auto start = Clock::now();

  Report r;
  r.instance = config.instance;
  r.n = g.vertex_count();
  r.m = g.edge_count();
  r.epsilon = config.epsilon;
  r.mode = to_string(config.mode);
  r.runs = config.runs;
  r.pairs_requested = config.pairs;
  r.seed = config.seed;
  r.baseline = config.baseline_frt ? "frt" : "none";
  Rng pair_rng = Rng(config.seed).fork(0x9a1);
  r.pairs = sample_pairs(r.n, config.pairs, pair_rng);

  auto seed_of = [&](int k) {
    return config.run_seed ? config.run_seed(config.seed, k) : mix_seed(config.seed, static_cast<std::uint64_t>(k));
  };
  r.primary = run_method("mfembed", config.runs, r.pairs, g, seed_of, [&](std::uint64_t s) {
    return embed_top(g, config.epsilon, config.mode, s, config.embed);
  });
  if (config.baseline_frt) {
    r.reference = run_method("frt", config.runs, r.pairs, g, seed_of,
                             [&](std::uint64_t s) { return frt_embed(g, mix_seed(s, 0xf47)); });
  }
  r.wall_ms = elapsed_ms(start);
  return r;
}

Report evaluate_embedding(const WeightedGraph& g, const HostEmbedding& emb, std::optional<std::size_t> pairs,
                          std::uint64_t seed, const std::string& instance) {
  if (pairs && *pairs == 0) throw PreconditionViolation("pair count must be >= 1");
  const auto start = Clock::now();
  Report r;
  r.instance = instance;
  r.n = g.vertex_count();
  r.m = g.edge_count();
  r.epsilon = emb.meta.params.epsilon;
  r.mode = to_string(emb.meta.params.mode);
  r.runs = 1;
  r.pairs_requested = pairs;
  r.seed = seed;
  Rng pair_rng = Rng(seed).fork(0x9a1);
  r.pairs = sample_pairs(r.n, pairs, pair_rng);
  r.primary.method = "given";
  const std::vector<std::vector<PairSample>> samples{evaluate(g, emb, r.pairs)};
  r.primary.stats = aggregate(samples);
  r.primary.runs.push_back(summarize_run(emb, emb.meta.seed));
  r.primary.structure = structure_of(r.primary.runs);
  r.wall_ms = elapsed_ms(start);
  return r;
}

}  // namespace mfembed
