#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mfembed/embedder.hpp"
#include "mfembed/graph.hpp"

namespace mfembed {

using VertexPair = std::pair<Vertex, Vertex>;

// Ratios below 1 - kContractionTolerance count as non-contraction violations.
inline constexpr double kContractionTolerance = 1e-9;

struct PairSample {
  Vertex u = 0;
  Vertex v = 0;
  double dist_g = 0.0;
  double dist_h = 0.0;
  double ratio = 0.0;

  friend bool operator==(const PairSample&, const PairSample&) = default;
};

// Exact distances in G and in the host for each pair. Throws PairOutOfRange
// for ids outside G or u == v.
std::vector<PairSample> evaluate(const WeightedGraph& g, const HostEmbedding& emb, std::span<const VertexPair> pairs);

// count unordered pairs u < v drawn without replacement, sorted; every pair if
// count is empty or at least n(n-1)/2.
std::vector<VertexPair> sample_pairs(int n, std::optional<std::size_t> count, Rng& rng);

struct PairRecord {
  Vertex u = 0;
  Vertex v = 0;
  double dist_g = 0.0;
  std::vector<double> dist_h;  // per run
  std::vector<double> ratio;   // per run
  double mean_ratio = 0.0;

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

struct DistortionStats {
  std::vector<PairRecord> pairs;
  double max_pair_mean = 0.0;
  double global_mean = 0.0;
  double max_single_ratio = 0.0;
  std::size_t violations = 0;

  friend bool operator==(const DistortionStats&, const DistortionStats&) = default;
};

// Folds per-run samples (runs[k][p] for pair p) in run order.
DistortionStats aggregate(std::span<const std::vector<PairSample>> runs);

struct RunSummary {
  std::uint64_t seed = 0;
  int treedepth = 0;
  int host_vertices = 0;
  std::size_t host_edges = 0;
  bool fallback_used = false;
  std::vector<std::size_t> packing_sizes;
  std::size_t oversize_cuts = 0;
  int recursion_depth = 0;
  std::size_t progress_violations = 0;
  bool forest_valid = true;
  bool depth_within_bound = true;
  double wall_ms = 0.0;  // excluded from equality

  friend bool operator==(const RunSummary& a, const RunSummary& b) {
    return a.seed == b.seed && a.treedepth == b.treedepth && a.host_vertices == b.host_vertices &&
           a.host_edges == b.host_edges && a.fallback_used == b.fallback_used &&
           a.packing_sizes == b.packing_sizes && a.oversize_cuts == b.oversize_cuts &&
           a.recursion_depth == b.recursion_depth && a.progress_violations == b.progress_violations &&
           a.forest_valid == b.forest_valid && a.depth_within_bound == b.depth_within_bound;
  }
};

RunSummary summarize_run(const HostEmbedding& emb, std::uint64_t seed);

struct StructureMetrics {
  int max_treedepth = 0;
  double mean_treedepth = 0.0;
  int max_host_vertices = 0;
  double fallback_rate = 0.0;
  double mean_packing_size = 0.0;
  std::size_t oversize_cuts = 0;
  std::size_t forest_violations = 0;
  std::size_t depth_bound_violations = 0;
  std::size_t progress_violations = 0;

  friend bool operator==(const StructureMetrics&, const StructureMetrics&) = default;
};

StructureMetrics structure_of(std::span<const RunSummary> runs);

struct MethodReport {
  std::string method;  // "mfembed" or "frt"
  DistortionStats stats;
  StructureMetrics structure;
  std::vector<RunSummary> runs;

  friend bool operator==(const MethodReport&, const MethodReport&) = default;
};

struct Report {
  static constexpr int kSchemaVersion = 1;
  int schema_version = kSchemaVersion;
  std::string instance;
  int n = 0;
  std::size_t m = 0;
  double epsilon = 0.0;
  std::string mode;
  int runs = 0;
  std::optional<std::size_t> pairs_requested;  // empty = all
  std::uint64_t seed = 0;
  std::string baseline = "none";
  std::vector<VertexPair> pairs;
  MethodReport primary;
  std::optional<MethodReport> reference;  // baseline results
  double wall_ms = 0.0;

  // True when any exact invariant failed in a recorded run.
  bool has_violations() const;

  friend bool operator==(const Report& a, const Report& b) {
    return a.schema_version == b.schema_version && a.instance == b.instance && a.n == b.n && a.m == b.m &&
           a.epsilon == b.epsilon && a.mode == b.mode && a.runs == b.runs &&
           a.pairs_requested == b.pairs_requested && a.seed == b.seed && a.baseline == b.baseline &&
           a.pairs == b.pairs && a.primary == b.primary && a.reference == b.reference;
  }
};

struct ExperimentConfig {
  WeightedGraph graph;
  std::string instance = "graph";
  double epsilon = 0.5;
  Mode mode = Mode::practical;
  EmbedOptions embed;
  int runs = 1;
  std::optional<std::size_t> pairs;
  std::uint64_t seed = 0;
  bool baseline_frt = false;
  // Seed of run k; defaults to mix_seed(seed, k).
  std::function<std::uint64_t(std::uint64_t master, int k)> run_seed;
};

// R independent embeddings evaluated on one pair sample. Throws
// PreconditionViolation for runs < 1 or an explicit pair count of 0, and
// DisconnectedGraph.
Report run_experiment(const ExperimentConfig& config);

// Report for one given embedding (the eval subcommand).
Report evaluate_embedding(const WeightedGraph& g, const HostEmbedding& emb, std::optional<std::size_t> pairs,
                          std::uint64_t seed, const std::string& instance);

// --- serialization ----------------------------------------------------------

using Json = nlohmann::ordered_json;

// x rounded to 12 significant digits.
double round12(double x);

Json to_json(const Params& p);
Json to_json(const HostEmbedding& emb);
// Throws ParseError on malformed documents.
HostEmbedding embedding_from_json(const Json& j);

Json to_json(const Report& r, bool include_timing = true);
Report report_from_json(const Json& j);

// One row per sampled pair: u,v,dist_g,mean_ratio,max_ratio,runs.
void write_csv(const Report& r, std::ostream& out);

std::string dump(const Json& j);
Json load_json(const std::string& path);
void save_text(const std::string& text, const std::string& path);

}  // namespace mfembed
