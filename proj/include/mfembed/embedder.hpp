#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mfembed/cutpack.hpp"
#include "mfembed/graph.hpp"
#include "mfembed/hierarchy.hpp"
#include "mfembed/rng.hpp"

namespace mfembed {

enum class Mode { theory, practical };

const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

struct ParamOverrides {
  std::optional<double> xi_cap;   // practical default 16
  std::optional<double> tau_cap;  // practical default 4 * ceil(sqrt(n))
  double gamma = 1.0;
  double c_fallback = 64.0;
};

// Recursion parameters. xi and tau are integer-valued but held as doubles
// because the theory-mode tau overflows 64-bit integers already at n = 100.
struct Params {
  int n = 0;
  int hat_ell = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double xi = 0.0;
  double sigma = 0.0;
  double tau = 0.0;
  double c_fallback = 64.0;
  double gamma = 1.0;
  Mode mode = Mode::practical;
  double xi_cap = 0.0;
  double tau_cap = 0.0;

  std::size_t xi_count() const;
  std::size_t tau_count() const;
};

// Smallest k with 2^k >= n.
int ceil_log2(std::uint64_t n);

// Throws BadEpsilon unless 0 < epsilon < 1; PreconditionViolation for n < 2,
// hat_ell < 1, or a derived delta outside (0, 1).
Params derive_params(int n, int hat_ell, double epsilon, Mode mode, const ParamOverrides& overrides = {});

// The l' with 2^(l'-1) < D <= 2^l'. Throws SingleVertex.
int subgraph_level(double diameter);
int subgraph_level(const WeightedGraph& g);

struct SplitOptions {
  bool literal_level0 = false;
  bool force_chain_failure = false;
};

struct SplitResult {
  std::vector<std::size_t> cutedges;  // edge indices of the split graph
  std::vector<Vertex> portals;        // one center per member of cut
  Cut cut;
  int level = 0;
  ClusteringChain chain;
  CutPacking packing;  // the packing cut was drawn from ({V} removed)
  std::size_t oversize_cuts = 0;
};

struct SplitFailure {
  std::optional<ChainFailure> chain_failure;
  std::string reason;
};

// Chain + cut packing + uniform choice of one cut. Portals are cluster centers.
std::variant<SplitResult, SplitFailure> split(const WeightedGraph& g, const Params& params, Rng& rng,
                                              const SplitOptions& options = {});

struct EmbeddingMeta {
  std::uint64_t seed = 0;
  Params params;
  bool fallback_used = false;
  std::string fallback_reason;
  double scale = 1.0;  // normalization factor applied internally
  std::vector<std::size_t> packing_sizes;  // |F'| per split call
  std::size_t split_calls = 0;
  std::size_t oversize_cuts = 0;      // oversize cuts drawn as the split cut
  std::size_t max_portals = 0;        // largest portal set of one call
  int recursion_depth = 0;            // deepest call index, root = 0
  std::size_t progress_violations = 0;
};

struct HostEmbedding {
  WeightedGraph host;
  std::vector<Vertex> eta;        // input vertex -> host vertex
  std::vector<int> forest_parent; // -1 for roots
  EmbeddingMeta meta;
};

// Seen once per successful split during embedding.
struct SplitTrace {
  int depth = 0;
  std::span<const Vertex> vertices;   // input ids of the split subgraph
  const WeightedGraph* subgraph = nullptr;  // normalized, local ids
  const SplitResult* result = nullptr;
};

struct EmbedOptions {
  ParamOverrides overrides;
  bool global_portal_distances = false;
  bool literal_level0 = false;
  // Makes the split call with this 0-based index report failure.
  std::optional<std::size_t> fail_at_split;
  std::function<void(const SplitTrace&)> observer;
};

// Full pipeline: metric closure, normalization, parameters, recursive
// embedding; any split failure discards the partial result and returns the
// FRT embedding of the whole graph. Host lengths are in the input scale.
// Throws DisconnectedGraph.
HostEmbedding embed_top(const WeightedGraph& g, double epsilon, Mode mode, std::uint64_t seed,
                        const EmbedOptions& options = {});

// Randomized 2-HST embedding (uniform permutation, beta = 2^U in [1, 2)).
HostEmbedding frt_embed(const WeightedGraph& g, std::uint64_t seed);
// Same with the randomness supplied: permutation[k] is the k-th center.
HostEmbedding frt_embed_with(const WeightedGraph& g, std::span<const Vertex> permutation, double beta);

// Number of vertices on the longest root-to-leaf path. Throws CyclicParentArray.
int treedepth_of(std::span<const int> parent);

// Every host edge joins an ancestor-descendant pair.
bool is_elimination_forest(const WeightedGraph& host, std::span<const int> parent);

// 1 + tau * hat_ell * ceil(log2 n)
double depth_bound(const Params& params);

}  // namespace mfembed
