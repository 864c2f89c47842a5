// mfembed command-line driver.
//
// Exit codes: 0 success, 1 invariant violation detected, 2 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mfembed/cutpack.hpp"
#include "mfembed/embedder.hpp"
#include "mfembed/errors.hpp"
#include "mfembed/graph.hpp"
#include "mfembed/harness.hpp"
#include "mfembed/hierarchy.hpp"
#include "mfembed/partition.hpp"

using namespace mfembed;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ViolationFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact all-pairs work is only practical up to this size.
constexpr int kMaxVertices = 20000;

WeightedGraph load_input(const std::string& path) {
  WeightedGraph g;
  try {
    g = path == "-" ? read_graph(std::cin) : load_graph(path);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  if (g.vertex_count() > kMaxVertices) {
    throw InputError("graph has " + std::to_string(g.vertex_count()) + " vertices; the limit is " +
                     std::to_string(kMaxVertices));
  }
  return g;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    save_text(text, path);
  }
}

std::optional<std::size_t> parse_pairs(const std::string& s) {
  if (s == "all") return std::nullopt;
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size() || v < 1) throw InputError("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw InputError("--pairs must be a positive integer or 'all', got '" + s + "'");
  }
}

// Exact non-contraction and forest validity on every pair of small inputs.
void verify_embedding(const WeightedGraph& g, const HostEmbedding& emb) {
  if (!is_elimination_forest(emb.host, emb.forest_parent)) throw ViolationFound("host edge not ancestor-related");
  if (g.vertex_count() > 200) return;
  Rng none(0);
  const auto pairs = sample_pairs(g.vertex_count(), std::nullopt, none);
  for (const auto& s : evaluate(g, emb, pairs)) {
    if (s.ratio < 1.0 - kContractionTolerance) {
      throw ViolationFound("contraction at pair (" + std::to_string(s.u) + ", " + std::to_string(s.v) + ")");
    }
  }
}

struct EmbedFlags {
  double epsilon = 0.5;
  std::string mode = "practical";
  std::optional<double> xi_cap;
  std::optional<double> tau_cap;
  double gamma = 1.0;
  double c_fallback = 64.0;
  bool global_portals = false;
  bool literal_level0 = false;

  void attach(CLI::App* app) {
    app->add_option("--epsilon", epsilon, "distortion parameter in (0,1)");
    app->add_option("--mode", mode, "theory or practical")->check(CLI::IsMember({"theory", "practical"}));
    app->add_option("--xi-cap", xi_cap, "practical cap on packing size");
    app->add_option("--tau-cap", tau_cap, "practical cap on cut size");
    app->add_option("--gamma", gamma, "constant in tau");
    app->add_option("--c-fallback", c_fallback, "constant in delta");
    app->add_flag("--global-portal-distances", global_portals, "wire portals with distances in the whole graph");
    app->add_flag("--literal-level0", literal_level0, "carve level 0 with r_0 instead of singletons");
  }

  EmbedOptions options() const {
    EmbedOptions o;
    o.overrides.xi_cap = xi_cap;
    o.overrides.tau_cap = tau_cap;
    o.overrides.gamma = gamma;
    o.overrides.c_fallback = c_fallback;
    o.global_portal_distances = global_portals;
    o.literal_level0 = literal_level0;
    return o;
  }
};

Json embed_components(const WeightedGraph& g, const EmbedFlags& flags, std::uint64_t seed) {
  const auto comps = connected_components(g);
  const Mode mode = parse_mode(flags.mode);
  if (comps.size() == 1) {
    const auto emb = embed_top(g, flags.epsilon, mode, seed, flags.options());
    verify_embedding(g, emb);
    return to_json(emb);
  }
  // Each component independently, with ids local to the component.
  Json out;
  out["n"] = g.vertex_count();
  out["seed"] = seed;
  Json list = Json::array();
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto sub = induced_subgraph(g, comps[k]);
    const auto emb = embed_top(sub.graph, flags.epsilon, mode, mix_seed(seed, k), flags.options());
    verify_embedding(sub.graph, emb);
    list.push_back({{"vertices", comps[k]}, {"embedding", to_json(emb)}});
  }
  out["components"] = std::move(list);
  return out;
}

Json clustering_json(const Clustering& c) {
  Json clusters = Json::array();
  for (std::size_t k = 0; k < c.size(); ++k) {
    clusters.push_back({{"center", c.centers[k]},
                        {"x", c.samples.empty() ? 0.0 : c.samples[k]},
                        {"radius", c.radii.empty() ? c.base_radius : c.radii[k]},
                        {"vertices", c.clusters[k]}});
  }
  return {{"r", c.base_radius}, {"clusters", std::move(clusters)}};
}

NormalizedGraph prepared(const WeightedGraph& g) {
  if (!is_connected(g)) throw InputError("graph is disconnected");
  return normalize(metric_closure_weights(g));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized low-treedepth embeddings of planar and minor-free graphs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph instance");
  std::string gen_kind;
  GeneratorSpec gen_spec;
  std::string gen_weights = "unit";
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("kind", gen_kind, "grid, cycle, star or path")->required();
  gen->add_option("--rows", gen_spec.rows, "grid rows");
  gen->add_option("--cols", gen_spec.cols, "grid columns");
  gen->add_option("--n", gen_spec.n, "vertex count for cycle, star, path");
  gen->add_option("--weights", gen_weights, "unit or uniform:LO:HI");
  gen->add_option("--seed", gen_seed, "weight seed");
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");

  // embed
  auto* embed = app.add_subcommand("embed", "embed a graph into a low-treedepth host");
  std::string in_path;
  std::string out_path;
  std::uint64_t seed = 0;
  EmbedFlags flags;
  embed->add_option("-i,--input", in_path, "graph file")->required();
  embed->add_option("--seed", seed, "random seed");
  embed->add_option("-o,--output", out_path, "embedding JSON (default stdout)");
  flags.attach(embed);

  // frt
  auto* frt = app.add_subcommand("frt", "FRT tree embedding");
  frt->add_option("-i,--input", in_path, "graph file")->required();
  frt->add_option("--seed", seed, "random seed");
  frt->add_option("-o,--output", out_path, "embedding JSON (default stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate an embedding");
  std::string emb_path;
  std::string pairs_arg = "all";
  std::string csv_path;
  eval->add_option("-i,--input", in_path, "graph file")->required();
  eval->add_option("-e,--embedding", emb_path, "embedding JSON")->required();
  eval->add_option("--pairs", pairs_arg, "sampled pair count or 'all'");
  eval->add_option("--seed", seed, "pair sampling seed");
  eval->add_option("-o,--output", out_path, "report JSON (default stdout)");
  eval->add_option("--csv", csv_path, "per-pair CSV");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Monte-Carlo distortion experiment");
  int runs = 1;
  std::string baseline = "none";
  bool no_timing = false;
  exp->add_option("-i,--input", in_path, "graph file")->required();
  exp->add_option("--runs", runs, "number of embeddings")->check(CLI::PositiveNumber);
  exp->add_option("--pairs", pairs_arg, "sampled pair count or 'all'");
  exp->add_option("--seed", seed, "master seed");
  exp->add_option("--baseline", baseline, "none or frt")->check(CLI::IsMember({"none", "frt"}));
  exp->add_option("-o,--output", out_path, "report JSON (default stdout)");
  exp->add_option("--csv", csv_path, "per-pair CSV");
  exp->add_flag("--no-timing", no_timing, "omit wall-clock fields");
  flags.attach(exp);

  // partition
  auto* part = app.add_subcommand("partition", "one level of ball carving (debug)");
  double radius = 1.0;
  std::string order_path;
  part->add_option("-i,--input", in_path, "graph file")->required();
  part->add_option("--r", radius, "base radius")->required();
  part->add_option("--seed", seed, "random seed");
  part->add_option("--order-file", order_path, "whitespace-separated vertex order");

  // chain
  auto* chain = app.add_subcommand("chain", "clustering chain (debug)");
  double delta = 0.1;
  chain->add_option("-i,--input", in_path, "graph file")->required();
  chain->add_option("--delta", delta, "failure probability in (0,1)");
  chain->add_option("--seed", seed, "random seed");
  chain->add_flag("--literal-level0", flags.literal_level0, "carve level 0 with r_0");

  // cuts
  auto* cuts = app.add_subcommand("cuts", "cut packing of one split (debug)");
  cuts->add_option("-i,--input", in_path, "graph file")->required();
  cuts->add_option("--seed", seed, "random seed");
  flags.attach(cuts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (gen->parsed()) {
      GeneratorSpec spec = gen_spec;
      WeightModel weights;
      try {
        spec.kind = parse_graph_kind(gen_kind);
        weights = parse_weight_model(gen_weights);
      } catch (const Error& e) {
        throw InputError(e.what());
      }
      std::ostringstream os;
      write_graph(generate(spec, weights, gen_seed), os);
      emit(os.str(), gen_out);
      return kOk;
    }

    if (embed->parsed()) {
      const auto g = load_input(in_path);
      emit(dump(embed_components(g, flags, seed)), out_path);
      return kOk;
    }

    if (frt->parsed()) {
      const auto g = load_input(in_path);
      if (!is_connected(g)) throw InputError("graph is disconnected");
      const auto emb = frt_embed(g, seed);
      verify_embedding(g, emb);
      emit(dump(to_json(emb)), out_path);
      return kOk;
    }

    if (eval->parsed()) {
      const auto g = load_input(in_path);
      if (!is_connected(g)) throw InputError("graph is disconnected");
      HostEmbedding emb;
      try {
        emb = embedding_from_json(load_json(emb_path));
      } catch (const Error& e) {
        throw InputError(e.what());
      }
      if (emb.eta.size() != static_cast<std::size_t>(g.vertex_count())) {
        throw InputError("embedding has " + std::to_string(emb.eta.size()) + " vertices, graph has " +
                         std::to_string(g.vertex_count()));
      }
      const auto report = evaluate_embedding(g, emb, parse_pairs(pairs_arg), seed, in_path);
      emit(dump(to_json(report)), out_path);
      if (!csv_path.empty()) {
        std::ostringstream os;
        write_csv(report, os);
        save_text(os.str(), csv_path);
      }
      return report.has_violations() ? kViolation : kOk;
    }

    if (exp->parsed()) {
      ExperimentConfig config;
      config.graph = load_input(in_path);
      if (!is_connected(config.graph)) throw InputError("graph is disconnected");
      config.instance = in_path;
      config.epsilon = flags.epsilon;
      config.mode = parse_mode(flags.mode);
      config.embed = flags.options();
      config.runs = runs;
      config.pairs = parse_pairs(pairs_arg);
      config.seed = seed;
      config.baseline_frt = baseline == "frt";
      const auto report = run_experiment(config);
      emit(dump(to_json(report, !no_timing)), out_path);
      if (!csv_path.empty()) {
        std::ostringstream os;
        write_csv(report, os);
        save_text(os.str(), csv_path);
      }
      return report.has_violations() ? kViolation : kOk;
    }

    if (part->parsed()) {
      const auto g = load_input(in_path);
      if (!is_connected(g)) throw InputError("graph is disconnected");
      auto order = TieBreakOrder::identity(g.vertex_count());
      if (!order_path.empty()) {
        std::ifstream in(order_path);
        if (!in) throw InputError("cannot open " + order_path);
        std::vector<Vertex> seq;
        for (Vertex v; in >> v;) seq.push_back(v);
        try {
          order = TieBreakOrder::from_sequence(std::move(seq));
        } catch (const Error& e) {
          throw InputError(e.what());
        }
        if (order.size() != g.vertex_count()) throw InputError("order file does not cover every vertex");
      }
      if (!(radius > 0.0)) throw InputError("--r must be positive");
      Rng rng(seed);
      const auto c = single_level_partition(g, radius, order, rng);
      emit(dump(clustering_json(c)), "");
      return kOk;
    }

    if (chain->parsed()) {
      const auto g = load_input(in_path);
      if (!(delta > 0.0 && delta < 1.0)) throw InputError("--delta must lie in (0,1)");
      const auto norm = prepared(g);
      Rng rng(seed);
      const auto result = build_chain(norm.graph, ChainOptions{delta, flags.literal_level0}, rng);
      Json j;
      j["scale"] = norm.scale;
      if (const auto* f = std::get_if<ChainFailure>(&result)) {
        j["failure"] = {{"level", f->level}, {"reason", to_string(f->reason)}, {"cluster", f->cluster}};
      } else {
        const auto& c = std::get<ClusteringChain>(result);
        j["top_level"] = c.top_level;
        j["sigma"] = c.sigma;
        j["radii"] = c.radii;
        Json levels = Json::array();
        for (const auto& level : c.levels) {
          Json list = Json::array();
          for (const auto& cl : level) list.push_back({{"center", cl.center}, {"vertices", cl.vertices}});
          levels.push_back(std::move(list));
        }
        j["levels"] = std::move(levels);
      }
      emit(dump(j), "");
      return kOk;
    }

    if (cuts->parsed()) {
      const auto g = load_input(in_path);
      const auto norm = prepared(g);
      const int n = g.vertex_count();
      if (n < 2) throw InputError("cuts needs at least two vertices");
      const auto params = derive_params(n, hat_ell(metric_closure_weights(g)), flags.epsilon,
                                        parse_mode(flags.mode), flags.options().overrides);
      Rng rng(seed);
      const auto built = build_chain(norm.graph, ChainOptions{params.delta, flags.literal_level0}, rng);
      if (const auto* f = std::get_if<ChainFailure>(&built)) {
        std::printf("chain failure at level %d: %s\n", f->level, to_string(f->reason));
        return kOk;
      }
      const auto& c = std::get<ClusteringChain>(built);
      const auto packed = build_cut_packing(norm.graph, c, params.xi_count(), params.tau_count());
      std::printf("xi=%zu tau=%zu cuts=%zu calls=%zu oversize=%zu\n", params.xi_count(), params.tau_count(),
                  packed.packing.cuts.size(), packed.calls, packed.oversize);
      bool ok = is_cut_packing(norm.graph, c, packed.packing);
      for (std::size_t k = 0; k < packed.packing.cuts.size(); ++k) {
        const auto& cut = packed.packing.cuts[k];
        std::vector<char> removed(norm.graph.edge_count(), 0);
        for (auto e : cut_edges(norm.graph, cut)) removed[e] = 1;
        const auto sets = cut.vertex_sets();
        std::size_t largest = 0;
        for (const auto& comp : connected_components(norm.graph, removed)) {
          if (!std::binary_search(sets.begin(), sets.end(), comp)) largest = std::max(largest, comp.size());
        }
        const bool balanced = is_balanced(norm.graph, cut);
        ok = ok && balanced;
        std::printf("cut %zu: size=%zu largest_free_component=%zu margin=%.4f balanced=%s\n", k, cut.size(), largest,
                    0.5 - static_cast<double>(largest) / n, balanced ? "yes" : "no");
      }
      return ok ? kOk : kViolation;
    }
  } catch (const InputError& e) {
    std::cerr << "mfembed: " << e.what() << "\n";
    return kInputError;
  } catch (const ViolationFound& e) {
    std::cerr << "mfembed: invariant violation: " << e.what() << "\n";
    return kViolation;
  } catch (const InvariantViolation& e) {
    std::cerr << "mfembed: invariant violation: " << e.what() << "\n";
    return kViolation;
  } catch (const CyclicParentArray& e) {
    std::cerr << "mfembed: invariant violation: " << e.what() << "\n";
    return kViolation;
  } catch (const Error& e) {
    std::cerr << "mfembed: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
