#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mfembed/errors.hpp"
#include "mfembed/harness.hpp"

namespace mfembed {

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json to_json(const Params& p) {
  Json j;
  j["n"] = p.n;
  j["hat_ell"] = p.hat_ell;
  j["epsilon"] = p.epsilon;
  j["delta"] = p.delta;
  j["xi"] = p.xi;
  j["sigma"] = p.sigma;
  j["tau"] = p.tau;
  j["c_fallback"] = p.c_fallback;
  j["gamma"] = p.gamma;
  j["mode"] = to_string(p.mode);
  j["xi_cap"] = p.xi_cap;
  j["tau_cap"] = p.tau_cap;
  return j;
}

namespace {

Params params_from_json(const Json& j) {
  Params p;
  p.n = j.at("n").get<int>();
  p.hat_ell = j.at("hat_ell").get<int>();
  p.epsilon = j.at("epsilon").get<double>();
  p.delta = j.at("delta").get<double>();
  p.xi = j.at("xi").get<double>();
  p.sigma = j.at("sigma").get<double>();
  p.tau = j.at("tau").get<double>();
  p.c_fallback = j.at("c_fallback").get<double>();
  p.gamma = j.at("gamma").get<double>();
  p.mode = parse_mode(j.at("mode").get<std::string>());
  p.xi_cap = j.at("xi_cap").get<double>();
  p.tau_cap = j.at("tau_cap").get<double>();
  return p;
}

}  // namespace

Json to_json(const HostEmbedding& emb) {
  const auto& m = emb.meta;
  Json j;
  j["n"] = emb.eta.size();
  j["seed"] = m.seed;
  j["mode"] = to_string(m.params.mode);
  j["params"] = to_json(m.params);
  j["fallback_used"] = m.fallback_used;
  Json edges = Json::array();
  for (const auto& e : emb.host.edges()) edges.push_back(Json::array({e.u, e.v, round12(e.length)}));
  j["host"] = {{"n", emb.host.vertex_count()}, {"edges", std::move(edges)}};
  j["eta"] = emb.eta;
  Json parent = Json::array();
  for (int p : emb.forest_parent) parent.push_back(p < 0 ? Json(nullptr) : Json(p));
  j["forest_parent"] = std::move(parent);
  j["depth"] = treedepth_of(emb.forest_parent);
  j["meta"] = {{"fallback_reason", m.fallback_reason},
               {"scale", m.scale},
               {"split_calls", m.split_calls},
               {"packing_sizes", m.packing_sizes},
               {"oversize_cuts", m.oversize_cuts},
               {"max_portals", m.max_portals},
               {"recursion_depth", m.recursion_depth},
               {"progress_violations", m.progress_violations}};
  return j;
}

HostEmbedding embedding_from_json(const Json& j) {
  try {
    HostEmbedding emb;
    const auto host_n = j.at("host").at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("host").at("edges")) {
      edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    }
    emb.host = WeightedGraph::from_edges(host_n, std::move(edges), LengthPolicy::nonnegative);
    emb.eta = j.at("eta").get<std::vector<Vertex>>();
    for (const auto& p : j.at("forest_parent")) emb.forest_parent.push_back(p.is_null() ? -1 : p.get<int>());
    if (emb.forest_parent.size() != static_cast<std::size_t>(host_n)) {
      throw ParseError(0, "forest_parent length differs from host size");
    }
    for (Vertex x : emb.eta) {
      if (x < 0 || x >= host_n) throw ParseError(0, "eta entry out of range");
    }
    auto& m = emb.meta;
    m.seed = j.at("seed").get<std::uint64_t>();
    m.params = params_from_json(j.at("params"));
    m.fallback_used = j.at("fallback_used").get<bool>();
    if (j.contains("meta")) {
      const auto& x = j["meta"];
      m.fallback_reason = x.value("fallback_reason", "");
      m.scale = x.value("scale", 1.0);
      m.split_calls = x.value("split_calls", std::size_t{0});
      m.packing_sizes = x.value("packing_sizes", std::vector<std::size_t>{});
      m.oversize_cuts = x.value("oversize_cuts", std::size_t{0});
      m.max_portals = x.value("max_portals", std::size_t{0});
      m.recursion_depth = x.value("recursion_depth", 0);
      m.progress_violations = x.value("progress_violations", std::size_t{0});
    }
    return emb;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("embedding json: ") + e.what());
  } catch (const Error& e) {
    if (dynamic_cast<const ParseError*>(&e)) throw;
    throw ParseError(0, std::string("embedding json: ") + e.what());
  }
}

// --- report ----------------------------------------------------------------

namespace {

Json to_json(const DistortionStats& s) {
  Json pairs = Json::array();
  for (const auto& p : s.pairs) {
    pairs.push_back({{"u", p.u},
                     {"v", p.v},
                     {"dist_g", p.dist_g},
                     {"dist_h", p.dist_h},
                     {"ratio", p.ratio},
                     {"mean_ratio", p.mean_ratio}});
  }
  return {{"max_pair_mean", s.max_pair_mean},
          {"global_mean", s.global_mean},
          {"max_single_ratio", s.max_single_ratio},
          {"violations", s.violations},
          {"pairs", std::move(pairs)}};
}

DistortionStats stats_from_json(const Json& j) {
  DistortionStats s;
  s.max_pair_mean = j.at("max_pair_mean").get<double>();
  s.global_mean = j.at("global_mean").get<double>();
  s.max_single_ratio = j.at("max_single_ratio").get<double>();
  s.violations = j.at("violations").get<std::size_t>();
  for (const auto& p : j.at("pairs")) {
    s.pairs.push_back(PairRecord{p.at("u").get<int>(), p.at("v").get<int>(), p.at("dist_g").get<double>(),
                                 p.at("dist_h").get<std::vector<double>>(), p.at("ratio").get<std::vector<double>>(),
                                 p.at("mean_ratio").get<double>()});
  }
  return s;
}

Json to_json(const StructureMetrics& m) {
  return {{"max_treedepth", m.max_treedepth},
          {"mean_treedepth", m.mean_treedepth},
          {"max_host_vertices", m.max_host_vertices},
          {"fallback_rate", m.fallback_rate},
          {"mean_packing_size", m.mean_packing_size},
          {"oversize_cuts", m.oversize_cuts},
          {"forest_violations", m.forest_violations},
          {"depth_bound_violations", m.depth_bound_violations},
          {"progress_violations", m.progress_violations}};
}

StructureMetrics structure_from_json(const Json& j) {
  StructureMetrics m;
  m.max_treedepth = j.at("max_treedepth").get<int>();
  m.mean_treedepth = j.at("mean_treedepth").get<double>();
  m.max_host_vertices = j.at("max_host_vertices").get<int>();
  m.fallback_rate = j.at("fallback_rate").get<double>();
  m.mean_packing_size = j.at("mean_packing_size").get<double>();
  m.oversize_cuts = j.at("oversize_cuts").get<std::size_t>();
  m.forest_violations = j.at("forest_violations").get<std::size_t>();
  m.depth_bound_violations = j.at("depth_bound_violations").get<std::size_t>();
  m.progress_violations = j.at("progress_violations").get<std::size_t>();
  return m;
}

Json to_json(const RunSummary& r) {
  return {{"seed", r.seed},
          {"treedepth", r.treedepth},
          {"host_vertices", r.host_vertices},
          {"host_edges", r.host_edges},
          {"fallback_used", r.fallback_used},
          {"packing_sizes", r.packing_sizes},
          {"oversize_cuts", r.oversize_cuts},
          {"recursion_depth", r.recursion_depth},
          {"progress_violations", r.progress_violations},
          {"forest_valid", r.forest_valid},
          {"depth_within_bound", r.depth_within_bound}};
}

RunSummary run_from_json(const Json& j) {
  RunSummary r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.treedepth = j.at("treedepth").get<int>();
  r.host_vertices = j.at("host_vertices").get<int>();
  r.host_edges = j.at("host_edges").get<std::size_t>();
  r.fallback_used = j.at("fallback_used").get<bool>();
  r.packing_sizes = j.at("packing_sizes").get<std::vector<std::size_t>>();
  r.oversize_cuts = j.at("oversize_cuts").get<std::size_t>();
  r.recursion_depth = j.at("recursion_depth").get<int>();
  r.progress_violations = j.at("progress_violations").get<std::size_t>();
  r.forest_valid = j.at("forest_valid").get<bool>();
  r.depth_within_bound = j.at("depth_within_bound").get<bool>();
  return r;
}

Json to_json(const MethodReport& m) {
  Json runs = Json::array();
  for (const auto& r : m.runs) runs.push_back(to_json(r));
  return {{"method", m.method}, {"stats", to_json(m.stats)}, {"structure", to_json(m.structure)}, {"runs", runs}};
}

MethodReport method_from_json(const Json& j) {
  MethodReport m;
  m.method = j.at("method").get<std::string>();
  m.stats = stats_from_json(j.at("stats"));
  m.structure = structure_from_json(j.at("structure"));
  for (const auto& r : j.at("runs")) m.runs.push_back(run_from_json(r));
  return m;
}

}  // namespace

Json to_json(const Report& r, bool include_timing) {
  Json j;
  j["schema_version"] = r.schema_version;
  j["config"] = {{"instance", r.instance},
                 {"n", r.n},
                 {"m", r.m},
                 {"epsilon", r.epsilon},
                 {"mode", r.mode},
                 {"runs", r.runs},
                 {"pairs", r.pairs_requested ? Json(*r.pairs_requested) : Json("all")},
                 {"seed", r.seed},
                 {"baseline", r.baseline}};
  Json pairs = Json::array();
  for (auto [u, v] : r.pairs) pairs.push_back(Json::array({u, v}));
  j["pairs"] = std::move(pairs);
  j["primary"] = to_json(r.primary);
  j["baseline"] = r.reference ? to_json(*r.reference) : Json(nullptr);
  if (include_timing) {
    Json runs = Json::array();
    for (const auto& x : r.primary.runs) runs.push_back(x.wall_ms);
    Json base = Json::array();
    if (r.reference) {
      for (const auto& x : r.reference->runs) base.push_back(x.wall_ms);
    }
    j["timing"] = {{"total_ms", r.wall_ms}, {"primary_run_ms", runs}, {"baseline_run_ms", base}};
  }
  return j;
}

Report report_from_json(const Json& j) {
  try {
    Report r;
    r.schema_version = j.at("schema_version").get<int>();
    const auto& c = j.at("config");
    r.instance = c.at("instance").get<std::string>();
    r.n = c.at("n").get<int>();
    r.m = c.at("m").get<std::size_t>();
    r.epsilon = c.at("epsilon").get<double>();
    r.mode = c.at("mode").get<std::string>();
    r.runs = c.at("runs").get<int>();
    if (!c.at("pairs").is_string()) r.pairs_requested = c.at("pairs").get<std::size_t>();
    r.seed = c.at("seed").get<std::uint64_t>();
    r.baseline = c.at("baseline").get<std::string>();
    for (const auto& p : j.at("pairs")) r.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    r.primary = method_from_json(j.at("primary"));
    if (!j.at("baseline").is_null()) r.reference = method_from_json(j.at("baseline"));
    if (j.contains("timing")) {
      const auto& t = j["timing"];
      r.wall_ms = t.value("total_ms", 0.0);
      const auto runs = t.value("primary_run_ms", std::vector<double>{});
      for (std::size_t k = 0; k < runs.size() && k < r.primary.runs.size(); ++k) r.primary.runs[k].wall_ms = runs[k];
      const auto base = t.value("baseline_run_ms", std::vector<double>{});
      for (std::size_t k = 0; r.reference && k < base.size() && k < r.reference->runs.size(); ++k) {
        r.reference->runs[k].wall_ms = base[k];
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("report json: ") + e.what());
  }
}

void write_csv(const Report& r, std::ostream& out) {
  out << "u,v,dist_g,mean_ratio,max_ratio,runs\n";
  char buf[128];
  for (const auto& p : r.primary.stats.pairs) {
    double mx = 0.0;
    for (double x : p.ratio) mx = std::max(mx, x);
    std::snprintf(buf, sizeof buf, "%d,%d,%.12g,%.12g,%.12g,%zu\n", p.u, p.v, p.dist_g, p.mean_ratio, mx,
                  p.ratio.size());
    out << buf;
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, path + ": " + e.what());
  }
}

void save_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace mfembed
