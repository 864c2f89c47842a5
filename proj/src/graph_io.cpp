#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mfembed/errors.hpp"
#include "mfembed/graph.hpp"
#include "mfembed/rng.hpp"

namespace mfembed {

// ---------------------------------------------------------------------------
// Generators

GraphKind parse_graph_kind(const std::string& s) {
  if (s == "grid") return GraphKind::grid;
  if (s == "cycle") return GraphKind::cycle;
  if (s == "star") return GraphKind::star;
  if (s == "path") return GraphKind::path;
  throw BadSize("unknown graph kind '" + s + "'");
}

WeightModel parse_weight_model(const std::string& s) {
  if (s == "unit") return WeightModel::unit();
  constexpr std::string_view prefix = "uniform:";
  if (s.rfind(prefix, 0) == 0) {
    const auto rest = s.substr(prefix.size());
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw BadSize("weight model must be uniform:LO:HI");
    try {
      return WeightModel::uniform(std::stod(rest.substr(0, colon)), std::stod(rest.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw BadSize("bad number in weight model '" + s + "'");
    }
  }
  throw BadSize("unknown weight model '" + s + "'");
}

WeightedGraph generate(const GeneratorSpec& spec, const WeightModel& weights, std::uint64_t seed) {
  if (weights.kind == WeightModel::Kind::uniform && !(weights.lo > 0.0 && weights.hi >= weights.lo)) {
    throw BadSize("uniform weights need 0 < lo <= hi");
  }
  std::vector<Edge> edges;
  int n = 0;
  switch (spec.kind) {
    case GraphKind::grid: {
      if (spec.rows < 1 || spec.cols < 1) throw BadSize("grid needs rows, cols >= 1");
      n = spec.rows * spec.cols;
      for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c < spec.cols; ++c) {
          const int v = r * spec.cols + c;
          if (c + 1 < spec.cols) edges.push_back({v, v + 1, 1.0});
          if (r + 1 < spec.rows) edges.push_back({v, v + spec.cols, 1.0});
        }
      }
      break;
    }
    case GraphKind::cycle:
      if (spec.n < 1) throw BadSize("cycle needs n >= 1");
      n = spec.n;
      for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
      if (n >= 3) edges.push_back({0, n - 1, 1.0});
      break;
    case GraphKind::star:
      if (spec.n < 1) throw BadSize("star needs n >= 1");
      n = spec.n;
      for (int v = 1; v < n; ++v) edges.push_back({0, v, 1.0});
      break;
    case GraphKind::path:
      if (spec.n < 1) throw BadSize("path needs n >= 1");
      n = spec.n;
      for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
      break;
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  if (weights.kind == WeightModel::Kind::uniform) {
    Rng rng(seed);
    for (auto& e : edges) e.length = weights.lo + (weights.hi - weights.lo) * rng.uniform01();
  }
  return WeightedGraph::from_edges(n, std::move(edges));
}

// ---------------------------------------------------------------------------
// Text format: '#' comments, "p <n> <m>", then m lines "e <u> <v> <length>".

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

WeightedGraph read_graph(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  long long n = 0;
  long long m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto toks = split_ws(raw);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (!have_header) {
      if (toks.size() != 3 || toks[0] != "p") throw ParseError(line_no, "expected 'p <n> <m>'");
      n = parse_number<long long>(toks[1], line_no, "vertex count");
      m = parse_number<long long>(toks[2], line_no, "edge count");
      if (n < 0 || m < 0 || n > (1LL << 30)) throw ParseError(line_no, "vertex/edge count out of range");
      have_header = true;
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    if (static_cast<long long>(edges.size()) == m) throw ParseError(line_no, "more edge lines than declared");
    if (toks.size() != 4 || toks[0] != "e") throw ParseError(line_no, "expected 'e <u> <v> <length>'");
    const auto u = parse_number<long long>(toks[1], line_no, "vertex id");
    const auto v = parse_number<long long>(toks[2], line_no, "vertex id");
    const auto len = parse_number<double>(toks[3], line_no, "length");
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(line_no, "vertex id out of range");
    if (!(len > 0.0)) throw InvariantViolation("line " + std::to_string(line_no) + ": nonpositive edge length");
    if (u == v) throw InvariantViolation("line " + std::to_string(line_no) + ": self-loop");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), len});
  }
  if (!have_header) throw ParseError(line_no, "missing 'p' header");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(line_no, "expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  return WeightedGraph::from_edges(static_cast<int>(n), std::move(edges));
}

void write_graph(const WeightedGraph& g, std::ostream& out) {
  out << "p " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  char buf[64];
  for (const auto& e : g.edges()) {
    const auto res = std::to_chars(buf, buf + sizeof buf, e.length);
    out << "e " << e.u << ' ' << e.v << ' ' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf))
        << '\n';
  }
}

WeightedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_graph(in);
}

void save_graph(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_graph(g, out);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace mfembed
