#include "cdia/generators.hpp"

#include <array>
#include <random>
#include <set>
#include <unordered_set>
#include <vector>

#include "cdia/error.hpp"

namespace cdia {
namespace {

using Point = std::array<std::int64_t, 3>;

// Normalised representatives: first non-zero coordinate equals 1.
std::vector<Point> projective_points(std::int64_t q) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(q * q + q + 1));
  for (std::int64_t b = 0; b < q; ++b)
    for (std::int64_t c = 0; c < q; ++c) pts.push_back({1, b, c});
  for (std::int64_t c = 0; c < q; ++c) pts.push_back({0, 1, c});
  pts.push_back({0, 0, 1});
  return pts;
}

bool orthogonal(const Point& a, const Point& b, std::int64_t q) {
  return (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) % q == 0;
}

void require_prime(std::int64_t q) {
  if (q < 2) throw ArgumentError("q must be at least 2");
  if (!is_prime(q)) throw UnsupportedError("q = " + std::to_string(q) + " is not prime; prime powers are unsupported");
}

const std::map<GeneratorKind, std::set<std::string>>& required_params() {
  static const std::map<GeneratorKind, std::set<std::string>> req = {
      {GeneratorKind::RandomBipartite, {"nx", "ny", "m"}},
      {GeneratorKind::IncidencePG2, {"q"}},
      {GeneratorKind::Polarity, {"q"}},
      {GeneratorKind::Cdia, {"l"}},
      {GeneratorKind::Prism, {"l"}},
  };
  return req;
}

}  // namespace

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::RandomBipartite: return "random-bipartite";
    case GeneratorKind::IncidencePG2: return "incidence-pg2";
    case GeneratorKind::Polarity: return "polarity";
    case GeneratorKind::Cdia: return "cdia";
    case GeneratorKind::Prism: return "prism";
  }
  return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
  for (auto kind : {GeneratorKind::RandomBipartite, GeneratorKind::IncidencePG2, GeneratorKind::Polarity,
                    GeneratorKind::Cdia, GeneratorKind::Prism}) {
    if (to_string(kind) == name) return kind;
  }
  throw ArgumentError("unknown generator kind \"" + name + "\"");
}

bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

void GeneratorSpec::validate() const {
  const auto& req = required_params().at(kind);
  for (const auto& name : req) {
    if (!params.count(name)) throw ArgumentError(to_string(kind) + " needs parameter " + name);
  }
  for (const auto& [name, value] : params) {
    if (!req.count(name)) throw ArgumentError(to_string(kind) + " does not take parameter " + name);
    if (value < 0) throw ArgumentError("parameter " + name + " must be non-negative");
  }
  switch (kind) {
    case GeneratorKind::RandomBipartite:
      if (params.at("m") > params.at("nx") * params.at("ny")) throw ArgumentError("m exceeds nx*ny");
      break;
    case GeneratorKind::IncidencePG2:
    case GeneratorKind::Polarity:
      require_prime(params.at("q"));
      break;
    case GeneratorKind::Cdia:
      if (params.at("l") < 2) throw ArgumentError("cdia needs l >= 2");
      break;
    case GeneratorKind::Prism:
      if (params.at("l") < 3) throw ArgumentError("prism needs l >= 3");
      break;
  }
}

nlohmann::json to_json(const GeneratorSpec& spec) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : spec.params) params[k] = v;
  return {{"kind", to_string(spec.kind)}, {"params", params}, {"seed", spec.seed}};
}

GeneratorSpec generator_spec_from_json(const nlohmann::json& j) {
  GeneratorSpec spec;
  try {
    spec.kind = generator_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("params")) {
      for (const auto& [k, v] : j.at("params").items()) spec.params[k] = v.get<std::int64_t>();
    }
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("bad generator spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string describe(const GeneratorSpec& spec) {
  std::string out = to_string(spec.kind) + ":";
  bool first = true;
  for (const auto& [k, v] : spec.params) {
    if (!first) out += ',';
    out += k + "=" + std::to_string(v);
    first = false;
  }
  return out;
}

GeneratedGraph generate(const GeneratorSpec& spec) {
  spec.validate();
  auto p = [&](const char* name) { return spec.params.at(name); };
  switch (spec.kind) {
    case GeneratorKind::RandomBipartite: {
      auto b = gen_random_bipartite(static_cast<std::size_t>(p("nx")), static_cast<std::size_t>(p("ny")),
                                    static_cast<std::size_t>(p("m")), spec.seed);
      return {std::move(b.graph), std::move(b.sides)};
    }
    case GeneratorKind::IncidencePG2: {
      auto b = gen_incidence_pg2(p("q"));
      return {std::move(b.graph), std::move(b.sides)};
    }
    case GeneratorKind::Polarity:
      return {gen_polarity(p("q")), std::nullopt};
    case GeneratorKind::Cdia: {
      Graph g = gen_cdia(static_cast<std::size_t>(p("l")));
      auto sides = two_coloring(g);
      return {std::move(g), std::move(sides)};
    }
    case GeneratorKind::Prism: {
      Graph g = gen_prism(static_cast<std::size_t>(p("l")));
      auto sides = two_coloring(g);
      return {std::move(g), std::move(sides)};
    }
  }
  throw ArgumentError("unknown generator kind");
}

BipartiteSubgraph gen_random_bipartite(std::size_t nx, std::size_t ny, std::size_t m,
                                       std::uint64_t seed) {
  const std::uint64_t total = static_cast<std::uint64_t>(nx) * ny;
  if (m > total) throw ArgumentError("m = " + std::to_string(m) + " exceeds nx*ny = " + std::to_string(total));
  std::mt19937_64 rng(seed);

  // Floyd's sampling of m distinct cells out of nx*ny.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  std::vector<std::uint64_t> order;
  order.reserve(m);
  for (std::uint64_t j = total - m; j < total; ++j) {
    std::uniform_int_distribution<std::uint64_t> pick(0, j);
    std::uint64_t t = pick(rng);
    if (!chosen.insert(t).second) {
      chosen.insert(j);
      order.push_back(j);
    } else {
      order.push_back(t);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (auto cell : order) {
    edges.push_back({static_cast<Vertex>(cell / ny), static_cast<Vertex>(nx + cell % ny)});
  }
  Bipartition sides;
  sides.side.assign(nx + ny, Side::Y);
  std::fill(sides.side.begin(), sides.side.begin() + static_cast<std::ptrdiff_t>(nx), Side::X);
  return {Graph::from_edges(nx + ny, edges), std::move(sides)};
}

BipartiteSubgraph gen_incidence_pg2(std::int64_t q) {
  require_prime(q);
  const auto pts = projective_points(q);
  const auto np = pts.size();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < np; ++j)
      if (orthogonal(pts[i], pts[j], q)) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(np + j)});
  Bipartition sides;
  sides.side.assign(2 * np, Side::Y);
  std::fill(sides.side.begin(), sides.side.begin() + static_cast<std::ptrdiff_t>(np), Side::X);
  return {Graph::from_edges(2 * np, edges), std::move(sides)};
}

Graph gen_polarity(std::int64_t q) {
  require_prime(q);
  const auto pts = projective_points(q);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (orthogonal(pts[i], pts[j], q)) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
  return Graph::from_edges(pts.size(), edges);
}

Graph gen_cdia(std::size_t l) {
  if (l < 2) throw ArgumentError("C^dia needs l >= 2");
  const std::size_t n = 2 * l;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  for (std::size_t i = 0; i < l; ++i) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + l)});
  return Graph::from_edges(n, edges);
}

Graph gen_prism(std::size_t l) {
  if (l < 3) throw ArgumentError("prism needs l >= 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < l; ++i) {
    const auto a = static_cast<Vertex>(i);
    const auto b = static_cast<Vertex>((i + 1) % l);
    edges.push_back({a, b});
    edges.push_back({static_cast<Vertex>(a + l), static_cast<Vertex>(b + l)});
    edges.push_back({a, static_cast<Vertex>(a + l)});
  }
  return Graph::from_edges(2 * l, edges);
}

}  // namespace cdia
