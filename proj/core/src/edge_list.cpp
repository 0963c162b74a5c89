#include "cdia/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "cdia/error.hpp"

namespace cdia {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool next_token(std::string_view& s, std::string_view& tok) {
  s = trim(s);
  if (s.empty()) return false;
  std::size_t end = 0;
  while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
  tok = s.substr(0, end);
  s.remove_prefix(end);
  return true;
}

bool parse_uint(std::string_view tok, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

LoadResult load_edge_list(std::istream& in, const LoadOptions& options) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::uint64_t declared_n = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (auto hash = body.find('#'); hash != std::string_view::npos) {
      std::string_view comment = trim(body.substr(hash + 1));
      constexpr std::string_view kVertices = "vertices:";
      if (comment.starts_with(kVertices)) {
        std::uint64_t n = 0;
        if (!parse_uint(trim(comment.substr(kVertices.size())), n)) {
          throw ParseError(lineno, "malformed vertices directive");
        }
        declared_n = std::max(declared_n, n);
      }
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;

    std::string_view a, b, extra;
    std::uint64_t u = 0, v = 0;
    if (!next_token(body, a) || !next_token(body, b) || next_token(body, extra) ||
        !parse_uint(a, u) || !parse_uint(b, v)) {
      throw ParseError(lineno, "expected two non-negative integers, got \"" + line + "\"");
    }
    if (u == v) throw ParseError(lineno, "loop edge at vertex " + std::to_string(u));
    raw.emplace_back(u, v);
  }

  LoadResult result;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  std::size_t n = 0;
  if (options.compact_ids) {
    std::unordered_map<std::uint64_t, Vertex> ids;
    auto id_of = [&](std::uint64_t x) {
      auto [it, inserted] = ids.try_emplace(x, static_cast<Vertex>(ids.size()));
      if (inserted) result.original_ids.push_back(x);
      return it->second;
    };
    for (auto [u, v] : raw) {
      Vertex a = id_of(u);
      edges.push_back({a, id_of(v)});
    }
    n = ids.size();
  } else {
    std::uint64_t max_id = declared_n == 0 ? 0 : declared_n - 1;
    bool any = declared_n > 0;
    for (auto [u, v] : raw) {
      max_id = std::max({max_id, u, v});
      any = true;
    }
    if (any && max_id > options.max_vertex_id) {
      throw ParseError(lineno, "vertex id " + std::to_string(max_id) +
                                   " exceeds the verbatim-id limit; use compact ids");
    }
    n = any ? static_cast<std::size_t>(max_id + 1) : 0;
    for (auto [u, v] : raw) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    result.original_ids.resize(n);
    for (std::size_t v = 0; v < n; ++v) result.original_ids[v] = v;
  }
  result.graph = Graph::from_edges(n, edges, &result.duplicates);
  return result;
}

LoadResult load_edge_list_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return load_edge_list(in, options);
}

void store_edge_list(const Graph& g, std::ostream& out) {
  out << "# vertices: " << g.num_vertices() << "\n";
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void store_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  store_edge_list(g, out);
  if (!out) throw IoError("write failed for " + path);
}

nlohmann::json to_json(const GraphSummary& s) {
  return {{"n", s.n}, {"m", s.m}, {"max_degree", s.max_degree}, {"bipartite", s.bipartite}};
}

}  // namespace cdia
