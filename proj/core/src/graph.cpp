#include "cdia/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <random>
#include <string>

#include "cdia/error.hpp"

namespace cdia {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, std::size_t* duplicates) {
  std::vector<Edge> norm;
  norm.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw ArgumentError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                          ") out of range for n = " + std::to_string(n));
    }
    if (e.u == e.v) throw ArgumentError("loop at vertex " + std::to_string(e.u));
    norm.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(norm.begin(), norm.end());
  auto last = std::unique(norm.begin(), norm.end());
  if (duplicates) *duplicates = static_cast<std::size_t>(norm.end() - last);
  norm.erase(last, norm.end());

  Graph g;
  g.edges_ = std::move(norm);
  g.offsets_.assign(n + 1, 0);
  for (const auto& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.nbrs_.resize(2 * g.edges_.size());
  g.incident_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so appending in id order leaves every
  // neighbour list sorted: for vertex w, first come the u < w (as v-side, in
  // increasing u), then the v > w (as u-side, in increasing v).
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const auto [u, v] = g.edges_[id];
    g.nbrs_[fill[v]] = u;
    g.incident_[fill[v]++] = id;
  }
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const auto [u, v] = g.edges_[id];
    g.nbrs_[fill[u]] = v;
    g.incident_[fill[u]++] = id;
  }

  if (n > 0 && n <= kBitRowLimit) {
    g.words_per_row_ = (n + 63) / 64;
    g.rows_.assign(n * g.words_per_row_, 0);
    for (const auto& e : g.edges_) {
      g.rows_[e.u * g.words_per_row_ + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
      g.rows_[e.v * g.words_per_row_ + e.u / 64] |= std::uint64_t{1} << (e.u % 64);
    }
  }
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_vertices(); ++v) best = std::max(best, degree(static_cast<Vertex>(v)));
  return best;
}

void Graph::check_vertex(Vertex v) const {
  if (v >= num_vertices()) {
    throw ArgumentError("vertex " + std::to_string(v) + " out of range for n = " +
                        std::to_string(num_vertices()));
  }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= num_vertices() || v >= num_vertices() || u == v) return false;
  if (has_bit_rows()) return (rows_[u * words_per_row_ + v / 64] >> (v % 64)) & 1U;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<EdgeId> Graph::edge_id(Vertex u, Vertex v) const {
  if (u >= num_vertices() || v >= num_vertices() || u == v) return std::nullopt;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - nb.begin())];
}

Graph Graph::induced(std::span<const Vertex> keep) const {
  std::vector<Vertex> relabel(num_vertices(), kNoVertex);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    check_vertex(keep[i]);
    if (relabel[keep[i]] != kNoVertex) throw ArgumentError("duplicate vertex in induced()");
    relabel[keep[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> out;
  for (const auto& e : edges_) {
    if (relabel[e.u] != kNoVertex && relabel[e.v] != kNoVertex) out.push_back({relabel[e.u], relabel[e.v]});
  }
  return from_edges(keep.size(), out);
}

Graph Graph::edge_subgraph(std::span<const std::uint8_t> keep_edge) const {
  if (keep_edge.size() != num_edges()) throw ArgumentError("edge mask size mismatch");
  std::vector<Edge> out;
  for (EdgeId id = 0; id < num_edges(); ++id) {
    if (keep_edge[id]) out.push_back(edges_[id]);
  }
  return from_edges(num_vertices(), out);
}

std::size_t codegree(const Graph& g, Vertex u, Vertex v) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v) throw ArgumentError("codegree needs distinct vertices");
  if (g.has_bit_rows()) {
    auto a = g.bit_row(u);
    auto b = g.bit_row(v);
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return c;
  }
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t c = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

std::vector<Vertex> common_neighbors(const Graph& g, Vertex u, Vertex v) {
  g.check_vertex(u);
  g.check_vertex(v);
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool Bipartition::is_valid_for(const Graph& g) const {
  if (side.size() != g.num_vertices()) return false;
  for (const auto& e : g.edges()) {
    if (side[e.u] == side[e.v]) return false;
  }
  return true;
}

std::optional<Bipartition> two_coloring(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::int8_t> color(n, -1);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbors(v)) {
        if (color[w] < 0) {
          color[w] = static_cast<std::int8_t>(1 - color[v]);
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition b;
  b.side.reserve(n);
  for (auto c : color) b.side.push_back(c == 0 ? Side::X : Side::Y);
  return b;
}

BipartiteSubgraph max_bipartite_subgraph(const Graph& g, std::uint64_t seed) {
  if (auto exact = two_coloring(g)) return {g, std::move(*exact)};

  const std::size_t n = g.num_vertices();
  std::mt19937_64 rng(seed);
  std::vector<Side> side(n);
  for (auto& s : side) s = (rng() & 1U) ? Side::Y : Side::X;

  // Flip a vertex whenever more than half of its neighbours share its side.
  // Every flip raises the cut by at least one, so this terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < n; ++v) {
      std::size_t same = 0;
      for (Vertex w : g.neighbors(v)) same += side[w] == side[v];
      if (2 * same > g.degree(v)) {
        side[v] = side[v] == Side::X ? Side::Y : Side::X;
        changed = true;
      }
    }
  }

  std::vector<std::uint8_t> keep(g.num_edges());
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const auto e = g.edge(id);
    keep[id] = side[e.u] != side[e.v];
  }
  return {g.edge_subgraph(keep), Bipartition{std::move(side)}};
}

GraphSummary summarize(const Graph& g) {
  return {g.num_vertices(), g.num_edges(), g.max_degree(), two_coloring(g).has_value()};
}

}  // namespace cdia
