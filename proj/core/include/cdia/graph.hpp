#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cdia/types.hpp"

namespace cdia {

// Simple undirected graph in CSR form. Edges get dense ids 0..m-1 in
// lexicographic order of (min, max) endpoint. Graphs up to kBitRowLimit
// vertices also carry fixed-width bit rows for codegree queries; larger
// graphs fall back to sorted-list intersection.
//
// Immutable after construction.
class Graph {
 public:
  static constexpr std::size_t kBitRowLimit = 16384;

  Graph() = default;

  // Throws ArgumentError on loops or endpoints >= n. Duplicate pairs (in
  // either orientation) are collapsed; their number is written to
  // *duplicates when given.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::size_t* duplicates = nullptr);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {nbrs_.data() + offsets_[v], nbrs_.data() + offsets_[v + 1]};
  }
  // Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {incident_.data() + offsets_[v], incident_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;

  // Endpoints with u < v.
  Edge edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  bool has_edge(Vertex u, Vertex v) const;
  std::optional<EdgeId> edge_id(Vertex u, Vertex v) const;

  bool has_bit_rows() const { return words_per_row_ != 0; }
  std::span<const std::uint64_t> bit_row(Vertex v) const {
    return {rows_.data() + static_cast<std::size_t>(v) * words_per_row_, words_per_row_};
  }

  // Subgraph induced by `keep` (any order, no duplicates), relabelled so
  // that new vertex i is keep[i].
  Graph induced(std::span<const Vertex> keep) const;

  // Same vertex set, only the edges whose id satisfies keep_edge[id].
  Graph edge_subgraph(std::span<const std::uint8_t> keep_edge) const;

  void check_vertex(Vertex v) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> nbrs_;
  std::vector<EdgeId> incident_;
  std::vector<Edge> edges_;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> rows_;
};

// |N(u) ∩ N(v)|. Throws ArgumentError if u == v or either is out of range.
std::size_t codegree(const Graph& g, Vertex u, Vertex v);

// Sorted common neighbourhood.
std::vector<Vertex> common_neighbors(const Graph& g, Vertex u, Vertex v);

enum class Side : std::uint8_t { X = 0, Y = 1 };

struct Bipartition {
  std::vector<Side> side;

  bool is_valid_for(const Graph& g) const;
};

// BFS 2-colouring; nullopt when g has an odd cycle. Each component's lowest
// vertex goes to X.
std::optional<Bipartition> two_coloring(const Graph& g);

struct BipartiteSubgraph {
  Graph graph;
  Bipartition sides;
};

// Keeps the cross edges of a 2-colouring. Bipartite inputs keep every edge;
// otherwise a seeded random colouring is improved by single-vertex flips
// until no flip increases the cut, which leaves at least ceil(m/2) edges.
BipartiteSubgraph max_bipartite_subgraph(const Graph& g, std::uint64_t seed);

struct GraphSummary {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t max_degree = 0;
  bool bipartite = false;
};

GraphSummary summarize(const Graph& g);

}  // namespace cdia
