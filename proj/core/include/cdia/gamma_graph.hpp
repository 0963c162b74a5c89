#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cdia/c4_graph.hpp"
#include "cdia/types.hpp"

namespace cdia {

using GammaEdge = std::pair<GammaVertex, GammaVertex>;

// Working graph for the navigator: a fixed vertex id space (host edge ids)
// with an alive mask, CSR adjacency among alive vertices, and the host edge
// phi(v) of every vertex.
class GammaGraph {
 public:
  GammaGraph() = default;

  // Thin part of Gamma_0 (thick edges dropped), or all of it.
  static GammaGraph from_c4(const C4Graph& c4, EdgeFilter filter = EdgeFilter::ThinOnly);

  // Arbitrary graph on 0..phi.size()-1; phi endpoints must be < host_n.
  // Throws ArgumentError on loops or out-of-range endpoints.
  static GammaGraph from_edges(std::vector<HostEdge> phi, std::size_t host_n, std::span<const GammaEdge> edges);

  std::size_t num_vertices() const { return phi_.size(); }
  std::size_t num_alive() const { return num_alive_; }
  std::size_t num_edges() const { return nbrs_.size() / 2; }
  std::size_t host_vertices() const { return host_n_; }

  bool alive(GammaVertex v) const { return alive_[v] != 0; }
  std::span<const GammaVertex> neighbors(GammaVertex v) const {
    return {nbrs_.data() + offsets_[v], nbrs_.data() + offsets_[v + 1]};
  }
  std::size_t degree(GammaVertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(GammaVertex a, GammaVertex b) const;

  HostEdge phi(GammaVertex v) const { return phi_[v]; }
  std::span<const HostEdge> phi_table() const { return phi_; }

  std::vector<GammaVertex> alive_vertices() const;
  // Edges (a < b) in increasing order.
  std::vector<GammaEdge> edges() const;

  // Copy with the listed vertices marked dead and the listed edges dropped.
  GammaGraph without(std::span<const GammaVertex> vertices, std::span<const GammaEdge> edges) const;

 private:
  void rebuild(std::vector<GammaEdge> edges);

  std::vector<HostEdge> phi_;
  std::size_t host_n_ = 0;
  std::vector<std::uint8_t> alive_;
  std::size_t num_alive_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<GammaVertex> nbrs_;
};

inline GammaEdge normalized(GammaVertex a, GammaVertex b) { return a < b ? GammaEdge{a, b} : GammaEdge{b, a}; }

}  // namespace cdia
