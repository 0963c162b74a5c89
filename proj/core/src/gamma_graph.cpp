#include "cdia/gamma_graph.hpp"

#include <algorithm>
#include <string>

#include "cdia/error.hpp"

namespace cdia {

GammaGraph GammaGraph::from_c4(const C4Graph& c4, EdgeFilter filter) {
  GammaGraph g;
  g.phi_.assign(c4.phi_table().begin(), c4.phi_table().end());
  g.host_n_ = c4.host().num_vertices();
  g.alive_.assign(g.phi_.size(), 1);
  g.num_alive_ = g.phi_.size();
  std::vector<GammaEdge> edges;
  c4.for_each_edge([&](GammaVertex a, GammaVertex b, GammaEdgeClass cls) {
    if (filter == EdgeFilter::All || (filter == EdgeFilter::ThickOnly) == (cls == GammaEdgeClass::Thick)) {
      edges.emplace_back(a, b);
    }
  });
  g.rebuild(std::move(edges));
  return g;
}

GammaGraph GammaGraph::from_edges(std::vector<HostEdge> phi, std::size_t host_n, std::span<const GammaEdge> edges) {
  GammaGraph g;
  for (const auto& e : phi) {
    if (e.x >= host_n || e.y >= host_n) throw ArgumentError("phi endpoint out of range");
  }
  g.phi_ = std::move(phi);
  g.host_n_ = host_n;
  g.alive_.assign(g.phi_.size(), 1);
  g.num_alive_ = g.phi_.size();
  std::vector<GammaEdge> norm;
  for (auto [a, b] : edges) {
    if (a == b) throw ArgumentError("loop at Gamma-vertex " + std::to_string(a));
    if (a >= g.phi_.size() || b >= g.phi_.size()) throw ArgumentError("Gamma-edge endpoint out of range");
    norm.push_back(normalized(a, b));
  }
  g.rebuild(std::move(norm));
  return g;
}

void GammaGraph::rebuild(std::vector<GammaEdge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const std::size_t n = phi_.size();
  offsets_.assign(n + 1, 0);
  for (auto [a, b] : edges) {
    ++offsets_[a + 1];
    ++offsets_[b + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  nbrs_.assign(2 * edges.size(), 0);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (auto [a, b] : edges) nbrs_[fill[b]++] = a;
  for (auto [a, b] : edges) nbrs_[fill[a]++] = b;
}

bool GammaGraph::has_edge(GammaVertex a, GammaVertex b) const {
  if (a >= num_vertices() || b >= num_vertices()) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<GammaVertex> GammaGraph::alive_vertices() const {
  std::vector<GammaVertex> out;
  out.reserve(num_alive_);
  for (GammaVertex v = 0; v < num_vertices(); ++v) {
    if (alive_[v]) out.push_back(v);
  }
  return out;
}

std::vector<GammaEdge> GammaGraph::edges() const {
  std::vector<GammaEdge> out;
  out.reserve(num_edges());
  for (GammaVertex a = 0; a < num_vertices(); ++a) {
    for (GammaVertex b : neighbors(a)) {
      if (b > a) out.emplace_back(a, b);
    }
  }
  return out;
}

GammaGraph GammaGraph::without(std::span<const GammaVertex> vertices, std::span<const GammaEdge> edges) const {
  GammaGraph g;
  g.phi_ = phi_;
  g.host_n_ = host_n_;
  g.alive_ = alive_;
  for (GammaVertex v : vertices) {
    if (v >= num_vertices()) throw ArgumentError("Gamma-vertex out of range");
    g.alive_[v] = 0;
  }
  g.num_alive_ = static_cast<std::size_t>(std::count(g.alive_.begin(), g.alive_.end(), 1));
  std::vector<GammaEdge> drop;
  for (auto [a, b] : edges) drop.push_back(normalized(a, b));
  std::sort(drop.begin(), drop.end());
  std::vector<GammaEdge> keep;
  for (const auto& e : this->edges()) {
    if (!g.alive_[e.first] || !g.alive_[e.second]) continue;
    if (std::binary_search(drop.begin(), drop.end(), e)) continue;
    keep.push_back(e);
  }
  g.rebuild(std::move(keep));
  return g;
}

}  // namespace cdia
