#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "cdia/graph.hpp"
#include "cdia/witness.hpp"

namespace cdia {

// A host edge oriented by the bipartition: x on side X, y on side Y.
struct HostEdge {
  Vertex x;
  Vertex y;

  bool touches(Vertex v) const { return x == v || y == v; }
  bool meets(const HostEdge& o) const { return touches(o.x) || touches(o.y); }
};

// Exact number of four-cycles: sum over unordered same-side pairs in X of
// C(codeg, 2). Throws ArgumentError unless sides is a valid bipartition.
std::uint64_t count_c4(const Graph& g, const Bipartition& sides);

// Codegrees of all same-side pairs that lie on at least one four-cycle
// (codegree >= 2), on both sides.
class CodegreeIndex {
 public:
  static CodegreeIndex build(const Graph& g);

  // nullopt when the pair has codegree < 2.
  std::optional<std::uint32_t> find(Vertex a, Vertex b) const;
  std::size_t size() const { return pairs_.size(); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [key, c] : pairs_) fn(static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffU), c);
  }

 private:
  static std::uint64_t key(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
  std::unordered_map<std::uint64_t, std::uint32_t> pairs_;
};

enum class GammaEdgeClass : std::uint8_t { Thin, Thick };
enum class EdgeFilter : std::uint8_t { All, ThinOnly, ThickOnly };

struct C4BuildOptions {
  // Refuse to materialise more Gamma-edges than this.
  std::uint64_t max_gamma_edges = 20'000'000;
  // Above the cap, build an implicit graph (neighbours generated from the
  // host on demand) instead of throwing CapacityError.
  bool allow_implicit = false;
};

// The C4-graph Gamma_0 of a bipartite host: one vertex per host edge (same
// id), xy ~ x'y' iff x y x' y' is a four-cycle. Each edge is classified
// thick when max(codeg(x,x'), codeg(y,y')) >= tau.
class C4Graph {
 public:
  static C4Graph build(const Graph& host, const Bipartition& sides, double tau,
                       const C4BuildOptions& options = {});

  const Graph& host() const { return host_; }
  const Bipartition& sides() const { return sides_; }
  double tau() const { return tau_; }
  bool implicit() const { return implicit_; }

  std::size_t num_vertices() const { return phi_.size(); }
  std::uint64_t num_thin() const { return num_thin_; }
  std::uint64_t num_thick() const { return num_thick_; }
  std::uint64_t num_edges() const { return num_thin_ + num_thick_; }
  std::uint64_t c4_count() const { return c4_count_; }

  HostEdge phi(GammaVertex v) const { return phi_[v]; }
  std::span<const HostEdge> phi_table() const { return phi_; }
  std::optional<GammaVertex> vertex_of(Vertex a, Vertex b) const { return host_.edge_id(a, b); }

  // Sorted neighbours of v restricted by filter.
  void neighbors(GammaVertex v, std::vector<GammaVertex>& out, EdgeFilter filter = EdgeFilter::All) const;

  // Adjacency and class recomputed from the host; nullopt if not adjacent.
  std::optional<GammaEdgeClass> edge_class(GammaVertex a, GammaVertex b) const;

  std::size_t thick_degree(GammaVertex v) const;

  // fn(a, b, class) once per edge with a < b, in increasing (a, b) order.
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    std::vector<GammaVertex> buf;
    for (GammaVertex a = 0; a < num_vertices(); ++a) {
      if (!implicit_) {
        for (std::size_t i = offsets_[a]; i < offsets_[a + 1]; ++i) {
          if (nbrs_[i] > a) fn(a, nbrs_[i], thick_[i] ? GammaEdgeClass::Thick : GammaEdgeClass::Thin);
        }
        continue;
      }
      neighbors(a, buf);
      for (GammaVertex b : buf) {
        if (b > a) fn(a, b, *edge_class(a, b));
      }
    }
  }

  // "a b thin|thick" per line.
  void write_edge_list(std::ostream& out) const;

  bool is_thick_pair(HostEdge e, HostEdge f) const;

 private:
  Graph host_;
  Bipartition sides_;
  double tau_ = 0;
  bool implicit_ = false;
  std::vector<HostEdge> phi_;
  std::uint64_t c4_count_ = 0;
  std::uint64_t num_thin_ = 0;
  std::uint64_t num_thick_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<GammaVertex> nbrs_;
  std::vector<std::uint8_t> thick_;
};

struct C4Summary {
  std::size_t num_gamma_vertices = 0;
  std::uint64_t num_thin = 0;
  std::uint64_t num_thick = 0;
  std::uint64_t c4_count = 0;
  double tau = 0;
};

C4Summary summarize(const C4Graph& c4);
nlohmann::json to_json(const C4Summary& s);

// Constructive K_{3,3} search through thick four-cycles: take the host edge
// uv on the most thick four-cycles (lowest id on ties), collect
// X' = {x in N(v) : codeg(u, x) >= tau}, and look for a four-cycle in
// H = G[N(u), X'] by scanning for two members of X' that share a pair of
// neighbours. Both orientations of uv are tried. The result lists the K_{3,3}
// parts alternately, which is a C^dia_6 ordering.
std::optional<DiagonalCycleWitness> find_k33_via_thick(const C4Graph& c4);

}  // namespace cdia
