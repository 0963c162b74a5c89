#include "cdia/c4_graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <string>

#include "cdia/error.hpp"

namespace cdia {
namespace {

void require_bipartition(const Graph& g, const Bipartition& sides) {
  if (!sides.is_valid_for(g)) throw ArgumentError("host graph is not bipartite under the given bipartition");
}

// For one anchor vertex a, visit every same-side b > a together with the
// common neighbours of a and b. counts/lists are scratch buffers sized n.
template <typename Fn>
void for_each_partner(const Graph& g, Vertex a, std::vector<std::uint32_t>& counts,
                      std::vector<std::vector<Vertex>>* lists, std::vector<Vertex>& touched, Fn&& fn) {
  touched.clear();
  for (Vertex y : g.neighbors(a)) {
    for (Vertex b : g.neighbors(y)) {
      if (b <= a) continue;
      if (counts[b]++ == 0) touched.push_back(b);
      if (lists) (*lists)[b].push_back(y);
    }
  }
  std::sort(touched.begin(), touched.end());
  for (Vertex b : touched) {
    fn(b, counts[b]);
    counts[b] = 0;
    if (lists) (*lists)[b].clear();
  }
}

}  // namespace

std::uint64_t count_c4(const Graph& g, const Bipartition& sides) {
  require_bipartition(g, sides);
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> counts(n, 0);
  std::vector<Vertex> touched;
  std::uint64_t total = 0;
  for (Vertex x = 0; x < n; ++x) {
    if (sides.side[x] != Side::X) continue;
    for_each_partner(g, x, counts, nullptr, touched, [&](Vertex, std::uint32_t c) {
      total += static_cast<std::uint64_t>(c) * (c - 1) / 2;
    });
  }
  return total;
}

CodegreeIndex CodegreeIndex::build(const Graph& g) {
  CodegreeIndex index;
  std::vector<std::uint32_t> counts(g.num_vertices(), 0);
  std::vector<Vertex> touched;
  for (Vertex a = 0; a < g.num_vertices(); ++a) {
    for_each_partner(g, a, counts, nullptr, touched, [&](Vertex b, std::uint32_t c) {
      if (c >= 2) index.pairs_.emplace(key(a, b), c);
    });
  }
  return index;
}

std::optional<std::uint32_t> CodegreeIndex::find(Vertex a, Vertex b) const {
  auto it = pairs_.find(key(a, b));
  if (it == pairs_.end()) return std::nullopt;
  return it->second;
}

C4Graph C4Graph::build(const Graph& host, const Bipartition& sides, double tau, const C4BuildOptions& options) {
  require_bipartition(host, sides);
  C4Graph c4;
  c4.host_ = host;
  c4.sides_ = sides;
  c4.tau_ = tau;
  c4.phi_.reserve(host.num_edges());
  for (const auto& e : host.edges()) {
    c4.phi_.push_back(sides.side[e.u] == Side::X ? HostEdge{e.u, e.v} : HostEdge{e.v, e.u});
  }
  c4.c4_count_ = count_c4(host, sides);

  const std::uint64_t gamma_edges = 2 * c4.c4_count_;
  if (gamma_edges > options.max_gamma_edges) {
    if (!options.allow_implicit) {
      throw CapacityError("graph too C4-dense for Gamma_0 materialization: " + std::to_string(gamma_edges) +
                          " edges exceed the cap of " + std::to_string(options.max_gamma_edges));
    }
    c4.implicit_ = true;
    for (GammaVertex v = 0; v < c4.num_vertices(); ++v) {
      c4.num_thick_ += c4.thick_degree(v);
    }
    c4.num_thick_ /= 2;
    c4.num_thin_ = gamma_edges - c4.num_thick_;
    return c4;
  }

  struct Arc {
    GammaVertex a;
    GammaVertex b;
    std::uint8_t thick;
  };
  std::vector<Arc> arcs;
  arcs.reserve(2 * gamma_edges);

  const CodegreeIndex index = CodegreeIndex::build(host);
  const std::size_t n = host.num_vertices();
  std::vector<std::uint32_t> counts(n, 0);
  std::vector<std::vector<Vertex>> lists(n);
  std::vector<Vertex> touched;
  for (Vertex x = 0; x < n; ++x) {
    if (sides.side[x] != Side::X) continue;
    // Collect the common neighbours before for_each_partner clears them.
    for_each_partner(host, x, counts, &lists, touched, [&](Vertex xp, std::uint32_t c) {
      if (c < 2) return;
      const auto& common = lists[xp];
      for (std::size_t i = 0; i < common.size(); ++i) {
        for (std::size_t j = i + 1; j < common.size(); ++j) {
          const Vertex y = common[i];
          const Vertex yp = common[j];
          const double cy = static_cast<double>(index.find(y, yp).value_or(0));
          const bool thick = std::max(static_cast<double>(c), cy) >= tau;
          // Cycle x y x' y' contributes xy ~ x'y' and xy' ~ x'y.
          const GammaVertex e1 = *host.edge_id(x, y);
          const GammaVertex f1 = *host.edge_id(xp, yp);
          const GammaVertex e2 = *host.edge_id(x, yp);
          const GammaVertex f2 = *host.edge_id(xp, y);
          const auto t = static_cast<std::uint8_t>(thick);
          arcs.push_back({e1, f1, t});
          arcs.push_back({f1, e1, t});
          arcs.push_back({e2, f2, t});
          arcs.push_back({f2, e2, t});
          (thick ? c4.num_thick_ : c4.num_thin_) += 2;
        }
      }
    });
  }

  std::sort(arcs.begin(), arcs.end(), [](const Arc& l, const Arc& r) {
    return l.a != r.a ? l.a < r.a : l.b < r.b;
  });
  c4.offsets_.assign(c4.num_vertices() + 1, 0);
  c4.nbrs_.reserve(arcs.size());
  c4.thick_.reserve(arcs.size());
  for (const auto& arc : arcs) {
    ++c4.offsets_[arc.a + 1];
    c4.nbrs_.push_back(arc.b);
    c4.thick_.push_back(arc.thick);
  }
  for (std::size_t v = 0; v < c4.num_vertices(); ++v) c4.offsets_[v + 1] += c4.offsets_[v];
  return c4;
}

bool C4Graph::is_thick_pair(HostEdge e, HostEdge f) const {
  const double cx = static_cast<double>(codegree(host_, e.x, f.x));
  const double cy = static_cast<double>(codegree(host_, e.y, f.y));
  return std::max(cx, cy) >= tau_;
}

void C4Graph::neighbors(GammaVertex v, std::vector<GammaVertex>& out, EdgeFilter filter) const {
  out.clear();
  auto wanted = [filter](bool thick) {
    return filter == EdgeFilter::All || (filter == EdgeFilter::ThickOnly) == thick;
  };
  if (!implicit_) {
    for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
      if (wanted(thick_[i] != 0)) out.push_back(nbrs_[i]);
    }
    return;
  }
  const HostEdge e = phi_[v];
  for (Vertex xp : host_.neighbors(e.y)) {
    if (xp == e.x) continue;
    for (Vertex yp : host_.neighbors(xp)) {
      if (yp == e.y || !host_.has_edge(e.x, yp)) continue;
      const HostEdge f{xp, yp};
      if (filter != EdgeFilter::All && !wanted(is_thick_pair(e, f))) continue;
      out.push_back(*host_.edge_id(xp, yp));
    }
  }
  std::sort(out.begin(), out.end());
}

std::optional<GammaEdgeClass> C4Graph::edge_class(GammaVertex a, GammaVertex b) const {
  if (a >= num_vertices() || b >= num_vertices()) return std::nullopt;
  const HostEdge e = phi_[a];
  const HostEdge f = phi_[b];
  if (e.x == f.x || e.y == f.y) return std::nullopt;
  if (!host_.has_edge(e.x, f.y) || !host_.has_edge(f.x, e.y)) return std::nullopt;
  return is_thick_pair(e, f) ? GammaEdgeClass::Thick : GammaEdgeClass::Thin;
}

std::size_t C4Graph::thick_degree(GammaVertex v) const {
  if (!implicit_) {
    std::size_t d = 0;
    for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) d += thick_[i];
    return d;
  }
  std::vector<GammaVertex> buf;
  neighbors(v, buf, EdgeFilter::ThickOnly);
  return buf.size();
}

void C4Graph::write_edge_list(std::ostream& out) const {
  for_each_edge([&](GammaVertex a, GammaVertex b, GammaEdgeClass cls) {
    out << a << ' ' << b << ' ' << (cls == GammaEdgeClass::Thick ? "thick" : "thin") << '\n';
  });
}

C4Summary summarize(const C4Graph& c4) {
  return {c4.num_vertices(), c4.num_thin(), c4.num_thick(), c4.c4_count(), c4.tau()};
}

nlohmann::json to_json(const C4Summary& s) {
  nlohmann::json j = {{"num_gamma_vertices", s.num_gamma_vertices},
                      {"num_thin", s.num_thin},
                      {"num_thick", s.num_thick},
                      {"c4_count", s.c4_count}};
  if (std::isfinite(s.tau)) {
    j["tau"] = s.tau;
  } else {
    j["tau"] = "inf";
  }
  return j;
}

namespace {

// Four-cycle in G[rows, cols]: two columns sharing two rows. Returns
// (col1, col2, row1, row2).
std::optional<std::array<Vertex, 4>> find_c4_between(const Graph& g, std::span<const Vertex> rows,
                                                    std::span<const Vertex> cols) {
  std::vector<std::uint8_t> in_rows(g.num_vertices(), 0);
  for (Vertex r : rows) in_rows[r] = 1;
  std::unordered_map<std::uint64_t, Vertex> seen;
  std::vector<Vertex> hits;
  for (Vertex c : cols) {
    hits.clear();
    for (Vertex r : g.neighbors(c)) {
      if (in_rows[r]) hits.push_back(r);
    }
    for (std::size_t i = 0; i < hits.size(); ++i) {
      for (std::size_t j = i + 1; j < hits.size(); ++j) {
        const std::uint64_t key = (static_cast<std::uint64_t>(hits[i]) << 32) | hits[j];
        auto [it, inserted] = seen.emplace(key, c);
        if (!inserted) return std::array<Vertex, 4>{it->second, c, hits[i], hits[j]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<DiagonalCycleWitness> find_k33_via_thick(const C4Graph& c4) {
  GammaVertex best = 0;
  std::size_t best_thick = 0;
  for (GammaVertex v = 0; v < c4.num_vertices(); ++v) {
    const std::size_t d = c4.thick_degree(v);
    if (d > best_thick) {
      best_thick = d;
      best = v;
    }
  }
  if (best_thick == 0) return std::nullopt;

  const Graph& g = c4.host();
  const HostEdge uv = c4.phi(best);
  for (auto [u, v] : {std::pair{uv.x, uv.y}, std::pair{uv.y, uv.x}}) {
    std::vector<Vertex> xs;
    for (Vertex x : g.neighbors(v)) {
      if (x != u && static_cast<double>(codegree(g, u, x)) >= c4.tau()) xs.push_back(x);
    }
    std::vector<Vertex> rows;
    for (Vertex y : g.neighbors(u)) {
      if (y != v) rows.push_back(y);
    }
    if (auto quad = find_c4_between(g, rows, xs)) {
      const auto [x1, x2, y1, y2] = *quad;
      // Parts {u, x1, x2} and {v, y1, y2}, listed alternately.
      return DiagonalCycleWitness{{u, v, x1, y1, x2, y2}, 3};
    }
  }
  return std::nullopt;
}

}  // namespace cdia
