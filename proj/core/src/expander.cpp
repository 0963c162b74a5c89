#include "cdia/expander.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <set>

#include "cdia/error.hpp"

namespace cdia {
namespace {

double density_ratio(std::size_t edges, std::size_t vertices) {
  if (vertices == 0) return 0.0;
  return static_cast<double>(edges) / std::pow(static_cast<double>(vertices), 1.5);
}

std::uint64_t edges_inside(const Graph& g, std::span<const std::uint8_t> in_set, std::span<const Vertex> s) {
  std::uint64_t twice = 0;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v)) twice += in_set[w];
  return twice / 2;
}

std::uint64_t edges_leaving(const Graph& g, std::span<const std::uint8_t> in_set, std::span<const Vertex> s) {
  std::uint64_t out = 0;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v)) out += !in_set[w];
  return out;
}

// Visits subsets of {0..n-1} of every size 1..k in lexicographic order.
template <typename Fn>
void for_each_small_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<Vertex> s;
  for (std::size_t size = 1; size <= k && size <= n; ++size) {
    s.resize(size);
    std::iota(s.begin(), s.end(), 0);
    while (true) {
      fn(std::span<const Vertex>(s));
      std::size_t i = size;
      while (i > 0 && s[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++s[i - 1];
      for (std::size_t j = i; j < size; ++j) s[j] = s[j - 1] + 1;
    }
  }
}

// Largest k with sum_{s<=k} C(n, s) <= budget.
std::size_t exhaustive_depth(std::size_t n, std::uint64_t budget) {
  double total = 0.0;
  double binom = 1.0;
  std::size_t k = 0;
  while (k < n) {
    binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
    if (total + binom > static_cast<double>(budget)) break;
    total += binom;
    ++k;
  }
  return k;
}

class SetChecker {
 public:
  explicit SetChecker(const Graph& g) : g_(g), in_(g.num_vertices(), 0) {}

  template <typename Value>
  void check(std::span<const Vertex> s, PropertyCheck& pc, Value&& slack_of) {
    for (Vertex v : s) in_[v] = 1;
    const double slack = slack_of(s, std::span<const std::uint8_t>(in_));
    for (Vertex v : s) in_[v] = 0;
    if (pc.sets_checked == 0 || slack < pc.worst_slack) pc.worst_slack = slack;
    ++pc.sets_checked;
    if (slack < 0 && pc.counterexample.empty()) pc.counterexample.assign(s.begin(), s.end());
  }

 private:
  const Graph& g_;
  std::vector<std::uint8_t> in_;
};

std::vector<Vertex> random_subset(std::size_t n, std::size_t size, std::mt19937_64& rng) {
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = 0; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

// First `size` vertices of a BFS from `root`, padded with the lowest unused ids
// when the component is smaller.
std::vector<Vertex> bfs_ball(const Graph& g, Vertex root, std::size_t size) {
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  std::vector<Vertex> out;
  std::deque<Vertex> queue{root};
  seen[root] = 1;
  while (!queue.empty() && out.size() < size) {
    Vertex v = queue.front();
    queue.pop_front();
    out.push_back(v);
    for (Vertex w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  for (Vertex v = 0; v < g.num_vertices() && out.size() < size; ++v) {
    if (!seen[v]) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void finish(PropertyCheck& pc, bool complete) {
  if (!pc.counterexample.empty()) {
    pc.evidence = Evidence::Fail;
  } else if (pc.sets_checked == 0) {
    pc.evidence = Evidence::Vacuous;
  } else {
    pc.evidence = complete ? Evidence::Proved : Evidence::SampledPass;
  }
}

PropertyCheck check_no_dense_set(const Graph& h, double C, const PropertyCheckOptions& options) {
  PropertyCheck pc;
  const std::size_t m = h.num_vertices();
  if (m == 0) return pc;
  SetChecker checker(h);
  auto slack = [&](std::span<const Vertex> s, std::span<const std::uint8_t> in) {
    return 2.0 * C * std::pow(static_cast<double>(s.size()), 1.5) - static_cast<double>(edges_inside(h, in, s));
  };
  const std::size_t depth = exhaustive_depth(m, options.exhaustive_budget);
  pc.exhaustive_up_to = depth;
  for_each_small_subset(m, depth, [&](std::span<const Vertex> s) { checker.check(s, pc, slack); });
  if (depth >= m) {
    finish(pc, true);
    return pc;
  }

  // Dense candidates: every prefix of the min-degree peel.
  if (h.num_edges() > 0) {
    const auto peel = peel_half_maximal(h);
    const auto& order = peel.trace.removal_order;
    for (std::size_t k = 0; k + depth < m; ++k) {
      std::vector<Vertex> s(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
      checker.check(s, pc, slack);
    }
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> size_dist(depth + 1, m);
  for (std::size_t i = 0; i < options.random_samples; ++i) {
    checker.check(random_subset(m, size_dist(rng), rng), pc, slack);
  }
  finish(pc, false);
  return pc;
}

PropertyCheck check_large_set_expansion(const Graph& h, double C, double D, const PropertyCheckOptions& options) {
  PropertyCheck pc;
  const std::size_t m = h.num_vertices();
  const double lo = 1000.0 * static_cast<double>(m) / D;
  const std::size_t min_size = static_cast<std::size_t>(std::ceil(lo));
  const std::size_t max_size = m / 2;
  if (m == 0 || min_size > max_size) return pc;  // Vacuous

  const double per_vertex = C * std::sqrt(static_cast<double>(m)) / 16.0;
  SetChecker checker(h);
  auto slack = [&](std::span<const Vertex> s, std::span<const std::uint8_t> in) {
    return static_cast<double>(edges_leaving(h, in, s)) - static_cast<double>(s.size()) * per_vertex;
  };

  if (m <= 20 && (std::uint64_t{1} << m) <= options.exhaustive_budget) {
    std::vector<Vertex> s;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      const auto size = static_cast<std::size_t>(std::popcount(mask));
      if (size < min_size || size > max_size) continue;
      s.clear();
      for (Vertex v = 0; v < m; ++v)
        if ((mask >> v) & 1U) s.push_back(v);
      checker.check(s, pc, slack);
    }
    finish(pc, true);
    return pc;
  }

  std::mt19937_64 rng(options.seed ^ 0x5bd1e995ULL);
  std::uniform_int_distribution<std::size_t> size_dist(min_size, max_size);
  std::uniform_int_distribution<Vertex> root_dist(0, static_cast<Vertex>(m - 1));
  for (std::size_t i = 0; i < options.random_samples; ++i) {
    checker.check(random_subset(m, size_dist(rng), rng), pc, slack);
    checker.check(bfs_ball(h, root_dist(rng), size_dist(rng)), pc, slack);
  }
  finish(pc, false);
  return pc;
}

nlohmann::json to_json(const PropertyCheck& pc) {
  return {{"evidence", to_string(pc.evidence)},
          {"sets_checked", pc.sets_checked},
          {"exhaustive_up_to", pc.exhaustive_up_to},
          {"worst_slack", pc.worst_slack},
          {"counterexample", pc.counterexample}};
}

}  // namespace

PeelResult peel_half_maximal(const Graph& g) {
  if (g.num_edges() == 0) throw ArgumentError("peeling needs at least one edge");
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> deg(n);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    queue.emplace(deg[v], v);
  }
  std::vector<std::uint8_t> removed(n, 0);

  PeelResult result;
  auto& trace = result.trace;
  std::size_t vertices = n;
  std::size_t edges = g.num_edges();
  trace.steps.push_back({vertices, edges, density_ratio(edges, vertices)});
  while (vertices > 1) {
    auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    removed[v] = 1;
    trace.removal_order.push_back(v);
    for (Vertex w : g.neighbors(v)) {
      if (removed[w]) continue;
      queue.erase({deg[w], w});
      queue.emplace(--deg[w], w);
    }
    edges -= d;
    --vertices;
    trace.steps.push_back({vertices, edges, density_ratio(edges, vertices)});
  }
  trace.removal_order.push_back(queue.begin()->second);

  for (std::size_t k = 1; k < trace.steps.size(); ++k) {
    if (trace.steps[k].ratio > trace.steps[trace.argmax].ratio) trace.argmax = k;
  }
  result.original.assign(trace.removal_order.begin() + static_cast<std::ptrdiff_t>(trace.argmax),
                         trace.removal_order.end());
  std::sort(result.original.begin(), result.original.end());
  result.subgraph = g.induced(result.original);
  return result;
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::Proved: return "proved";
    case Evidence::SampledPass: return "sampled-pass";
    case Evidence::Vacuous: return "vacuous";
    case Evidence::Fail: return "fail";
  }
  return "unknown";
}

DegreeCapResult degree_cap(const Graph& h0, double C1, double D, const PropertyCheckOptions& options) {
  const std::size_t m = h0.num_vertices();
  if (m == 0) throw ArgumentError("degree cap needs a non-empty graph");
  const double sqrt_m = std::sqrt(static_cast<double>(m));
  const double m32 = std::pow(static_cast<double>(m), 1.5);

  ExpanderReport r;
  r.m = m;
  r.C1 = C1;
  r.D = D;
  r.edges_before = h0.num_edges();
  r.C0 = static_cast<double>(h0.num_edges()) / m32 / 2.0;
  r.degree_cap_value = r.C0 * D * sqrt_m;
  r.removed_edges_bound = 64.0 * r.C0 * m32 / D;

  std::vector<std::uint8_t> capped(m, 0);
  for (Vertex v = 0; v < m; ++v) {
    if (static_cast<double>(h0.degree(v)) >= r.degree_cap_value) {
      capped[v] = 1;
      ++r.capped_vertices;
    }
  }
  std::vector<std::uint8_t> keep(h0.num_edges());
  for (EdgeId id = 0; id < h0.num_edges(); ++id) {
    const auto e = h0.edge(id);
    keep[id] = !capped[e.u] && !capped[e.v];
    r.removed_edges += !keep[id];
  }
  Graph h = h0.edge_subgraph(keep);

  r.edges_after = h.num_edges();
  r.C = static_cast<double>(h.num_edges()) / m32;
  r.max_degree = h.max_degree();
  r.p1 = r.C >= C1 / 2.0;
  r.p2 = static_cast<double>(r.max_degree) <= r.C * D * sqrt_m;
  r.p3 = check_no_dense_set(h, r.C, options);
  r.p4 = check_large_set_expansion(h, r.C, D, options);
  return {std::move(h), std::move(r)};
}

nlohmann::json to_json(const ExpanderReport& r) {
  return {{"m", r.m},
          {"C0", r.C0},
          {"C", r.C},
          {"C1", r.C1},
          {"D", r.D},
          {"edges_before", r.edges_before},
          {"edges_after", r.edges_after},
          {"max_degree", r.max_degree},
          {"degree_cap_value", r.degree_cap_value},
          {"capped_vertices", r.capped_vertices},
          {"removed_edges", r.removed_edges},
          {"removed_edges_bound", r.removed_edges_bound},
          {"P1", r.p1},
          {"P2", r.p2},
          {"P3", to_json(r.p3)},
          {"P4", to_json(r.p4)}};
}

double edge_expansion(const Graph& g, std::span<const Vertex> s) {
  const std::size_t n = g.num_vertices();
  if (s.empty()) throw ArgumentError("edge expansion of the empty set");
  if (s.size() >= n) throw ArgumentError("edge expansion needs a proper subset");
  std::vector<std::uint8_t> in(n, 0);
  for (Vertex v : s) {
    g.check_vertex(v);
    if (in[v]) throw ArgumentError("duplicate vertex " + std::to_string(v) + " in set");
    in[v] = 1;
  }
  return static_cast<double>(edges_leaving(g, in, s)) / static_cast<double>(s.size());
}

std::string to_string(VertexClass c) {
  switch (c) {
    case VertexClass::P: return "P";
    case VertexClass::R: return "R";
    case VertexClass::B: return "B";
    case VertexClass::U: return "U";
  }
  return "?";
}

ColorPartitionReport color_partition_diagnostic(const Graph& g, const Bipartition& sides,
                                                std::span<const EdgeId> blue, std::span<const EdgeId> purple,
                                                std::span<const EdgeId> red, double eta) {
  if (!sides.is_valid_for(g)) throw ArgumentError("sides is not a bipartition of the graph");
  enum Colour : std::uint8_t { kNone, kBlue, kPurple, kRed };
  std::vector<std::uint8_t> colour(g.num_edges(), kNone);
  auto paint = [&](std::span<const EdgeId> ids, Colour c) {
    for (EdgeId id : ids) {
      if (id >= g.num_edges()) throw ArgumentError("edge id " + std::to_string(id) + " out of range");
      if (colour[id] != kNone) throw ArgumentError("edge id " + std::to_string(id) + " coloured twice");
      colour[id] = c;
    }
  };
  paint(blue, kBlue);
  paint(purple, kPurple);
  paint(red, kRed);
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    if (colour[id] == kNone) throw ArgumentError("edge id " + std::to_string(id) + " has no colour");
  }

  const std::size_t n = g.num_vertices();
  ColorPartitionReport r;
  r.cls.resize(n);
  bool overlap = false;
  std::uint64_t blue_into_r = 0, red_into_b = 0;
  for (Vertex v = 0; v < n; ++v) {
    std::size_t db = 0, dp = 0, dr = 0;
    for (EdgeId id : g.incident_edges(v)) {
      db += colour[id] == kBlue;
      dp += colour[id] == kPurple;
      dr += colour[id] == kRed;
    }
    const double d = static_cast<double>(g.degree(v));
    const bool in_p = static_cast<double>(dp) >= d / 2.0;
    const bool in_r = !in_p && static_cast<double>(db) < eta * d;
    const bool in_b = !in_p && static_cast<double>(dr) < eta * d;
    const bool in_u = !in_p && static_cast<double>(db) >= eta * d && static_cast<double>(dr) >= eta * d;
    overlap |= (int{in_p} + int{in_r} + int{in_b} + int{in_u}) != 1;
    r.cls[v] = in_p ? VertexClass::P : in_r ? VertexClass::R : in_b ? VertexClass::B : VertexClass::U;
    switch (r.cls[v]) {
      case VertexClass::P:
        ++r.size_p;
        r.e_p += g.degree(v);
        break;
      case VertexClass::R:
        ++r.size_r;
        blue_into_r += db;
        break;
      case VertexClass::B:
        ++r.size_b;
        red_into_b += dr;
        break;
      case VertexClass::U:
        ++r.size_u;
        r.e_u += g.degree(v);
        break;
    }
  }
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const auto e = g.edge(id);
    const bool b_u = r.cls[e.u] == VertexClass::B;
    const bool b_v = r.cls[e.v] == VertexClass::B;
    if (b_u != b_v) ++r.e_b_out;
    const bool br = (b_u && r.cls[e.v] == VertexClass::R) || (b_v && r.cls[e.u] == VertexClass::R);
    if (!br) continue;
    ++r.e_br;
    r.blue_br += colour[id] == kBlue;
    r.red_br += colour[id] == kRed;
    r.purple_br += colour[id] == kPurple;
  }

  const double m = static_cast<double>(g.num_edges());
  const double ep = static_cast<double>(purple.size());
  if (overlap) r.failed.push_back("partition");
  if (static_cast<double>(r.e_p) > 4.0 * ep) r.failed.push_back("e_P <= 4|E_p|");
  if (static_cast<double>(r.blue_br) > 2.0 * eta * m) r.failed.push_back("blue(B,R) <= 2 eta e(G)");
  if (static_cast<double>(r.red_br) > 2.0 * eta * m) r.failed.push_back("red(B,R) <= 2 eta e(G)");
  if (static_cast<double>(r.e_br) > 4.0 * eta * m + ep) r.failed.push_back("e(B,R) <= 4 eta e(G) + |E_p|");
  if (r.e_b_out > r.e_u + r.e_p + r.e_br) r.failed.push_back("e(B,B^c) <= e_U + e_P + e(B,R)");
  (void)blue_into_r;
  (void)red_into_b;
  return r;
}

nlohmann::json to_json(const ColorPartitionReport& r) {
  return {{"size_P", r.size_p}, {"size_R", r.size_r}, {"size_B", r.size_b}, {"size_U", r.size_u},
          {"e_U", r.e_u},       {"e_P", r.e_p},       {"e_BR", r.e_br},     {"e_B_out", r.e_b_out},
          {"blue_BR", r.blue_br}, {"red_BR", r.red_br}, {"purple_BR", r.purple_br}, {"failed", r.failed}};
}

}  // namespace cdia
