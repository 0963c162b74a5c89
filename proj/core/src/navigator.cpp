#include "cdia/navigator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

#include "cdia/error.hpp"
#include "cdia/random.hpp"

namespace cdia {

std::vector<Vertex> ProperPath::phi_image(const GammaGraph& g) const {
  std::vector<Vertex> out;
  out.reserve(2 * vertices.size());
  for (GammaVertex v : vertices) {
    out.push_back(g.phi(v).x);
    out.push_back(g.phi(v).y);
  }
  return out;
}

namespace {

std::vector<std::uint8_t> membership(const GammaGraph& g, std::span<const GammaVertex> set) {
  std::vector<std::uint8_t> in(g.num_vertices(), 0);
  for (GammaVertex v : set) {
    if (v >= g.num_vertices()) throw ArgumentError("Gamma-vertex " + std::to_string(v) + " out of range");
    if (in[v]) throw ArgumentError("duplicate Gamma-vertex " + std::to_string(v));
    in[v] = 1;
  }
  return in;
}

nlohmann::json edges_json(std::span<const GammaEdge> edges) {
  auto arr = nlohmann::json::array();
  for (auto [a, b] : edges) arr.push_back({a, b});
  return arr;
}

}  // namespace

std::vector<GammaVertex> robust_neighborhood(const GammaGraph& g, std::span<const GammaVertex> eb,
                                             std::span<const GammaEdge> f) {
  const auto in = membership(g, eb);
  std::vector<GammaEdge> deleted;
  deleted.reserve(f.size());
  for (auto [a, b] : f) deleted.push_back(normalized(a, b));
  std::sort(deleted.begin(), deleted.end());
  std::vector<std::uint8_t> hit(g.num_vertices(), 0);
  std::vector<GammaVertex> out;
  for (GammaVertex v : eb) {
    for (GammaVertex w : g.neighbors(v)) {
      if (in[w] || hit[w] || !g.alive(w)) continue;
      if (std::binary_search(deleted.begin(), deleted.end(), normalized(v, w))) continue;
      hit[w] = 1;
      out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json to_json(const RobustnessReport& r) {
  return {{"set_size", r.set_size}, {"boundary", r.boundary},   {"budget", r.budget},
          {"used", r.used},         {"achieved", r.achieved},   {"threshold", r.threshold},
          {"verdict", r.fail ? "fail" : "pass"}, {"strategy", r.strategy}, {"seed", r.seed},
          {"F", edges_json(r.f)}};
}

RobustnessReport adversarial_robustness_probe(const GammaGraph& g, std::span<const GammaVertex> eb, double delta,
                                              double budget, double budget_cap, std::uint64_t seed) {
  if (budget > budget_cap) {
    throw ArgumentError("deletion budget " + std::to_string(budget) + " exceeds the cap " + std::to_string(budget_cap));
  }
  const auto in = membership(g, eb);
  for (GammaVertex v : eb) {
    if (!g.alive(v)) throw ArgumentError("Gamma-vertex " + std::to_string(v) + " is not alive");
  }
  std::vector<std::uint32_t> cost(g.num_vertices(), 0);
  std::vector<GammaVertex> boundary;
  for (GammaVertex v : eb) {
    for (GammaVertex w : g.neighbors(v)) {
      if (in[w] || !g.alive(w)) continue;
      if (cost[w]++ == 0) boundary.push_back(w);
    }
  }
  std::sort(boundary.begin(), boundary.end());
  std::mt19937_64 rng(seed);
  std::shuffle(boundary.begin(), boundary.end(), rng);
  std::stable_sort(boundary.begin(), boundary.end(),
                   [&](GammaVertex a, GammaVertex b) { return cost[a] < cost[b]; });

  RobustnessReport r;
  r.set_size = eb.size();
  r.boundary = boundary.size();
  r.budget = budget;
  r.threshold = delta * static_cast<double>(eb.size());
  r.seed = seed;
  std::vector<std::uint8_t> cut(g.num_vertices(), 0);
  std::size_t severed = 0;
  for (GammaVertex w : boundary) {
    if (static_cast<double>(r.used + cost[w]) > budget) break;
    r.used += cost[w];
    cut[w] = 1;
    ++severed;
  }
  for (GammaVertex v : eb) {
    for (GammaVertex w : g.neighbors(v)) {
      if (cut[w]) r.f.push_back(normalized(v, w));
    }
  }
  std::sort(r.f.begin(), r.f.end());
  r.achieved = boundary.size() - severed;
  r.fail = static_cast<double>(r.achieved) < r.threshold;
  return r;
}

nlohmann::json to_json(const ExtractionResult& r) {
  auto certs = nlohmann::json::array();
  for (const auto& c : r.certificates) {
    certs.push_back({{"source", c.source}, {"size", c.set.size()}, {"F", c.f.size()}, {"achieved", c.achieved}});
  }
  return {{"n0", r.n0},
          {"n", r.gamma.num_alive()},
          {"removed", r.removed.size()},
          {"removed_edges", r.removed_edges.size()},
          {"rounds", r.rounds},
          {"within_epsilon", r.within_epsilon},
          {"certificates", certs}};
}

namespace {

class Extractor {
 public:
  Extractor(const GammaGraph& thin, const ParameterSet& params, std::uint64_t seed)
      : current_(thin), params_(params), rng_(seed) {
    per_vertex_ = params.robust_budget_per_vertex(thin.host_vertices());
    result_.n0 = thin.num_alive();
    total_cap_ = static_cast<std::size_t>(std::floor(0.99 * static_cast<double>(result_.n0)));
  }

  ExtractionResult run() {
    while (current_.num_alive() > 0) {
      ++result_.rounds;
      std::vector<NonRobustCertificate> found = components();
      if (found.empty()) found = low_degree();
      if (found.empty()) found = grown();
      if (found.empty()) break;
      apply(std::move(found));
    }
    std::sort(result_.removed.begin(), result_.removed.end());
    std::sort(result_.removed_edges.begin(), result_.removed_edges.end());
    result_.within_epsilon =
        static_cast<double>(result_.removed.size()) <= params_.epsilon * static_cast<double>(result_.n0);
    result_.gamma = std::move(current_);
    return std::move(result_);
  }

 private:
  std::size_t set_limit() const {
    const auto frac = static_cast<std::size_t>(
        std::floor(params_.expander_max_frac * static_cast<double>(current_.num_alive())));
    return std::min(frac, total_cap_ - result_.removed.size());
  }

  std::vector<NonRobustCertificate> components() {
    std::vector<std::vector<GammaVertex>> comps;
    std::vector<std::uint8_t> seen(current_.num_vertices(), 0);
    std::size_t largest = 0;
    for (GammaVertex s : current_.alive_vertices()) {
      if (seen[s]) continue;
      std::vector<GammaVertex> comp{s};
      seen[s] = 1;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        for (GammaVertex w : current_.neighbors(comp[i])) {
          if (!seen[w]) {
            seen[w] = 1;
            comp.push_back(w);
          }
        }
      }
      if (comps.empty() || comp.size() > comps[largest].size()) largest = comps.size();
      comps.push_back(std::move(comp));
    }
    // The largest component (earliest on ties) is the one kept.
    std::vector<NonRobustCertificate> out;
    std::size_t budget = set_limit();
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (i == largest || comps[i].size() > budget) continue;
      budget -= comps[i].size();
      std::sort(comps[i].begin(), comps[i].end());
      out.push_back({std::move(comps[i]), {}, 0, "component"});
    }
    return out;
  }

  std::vector<NonRobustCertificate> low_degree() {
    std::vector<NonRobustCertificate> out;
    std::size_t budget = set_limit();
    for (GammaVertex v : current_.alive_vertices()) {
      if (budget == 0) break;
      if (static_cast<double>(current_.degree(v)) > per_vertex_) continue;
      std::vector<GammaEdge> f;
      for (GammaVertex w : current_.neighbors(v)) f.push_back(normalized(v, w));
      out.push_back({{v}, std::move(f), 0, "low-degree"});
      --budget;
    }
    return out;
  }

  std::vector<GammaVertex> seeds() {
    auto alive = current_.alive_vertices();
    std::vector<GammaVertex> by_degree = alive;
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](GammaVertex a, GammaVertex b) { return current_.degree(a) < current_.degree(b); });
    const std::size_t k = std::min(params_.expander_seeds, alive.size());
    std::vector<GammaVertex> out(by_degree.begin(), by_degree.begin() + static_cast<std::ptrdiff_t>((k + 1) / 2));
    std::shuffle(alive.begin(), alive.end(), rng_);
    for (GammaVertex v : alive) {
      if (out.size() >= k) break;
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    return out;
  }

  // Adds, one at a time, the boundary vertex with most edges into the set
  // (lowest id on ties) and probes after every step.
  std::vector<NonRobustCertificate> grown() {
    const std::size_t limit = std::min(set_limit(), params_.expander_grow_limit);
    if (limit == 0) return {};
    for (GammaVertex s : seeds()) {
      std::vector<GammaVertex> set{s};
      std::vector<std::uint8_t> in(current_.num_vertices(), 0);
      std::vector<std::uint32_t> pull(current_.num_vertices(), 0);
      in[s] = 1;
      for (GammaVertex w : current_.neighbors(s)) ++pull[w];
      while (true) {
        const double budget = static_cast<double>(set.size()) * per_vertex_;
        auto report = adversarial_robustness_probe(current_, set, params_.delta, budget, budget, rng_());
        if (report.fail) {
          std::sort(set.begin(), set.end());
          return {{std::move(set), std::move(report.f), report.achieved, "grown"}};
        }
        if (set.size() >= limit) break;
        GammaVertex best = kNoVertex;
        for (GammaVertex v : set) {
          for (GammaVertex w : current_.neighbors(v)) {
            if (in[w]) continue;
            if (best == kNoVertex || pull[w] > pull[best] || (pull[w] == pull[best] && w < best)) best = w;
          }
        }
        if (best == kNoVertex) break;
        in[best] = 1;
        set.push_back(best);
        for (GammaVertex w : current_.neighbors(best)) ++pull[w];
      }
    }
    return {};
  }

  void apply(std::vector<NonRobustCertificate> found) {
    std::vector<GammaVertex> drop;
    for (auto& c : found) {
      drop.insert(drop.end(), c.set.begin(), c.set.end());
      result_.removed.insert(result_.removed.end(), c.set.begin(), c.set.end());
      result_.removed_edges.insert(result_.removed_edges.end(), c.f.begin(), c.f.end());
      result_.certificates.push_back(std::move(c));
    }
    current_ = current_.without(drop, {});
  }

  GammaGraph current_;
  const ParameterSet& params_;
  std::mt19937_64 rng_;
  double per_vertex_ = 0.0;
  std::size_t total_cap_ = 0;
  ExtractionResult result_;
};

}  // namespace

ExtractionResult extract_expander(const GammaGraph& thin, const ParameterSet& params, std::uint64_t seed) {
  return Extractor(thin, params, seed).run();
}

FanOptions fan_options(const ParameterSet& params, std::size_t alive) {
  FanOptions o;
  o.t_cap = params.t_nice;
  o.L_cap = params.L_max;
  if (params.fan_target_frac < 1.0) {
    o.target_size = static_cast<std::size_t>(std::ceil(params.fan_target_frac * static_cast<double>(alive)));
  }
  return o;
}

ProperPath Fan::path_to(GammaVertex y) const {
  if (!contains(y)) throw ArgumentError("Gamma-vertex " + std::to_string(y) + " is not in the fan");
  ProperPath p;
  for (GammaVertex v = y; v != root; v = parent[v]) p.vertices.push_back(v);
  p.vertices.push_back(root);
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

std::uint32_t Fan::max_counter() const {
  return counter.empty() ? 0 : *std::max_element(counter.begin(), counter.end());
}

std::size_t Fan::max_length() const {
  std::size_t best = 0;
  for (GammaVertex y : endpoints) best = std::max<std::size_t>(best, depth[y]);
  return best;
}

Fan build_fan(const GammaGraph& g, GammaVertex x0, std::span<const Vertex> avoid, const FanOptions& options) {
  if (x0 >= g.num_vertices() || !g.alive(x0)) throw ArgumentError("fan root is not an alive Gamma-vertex");
  const std::size_t host_n = g.host_vertices();
  std::vector<std::uint8_t> avoided(host_n, 0);
  for (Vertex b : avoid) {
    if (b >= host_n) throw ArgumentError("avoided vertex out of range");
    avoided[b] = 1;
  }
  const HostEdge r = g.phi(x0);
  if (avoided[r.x] || avoided[r.y]) throw ArgumentError("phi of the fan root meets the avoided set");

  Fan fan;
  fan.root = x0;
  fan.options = options;
  fan.parent.assign(g.num_vertices(), kNoVertex);
  fan.depth.assign(g.num_vertices(), 0);
  fan.counter.assign(host_n, 0);
  fan.avoided.assign(avoid.begin(), avoid.end());
  std::sort(fan.avoided.begin(), fan.avoided.end());
  fan.avoided.erase(std::unique(fan.avoided.begin(), fan.avoided.end()), fan.avoided.end());
  fan.parent[x0] = x0;

  auto below_cap = [&](Vertex v) { return static_cast<double>(fan.counter[v]) + 1.0 <= options.t_cap; };
  auto done = [&] { return options.target_size != 0 && fan.size() >= options.target_size; };

  std::vector<std::uint8_t> on_path(host_n, 0);
  std::vector<Vertex> path_vertices;  // phi(P(x)) minus phi(x0)
  std::vector<GammaVertex> level{x0};
  while (!level.empty() && !done()) {
    std::vector<GammaVertex> next;
    for (GammaVertex x : level) {
      if (fan.depth[x] >= options.L_cap || done()) continue;
      path_vertices.clear();
      for (GammaVertex v = x; v != x0; v = fan.parent[v]) {
        path_vertices.push_back(g.phi(v).x);
        path_vertices.push_back(g.phi(v).y);
      }
      for (Vertex v : path_vertices) on_path[v] = 1;
      on_path[r.x] = on_path[r.y] = 1;
      for (GammaVertex y : g.neighbors(x)) {
        if (!g.alive(y) || fan.parent[y] != kNoVertex) continue;
        const HostEdge e = g.phi(y);
        if (on_path[e.x] || on_path[e.y] || avoided[e.x] || avoided[e.y]) continue;
        if (!below_cap(e.x) || !below_cap(e.y)) continue;
        if (!std::all_of(path_vertices.begin(), path_vertices.end(), below_cap)) continue;
        fan.parent[y] = x;
        fan.depth[y] = fan.depth[x] + 1;
        fan.endpoints.push_back(y);
        next.push_back(y);
        for (Vertex v : path_vertices) ++fan.counter[v];
        ++fan.counter[e.x];
        ++fan.counter[e.y];
        if (done()) break;
      }
      for (Vertex v : path_vertices) on_path[v] = 0;
      on_path[r.x] = on_path[r.y] = 0;
    }
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
  return fan;
}

std::vector<std::string> fan_problems(const GammaGraph& g, const Fan& fan) {
  std::vector<std::string> problems;
  auto report = [&](const std::string& s) { problems.push_back(s); };
  if (fan.parent.size() != g.num_vertices() || fan.counter.size() != g.host_vertices()) {
    report("fan tables do not match the graph");
    return problems;
  }
  std::vector<std::uint8_t> avoided(g.host_vertices(), 0);
  for (Vertex b : fan.avoided) avoided[b] = 1;
  const HostEdge r = g.phi(fan.root);
  std::vector<std::uint32_t> counts(g.host_vertices(), 0);
  std::vector<std::uint8_t> listed(g.num_vertices(), 0);
  for (GammaVertex y : fan.endpoints) {
    const std::string tag = "endpoint " + std::to_string(y) + ": ";
    if (y == fan.root || !fan.contains(y) || listed[y]) {
      report(tag + "bad endpoint entry");
      continue;
    }
    listed[y] = 1;
    std::vector<GammaVertex> path{y};
    while (path.back() != fan.root && path.size() <= fan.options.L_cap + 1) path.push_back(fan.parent[path.back()]);
    if (path.back() != fan.root) {
      report(tag + "path longer than L_cap or not rooted");
      continue;
    }
    if (path.size() - 1 != fan.depth[y]) report(tag + "stored depth disagrees with path");
    std::vector<Vertex> image;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (!g.alive(path[i])) report(tag + "dead vertex on path");
      if (i + 1 < path.size() && !g.has_edge(path[i], path[i + 1])) report(tag + "non-adjacent consecutive pair");
      image.push_back(g.phi(path[i]).x);
      image.push_back(g.phi(path[i]).y);
    }
    auto sorted = image;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) report(tag + "path is not proper");
    for (Vertex v : image) {
      if (avoided[v]) report(tag + "path meets the avoided set");
    }
    for (Vertex v : sorted) {
      if (v != r.x && v != r.y) ++counts[v];
    }
  }
  for (GammaVertex v = 0; v < g.num_vertices(); ++v) {
    if (v != fan.root && fan.contains(v) && !listed[v]) report("vertex " + std::to_string(v) + " in tree but not listed");
  }
  for (Vertex v = 0; v < g.host_vertices(); ++v) {
    if (counts[v] != fan.counter[v]) report("counter mismatch at host vertex " + std::to_string(v));
    if (static_cast<double>(counts[v]) > fan.options.t_cap) report("counter above t_cap at host vertex " + std::to_string(v));
  }
  return problems;
}

std::map<GammaVertex, EvenOddPaths> even_odd_paths(const GammaGraph& g, const Fan& fan, double min_degree) {
  std::map<GammaVertex, EvenOddPaths> out;
  for (GammaVertex y : fan.endpoints) {
    auto p = fan.path_to(y);
    (p.odd() ? out[y].odd : out[y].even) = std::move(p);
  }
  std::vector<std::uint8_t> avoided(g.host_vertices(), 0);
  for (Vertex b : fan.avoided) avoided[b] = 1;
  std::vector<std::uint8_t> mark(g.host_vertices(), 0);

  for (std::uint32_t parity = 0; parity < 2; ++parity) {
    std::vector<std::uint8_t> in(g.num_vertices(), 0);
    std::vector<GammaVertex> members;
    for (GammaVertex y : fan.endpoints) {
      if (fan.depth[y] % 2 == parity) {
        in[y] = 1;
        members.push_back(y);
      }
    }
    std::vector<std::size_t> deg(g.num_vertices(), 0);
    std::deque<GammaVertex> queue;
    for (GammaVertex y : members) {
      for (GammaVertex w : g.neighbors(y)) deg[y] += in[w];
      if (static_cast<double>(deg[y]) <= min_degree) queue.push_back(y);
    }
    while (!queue.empty()) {
      GammaVertex y = queue.front();
      queue.pop_front();
      if (!in[y]) continue;
      in[y] = 0;
      for (GammaVertex w : g.neighbors(y)) {
        if (in[w] && static_cast<double>(--deg[w]) <= min_degree) queue.push_back(w);
      }
    }

    std::sort(members.begin(), members.end());
    for (GammaVertex z : members) {
      if (!in[z]) continue;
      const HostEdge ez = g.phi(z);
      for (GammaVertex y : g.neighbors(z)) {
        if (!in[y]) continue;
        auto p = fan.path_to(y);
        if (p.length() + 1 > fan.options.L_cap + 1) continue;
        const auto image = p.phi_image(g);
        for (Vertex v : image) mark[v] = 1;
        const bool ok = !mark[ez.x] && !mark[ez.y] && !avoided[ez.x] && !avoided[ez.y];
        for (Vertex v : image) mark[v] = 0;
        if (!ok) continue;
        p.vertices.push_back(z);
        (p.odd() ? out[z].odd : out[z].even) = std::move(p);
        break;
      }
    }
  }
  return out;
}

std::size_t induced_edges(const GammaGraph& g, std::span<const GammaVertex> u) {
  std::vector<std::uint8_t> in(g.num_vertices(), 0);
  for (GammaVertex v : u) in[v] = 1;
  std::size_t twice = 0;
  for (GammaVertex v : u) {
    for (GammaVertex w : g.neighbors(v)) twice += in[w];
  }
  return twice / 2;
}

FanSummary summarize(const GammaGraph& g, const Fan& fan, const std::map<GammaVertex, EvenOddPaths>& eo) {
  FanSummary s;
  s.size = fan.size();
  const std::size_t others = g.num_alive() > 0 ? g.num_alive() - 1 : 0;
  s.fraction = others > 0 ? static_cast<double>(s.size) / static_cast<double>(others) : 0.0;
  s.max_counter = fan.max_counter();
  s.max_len = fan.max_length();
  for (const auto& [y, paths] : eo) s.both_parity_count += paths.odd.has_value() && paths.even.has_value();
  s.local_edges = induced_edges(g, fan.endpoints);
  return s;
}

nlohmann::json to_json(const FanSummary& s) {
  return {{"size", s.size},
          {"fraction", s.fraction},
          {"max_counter", s.max_counter},
          {"max_len", s.max_len},
          {"both_parity_count", s.both_parity_count},
          {"local_edges", s.local_edges}};
}

}  // namespace cdia
