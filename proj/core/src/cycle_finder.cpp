#include "cdia/cycle_finder.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "cdia/error.hpp"
#include "cdia/expander.hpp"
#include "cdia/oracle.hpp"
#include "cdia/random.hpp"

namespace cdia {

DiagonalCycleWitness gamma_cycle_to_cdia(const Graph& host, const Bipartition& sides, const OddCycleWitness& cyc) {
  const auto& x = cyc.gamma_cycle;
  const std::size_t l = x.size();
  if (l < 3 || l % 2 == 0) throw ValidationError(0, "Gamma-cycle must have odd length >= 3");
  if (!sides.is_valid_for(host)) throw ArgumentError("host is not bipartite under the given sides");
  for (std::size_t i = 0; i < l; ++i) {
    if (x[i] >= host.num_edges()) throw ValidationError(i, "x" + std::to_string(i + 1) + " out of range");
  }
  const Side u_side = sides.side[host.edge(x[0]).u];
  std::vector<Vertex> u(l), v(l);
  for (std::size_t i = 0; i < l; ++i) {
    const Edge e = host.edge(x[i]);
    u[i] = sides.side[e.u] == u_side ? e.u : e.v;
    v[i] = sides.side[e.u] == u_side ? e.v : e.u;
  }
  for (std::size_t i = 1; i < l; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (u[i] == u[j] || v[i] == v[j]) {
        throw ValidationError(i, "phi(x" + std::to_string(i + 1) + ") meets phi(x" + std::to_string(j + 1) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < l; ++i) {
    const std::size_t j = (i + 1) % l;
    if (!host.has_edge(u[i], v[j]) || !host.has_edge(u[j], v[i])) {
      throw ValidationError(i, "x" + std::to_string(i + 1) + " and x" + std::to_string(j + 1) +
                                   " are not opposite edges of a four-cycle");
    }
  }
  DiagonalCycleWitness w;
  w.l = l;
  w.w.resize(2 * l);
  for (std::size_t i = 1; i <= 2 * l; ++i) {
    const bool odd = i % 2 == 1;
    w.w[i - 1] = i <= l ? (odd ? u[i - 1] : v[i - 1]) : (odd ? u[i - l - 1] : v[i - l - 1]);
  }
  return w;
}

namespace {

bool is_proper_cycle(const GammaGraph& g, const std::vector<GammaVertex>& cyc) {
  if (cyc.size() < 3 || cyc.size() % 2 == 0) return false;
  std::vector<Vertex> image;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    if (!g.has_edge(cyc[i], cyc[(i + 1) % cyc.size()])) return false;
    image.push_back(g.phi(cyc[i]).x);
    image.push_back(g.phi(cyc[i]).y);
  }
  std::sort(image.begin(), image.end());
  return std::adjacent_find(image.begin(), image.end()) == image.end();
}

constexpr std::size_t kPairsPerRoot = 8;

class FanCloser {
 public:
  FanCloser(const GammaGraph& g, const ParameterSet& params, std::uint64_t seed, std::size_t max_samples)
      : g_(g), params_(params), rng_(seed), max_samples_(max_samples),
        options_(fan_options(params, g.num_alive())), mark_(g.host_vertices(), 0) {}

  FinderResult run() {
    std::vector<GammaVertex> roots;
    for (GammaVertex v : g_.alive_vertices()) {
      if (g_.degree(v) > 0) roots.push_back(v);
    }
    std::shuffle(roots.begin(), roots.end(), rng_);
    if (roots.size() > params_.finder_roots) roots.resize(params_.finder_roots);
    for (GammaVertex x : roots) {
      ++result_.stats.roots;
      if (auto cyc = from_root(x)) {
        result_.cycle = OddCycleWitness{std::move(*cyc), CycleSource::FanClosure};
        break;
      }
    }
    return std::move(result_);
  }

 private:
  Fan fan(GammaVertex root, std::span<const Vertex> avoid = {}) {
    ++result_.stats.fans_built;
    return build_fan(g_, root, avoid, options_);
  }

  void mark(const ProperPath& p, std::uint8_t value) {
    for (GammaVertex v : p.vertices) {
      mark_[g_.phi(v).x] = value;
      mark_[g_.phi(v).y] = value;
    }
  }

  bool marked(GammaVertex v) const { return mark_[g_.phi(v).x] || mark_[g_.phi(v).y]; }

  std::optional<std::vector<GammaVertex>> from_root(GammaVertex x) {
    const Fan fan_x = fan(x);
    std::vector<GammaVertex> zs = fan_x.endpoints;
    std::shuffle(zs.begin(), zs.end(), rng_);
    if (zs.size() > params_.finder_z_samples) zs.resize(params_.finder_z_samples);
    std::sort(zs.begin(), zs.end());

    std::unordered_map<GammaVertex, Fan> fans;
    std::unordered_map<GammaVertex, std::vector<GammaVertex>> witnesses;  // y -> admissible z
    std::vector<std::uint8_t> blocked(g_.num_vertices(), 0);
    for (GammaVertex z : zs) {
      Fan fan_z = fan(z);
      // phi(P(z, y)) may share only phi(z) with phi(P(x, z)); blocked
      // propagates down the fan tree in admission order.
      const ProperPath xz = fan_x.path_to(z);
      mark(xz, 1);
      mark_[g_.phi(z).x] = mark_[g_.phi(z).y] = 0;
      for (GammaVertex y : fan_z.endpoints) {
        const GammaVertex p = fan_z.parent[y];
        blocked[y] = (p != z && blocked[p]) || marked(y);
        if (blocked[y] || y == x) continue;
        ++result_.stats.admissible_triples;
        witnesses[y].push_back(z);
        if (result_.sample_triples.size() < max_samples_) {
          result_.sample_triples.push_back({x, z, y, xz, fan_z.path_to(y)});
        }
      }
      mark(xz, 0);
      for (GammaVertex y : fan_z.endpoints) blocked[y] = 0;
      fans.emplace(z, std::move(fan_z));
    }

    std::vector<std::pair<std::size_t, GammaVertex>> pairs;
    const HostEdge ex = g_.phi(x);
    for (const auto& [y, list] : witnesses) {
      const HostEdge ey = g_.phi(y);
      if (ex.meets(ey)) continue;
      pairs.emplace_back(list.size(), y);
    }
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    if (pairs.size() > kPairsPerRoot) pairs.resize(kPairsPerRoot);

    for (const auto& [count, y] : pairs) {
      ++result_.stats.pairs_tried;
      if (auto cyc = close(x, y, fan_x, fans, witnesses[y])) return cyc;
    }
    return std::nullopt;
  }

  // F(y): host vertices outside phi(y) on at least t_cap of the cached fan
  // paths that end at y.
  std::vector<Vertex> overflow(GammaVertex y, const Fan& fan_x, const std::unordered_map<GammaVertex, Fan>& fans) {
    std::unordered_map<Vertex, std::uint32_t> count;
    auto add = [&](const Fan& f) {
      if (!f.contains(y) || f.root == y) return;
      for (Vertex v : f.path_to(y).phi_image(g_)) {
        if (!g_.phi(y).touches(v)) ++count[v];
      }
    };
    add(fan_x);
    for (const auto& [z, f] : fans) add(f);
    std::vector<Vertex> out;
    for (const auto& [v, c] : count) {
      if (static_cast<double>(c) >= options_.t_cap) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<std::vector<GammaVertex>> close(GammaVertex x, GammaVertex y, const Fan& fan_x,
                                                const std::unordered_map<GammaVertex, Fan>& fans,
                                                const std::vector<GammaVertex>& zs) {
    const auto avoid = overflow(y, fan_x, fans);
    const Fan fan_y = fan(y, avoid);
    const auto eo = even_odd_paths(g_, fan_y, params_.even_odd_min_degree);
    auto back = eo.find(x);
    if (back == eo.end()) return std::nullopt;
    for (GammaVertex z : zs) {
      ProperPath q = fan_x.path_to(z);
      const ProperPath zy = fans.at(z).path_to(y);
      q.vertices.insert(q.vertices.end(), zy.vertices.begin() + 1, zy.vertices.end());
      const bool need_odd = q.length() % 2 == 0;
      const auto& r = need_odd ? back->second.odd : back->second.even;
      if (!r) continue;
      mark(q, 1);
      bool clash = false;
      for (std::size_t i = 1; i + 1 < r->vertices.size(); ++i) clash |= marked(r->vertices[i]);
      mark(q, 0);
      if (clash) continue;
      std::vector<GammaVertex> cyc = q.vertices;
      cyc.insert(cyc.end(), r->vertices.begin() + 1, r->vertices.end() - 1);
      if (is_proper_cycle(g_, cyc)) return cyc;
    }
    return std::nullopt;
  }

  const GammaGraph& g_;
  const ParameterSet& params_;
  std::mt19937_64 rng_;
  std::size_t max_samples_;
  FanOptions options_;
  std::vector<std::uint8_t> mark_;
  FinderResult result_;
};

class DirectSearch {
 public:
  DirectSearch(const GammaGraph& g, std::uint64_t budget, std::uint64_t seed)
      : g_(g), budget_(budget), seed_(seed), used_(g.host_vertices(), 0) {}

  DirectSearchResult run(std::size_t max_len) {
    std::vector<GammaVertex> starts;
    for (GammaVertex v : g_.alive_vertices()) {
      if (g_.degree(v) >= 2) starts.push_back(v);
    }
    std::mt19937_64 rng(seed_);
    std::shuffle(starts.begin(), starts.end(), rng);
    DirectSearchResult result;
    for (std::size_t len = 3; len <= max_len && !out_of_budget_; len += 2) {
      len_ = len;
      for (GammaVertex s : starts) {
        path_.assign(1, s);
        take(s, 1);
        const bool found = extend(s);
        if (found) {
          result.cycle = OddCycleWitness{path_, CycleSource::DirectSearch};
          result.expansions = expansions_;
          return result;
        }
        take(s, 0);
        if (out_of_budget_) break;
      }
    }
    result.exhausted = !out_of_budget_;
    result.expansions = expansions_;
    return result;
  }

 private:
  void take(GammaVertex v, std::uint8_t value) {
    used_[g_.phi(v).x] = value;
    used_[g_.phi(v).y] = value;
  }

  bool extend(GammaVertex v) {
    const GammaVertex s = path_.front();
    const auto nb = g_.neighbors(v);
    if (nb.empty()) return false;
    const std::size_t offset = splitmix64(seed_ ^ (static_cast<std::uint64_t>(v) << 20) ^ path_.size()) % nb.size();
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const GammaVertex w = nb[(offset + k) % nb.size()];
      if (w <= s || !g_.alive(w)) continue;
      const HostEdge e = g_.phi(w);
      if (used_[e.x] || used_[e.y]) continue;
      if (expansions_ >= budget_) {
        out_of_budget_ = true;
        return false;
      }
      ++expansions_;
      path_.push_back(w);
      if (path_.size() % 2 == 1 && path_.size() >= 3 && g_.has_edge(w, s)) return true;
      if (path_.size() < len_) {
        take(w, 1);
        if (extend(w)) return true;
        take(w, 0);
        if (out_of_budget_) return false;
      }
      path_.pop_back();
    }
    return false;
  }

  const GammaGraph& g_;
  std::uint64_t budget_;
  std::uint64_t seed_;
  std::uint64_t expansions_ = 0;
  bool out_of_budget_ = false;
  std::size_t len_ = 0;
  std::vector<GammaVertex> path_;
  std::vector<std::uint8_t> used_;
};

}  // namespace

FinderResult find_proper_odd_cycle(const GammaGraph& g, const ParameterSet& params, std::uint64_t seed,
                                   std::size_t max_sample_triples) {
  return FanCloser(g, params, seed, max_sample_triples).run();
}

DirectSearchResult direct_odd_cycle_search(const GammaGraph& g, std::size_t max_len, std::uint64_t budget,
                                           std::uint64_t seed) {
  return DirectSearch(g, budget, seed).run(max_len);
}

std::string to_string(Route r) {
  switch (r) {
    case Route::None: return "none";
    case Route::K33Thick: return "k33-thick";
    case Route::FanClosure: return "fan-closure";
    case Route::DirectSearch: return "direct-search";
  }
  return "unknown";
}

namespace {

class Pipeline {
 public:
  Pipeline(const Graph& g, const ParameterSet& params, std::uint64_t seed) : g_(g), params_(params), seed_(seed) {}

  FindOutcome run() {
    auto& d = out_.diagnostics;
    d["n"] = g_.num_vertices();
    d["m"] = g_.num_edges();
    if (g_.num_edges() > 0) {
      auto reduced = max_bipartite_subgraph(g_, derive_seed({seed_, 1}));
      d["reduced_edges"] = reduced.graph.num_edges();
      if (reduced.graph.num_edges() > 0 && !structured(reduced)) direct(reduced);
    }
    const double n = static_cast<double>(g_.num_vertices());
    d["theorem_regime_miss"] =
        !out_.witness && static_cast<double>(g_.num_edges()) >= params_.C * std::pow(n, 1.5) && n > 0;
    return std::move(out_);
  }

 private:
  bool accept(DiagonalCycleWitness w, Route route) {
    const auto verdict = oracle::verify_cdia(g_, w.w);
    if (!verdict.accept) {
      out_.diagnostics["rejected_" + to_string(route)] = verdict.reason;
      return false;
    }
    out_.witness = std::move(w);
    out_.route = route;
    return true;
  }

  bool structured(const BipartiteSubgraph& reduced) {
    auto& d = out_.diagnostics;
    const auto peel = peel_half_maximal(reduced.graph);
    PropertyCheckOptions check;
    check.seed = derive_seed({seed_, 2});
    check.exhaustive_budget = 1u << 12;
    check.random_samples = 16;
    const auto capped = degree_cap(peel.subgraph, params_.C1, params_.D, check);
    d["peeled_vertices"] = peel.original.size();
    d["capped_edges"] = capped.graph.num_edges();
    if (capped.graph.num_edges() == 0) return false;

    Bipartition sides;
    for (Vertex v : peel.original) sides.side.push_back(reduced.sides.side[v]);
    auto to_host = [&](DiagonalCycleWitness w) {
      for (auto& v : w.w) v = peel.original[v];
      return w;
    };

    std::optional<C4Graph> c4;
    try {
      c4 = C4Graph::build(capped.graph, sides, params_.tau, {params_.max_gamma_edges, false});
    } catch (const CapacityError& e) {
      d["structured_skipped"] = e.what();
      return false;
    }
    d["gamma0"] = to_json(summarize(*c4));
    if (auto w = find_k33_via_thick(*c4)) {
      if (accept(to_host(std::move(*w)), Route::K33Thick)) return true;
    }

    const auto thin = GammaGraph::from_c4(*c4, EdgeFilter::ThinOnly);
    const auto extracted = extract_expander(thin, params_, derive_seed({seed_, 3}));
    d["expander"] = {{"n0", extracted.n0},
                     {"n", extracted.gamma.num_alive()},
                     {"removed", extracted.removed.size()},
                     {"within_epsilon", extracted.within_epsilon}};
    const auto found = find_proper_odd_cycle(extracted.gamma, params_, derive_seed({seed_, 4}), 0);
    d["fan_closure"] = {{"roots", found.stats.roots},
                        {"fans_built", found.stats.fans_built},
                        {"pairs_tried", found.stats.pairs_tried},
                        {"admissible_triples", found.stats.admissible_triples}};
    if (found.cycle) {
      try {
        if (accept(to_host(gamma_cycle_to_cdia(capped.graph, sides, *found.cycle)), Route::FanClosure)) return true;
      } catch (const Error& e) {
        d["fan_closure_error"] = e.what();
      }
    }
    return false;
  }

  void direct(const BipartiteSubgraph& reduced) {
    auto& d = out_.diagnostics;
    std::optional<C4Graph> c4;
    try {
      c4 = C4Graph::build(reduced.graph, reduced.sides, params_.tau, {params_.max_gamma_edges, false});
    } catch (const CapacityError& e) {
      d["direct_skipped"] = e.what();
      return;
    }
    const EdgeFilter filters[] = {EdgeFilter::ThinOnly, EdgeFilter::All};
    const char* names[] = {"direct_thin", "direct_full"};
    for (int i = 0; i < 2; ++i) {
      const auto gamma = GammaGraph::from_c4(*c4, filters[i]);
      const auto r = direct_odd_cycle_search(gamma, params_.direct_max_cycle, params_.direct_budget,
                                             derive_seed({seed_, 5, static_cast<std::uint64_t>(i)}));
      d[names[i]] = {{"expansions", r.expansions}, {"exhausted", r.exhausted}};
      if (!r.cycle) continue;
      try {
        if (accept(gamma_cycle_to_cdia(reduced.graph, reduced.sides, *r.cycle), Route::DirectSearch)) return;
      } catch (const Error& e) {
        d["direct_error"] = e.what();
      }
    }
  }

  const Graph& g_;
  const ParameterSet& params_;
  std::uint64_t seed_;
  FindOutcome out_;
};

}  // namespace

FindOutcome find_cdia(const Graph& g, const ParameterSet& params, std::uint64_t seed) {
  return Pipeline(g, params, seed).run();
}

nlohmann::json to_json(const FindOutcome& o) {
  nlohmann::json j = {{"found", o.witness.has_value()}, {"route", to_string(o.route)}};
  if (o.witness) {
    j["l"] = o.witness->l;
    j["witness"] = o.witness->w;
  } else {
    j["l"] = nullptr;
    j["witness"] = nlohmann::json::array();
  }
  j["diagnostics"] = o.diagnostics;
  return j;
}

}  // namespace cdia
