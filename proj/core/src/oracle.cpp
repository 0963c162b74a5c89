#include "cdia/oracle.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include "cdia/error.hpp"

namespace cdia::oracle {

nlohmann::json to_json(const Verdict& v) {
  return {{"accept", v.accept}, {"reason", v.reason}, {"l", v.l}};
}

Verdict verify_cdia(const Graph& g, std::span<const Vertex> w) {
  if (w.size() % 2 != 0) throw ArgumentError("C^dia witness must have even length");
  if (w.size() < 4) throw ArgumentError("C^dia witness needs at least 4 vertices");
  const std::size_t len = w.size();
  const std::size_t l = len / 2;
  Verdict v;
  v.l = l;
  auto name = [&](std::size_t i) { return "w" + std::to_string(i + 1) + "=" + std::to_string(w[i]); };
  for (std::size_t i = 0; i < len; ++i) {
    if (w[i] >= g.num_vertices()) {
      v.reason = "vertex out of range: " + name(i);
      return v;
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (w[j] == w[i]) {
        v.reason = "duplicate vertex: " + name(j) + " and " + name(i);
        return v;
      }
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t j = (i + 1) % len;
    if (!g.has_edge(w[i], w[j])) {
      v.reason = "missing cycle edge (" + name(i) + ", " + name(j) + ")";
      return v;
    }
  }
  for (std::size_t i = 0; i < l; ++i) {
    if (!g.has_edge(w[i], w[i + l])) {
      v.reason = "missing diagonal (" + name(i) + ", " + name(i + l) + ")";
      return v;
    }
  }
  v.accept = true;
  return v;
}

namespace {

class Backtracker {
 public:
  Backtracker(const Graph& g, std::uint64_t budget) : g_(g), budget_(budget), used_(g.num_vertices(), 0) {}

  // true: found; false: exhausted or out of budget (see out_of_budget()).
  bool search(std::size_t l) {
    l_ = l;
    seq_.assign(2 * l, kNoVertex);
    for (Vertex s = 0; s < g_.num_vertices(); ++s) {
      if (g_.degree(s) < 3) continue;
      if (!charge()) return false;
      place(0, s);
      if (extend(1)) return true;
      unplace(0);
      if (out_of_budget_) return false;
    }
    return false;
  }

  bool out_of_budget() const { return out_of_budget_; }
  std::uint64_t expansions() const { return expansions_; }
  const std::vector<Vertex>& sequence() const { return seq_; }

 private:
  bool charge() {
    if (expansions_ >= budget_) {
      out_of_budget_ = true;
      return false;
    }
    ++expansions_;
    return true;
  }

  void place(std::size_t pos, Vertex v) {
    seq_[pos] = v;
    used_[v] = 1;
  }
  void unplace(std::size_t pos) {
    used_[seq_[pos]] = 0;
    seq_[pos] = kNoVertex;
  }

  bool fits(std::size_t pos, Vertex v) const {
    if (used_[v] || v < seq_[0] || g_.degree(v) < 3) return false;
    const std::size_t len = 2 * l_;
    if (pos >= l_ && !g_.has_edge(v, seq_[pos - l_])) return false;
    if (pos == len - 1 && !g_.has_edge(v, seq_[0])) return false;
    return true;
  }

  bool extend(std::size_t pos) {
    if (pos == 2 * l_) return true;
    const Vertex prev = seq_[pos - 1];
    for (Vertex v : g_.neighbors(prev)) {
      if (!fits(pos, v)) continue;
      if (!charge()) return false;
      place(pos, v);
      if (extend(pos + 1)) return true;
      unplace(pos);
      if (out_of_budget_) return false;
    }
    return false;
  }

  const Graph& g_;
  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  bool out_of_budget_ = false;
  std::size_t l_ = 0;
  std::vector<Vertex> seq_;
  std::vector<std::uint8_t> used_;
};

}  // namespace

SearchResult brute_force_cdia(const Graph& g, std::size_t l_max, std::uint64_t budget) {
  SearchResult result;
  Backtracker bt(g, budget);
  const std::size_t top = std::min(l_max, g.num_vertices() / 2);
  for (std::size_t l = 2; l <= top; ++l) {
    if (bt.search(l)) {
      result.witness = DiagonalCycleWitness{bt.sequence(), l};
      result.expansions = bt.expansions();
      return result;
    }
    if (bt.out_of_budget()) {
      result.expansions = bt.expansions();
      return result;
    }
  }
  result.exhaustive = true;
  result.expansions = bt.expansions();
  return result;
}

namespace {

Verdict verify_proper(const Graph& host, const Bipartition& sides, double tau, std::span<const EdgeId> seq,
                      bool cyclic) {
  Verdict v;
  v.l = seq.size();
  if (!sides.is_valid_for(host)) {
    v.reason = "host is not bipartite under the given sides";
    return v;
  }
  if (cyclic && seq.size() < 3) {
    v.reason = "cycle needs at least 3 vertices";
    return v;
  }
  auto name = [&](std::size_t i) { return "x" + std::to_string(i + 1) + "=" + std::to_string(seq[i]); };
  std::vector<Edge> ends;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] >= host.num_edges()) {
      v.reason = "vertex out of range: " + name(i);
      return v;
    }
    Edge e = host.edge(seq[i]);
    if (sides.side[e.u] != Side::X) std::swap(e.u, e.v);
    ends.push_back(e);
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (ends[i].u == ends[j].u || ends[i].v == ends[j].v) {
        v.reason = "phi overlap (" + name(i) + ", " + name(j) + ")";
        return v;
      }
    }
  }
  const std::size_t pairs = cyclic ? seq.size() : seq.size() - std::min<std::size_t>(seq.size(), 1);
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t j = (i + 1) % seq.size();
    const Edge a = ends[i];
    const Edge b = ends[j];
    if (!host.has_edge(a.u, b.v) || !host.has_edge(b.u, a.v)) {
      v.reason = "not adjacent (" + name(i) + ", " + name(j) + ")";
      return v;
    }
    const auto cx = static_cast<double>(common_neighbors(host, a.u, b.u).size());
    const auto cy = static_cast<double>(common_neighbors(host, a.v, b.v).size());
    if (std::max(cx, cy) >= tau) {
      v.reason = "thick edge (" + name(i) + ", " + name(j) + ")";
      return v;
    }
  }
  v.accept = true;
  return v;
}

}  // namespace

Verdict verify_proper_cycle(const Graph& host, const Bipartition& sides, double tau, std::span<const EdgeId> seq) {
  return verify_proper(host, sides, tau, seq, true);
}

Verdict verify_proper_path(const Graph& host, const Bipartition& sides, double tau, std::span<const EdgeId> seq) {
  return verify_proper(host, sides, tau, seq, false);
}

}  // namespace cdia::oracle
