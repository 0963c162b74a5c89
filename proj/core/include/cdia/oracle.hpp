#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "cdia/graph.hpp"
#include "cdia/witness.hpp"

// Ground truth for the pipeline. Nothing here depends on the C4-graph or
// the cycle finder.
namespace cdia::oracle {

struct Verdict {
  bool accept = false;
  std::string reason;  // empty on accept
  std::size_t l = 0;
};

nlohmann::json to_json(const Verdict& v);

// Accepts iff w is a C^dia_{|w|/2} in g. Rejections name the first duplicate
// or missing edge (cycle edges before diagonals). Throws ArgumentError for
// odd lengths or |w| < 4.
Verdict verify_cdia(const Graph& g, std::span<const Vertex> w);

struct SearchResult {
  std::optional<DiagonalCycleWitness> witness;
  // Every l in [2, l_max] was searched to completion without finding a
  // witness (only meaningful when witness is empty).
  bool exhaustive = false;
  std::uint64_t expansions = 0;
};

// Backtracking over vertex sequences w_1..w_{2l}, l ascending from 2, with
// each placement checked against its cycle predecessor and, once the
// antipodal slot exists, its diagonal partner. w_1 is forced to be the
// smallest vertex of the copy. budget bounds the total number of placement
// attempts.
SearchResult brute_force_cdia(const Graph& g, std::size_t l_max, std::uint64_t budget);

// Checks a sequence of host edge ids (C4-graph vertices) against the thin
// C4-graph of (host, sides, tau), recomputed from the host alone: pairwise
// disjoint edges first, then adjacency and thinness of consecutive pairs.
// The cyclic form also checks the closing pair and needs at least 3 entries.
Verdict verify_proper_cycle(const Graph& host, const Bipartition& sides, double tau, std::span<const EdgeId> seq);
Verdict verify_proper_path(const Graph& host, const Bipartition& sides, double tau, std::span<const EdgeId> seq);

}  // namespace cdia::oracle
