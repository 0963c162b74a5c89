#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cdia/c4_graph.hpp"
#include "cdia/gamma_graph.hpp"
#include "cdia/navigator.hpp"
#include "cdia/params.hpp"
#include "cdia/witness.hpp"

namespace cdia {

// The w-mapping from a proper odd cycle x_1..x_l of the C4-graph to the
// 2l vertices of a C^dia_{2l}. Writing phi(x_i) = u_i v_i with every u_i on
// the side of the lower-id endpoint of phi(x_1):
//   w_i = u_i (i <= l odd), v_i (i <= l even), v_{i-l} (i > l even),
//   u_{i-l} (i > l odd).
// Throws ValidationError carrying the first failing position when the cycle
// is not odd, not proper, or not a cycle of Gamma_0.
DiagonalCycleWitness gamma_cycle_to_cdia(const Graph& host, const Bipartition& sides, const OddCycleWitness& cyc);

struct AdmissibleTriple {
  GammaVertex x = kNoVertex;
  GammaVertex z = kNoVertex;
  GammaVertex y = kNoVertex;
  ProperPath xz;
  ProperPath zy;
};

struct FinderStats {
  std::size_t roots = 0;
  std::size_t fans_built = 0;
  std::size_t pairs_tried = 0;
  std::uint64_t admissible_triples = 0;
};

struct FinderResult {
  std::optional<OddCycleWitness> cycle;
  // The first few admissible triples seen, for independent re-checking.
  std::vector<AdmissibleTriple> sample_triples;
  FinderStats stats;
};

// Fan-closure search: sample roots x, build fan(x) and fan(z) for sampled
// endpoints z, collect admissible triples (x, z, y), then for the pairs
// (x, y) with the most witnesses z build the even/odd paths from y avoiding
// F(y) and close P(x, z) P(z, y) with the return path of the parity that
// makes the cycle odd, provided its interior avoids phi(P(x, z) P(z, y)).
FinderResult find_proper_odd_cycle(const GammaGraph& g, const ParameterSet& params, std::uint64_t seed,
                                   std::size_t max_sample_triples = 64);

struct DirectSearchResult {
  std::optional<OddCycleWitness> cycle;
  std::uint64_t expansions = 0;
  bool exhausted = false;  // every start vertex was searched to max_len
};

// Proper odd cycles of length <= max_len whose smallest vertex is the
// start, by DFS with properness pruning; start order and neighbour order are
// seed-shuffled. budget counts extensions.
DirectSearchResult direct_odd_cycle_search(const GammaGraph& g, std::size_t max_len, std::uint64_t budget,
                                           std::uint64_t seed);

enum class Route { None, K33Thick, FanClosure, DirectSearch };

std::string to_string(Route r);

struct FindOutcome {
  std::optional<DiagonalCycleWitness> witness;
  Route route = Route::None;
  nlohmann::json diagnostics = nlohmann::json::object();
};

// Bipartite reduction, peeling and degree cap, the C4-graph with its thick
// part, the K_{3,3} shortcut, expander extraction and fan closure on the thin
// part, then direct search on the thin and the full C4-graph of the reduced
// graph. Witnesses are in g's vertex ids and verified before return.
FindOutcome find_cdia(const Graph& g, const ParameterSet& params, std::uint64_t seed);

nlohmann::json to_json(const FindOutcome& o);

}  // namespace cdia
