#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cdia/graph.hpp"

namespace cdia {

enum class GeneratorKind { RandomBipartite, IncidencePG2, Polarity, Cdia, Prism };

std::string to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

// Kind-specific parameters:
//   random-bipartite: nx, ny, m      incidence-pg2, polarity: q
//   cdia: l                          prism: l
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::RandomBipartite;
  std::map<std::string, std::int64_t> params;
  std::uint64_t seed = 0;

  // Throws ArgumentError on missing/extra parameters, UnsupportedError for
  // composite q.
  void validate() const;
};

nlohmann::json to_json(const GeneratorSpec& spec);
GeneratorSpec generator_spec_from_json(const nlohmann::json& j);
// "random-bipartite:m=10,nx=5,ny=5"
std::string describe(const GeneratorSpec& spec);

struct GeneratedGraph {
  Graph graph;
  std::optional<Bipartition> sides;  // set for the bipartite constructions
};

GeneratedGraph generate(const GeneratorSpec& spec);

bool is_prime(std::int64_t q);

// X = 0..nx-1, Y = nx..nx+ny-1; exactly m distinct cross pairs chosen
// uniformly. Throws ArgumentError if m > nx*ny.
BipartiteSubgraph gen_random_bipartite(std::size_t nx, std::size_t ny, std::size_t m,
                                       std::uint64_t seed);

// Point-line incidence graph of PG(2, q): points 0..q²+q, lines after them.
BipartiteSubgraph gen_incidence_pg2(std::int64_t q);

// Erdős–Rényi polarity graph: projective points, x ~ y iff x·y = 0 (mod q),
// absolute points lose their loop.
Graph gen_polarity(std::int64_t q);

// C_{2l} on 0..2l-1 plus the l diagonals i ~ i+l. Requires l >= 2.
Graph gen_cdia(std::size_t l);

// C_l □ K_2: outer cycle 0..l-1, inner cycle l..2l-1, spokes i ~ i+l.
Graph gen_prism(std::size_t l);

}  // namespace cdia
