#pragma once

#include <cstdint>
#include <limits>

namespace cdia {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
// Vertices of the C4-graph are host edges; the ids coincide.
using GammaVertex = std::uint32_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

}  // namespace cdia
