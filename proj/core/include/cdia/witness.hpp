#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cdia/types.hpp"

namespace cdia {

// w[0..2l-1] spans a copy of C^dia_{2l}: consecutive vertices (cyclically)
// are adjacent and so is every antipodal pair w[i], w[i+l].
struct DiagonalCycleWitness {
  std::vector<Vertex> w;
  std::size_t l = 0;
};

enum class CycleSource { FanClosure, DirectSearch };

std::string to_string(CycleSource source);

// Odd cycle in the C4-graph whose vertices map to pairwise-disjoint host
// edges.
struct OddCycleWitness {
  std::vector<GammaVertex> gamma_cycle;
  CycleSource assembled_from = CycleSource::DirectSearch;
};

nlohmann::json to_json(const DiagonalCycleWitness& w);

}  // namespace cdia
