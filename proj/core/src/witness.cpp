#include "cdia/witness.hpp"

namespace cdia {

std::string to_string(CycleSource source) {
  return source == CycleSource::FanClosure ? "fan-closure" : "direct-search";
}

nlohmann::json to_json(const DiagonalCycleWitness& w) { return {{"l", w.l}, {"witness", w.w}}; }

}  // namespace cdia
