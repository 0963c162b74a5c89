#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cdia/generators.hpp"
#include "cdia/params.hpp"

namespace cdia {

struct OracleSettings {
  std::size_t max_vertices = 80;  // brute force only on graphs this small
  std::size_t l_max = 7;
  std::uint64_t budget = 5'000'000;
};

struct ExperimentCell {
  GeneratorSpec generator;
  std::string label;  // defaults to describe(generator)
};

// Cells come from an explicit list and/or a random-bipartite sweep over
// m = round(c n^{3/2}) with nx = ny = n/2. Trial seeds are
// derive_seed({root_seed, cell, trial}).
struct ExperimentSpec {
  std::string name = "experiment";
  std::uint64_t root_seed = 1;
  std::size_t trials = 1;
  std::size_t max_total_trials = 100'000;
  std::vector<ExperimentCell> cells;
  ParameterSet params;
  OracleSettings oracle;
  std::string csv_path;
  std::string json_path;

  // Throws ArgumentError on an empty spec or too many trials.
  void validate() const;
};

// Unknown keys are rejected; "sweep": {"n": N, "c": [...]} expands to cells.
ExperimentSpec experiment_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentSpec& spec);

struct TrialResult {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  bool found = false;
  std::size_t l = 0;
  std::string route = "none";
  bool oracle_ran = false;
  bool oracle_found = false;
  bool oracle_exhaustive = false;
  std::size_t oracle_l = 0;
};

struct CellResult {
  std::size_t cell = 0;
  std::string generator;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::optional<double> median_l;
  std::size_t route_k33 = 0;
  std::size_t route_fan = 0;
  std::size_t route_direct = 0;
  std::size_t oracle_checked = 0;  // oracle found a witness or was exhaustive
  std::size_t oracle_agree = 0;
  std::size_t oracle_positive = 0;
  std::size_t soundness_violations = 0;
  std::vector<TrialResult> details;
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<CellResult> cells;
};

// Runs every (cell, trial) on `threads` workers (0: hardware concurrency)
// and merges rows in (cell, trial) order. If the spec names output paths
// they are opened before any trial runs (IoError on failure) and written at
// the end.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t threads = 1);

// cell,generator,trials,successes,median_l,route_fan,route_direct,oracle_checked,oracle_agree
void write_csv(std::ostream& out, const ExperimentResult& result);
nlohmann::json to_json(const ExperimentResult& result);

}  // namespace cdia
