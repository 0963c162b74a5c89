#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace cdia {

enum class ScaleMode { PaperFormula, PracticalOverride };

std::string to_string(ScaleMode mode);

// Constant hierarchy and search budgets shared by every pipeline stage.
//
// The hierarchy epsilon > eta > delta > 1/D > 1/C1 is validated in both
// modes. In paper-formula mode tau, t_nice, L_max and the even/odd
// min-degree are derived from (C, D, delta, n, N); the derived niceness cap
// is vacuous unless t_nice < N, so such sets are rejected. Practical mode
// takes every field as given and is what desk-scale experiments use.
struct ParameterSet {
  double C1 = 50.0;
  double C = 1.0;
  double D = 25.0;
  double delta = 0.05;
  double eta = 0.1;
  double epsilon = 0.2;
  double tau = 3.0;  // thickness threshold on opposite-pair codegrees
  double t_nice = 1e6;  // per-vertex appearance cap inside a fan
  std::size_t L_max = 12;  // fan path length cap (edges)
  ScaleMode scale_mode = ScaleMode::PracticalOverride;

  std::size_t finder_roots = 32;
  std::size_t finder_z_samples = 64;
  double even_odd_min_degree = 0.0;
  double fan_target_frac = 1.0;
  double expander_max_frac = 0.98;
  std::size_t expander_seeds = 16;
  std::size_t expander_grow_limit = 64;
  std::uint64_t max_gamma_edges = 20'000'000;
  std::size_t direct_max_cycle = 11;
  std::uint64_t direct_budget = 2'000'000;

  static ParameterSet practical() { return {}; }

  // tau = 10 sqrt(C D) n^{1/4}, t_nice = C^{1.1} n^{5/4} ln n,
  // L_max = ceil(2 ln N / delta), min degree C^{2.5} n^{1/2}.
  // Throws ArgumentError if the result fails validate(N).
  static ParameterSet paper_formula(double C1, double C, double D, double delta, double eta,
                                    double epsilon, std::size_t n, std::size_t N);

  // Throws ArgumentError naming the first violated constraint. N (number of
  // Gamma-vertices) enables the t_nice < N check in paper-formula mode.
  void validate(std::size_t N = 0) const;

  // delta * C^3 * sqrt(n): per-vertex edge-deletion allowance in the
  // robust-expansion definition.
  double robust_budget_per_vertex(std::size_t host_n) const;
};

nlohmann::json to_json(const ParameterSet& p);

// Fields missing from j keep the value in base; unknown keys are rejected.
ParameterSet params_from_json(const nlohmann::json& j, const ParameterSet& base = {});

}  // namespace cdia
