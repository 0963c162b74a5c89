#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cdia/graph.hpp"

namespace cdia {

struct PeelStep {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  double ratio = 0.0;  // edges / vertices^{3/2}
};

// steps[k] describes the graph left after k min-degree deletions, so
// steps[0] is the input and the vertices still present at step k are
// removal_order[k..].
struct PeelingTrace {
  std::vector<Vertex> removal_order;
  std::vector<PeelStep> steps;
  std::size_t argmax = 0;
};

struct PeelResult {
  Graph subgraph;
  // subgraph vertex i is original[i] in the input (ascending).
  std::vector<Vertex> original;
  PeelingTrace trace;
};

// Stand-in for a 1/2-maximal subgraph: repeatedly delete a minimum-degree
// vertex (lowest id on ties) and keep the prefix with the largest
// e/v^{3/2} (earliest on ties). Throws ArgumentError for edgeless input.
PeelResult peel_half_maximal(const Graph& g);

enum class Evidence { Proved, SampledPass, Vacuous, Fail };

std::string to_string(Evidence e);

// Outcome of checking a universally quantified property over vertex sets.
// Proved means every set in the property's range was enumerated.
struct PropertyCheck {
  Evidence evidence = Evidence::Vacuous;
  std::uint64_t sets_checked = 0;
  std::size_t exhaustive_up_to = 0;  // all sets of size <= this were enumerated
  std::vector<Vertex> counterexample;
  // Smallest observed slack (bound - value); negative on failure.
  double worst_slack = 0.0;
};

struct ExpanderReport {
  std::size_t m = 0;  // vertices of H0 (and H)
  double C0 = 0.0;  // e(H0) = 2 C0 m^{3/2}
  double C = 0.0;  // e(H) = C m^{3/2}
  double C1 = 0.0;
  double D = 0.0;
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  std::size_t max_degree = 0;  // of H
  double degree_cap_value = 0.0;  // C0 D m^{1/2}
  std::size_t capped_vertices = 0;  // |U|
  std::size_t removed_edges = 0;  // t
  double removed_edges_bound = 0.0;  // 64 C0 m^{3/2} / D
  bool p1 = false;  // C >= C1/2
  bool p2 = false;  // max degree <= C D m^{1/2}
  PropertyCheck p3;  // e(S) <= 2C|S|^{3/2}
  PropertyCheck p4;  // e(S, S^c) >= |S| C m^{1/2} / 16 for 1000m/D <= |S| <= m/2
};

nlohmann::json to_json(const ExpanderReport& r);

struct PropertyCheckOptions {
  std::uint64_t seed = 0;
  // Largest number of subsets enumerated exhaustively per property.
  std::uint64_t exhaustive_budget = 1u << 20;
  std::size_t random_samples = 200;
};

struct DegreeCapResult {
  Graph graph;
  ExpanderReport report;
};

// With m = v(H0) and 2 C0 = e(H0)/m^{3/2}, removes every edge incident to
// U = {v : deg(v) >= C0 D m^{1/2}} and evaluates P1-P4 on the result.
DegreeCapResult degree_cap(const Graph& h0, double C1, double D, const PropertyCheckOptions& options = {});

// e(S, V \ S) / |S|. Throws ArgumentError if S is empty, everything, has
// duplicates or out-of-range vertices.
double edge_expansion(const Graph& g, std::span<const Vertex> s);

enum class VertexClass : std::uint8_t { P, R, B, U };

std::string to_string(VertexClass c);

// Classification of host vertices by the colours (blue E_b, purple E_p,
// red E_r) of their incident edges:
//   P: d_p >= d/2;  R: d_p < d/2, d_b < eta d;  B: d_p < d/2, d_r < eta d;
//   U: d_p < d/2, d_b, d_r >= eta d.
// A vertex matching several rules takes the first; that only happens for
// eta >= 1/4 and is reported under "partition".
struct ColorPartitionReport {
  std::vector<VertexClass> cls;
  std::size_t size_p = 0, size_r = 0, size_b = 0, size_u = 0;
  std::uint64_t e_u = 0;  // sum of degrees over U
  std::uint64_t e_p = 0;  // sum of degrees over P
  std::uint64_t e_br = 0;  // edges between B and R
  std::uint64_t e_b_out = 0;  // edges between B and its complement
  std::uint64_t blue_br = 0, red_br = 0, purple_br = 0;
  // Names of the accounting inequalities that fail on this instance.
  std::vector<std::string> failed;
};

nlohmann::json to_json(const ColorPartitionReport& r);

// Throws ArgumentError unless {E_b, E_p, E_r} partitions E(G) and sides is a
// bipartition of g.
ColorPartitionReport color_partition_diagnostic(const Graph& g, const Bipartition& sides,
                                                std::span<const EdgeId> blue, std::span<const EdgeId> purple,
                                                std::span<const EdgeId> red, double eta);

}  // namespace cdia
