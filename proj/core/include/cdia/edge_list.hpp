#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cdia/graph.hpp"

namespace cdia {

// Text edge lists: one "u v" pair per line, '#' starts a comment, blank
// lines ignored, LF or CRLF. A leading "# vertices: N" comment fixes the
// vertex count so isolated trailing vertices survive a round trip.
struct LoadOptions {
  // Remap arbitrary ids to 0..k-1 in order of first appearance instead of
  // using them verbatim.
  bool compact_ids = false;
  // Verbatim ids above this are refused (use compact_ids for sparse ids).
  std::uint64_t max_vertex_id = 50'000'000;
};

struct LoadResult {
  Graph graph;
  // original_ids[v] is the id vertex v had in the input.
  std::vector<std::uint64_t> original_ids;
  std::size_t duplicates = 0;
};

// Throws ParseError (with line number) on malformed lines and loop edges.
LoadResult load_edge_list(std::istream& in, const LoadOptions& options = {});
LoadResult load_edge_list_file(const std::string& path, const LoadOptions& options = {});

void store_edge_list(const Graph& g, std::ostream& out);
void store_edge_list_file(const Graph& g, const std::string& path);

nlohmann::json to_json(const GraphSummary& s);

}  // namespace cdia
