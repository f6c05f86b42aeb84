#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "oddminor/graph.hpp"

namespace oddminor {

/// Standard graph6: N(n) header, then the upper triangle column by column
/// (x(0,1), x(0,2), x(1,2), ...) in 6-bit groups offset by 63. An optional
/// ">>graph6<<" prefix and trailing whitespace are accepted on input.
std::string encode_graph6(const Graph& g);
/// Throws MalformedInput with the byte offset of the problem.
Graph decode_graph6(std::string_view text);

struct DimacsGraph {
  Graph graph;
  /// Repeated "e" lines (either orientation) that were collapsed.
  std::size_t duplicate_edges = 0;
};

/// "p edge n m" then one "e u v" line per edge, 1-indexed, in lexicographic order.
std::string encode_dimacs(const Graph& g);
/// Throws MalformedInput with the 1-based line number of the problem.
DimacsGraph decode_dimacs(std::string_view text);

}  // namespace oddminor
