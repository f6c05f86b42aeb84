#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "oddminor/graph.hpp"
#include "oddminor/rng.hpp"

namespace oddminor {

struct ConstructionParams {
  std::uint64_t n = 1;
  std::uint64_t m = 1;
  double p = 0.0;
  std::uint64_t seed = 0;
  bool use_paper_defaults = false;

  bool operator==(const ConstructionParams&) const = default;
};

/// m = ceil(n / (ln n)^8), before any admissibility check.
std::uint64_t default_m(std::uint64_t n);
/// p = 1 / (sqrt(m) (ln m)^2); +inf for m = 1.
double default_p(std::uint64_t m);

/// default_m and default_p for n. Throws DegenerateParams when m < 2 or p > 1.
ConstructionParams default_params(std::uint64_t n, std::uint64_t seed);

/// Throws DegenerateParams on n = 0, m = 0 or p outside [0, 1], and
/// CouplingViolation when p > m^{-1/2}.
void validate(const ConstructionParams& params);

/// Names of the seeded sub-streams, in the order the pipeline consumes them.
inline constexpr const char* kStreamRed = "hstar_r/h_r";
inline constexpr const char* kStreamBlue = "hstar_b/h_b";
inline constexpr const char* kStreamPiRed = "pi_r";
inline constexpr const char* kStreamPiBlue = "pi_b";

using VertexMap = std::vector<std::uint32_t>;

/// G(m, p). Pairs are visited in lexicographic order and the gaps between
/// successive edges are drawn geometrically, which has the same law as one
/// Bernoulli(p) trial per pair.
Graph sample_gnp(std::size_t m, double p, RandomStream& stream);

struct CoupledPair {
  Graph hstar;
  Graph h;
};

/// hstar ~ G(m, m^{-1/2}); h keeps each hstar edge with probability
/// p * sqrt(m), so h ~ G(m, p) and h is always a subgraph of hstar.
CoupledPair sample_coupled_pair(std::size_t m, double p, RandomStream& stream);

/// Removes, simultaneously, every edge that lies in a triangle of g.
Graph strip_triangle_edges(const Graph& g);

VertexMap sample_uniform_map(std::size_t n, std::size_t m, RandomStream& stream);

/// Edge-coloured graph: an edge is present when it is red, blue or both.
struct ColoredGraph {
  Graph red;
  Graph blue;

  std::size_t order() const noexcept { return red.order(); }
  bool has_edge(Vertex u, Vertex v) const noexcept { return red.adjacent(u, v) || blue.adjacent(u, v); }
  Graph underlying() const;
  bool operator==(const ColoredGraph&) const = default;
};

/// The graph on [n] with {u, v} an edge iff {pi(u), pi(v)} is an edge of base.
Graph pullback(const Graph& base, const VertexMap& pi);

/// Union of the two pullbacks, coloured by origin. Throws
/// MonochromaticTriangle if either colour class has a triangle.
ColoredGraph overlay_pullbacks(const Graph& hprime_r, const Graph& hprime_b, const VertexMap& pi_r,
                               const VertexMap& pi_b);

/// Drops every red edge closed by a blue cherry and every blue edge closed by
/// a red cherry, all against the original h0. Throws MonochromaticTriangle
/// if h0 has one, ImpossibleState if a bicoloured edge would be dropped and
/// ResidualTriangle if the result is not triangle-free.
Graph resolve_minority_edges(const ColoredGraph& h0);

/// Exact triangle-freeness of h, for h a subgraph of the underlying graph of
/// h0 (throws PreconditionFailed otherwise). Any triangle of such an h has
/// two edges of one colour meeting at a vertex, so only h-edges whose ends
/// share a neighbour in one colour class need a closer look.
bool is_triangle_free_in_overlay(const Graph& h, const ColoredGraph& h0);

struct ConstructionTrace {
  ConstructionParams params;
  Graph hstar_r, hstar_b;
  Graph h_r, h_b;
  Graph hprime_r, hprime_b;
  VertexMap pi_r, pi_b;
  ColoredGraph h0;
  Graph h;
  Graph g;

  bool operator==(const ConstructionTrace&) const = default;
};

ConstructionTrace build_counterexample(const ConstructionParams& params);

struct InvariantCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct TraceVerification {
  std::vector<InvariantCheck> checks;
  bool ok() const;
  /// Null when every check passed.
  const InvariantCheck* first_failure() const;
};

/// Re-derives every structural guarantee of a trace from its stored layers.
/// Never throws on malformed content; each problem becomes a failed check.
/// Pullback and cherry checks work from the base graphs and maps, a route
/// independent of the one build_counterexample takes.
TraceVerification verify_trace(const ConstructionTrace& trace);

}  // namespace oddminor
