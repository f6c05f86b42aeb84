#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "oddminor/construction.hpp"
#include "oddminor/graph.hpp"

namespace oddminor {

/// Ordered pairs (u_i, v_i) over pairwise distinct vertices.
struct Pairing {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::size_t size() const noexcept { return pairs.size(); }
  bool operator==(const Pairing&) const = default;
};

/// Throws InvalidPairing on a repeated vertex or one outside [0, n).
void validate_pairing(const Pairing& pairing, std::size_t n);

/// Every two pairs i < j have {u_i, u_j} or {v_i, v_j} in g.
bool is_odd_connected_pairing(const Graph& g, const Pairing& pairing);

enum class SearchStatus { exact, lower_bound };

inline constexpr std::uint64_t kDefaultPairingBudget = 20'000'000;

struct PairingSearchResult {
  std::size_t size = 0;
  Pairing witness;
  SearchStatus status = SearchStatus::exact;
  std::uint64_t nodes = 0;
};

/// Maximum odd connected pairing as a maximum clique in the compatibility
/// graph on ordered pairs. Budget counts branch nodes; when it runs out, or
/// when n is too large to build the compatibility graph, the best pairing
/// found so far comes back with status lower_bound.
PairingSearchResult max_odd_connected_pairing(const Graph& g, std::uint64_t budget = kDefaultPairingBudget);

/// Exhaustive over all pairings of all sizes. Throws LimitExceeded for n > 10.
std::size_t brute_force_max_pairing(const Graph& g);

/// Number of distinct unordered image pairs {pi(u_i), pi(v_i)} with
/// pi(u_i) != pi(v_i): the largest index set witnessing respectfulness.
std::size_t respectful_index(const Pairing& pairing, const VertexMap& pi);
bool is_eps_respectful(const Pairing& pairing, const VertexMap& pi, double eps);

/// The pairs at the first index of each distinct non-degenerate image pair,
/// in their original order.
Pairing respectful_subpairing(const Pairing& pairing, const VertexMap& pi);

/// Graph whose vertices are 2-subsets of [m], stored as Edge{x < y}.
struct PairGraph {
  std::size_t m = 0;
  /// Sorted, each edge once with first < second.
  std::vector<std::pair<Edge, Edge>> edges;
  /// multiplicity[k]: how many index pairs {i, j} produced edges[k].
  std::vector<std::size_t> multiplicity;

  std::size_t edge_count() const noexcept { return edges.size(); }
  /// (vertex, degree) for every vertex of positive degree, sorted by vertex.
  std::vector<std::pair<Edge, std::size_t>> degrees() const;
  std::size_t max_degree() const;
};

/// Predicate on vertex pairs of [n]; an empty function forbids nothing.
using PairPredicate = std::function<bool(Vertex, Vertex)>;

PairGraph build_pi_graph(const Pairing& pairing, const VertexMap& pi, std::size_t m,
                         const PairPredicate& forbidden = {});

}  // namespace oddminor
