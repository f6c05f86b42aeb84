#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oddminor/bits.hpp"

namespace oddminor {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  auto operator<=>(const Edge&) const = default;
};

using Triangle = std::array<Vertex, 3>;

/// Finite simple undirected graph on vertices 0..n-1.
///
/// Adjacency is stored as one bitset row per vertex, so neighbourhood
/// intersections and complements run a word at a time. The mutators keep the
/// relation symmetric and irreflexive; `mutable_row` hands out raw rows for
/// bulk builders, which then own that invariant.
class Graph {
 public:
  using Word = bits::Word;

  Graph() = default;
  explicit Graph(std::size_t n);

  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool adjacent(Vertex u, Vertex v) const noexcept {
    return (bits_[u * words_ + v / bits::kWordBits] >> (v % bits::kWordBits)) & 1U;
  }

  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);

  std::span<const Word> row(Vertex u) const noexcept {
    return {bits_.data() + static_cast<std::size_t>(u) * words_, words_};
  }
  std::span<Word> mutable_row(Vertex u) noexcept {
    return {bits_.data() + static_cast<std::size_t>(u) * words_, words_};
  }

  std::size_t degree(Vertex u) const noexcept { return bits::count(row(u)); }
  std::size_t edge_count() const noexcept;
  std::vector<Edge> edges() const;
  std::vector<Vertex> neighbors(Vertex u) const;

  /// Mask with the valid (< n) bit positions of the last row word set.
  Word tail_mask() const noexcept;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> bits_;
};

/// Pairwise disjoint edges of a host graph.
struct Matching {
  std::vector<Edge> edges;
  std::size_t size() const noexcept { return edges.size(); }
};

// -- named graphs ------------------------------------------------------------

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
/// K_{1,leaves}; vertex 0 is the centre.
Graph star_graph(std::size_t leaves);
Graph petersen_graph();

// -- kernel operations -------------------------------------------------------

Graph complement(const Graph& g);
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// All triangles {u < v < w}, sorted lexicographically.
std::vector<Triangle> list_triangles(const Graph& g);

/// Triangle-freeness without listing. Vertices with identical rows are
/// collapsed first, so blow-up graphs are checked on their quotient.
bool is_triangle_free(const Graph& g);

/// alpha(g) <= 2, decided as "complement(g) is triangle-free".
bool independence_at_most_two(const Graph& g);

std::size_t max_degree(const Graph& g);

/// For every edge, the number of triangles through it; returns the maximum
/// (0 for an edgeless graph).
std::size_t max_edge_triangle_count(const Graph& g);

bool is_bipartite(const Graph& g);
std::vector<std::vector<Vertex>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

inline constexpr std::size_t kDefaultChromaticLimit = 64;

/// Exact colouring via saturation-degree branch and bound. Ties between
/// equally saturated vertices go to the lowest index, so the witness is
/// reproducible. Throws LimitExceeded above `limit` (at most 64).
std::vector<int> optimal_coloring(const Graph& g, std::size_t limit = kDefaultChromaticLimit);
int chromatic_number(const Graph& g, std::size_t limit = kDefaultChromaticLimit);

/// Maximum matching on a general graph (Edmonds' blossom algorithm).
Matching max_matching(const Graph& g);
/// Maximal matching taken greedily in vertex order; a lower bound on nu.
Matching greedy_matching(const Graph& g);

/// Compact adjacency lists, used where the dense form would be wasteful
/// (sampled induced subgraphs of large sparse hosts).
struct AdjacencyList {
  std::vector<std::uint32_t> offsets;  // size n + 1
  std::vector<Vertex> targets;
  std::size_t order() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::span<const Vertex> neighbors(Vertex u) const noexcept {
    return {targets.data() + offsets[u], targets.data() + offsets[u + 1]};
  }
};

AdjacencyList to_adjacency_list(const Graph& g);
/// Induced subgraph on the vertices with keep[v] set, relabelled densely.
AdjacencyList induced_adjacency(const AdjacencyList& g, std::span<const char> keep);
Matching max_matching(const AdjacencyList& g);
Matching greedy_matching(const AdjacencyList& g);

// -- twin compression --------------------------------------------------------

/// Partition of the vertices into classes of identical adjacency rows (false
/// twins). Twins are never adjacent, and the graph is the blow-up of the
/// quotient on the class representatives.
struct TwinClasses {
  std::vector<std::uint32_t> class_of;       // vertex -> class id
  std::vector<Vertex> representative;        // class id -> lowest member
  std::vector<std::vector<Vertex>> members;  // class id -> members, ascending
  std::size_t count() const noexcept { return representative.size(); }
};

TwinClasses twin_classes(const Graph& g);

/// The pairs {u, v}, u != v, with at least one common neighbour in g.
Graph common_neighbor_pairs(const Graph& g);

/// "Has a common neighbour" as a relation between twin classes, so a lookup
/// is O(1) and memory is quadratic in the class count rather than in n.
class CommonNeighborRelation {
 public:
  explicit CommonNeighborRelation(const Graph& g);

  /// Whether u and v (u == v allowed) have a common neighbour.
  bool closed(Vertex u, Vertex v) const noexcept {
    const std::uint32_t a = tc_.class_of[u];
    const std::uint32_t b = tc_.class_of[v];
    return (rows_[a * words_ + b / bits::kWordBits] >> (b % bits::kWordBits)) & 1U;
  }
  /// Number of pairs {u, v}, u != v, with a common neighbour.
  std::uint64_t pair_count() const;
  const TwinClasses& classes() const noexcept { return tc_; }

 private:
  TwinClasses tc_;
  std::size_t words_ = 0;
  std::vector<bits::Word> rows_;
};

}  // namespace oddminor
