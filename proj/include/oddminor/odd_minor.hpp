#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oddminor/graph.hpp"
#include "oddminor/pairing.hpp"

namespace oddminor {

enum class Color : std::uint8_t { black = 0, white = 1 };

/// One branch tree of a model. colors[i] belongs to vertices[i].
struct MinorTree {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Color> colors;

  Color color_of(Vertex v) const;
  bool operator==(const MinorTree&) const = default;
};

/// Disjoint properly 2-coloured trees witnessing K_t as an odd minor.
struct MinorModel {
  std::vector<MinorTree> trees;
  std::size_t size() const noexcept { return trees.size(); }
  bool operator==(const MinorModel&) const = default;
};

struct CertificateReport {
  bool verdict = true;
  /// Empty when the verdict is true; otherwise the first violated condition
  /// with the offending tree indices and vertices.
  std::string failure;
};

CertificateReport verify_model(const Graph& g, const MinorModel& model);

inline constexpr std::size_t kMinorExactLimit = 12;
/// The exact search tabulates all 3^n coloured subsets; never above this.
inline constexpr std::size_t kMinorHardLimit = 14;
inline constexpr std::uint64_t kDefaultMinorBudget = 50'000'000;

struct MinorSearchOptions {
  std::uint64_t budget = kDefaultMinorBudget;
  std::size_t exact_limit = kMinorExactLimit;
  /// Throw LimitExceeded rather than fall back to a heuristic above the limit.
  bool require_exact = false;
};

struct MinorSearchResult {
  int t = 0;
  MinorModel witness;
  SearchStatus status = SearchStatus::exact;
  std::uint64_t nodes = 0;
};

/// Largest t with K_t an odd minor of g. Exact for n <= exact_limit by a
/// search over disjoint branch sets, each a vertex subset with a colouring
/// whose bichromatic edges connect it; above the limit, the best of a greedy
/// clique, an odd cycle and an edge, with status lower_bound.
MinorSearchResult max_odd_clique_minor(const Graph& g, const MinorSearchOptions& options = {});

/// K_3 is an odd minor iff g has an odd cycle.
bool odd_minor_k3(const Graph& g);

/// Vertices of some odd cycle in cyclic order, or empty when g is bipartite.
std::vector<Vertex> find_odd_cycle(const Graph& g);

/// A rational number num/den, 0 < num < den.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// Odd connected pairing of size ceil(eta * n / 2) read off a model with
/// t >= (1/3 + eta) n trees: either from two-vertex trees (white, black) or
/// from singleton trees, each paired with the lowest vertex not yet used.
/// Throws PreconditionFailed on an invalid model or too few trees.
Pairing model_to_pairing(const Graph& g, const MinorModel& model, Fraction eta);

}  // namespace oddminor
