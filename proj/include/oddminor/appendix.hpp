#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oddminor/graph.hpp"
#include "oddminor/odd_minor.hpp"

namespace oddminor {

/// Bipartition with every cross pair adjacent.
struct JoinPartition {
  std::vector<Vertex> x1;
  std::vector<Vertex> x2;
};

/// A join partition exists iff the complement is disconnected; X1 is the
/// complement component holding vertex 0.
std::optional<JoinPartition> find_join_partition(const Graph& g);

/// chi(g) = k, and deleting any edge or any vertex drops chi to k - 1.
bool is_k_critical(const Graph& g, int k, std::size_t chromatic_limit = kDefaultChromaticLimit);

struct AppendixLimits {
  std::size_t chromatic_limit = kDefaultChromaticLimit;
  MinorSearchOptions minor{kDefaultMinorBudget, kMinorExactLimit, true};
};

struct Prop14Report {
  int chi = 0;
  int t_star = 0;
  /// ceil(3 t* / 2)
  int bound = 0;
  bool verdict = true;
  /// The literal instance: no K_t odd minor for t = t* + 1, so chi must be
  /// at most ceil(3 (t - 1) / 2).
  int literal_t = 1;
  int literal_bound = 0;
  bool literal_verdict = true;
};

/// Throws PreconditionFailed when alpha(g) > 2 and LimitExceeded above the
/// exact limits or when the odd-minor search does not complete.
Prop14Report check_prop_1_4(const Graph& g, const AppendixLimits& limits = {});

struct KsReport {
  int t_star = 0;
  int required = 0;  // ceil(n / 3)
  bool verdict = true;
};

KsReport check_ks_bound(const Graph& g, const AppendixLimits& limits = {});

/// Every labelled triangle-free graph on n vertices (n <= 8).
std::vector<Graph> triangle_free_graphs(std::size_t n);

/// Every labelled graph on n vertices with alpha <= 2: filtered from all
/// graphs when n <= 6, complements of triangle-free graphs otherwise.
std::vector<Graph> alpha_two_corpus(std::size_t n);

struct SweepRecord {
  std::string graph6;
  std::size_t n = 0;
  Prop14Report prop;
  KsReport ks;
};

struct SweepSummary {
  std::uint64_t graphs = 0;
  std::uint64_t prop_violations = 0;
  std::uint64_t ks_violations = 0;
  /// Largest chi / t* seen.
  double max_ratio = 0.0;
  std::string max_ratio_graph6;
};

/// Runs both checks over the corpus for every n in [n_min, n_max]. Records
/// are handed to `sink` in corpus order.
SweepSummary sweep_appendix(std::size_t n_min, std::size_t n_max, unsigned jobs,
                            const std::function<void(const SweepRecord&)>& sink = {},
                            const AppendixLimits& limits = {});

}  // namespace oddminor
