#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oddminor/construction.hpp"
#include "oddminor/graph.hpp"
#include "oddminor/pairing.hpp"

namespace oddminor {

/// How a theoretical value relates to the estimated frequency.
enum class BoundKind { frequency_at_most, frequency_at_least };

struct FrequencyEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double lower = 0.0;  // 95% Wilson score interval
  double upper = 1.0;
  std::optional<double> bound;
  BoundKind bound_kind = BoundKind::frequency_at_most;

  bool operator==(const FrequencyEstimate&) const = default;
};

inline constexpr double kWilsonZ95 = 1.959963984540054;

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kWilsonZ95);
FrequencyEstimate make_estimate(std::uint64_t successes, std::uint64_t trials, std::optional<double> bound = {},
                                BoundKind kind = BoundKind::frequency_at_most);

/// Worker count used when a caller passes jobs = 0.
unsigned default_jobs();

/// One trial as a pure function of its derived seed.
using TrialFunction = std::function<bool(std::uint64_t trial_seed)>;

/// Runs trials 0..trials-1 with seeds derive_seed(seed, i) over `jobs`
/// workers and counts successes. The count does not depend on jobs.
std::uint64_t count_successes(std::uint64_t trials, std::uint64_t seed, const TrialFunction& trial, unsigned jobs);

struct TrialPlan {
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::string target;
  std::map<std::string, double> params;
  unsigned jobs = 0;
};

/// Registered targets: always-true, fair-coin, chernoff (N, p, t),
/// respectful (n, m, eps), matching-cycle (length, q). Throws UnknownTarget.
FrequencyEstimate run_trials(const TrialPlan& plan);
std::vector<std::string> registered_targets();

struct MatchingProbe {
  FrequencyEstimate estimate;  // success: nu >= q^2 e / 20
  double threshold = 0.0;
  /// nu(Gamma[V*]) -> number of trials.
  std::map<std::size_t, std::uint64_t> nu_histogram;
  /// Trials where the greedy matching alone already reached the threshold.
  std::uint64_t greedy_successes = 0;
  /// Trials where greedy reached the threshold but the exact nu did not.
  std::uint64_t greedy_contradictions = 0;
};

/// Throws HypothesisViolated when q > 1/Delta.
MatchingProbe probe_matching_lemma(const Graph& gamma_graph, double q, std::uint64_t trials, std::uint64_t seed,
                                   unsigned jobs = 0);

/// Frequency of Binomial(N, pr) >= t. Throws HypothesisViolated when t < 2 N pr.
FrequencyEstimate probe_chernoff(std::uint64_t N, double pr, double t, std::uint64_t trials, std::uint64_t seed,
                                 unsigned jobs = 0);

/// s = ceil(eps n) with a small guard against floating-point overshoot.
std::uint64_t respectful_pairing_size(std::uint64_t n, double eps);
/// (0, 1), (2, 3), ..., (2s-2, 2s-1).
Pairing canonical_pairing(std::uint64_t s);

/// Frequency with which a uniform map [n] -> [m] is eps-respectful of the
/// pairing. The bound reported is 1 - n^{-(5/8) eps n} on that frequency.
FrequencyEstimate probe_respectful(std::uint64_t n, std::uint64_t m, double eps, std::uint64_t trials,
                                   std::uint64_t seed, unsigned jobs = 0);
FrequencyEstimate probe_respectful(const Pairing& pairing, std::uint64_t n, std::uint64_t m, double eps,
                                   std::uint64_t trials, std::uint64_t seed, unsigned jobs = 0);

struct ConstructionEventProbe {
  /// Keys d_r, d_b, f_r, f_b, t_r, t_b.
  std::map<std::string, FrequencyEstimate> events;
  /// Trials whose h passed the triangle-freeness assertion (must be all).
  std::uint64_t triangle_free = 0;
};

/// Per trial, builds a trace with seed derive_seed(seed, i) and evaluates the
/// degree, fibre and triangle-count events at their bounds. Throws
/// ResidualTriangle if any h has a triangle.
ConstructionEventProbe probe_construction_events(const ConstructionParams& params, std::uint64_t trials,
                                                 std::uint64_t seed, unsigned jobs = 0);

}  // namespace oddminor
