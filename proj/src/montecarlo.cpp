#include "oddminor/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "oddminor/audit.hpp"
#include "oddminor/errors.hpp"
#include "oddminor/rng.hpp"

namespace oddminor {

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  double lo = successes == 0 ? 0.0 : std::clamp(center - half, 0.0, 1.0);
  double hi = successes == trials ? 1.0 : std::clamp(center + half, 0.0, 1.0);
  return {std::min(lo, p), std::max(hi, p)};
}

FrequencyEstimate make_estimate(std::uint64_t successes, std::uint64_t trials, std::optional<double> bound,
                                BoundKind kind) {
  if (successes > trials) throw PreconditionFailed("more successes than trials");
  FrequencyEstimate e;
  e.successes = successes;
  e.trials = trials;
  e.estimate = trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  std::tie(e.lower, e.upper) = wilson_interval(successes, trials);
  e.bound = bound;
  e.bound_kind = kind;
  return e;
}

unsigned default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

/// Runs body(acc, i) for every trial index, one accumulator per worker, and
/// returns the accumulators. If any trial throws, the exception from the
/// lowest failing index is rethrown.
template <class Acc, class Body>
std::vector<Acc> run_workers(std::uint64_t trials, unsigned jobs, Body body) {
  if (jobs == 0) jobs = default_jobs();
  jobs = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(jobs, trials)));
  std::vector<Acc> acc(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::uint64_t> error_index(jobs, std::numeric_limits<std::uint64_t>::max());
  auto work = [&](unsigned w) {
    for (std::uint64_t i = w; i < trials; i += jobs) {
      try {
        body(acc[w], i);
      } catch (...) {
        errors[w] = std::current_exception();
        error_index[w] = i;
        return;
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  const auto first = std::min_element(error_index.begin(), error_index.end());
  if (*first != std::numeric_limits<std::uint64_t>::max()) std::rethrow_exception(errors[first - error_index.begin()]);
  return acc;
}

}  // namespace

std::uint64_t count_successes(std::uint64_t trials, std::uint64_t seed, const TrialFunction& trial, unsigned jobs) {
  auto acc = run_workers<std::uint64_t>(trials, jobs, [&](std::uint64_t& a, std::uint64_t i) {
    if (trial(derive_seed(seed, i))) ++a;
  });
  std::uint64_t total = 0;
  for (auto a : acc) total += a;
  return total;
}

MatchingProbe probe_matching_lemma(const Graph& gamma_graph, double q, std::uint64_t trials, std::uint64_t seed,
                                   unsigned jobs) {
  if (!(q >= 0.0 && q <= 1.0)) throw HypothesisViolated("q must lie in [0, 1]");
  const std::size_t delta = max_degree(gamma_graph);
  if (delta > 0 && q > (1.0 / static_cast<double>(delta)) * (1.0 + 1e-12))
    throw HypothesisViolated("q exceeds 1 / max degree = " + std::to_string(1.0 / static_cast<double>(delta)));
  const double e = static_cast<double>(gamma_graph.edge_count());
  MatchingProbe out;
  out.threshold = q * q * e / 20.0;
  const AdjacencyList adj = to_adjacency_list(gamma_graph);
  struct Acc {
    std::uint64_t success = 0, greedy = 0, contradictions = 0;
    std::map<std::size_t, std::uint64_t> hist;
  };
  auto acc = run_workers<Acc>(trials, jobs, [&](Acc& a, std::uint64_t i) {
    RandomStream s(derive_seed(seed, i));
    std::vector<char> keep(adj.order());
    for (auto& k : keep) k = s.bernoulli(q) ? 1 : 0;
    const AdjacencyList sub = induced_adjacency(adj, keep);
    const std::size_t nu = max_matching(sub).size();
    const bool ok = static_cast<double>(nu) >= out.threshold;
    const bool greedy_ok = static_cast<double>(greedy_matching(sub).size()) >= out.threshold;
    a.success += ok;
    a.greedy += greedy_ok;
    a.contradictions += greedy_ok && !ok;
    ++a.hist[nu];
  });
  std::uint64_t success = 0;
  for (const auto& a : acc) {
    success += a.success;
    out.greedy_successes += a.greedy;
    out.greedy_contradictions += a.contradictions;
    for (const auto& [k, c] : a.hist) out.nu_histogram[k] += c;
  }
  out.estimate = make_estimate(success, trials, 1.0 - std::exp(-q * q * e / 200.0), BoundKind::frequency_at_least);
  return out;
}

FrequencyEstimate probe_chernoff(std::uint64_t N, double pr, double t, std::uint64_t trials, std::uint64_t seed,
                                 unsigned jobs) {
  if (!(pr >= 0.0 && pr <= 1.0)) throw HypothesisViolated("probability must lie in [0, 1]");
  const double mean = static_cast<double>(N) * pr;
  if (t < 2 * mean * (1.0 - 1e-12)) throw HypothesisViolated("t is below 2 E[X] = " + std::to_string(2 * mean));
  const std::uint64_t hits = count_successes(
      trials, seed,
      [&](std::uint64_t trial_seed) {
        RandomStream s(trial_seed);
        std::uint64_t x = 0;
        for (std::uint64_t k = 0; k < N; ++k) x += s.bernoulli(pr);
        return static_cast<double>(x) >= t;
      },
      jobs);
  return make_estimate(hits, trials, std::exp(-t / 6.0), BoundKind::frequency_at_most);
}

std::uint64_t respectful_pairing_size(std::uint64_t n, double eps) {
  const double raw = eps * static_cast<double>(n);
  if (raw <= 0.0) return 0;
  return static_cast<std::uint64_t>(std::ceil(raw - 1e-9));
}

Pairing canonical_pairing(std::uint64_t s) {
  Pairing p;
  for (std::uint64_t i = 0; i < s; ++i) p.pairs.emplace_back(static_cast<Vertex>(2 * i), static_cast<Vertex>(2 * i + 1));
  return p;
}

FrequencyEstimate probe_respectful(const Pairing& pairing, std::uint64_t n, std::uint64_t m, double eps,
                                   std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
  if (m == 0) throw HypothesisViolated("m must be at least 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw HypothesisViolated("eps must lie in (0, 1]");
  validate_pairing(pairing, n);
  // Only the pairing's own vertices matter; relabel them 0..2s-1 so each
  // trial draws 2s map values instead of n.
  Pairing local;
  for (std::size_t i = 0; i < pairing.size(); ++i)
    local.pairs.emplace_back(static_cast<Vertex>(2 * i), static_cast<Vertex>(2 * i + 1));
  const std::uint64_t hits = count_successes(
      trials, seed,
      [&](std::uint64_t trial_seed) {
        RandomStream s(trial_seed);
        VertexMap pi(2 * local.size());
        for (auto& x : pi) x = static_cast<std::uint32_t>(s.below(m));
        return is_eps_respectful(local, pi, eps);
      },
      jobs);
  const double nn = static_cast<double>(n);
  const double failure = std::pow(nn, -(5.0 / 8.0) * eps * nn);
  return make_estimate(hits, trials, 1.0 - failure, BoundKind::frequency_at_least);
}

FrequencyEstimate probe_respectful(std::uint64_t n, std::uint64_t m, double eps, std::uint64_t trials,
                                   std::uint64_t seed, unsigned jobs) {
  const std::uint64_t s = respectful_pairing_size(n, eps);
  if (2 * s > n)
    throw HypothesisViolated("a " + std::to_string(s) + "-pairing does not fit in " + std::to_string(n) + " vertices");
  return probe_respectful(canonical_pairing(s), n, m, eps, trials, seed, jobs);
}

ConstructionEventProbe probe_construction_events(const ConstructionParams& params, std::uint64_t trials,
                                                 std::uint64_t seed, unsigned jobs) {
  validate(params);
  static const std::array<const char*, 6> names{"d_r", "d_b", "f_r", "f_b", "t_r", "t_b"};
  struct Acc {
    std::array<std::uint64_t, 6> hits{};
    std::uint64_t triangle_free = 0;
  };
  auto acc = run_workers<Acc>(trials, jobs, [&](Acc& a, std::uint64_t i) {
    ConstructionParams p = params;
    p.seed = derive_seed(seed, i);
    const ConstructionTrace t = build_counterexample(p);
    if (!is_triangle_free_in_overlay(t.h, t.h0))
      throw ResidualTriangle("trial " + std::to_string(i) + " produced h with a triangle");
    ++a.triangle_free;
    const EventReport r = audit_instance(t, 0.0, 0.0);
    const std::array<bool, 6> ok{r.d_r.holds, r.d_b.holds, r.f_r.holds, r.f_b.holds, r.t_r.holds, r.t_b.holds};
    for (std::size_t k = 0; k < 6; ++k) a.hits[k] += ok[k];
  });
  ConstructionEventProbe out;
  std::array<std::uint64_t, 6> hits{};
  for (const auto& a : acc) {
    for (std::size_t k = 0; k < 6; ++k) hits[k] += a.hits[k];
    out.triangle_free += a.triangle_free;
  }
  for (std::size_t k = 0; k < 6; ++k) out.events[names[k]] = make_estimate(hits[k], trials);
  return out;
}

std::vector<std::string> registered_targets() {
  return {"always-true", "chernoff", "fair-coin", "matching-cycle", "respectful"};
}

FrequencyEstimate run_trials(const TrialPlan& plan) {
  if (plan.trials == 0) throw PreconditionFailed("a plan needs at least one trial");
  auto param = [&](const char* key) {
    auto it = plan.params.find(key);
    if (it == plan.params.end()) throw PreconditionFailed("target " + plan.target + " needs parameter " + key);
    return it->second;
  };
  if (plan.target == "always-true")
    return make_estimate(count_successes(plan.trials, plan.seed, [](std::uint64_t) { return true; }, plan.jobs),
                         plan.trials);
  if (plan.target == "fair-coin")
    return make_estimate(
        count_successes(
            plan.trials, plan.seed, [](std::uint64_t s) { return RandomStream(s).bernoulli(0.5); }, plan.jobs),
        plan.trials, 0.5, BoundKind::frequency_at_most);
  if (plan.target == "chernoff")
    return probe_chernoff(static_cast<std::uint64_t>(param("N")), param("p"), param("t"), plan.trials, plan.seed,
                          plan.jobs);
  if (plan.target == "respectful")
    return probe_respectful(static_cast<std::uint64_t>(param("n")), static_cast<std::uint64_t>(param("m")),
                            param("eps"), plan.trials, plan.seed, plan.jobs);
  if (plan.target == "matching-cycle")
    return probe_matching_lemma(cycle_graph(static_cast<std::size_t>(param("length"))), param("q"), plan.trials,
                                plan.seed, plan.jobs)
        .estimate;
  throw UnknownTarget("unknown target '" + plan.target + "'");
}

}  // namespace oddminor
