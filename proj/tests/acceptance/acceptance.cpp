// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Usage: oddminor_acceptance [criterion numbers...]   (default: all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oddminor/appendix.hpp"
#include "oddminor/audit.hpp"
#include "oddminor/codec.hpp"
#include "oddminor/errors.hpp"
#include "oddminor/montecarlo.hpp"
#include "oddminor/serialize.hpp"
#include "support/oracles.hpp"

using namespace oddminor;
using namespace oddminor::testing;

namespace {

// Pinned tolerances.
constexpr int kTraceSeeds = 1000;
constexpr double kSigmas = 5.0;
constexpr double kMatchingFailureCeiling = 1e-3;
constexpr std::uint64_t kMatchingTrials = 10'000;
constexpr std::uint64_t kChernoffTrials = 100'000;
constexpr std::uint64_t kRespectfulTrials = 100'000;
constexpr std::uint64_t kUnbounded = ~std::uint64_t{0};

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Witness {
  Graph g;
  MinorModel model;
};

/// Minor witnesses from criterion 3, reused by criterion 5.
std::vector<Witness> g_witnesses;

std::size_t all_pairs(std::size_t n) { return n * (n > 0 ? n - 1 : 0) / 2; }

template <class F>
void for_each_small_graph(std::size_t n_max, F&& f) {
  for (std::size_t n = 0; n <= n_max; ++n)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all_pairs(n)); ++mask) f(graph_from_mask(n, mask));
}

Outcome construction_invariants() {
  const std::vector<ConstructionParams> grid{
      {512, 64, 0.05, 0, false}, {4096, 256, 0.02, 0, false}, {51200, 1024, 0.01, 0, false}};
  const std::set<std::string> required{"h_triangle_free",        "independence_at_most_two",
                                       "coupling_containment_r", "coupling_containment_b",
                                       "pullback_consistency_r", "pullback_consistency_b",
                                       "cherry_deletion_crosscheck"};
  Outcome out;
  std::ostringstream detail;
  for (ConstructionParams params : grid) {
    int failures = 0;
    std::string first;
    for (int seed = 0; seed < kTraceSeeds; ++seed) {
      params.seed = static_cast<std::uint64_t>(seed);
      try {
        const TraceVerification v = verify_trace(build_counterexample(params));
        std::set<std::string> seen;
        for (const auto& c : v.checks) seen.insert(c.name);
        bool ok = v.ok();
        for (const auto& name : required) ok = ok && seen.count(name);
        if (!ok) {
          ++failures;
          if (first.empty()) first = "seed " + std::to_string(seed) + ": " + (v.first_failure() ? v.first_failure()->name : "missing check");
        }
      } catch (const std::exception& e) {
        ++failures;
        if (first.empty()) first = "seed " + std::to_string(seed) + ": " + e.what();
      }
    }
    detail << "(" << params.n << "," << params.m << "," << params.p << "): " << kTraceSeeds - failures << "/"
           << kTraceSeeds << " clean" << (first.empty() ? "" : " first failure " + first) << "; ";
    out.pass = out.pass && failures == 0;
  }
  out.detail = detail.str();
  return out;
}

Outcome pairing_oracle() {
  std::size_t graphs = 0, mismatches = 0;
  auto check = [&](const Graph& g) {
    ++graphs;
    const PairingSearchResult r = max_odd_connected_pairing(g, kUnbounded);
    const bool ok = r.status == SearchStatus::exact && r.size == brute_force_max_pairing(g) &&
                    r.witness.size() == r.size && is_odd_connected_pairing(g, r.witness);
    mismatches += !ok;
  };
  for_each_small_graph(5, check);
  std::mt19937_64 rng(2);
  for (std::size_t n = 6; n <= 10; ++n)
    for (int rep = 0; rep < 200; ++rep) check(random_graph(n, rng));
  return {mismatches == 0, std::to_string(graphs) + " graphs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome minor_oracle() {
  std::size_t graphs = 0, mismatches = 0, parity = 0;
  g_witnesses.clear();
  auto check = [&](const Graph& g) {
    ++graphs;
    MinorSearchOptions opts;
    opts.budget = kUnbounded;
    opts.require_exact = true;
    const MinorSearchResult r = max_odd_clique_minor(g, opts);
    const bool ok = r.status == SearchStatus::exact && r.t == brute_max_odd_clique_minor(g) &&
                    verify_model(g, r.witness).verdict;
    mismatches += !ok;
    parity += (r.t >= 3) != !is_bipartite(g);
    g_witnesses.push_back({g, r.witness});
  };
  for_each_small_graph(5, check);
  std::mt19937_64 rng(3);
  for (std::size_t n = 6; n <= 7; ++n)
    for (int rep = 0; rep < 100; ++rep) check(random_graph(n, rng));
  return {mismatches == 0 && parity == 0, std::to_string(graphs) + " graphs, " + std::to_string(mismatches) +
                                              " mismatches, " + std::to_string(parity) + " bipartiteness disagreements"};
}

Outcome appendix_sweep() {
  AppendixLimits limits;
  limits.minor.budget = kUnbounded;
  const SweepSummary s = sweep_appendix(1, 7, 0, {}, limits);
  std::ostringstream d;
  d << s.graphs << " graphs with alpha <= 2, " << s.prop_violations << " bound violations, " << s.ks_violations
    << " n/3 violations, max chi/t* " << s.max_ratio << " at " << s.max_ratio_graph6;
  return {s.prop_violations == 0 && s.ks_violations == 0, d.str()};
}

Outcome certificate_transform() {
  if (g_witnesses.empty()) minor_oracle();
  std::size_t transformed = 0, failures = 0;
  std::string first;
  std::size_t too_small = 0;
  for (const auto& [g, model] : g_witnesses)
    for (const Fraction eta : {Fraction{1, 12}, Fraction{1, 6}}) {
      const auto n = static_cast<std::int64_t>(g.order());
      const auto t = static_cast<std::int64_t>(model.size());
      if (n == 0 || 3 * eta.den * t < (eta.den + 3 * eta.num) * n) continue;
      ++transformed;
      const auto s = static_cast<std::size_t>((eta.num * n + 2 * eta.den - 1) / (2 * eta.den));
      try {
        const Pairing p = model_to_pairing(g, model, eta);
        if (!(p.size() == s && is_odd_connected_pairing(g, p))) {
          ++failures;
          if (first.empty()) first = encode_graph6(g);
        }
      } catch (const std::exception& e) {
        ++failures;
        // The size demand ceil(eta n / 2) cannot be met when it exceeds n / 2 (only n = 1 here).
        too_small += 2 * s > g.order();
        if (first.empty()) first = encode_graph6(g) + " eta " + std::to_string(eta.num) + "/" + std::to_string(eta.den) + ": " + e.what();
      }
    }
  return {failures == 0 && transformed > 0,
          std::to_string(transformed) + " transforms, " + std::to_string(failures) + " failures (" +
              std::to_string(too_small) + " with 2s > n)" +
              (first.empty() ? "" : ", first on " + first)};
}

Outcome matching_probe() {
  const Graph cycle = cycle_graph(8000);
  const MatchingProbe r = probe_matching_lemma(cycle, 0.5, kMatchingTrials, 72, 0);
  const double failure = 1.0 - r.estimate.estimate;
  std::ostringstream d;
  d << "threshold " << r.threshold << ", failure frequency " << failure << " (ceiling " << kMatchingFailureCeiling
    << ", bound exp(-10) = " << std::exp(-10.0) << "), nu range [" << r.nu_histogram.begin()->first << ", "
    << r.nu_histogram.rbegin()->first << "], greedy contradictions " << r.greedy_contradictions;
  return {failure <= kMatchingFailureCeiling && r.greedy_contradictions == 0, d.str()};
}

Outcome chernoff_grid() {
  struct Cell {
    std::uint64_t N;
    double p, t;
  };
  const std::vector<Cell> grid{{1000, 0.1, 200}, {10, 0.5, 10}, {100, 0.05, 10}, {50, 0.1, 12}, {200, 0.02, 8}, {20, 0.25, 10}};
  Outcome out;
  std::ostringstream d;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Cell& c = grid[k];
    const FrequencyEstimate e = probe_chernoff(c.N, c.p, c.t, kChernoffTrials, 700 + k, 0);
    const double bound = std::exp(-c.t / 6.0);
    const double sigma = std::sqrt(bound * (1 - bound) / static_cast<double>(kChernoffTrials));
    const bool ok = e.estimate <= bound + kSigmas * sigma;
    out.pass = out.pass && ok;
    d << "(" << c.N << "," << c.p << "," << c.t << "): " << e.estimate << " vs " << bound << (ok ? "" : " EXCEEDED")
      << "; ";
  }
  out.detail = d.str();
  return out;
}

Outcome pi_graph_claims() {
  std::mt19937_64 rng(8);
  std::size_t instances = 0, violations = 0;
  for (const auto& [n, m] : {std::pair<std::size_t, std::size_t>{200, 20}, {1000, 50}})
    for (int rep = 0; rep < 100; ++rep) {
      ++instances;
      std::vector<Vertex> perm(n);
      for (Vertex i = 0; i < n; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      const std::size_t s = n / 4 + rng() % (n / 4 + 1);
      Pairing p;
      for (std::size_t i = 0; i < s; ++i) p.pairs.emplace_back(perm[2 * i], perm[2 * i + 1]);
      VertexMap pi(n);
      for (auto& x : pi) x = static_cast<std::uint32_t>(rng() % m);

      const PairGraph restricted = build_pi_graph(respectful_subpairing(p, pi), pi, m);
      for (std::size_t mult : restricted.multiplicity) violations += mult > 2;

      const PairGraph full = build_pi_graph(p, pi, m);
      std::vector<std::size_t> f(m, 0);
      for (const auto& [u, v] : p.pairs) {
        ++f[pi[u]];
        ++f[pi[v]];
      }
      for (const auto& [vertex, deg] : full.degrees()) violations += deg > f[vertex.u] * f[vertex.v];
    }
  return {violations == 0, std::to_string(instances) + " instances, " + std::to_string(violations) + " violations"};
}

Outcome respectful_exactness() {
  Outcome out;
  std::ostringstream d;
  for (std::uint64_t m : {2ULL, 10ULL, 100ULL}) {
    // n = 10 and eps = 0.1 give s = 1.
    const FrequencyEstimate e = probe_respectful(10, m, 0.1, kRespectfulTrials, 900 + m, 0);
    const double exact = 1.0 - 1.0 / static_cast<double>(m);
    const double sigma = std::sqrt(exact * (1 - exact) / static_cast<double>(kRespectfulTrials));
    const bool ok = std::abs(e.estimate - exact) <= kSigmas * sigma;
    out.pass = out.pass && ok;
    d << "m=" << m << ": " << e.estimate << " vs " << exact << (ok ? "" : " OUTSIDE") << "; ";
  }
  out.detail = d.str();
  return out;
}

Outcome determinism_and_io() {
  std::size_t diffs = 0, compared = 0;
  for (const ConstructionParams base : {ConstructionParams{512, 64, 0.05, 0, false}, ConstructionParams{4096, 256, 0.02, 0, false}})
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      ConstructionParams params = base;
      params.seed = seed;
      const ConstructionTrace a = build_counterexample(params);
      const ConstructionTrace b = build_counterexample(params);
      diffs += to_json(a).dump() != to_json(b).dump();
      diffs += to_json(audit_instance(a, 0.1, 0.01)).dump() != to_json(audit_instance(b, 0.1, 0.01)).dump();
      diffs += to_json(verify_trace(a)).dump() != to_json(verify_trace(b)).dump();
      diffs += !(trace_from_json(parse_json(to_json(a).dump())) == a);
      compared += 4;
    }
  for (unsigned jobs : {1U, 2U}) {
    const TrialPlan plan{5'000, 17, "respectful", {{"n", 50}, {"m", 20}, {"eps", 0.2}}, jobs};
    static std::string reference;
    const std::string got = to_json(run_trials(plan)).dump();
    if (reference.empty()) reference = got;
    diffs += got != reference;
    ++compared;
  }
  std::mt19937_64 rng(10);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = rng() % 101;
    const Graph g = random_graph(n, static_cast<double>(rng() % 101) / 100.0, rng);
    diffs += !(decode_graph6(encode_graph6(g)) == g);
    diffs += !(decode_dimacs(encode_dimacs(g)).graph == g);
    compared += 2;
  }
  return {diffs == 0, std::to_string(compared) + " comparisons, " + std::to_string(diffs) + " diffs"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"construction hard invariants over 1000 seeds per size", construction_invariants},
      {"pairing search equals brute force", pairing_oracle},
      {"odd-minor search equals brute force", minor_oracle},
      {"appendix bounds on every alpha <= 2 graph with n <= 7", appendix_sweep},
      {"model to pairing transform", certificate_transform},
      {"random-subset matching probe on C_8000", matching_probe},
      {"binomial upper-tail grid", chernoff_grid},
      {"pi-graph multiplicity and degree claims", pi_graph_claims},
      {"respectful probe with s = 1", respectful_exactness},
      {"determinism and codec round trips", determinism_and_io},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
