#include "oddminor/appendix.hpp"

#include <algorithm>
#include <thread>

#include "oddminor/codec.hpp"
#include "oddminor/errors.hpp"
#include "oddminor/montecarlo.hpp"

namespace oddminor {

std::optional<JoinPartition> find_join_partition(const Graph& g) {
  if (g.order() < 2) return std::nullopt;
  auto comps = connected_components(complement(g));
  if (comps.size() < 2) return std::nullopt;
  JoinPartition jp;
  jp.x1 = comps.front();  // components come out ordered by lowest vertex
  for (std::size_t i = 1; i < comps.size(); ++i) jp.x2.insert(jp.x2.end(), comps[i].begin(), comps[i].end());
  std::sort(jp.x2.begin(), jp.x2.end());
  return jp;
}

bool is_k_critical(const Graph& g, int k, std::size_t chromatic_limit) {
  if (chromatic_number(g, chromatic_limit) != k) return false;
  for (const Edge& e : g.edges()) {
    Graph h = g;
    h.remove_edge(e.u, e.v);
    if (chromatic_number(h, chromatic_limit) != k - 1) return false;
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    std::vector<Vertex> rest;
    for (Vertex u = 0; u < g.order(); ++u)
      if (u != v) rest.push_back(u);
    if (chromatic_number(induced_subgraph(g, rest), chromatic_limit) != k - 1) return false;
  }
  return true;
}

namespace {

int exact_t_star(const Graph& g, const AppendixLimits& limits) {
  MinorSearchOptions opts = limits.minor;
  opts.require_exact = true;
  const MinorSearchResult r = max_odd_clique_minor(g, opts);
  if (r.status != SearchStatus::exact) throw LimitExceeded("odd-minor search ran out of budget");
  return r.t;
}

void require_alpha_two(const Graph& g) {
  if (!independence_at_most_two(g)) throw PreconditionFailed("graph has an independent set of size 3");
}

}  // namespace

Prop14Report check_prop_1_4(const Graph& g, const AppendixLimits& limits) {
  require_alpha_two(g);
  Prop14Report r;
  r.chi = chromatic_number(g, limits.chromatic_limit);
  r.t_star = exact_t_star(g, limits);
  r.bound = (3 * r.t_star + 1) / 2;
  r.verdict = r.chi <= r.bound;
  r.literal_t = r.t_star + 1;
  r.literal_bound = (3 * (r.literal_t - 1) + 1) / 2;
  r.literal_verdict = r.chi <= r.literal_bound;
  return r;
}

KsReport check_ks_bound(const Graph& g, const AppendixLimits& limits) {
  require_alpha_two(g);
  KsReport r;
  r.t_star = exact_t_star(g, limits);
  r.required = static_cast<int>((g.order() + 2) / 3);
  r.verdict = r.t_star >= r.required;
  return r;
}

std::vector<Graph> triangle_free_graphs(std::size_t n) {
  if (n > 8) throw LimitExceeded("triangle-free enumeration is limited to n <= 8");
  std::vector<Edge> pairs;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) pairs.push_back({i, j});
  std::vector<Graph> out;
  Graph g(n);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == pairs.size()) {
      out.push_back(g);
      return;
    }
    self(self, k + 1);
    const Edge e = pairs[k];
    if (!bits::intersects(g.row(e.u), g.row(e.v))) {
      g.add_edge(e.u, e.v);
      self(self, k + 1);
      g.remove_edge(e.u, e.v);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Graph> alpha_two_corpus(std::size_t n) {
  std::vector<Graph> out;
  if (n <= 6) {
    const std::size_t k = n * (n - (n > 0 ? 1 : 0)) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      Graph g(n);
      std::size_t bit = 0;
      for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j, ++bit)
          if ((mask >> bit) & 1U) g.add_edge(i, j);
      if (independence_at_most_two(g)) out.push_back(std::move(g));
    }
    return out;
  }
  for (const Graph& h : triangle_free_graphs(n)) out.push_back(complement(h));
  return out;
}

SweepSummary sweep_appendix(std::size_t n_min, std::size_t n_max, unsigned jobs,
                            const std::function<void(const SweepRecord&)>& sink, const AppendixLimits& limits) {
  if (jobs == 0) jobs = default_jobs();
  SweepSummary summary;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const std::vector<Graph> corpus = alpha_two_corpus(n);
    std::vector<SweepRecord> records(corpus.size());
    std::vector<std::exception_ptr> errors(jobs);
    auto work = [&](unsigned w) {
      try {
        for (std::size_t i = w; i < corpus.size(); i += jobs) {
          SweepRecord& r = records[i];
          r.n = n;
          r.graph6 = encode_graph6(corpus[i]);
          r.prop = check_prop_1_4(corpus[i], limits);
          r.ks = check_ks_bound(corpus[i], limits);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (const SweepRecord& r : records) {
      ++summary.graphs;
      summary.prop_violations += !r.prop.verdict;
      summary.ks_violations += !r.ks.verdict;
      if (r.prop.t_star > 0) {
        const double ratio = static_cast<double>(r.prop.chi) / r.prop.t_star;
        if (ratio > summary.max_ratio) {
          summary.max_ratio = ratio;
          summary.max_ratio_graph6 = r.graph6;
        }
      }
      if (sink) sink(r);
    }
  }
  return summary;
}

}  // namespace oddminor
