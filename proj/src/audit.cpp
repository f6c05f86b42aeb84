#include "oddminor/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oddminor {

BoundCheck BoundCheck::at_most(std::uint64_t observed, double bound) {
  return {observed, bound, BoundDirection::at_most, static_cast<double>(observed) <= bound};
}

BoundCheck BoundCheck::at_least(std::uint64_t observed, double bound) {
  return {observed, bound, BoundDirection::at_least, static_cast<double>(observed) >= bound};
}

BoundCheck check_degree_event(const Graph& h, double bound) { return BoundCheck::at_most(max_degree(h), bound); }

namespace {

std::vector<std::uint64_t> fiber_sizes(const VertexMap& pi) {
  std::uint32_t top = 0;
  for (auto x : pi) top = std::max(top, x);
  std::vector<std::uint64_t> f(pi.empty() ? 0 : top + 1, 0);
  for (auto x : pi) ++f[x];
  return f;
}

std::uint64_t max_of(const std::vector<std::uint64_t>& v) {
  return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

BoundCheck check_fiber_event(const VertexMap& pi, double bound) {
  return BoundCheck::at_most(max_of(fiber_sizes(pi)), bound);
}

BoundCheck check_triangle_count_event(const Graph& hstar, double bound) {
  return BoundCheck::at_most(max_edge_triangle_count(hstar), bound);
}

Graph cherry_closed_pairs(const ColoredGraph& h0, EdgeColor color) {
  return common_neighbor_pairs(color == EdgeColor::red ? h0.red : h0.blue);
}

std::uint64_t count_cherry_closed_pairs(const ColoredGraph& h0, EdgeColor color) {
  return CommonNeighborRelation(color == EdgeColor::red ? h0.red : h0.blue).pair_count();
}

EventReport audit_instance(const ConstructionTrace& t, double eps, double gamma, const Pairing* pairing) {
  EventReport r;
  r.eps = eps;
  r.gamma = gamma;
  const double n = static_cast<double>(t.params.n);
  const double m = static_cast<double>(t.params.m);
  const double p = t.params.p;
  r.d_r = check_degree_event(t.h_r, 2 * p * m);
  r.d_b = check_degree_event(t.h_b, 2 * p * m);
  r.f_r = check_fiber_event(t.pi_r, 2 * n / m);
  r.f_b = check_fiber_event(t.pi_b, 2 * n / m);
  const double tri_bound = 20 * std::log(m);
  r.t_r = check_triangle_count_event(t.hstar_r, tri_bound);
  r.t_b = check_triangle_count_event(t.hstar_b, tri_bound);

  const double asymptotic = n > 1 ? n * n / std::log(n) : std::numeric_limits<double>::infinity();
  const std::uint64_t red_pairs = count_cherry_closed_pairs(t.h0, EdgeColor::red);
  const std::uint64_t blue_pairs = count_cherry_closed_pairs(t.h0, EdgeColor::blue);
  r.cherries_r_asymptotic = BoundCheck::at_most(red_pairs, asymptotic);
  r.cherries_b_asymptotic = BoundCheck::at_most(blue_pairs, asymptotic);
  auto proof_step = [&](const Graph& hx, const VertexMap& pi) {
    const double delta = static_cast<double>(max_degree(hx));
    const double fiber = static_cast<double>(max_of(fiber_sizes(pi)));
    return m * delta * delta * fiber * fiber;
  };
  r.cherries_r_proof_step = BoundCheck::at_most(red_pairs, proof_step(t.h_r, t.pi_r));
  r.cherries_b_proof_step = BoundCheck::at_most(blue_pairs, proof_step(t.h_b, t.pi_b));

  if (pairing != nullptr) {
    PairingAudit a;
    a.s = pairing->size();
    a.respectful_r = respectful_index(*pairing, t.pi_r);
    a.respectful_b = respectful_index(*pairing, t.pi_b);
    const auto mm = static_cast<std::size_t>(t.params.m);
    const PairGraph pi_graph = build_pi_graph(*pairing, t.pi_r, mm);
    const CommonNeighborRelation blue(t.h0.blue);
    const PairGraph gamma_graph =
        build_pi_graph(*pairing, t.pi_r, mm, [&](Vertex u, Vertex v) { return blue.closed(u, v); });
    a.pi_edges = BoundCheck::at_least(pi_graph.edge_count(), std::pow(eps, 4) * n * n / 6);
    a.gamma_edges = BoundCheck::at_least(gamma_graph.edge_count(), gamma * n * n);
    a.gamma_max_degree = BoundCheck::at_most(gamma_graph.max_degree(), 4 * n * n / (m * m));
    std::vector<std::uint64_t> f(mm, 0);
    for (const auto& [u, v] : pairing->pairs) {
      ++f[t.pi_r[u]];
      ++f[t.pi_r[v]];
    }
    std::uint64_t violations = 0;
    for (const auto& [vertex, degree] : gamma_graph.degrees()) {
      const std::uint64_t product = f[vertex.u] * f[vertex.v];
      a.max_fiber_product = std::max(a.max_fiber_product, product);
      if (degree > product) ++violations;
    }
    a.fiber_product_violations = BoundCheck::at_most(violations, 0);
    r.pairing = a;
  }
  return r;
}

}  // namespace oddminor
