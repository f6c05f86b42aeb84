#include <doctest.h>

#include <cmath>
#include <random>

#include "oddminor/audit.hpp"
#include "oddminor/construction.hpp"
#include "support/oracles.hpp"

using namespace oddminor;
using namespace oddminor::testing;

TEST_CASE("check_degree_event examples") {
  const BoundCheck c5 = check_degree_event(cycle_graph(5), 2);
  CHECK(c5.holds);
  CHECK(c5.observed == 2);
  const BoundCheck k4 = check_degree_event(complete_graph(4), 2.5);
  CHECK_FALSE(k4.holds);
  CHECK(k4.observed == 3);
  CHECK(check_degree_event(Graph(5), 0).holds);
}

TEST_CASE("check_fiber_event examples") {
  VertexMap id(10);
  for (std::uint32_t i = 0; i < 10; ++i) id[i] = i;
  CHECK(check_fiber_event(id, 1).holds);
  const BoundCheck constant = check_fiber_event(VertexMap(10, 0), 5);
  CHECK_FALSE(constant.holds);
  CHECK(constant.observed == 10);
  VertexMap balanced(10);
  for (std::uint32_t i = 0; i < 10; ++i) balanced[i] = i % 5;
  CHECK(check_fiber_event(balanced, 2).holds);
  CHECK(check_fiber_event(VertexMap{}, 0).holds);
}

TEST_CASE("check_triangle_count_event examples") {
  const BoundCheck k4 = check_triangle_count_event(complete_graph(4), 2);
  CHECK(k4.holds);
  CHECK(k4.observed == 2);
  const BoundCheck k5 = check_triangle_count_event(complete_graph(5), 2);
  CHECK_FALSE(k5.holds);
  CHECK(k5.observed == 3);
  CHECK(check_triangle_count_event(petersen_graph(), 0).holds);
}

TEST_CASE("cherry_closed_pairs examples") {
  ColoredGraph path{path_graph(3), Graph(3)};
  const Graph closed = cherry_closed_pairs(path, EdgeColor::red);
  CHECK(closed.edge_count() == 1);
  CHECK(closed.adjacent(0, 2));

  ColoredGraph blue{Graph(5), cycle_graph(5)};
  CHECK(cherry_closed_pairs(blue, EdgeColor::red).edge_count() == 0);
  CHECK(count_cherry_closed_pairs(blue, EdgeColor::red) == 0);

  ColoredGraph star{star_graph(3), Graph(4)};
  const Graph leaves = cherry_closed_pairs(star, EdgeColor::red);
  CHECK(leaves.edge_count() == 3);
  CHECK(leaves.adjacent(1, 2));
  CHECK(leaves.adjacent(1, 3));
  CHECK(leaves.adjacent(2, 3));
  CHECK(count_cherry_closed_pairs(star, EdgeColor::red) == 3);
}

TEST_CASE("property: cherry counts agree with brute force") {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rep % 25;
    ColoredGraph h0{random_graph(n, rng), random_graph(n, rng)};
    for (EdgeColor c : {EdgeColor::red, EdgeColor::blue}) {
      const Graph& x = c == EdgeColor::red ? h0.red : h0.blue;
      std::uint64_t pairs = 0;
      const Graph closed = cherry_closed_pairs(h0, c);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
          bool common = false;
          for (Vertex w = 0; w < n; ++w) common = common || (x.adjacent(u, w) && x.adjacent(v, w));
          CHECK(closed.adjacent(u, v) == common);
          pairs += common;
        }
      CHECK(count_cherry_closed_pairs(h0, c) == pairs);
    }
  }
}

TEST_CASE("BoundCheck factories compare without tolerance") {
  CHECK(BoundCheck::at_most(3, 3.0).holds);
  CHECK_FALSE(BoundCheck::at_most(3, 2.9999999).holds);
  CHECK(BoundCheck::at_least(3, 3.0).holds);
  CHECK_FALSE(BoundCheck::at_least(3, 3.0000001).holds);
  CHECK(BoundCheck::at_least(0, 0.0).direction == BoundDirection::at_least);
}

TEST_CASE("audit of a p = 0 trace") {
  const ConstructionTrace t = build_counterexample({60, 9, 0.0, 4, false});
  const EventReport r = audit_instance(t, 0.1, 0.01);
  for (const BoundCheck* c : {&r.d_r, &r.d_b, &r.t_r, &r.t_b, &r.cherries_r_asymptotic, &r.cherries_b_asymptotic,
                              &r.cherries_r_proof_step, &r.cherries_b_proof_step})
    CHECK(c->holds);
  CHECK(r.cherries_r_asymptotic.observed == 0);
  CHECK(r.cherries_b_asymptotic.observed == 0);
  CHECK_FALSE(r.pairing.has_value());
}

TEST_CASE("audit at n = 512, m = 64, p = 0.05") {
  const ConstructionTrace t = build_counterexample({512, 64, 0.05, 1, false});
  const EventReport r = audit_instance(t, 0.1, 0.01);
  CHECK(r.d_r.bound == doctest::Approx(2 * 0.05 * 64));
  CHECK(r.f_r.bound == doctest::Approx(2.0 * 512 / 64));
  CHECK(r.t_r.bound == doctest::Approx(20 * std::log(64.0)));
  CHECK(r.cherries_r_asymptotic.bound == doctest::Approx(512.0 * 512.0 / std::log(512.0)));
  CHECK(r.d_r.observed == max_degree(t.h_r));
  CHECK(r.d_b.observed == max_degree(t.h_b));
  CHECK(r.cherries_r_asymptotic.observed == count_cherry_closed_pairs(t.h0, EdgeColor::red));
  CHECK(r.cherries_r_proof_step.observed == r.cherries_r_asymptotic.observed);
  CHECK(r.cherries_r_proof_step.holds);
  CHECK(r.cherries_b_proof_step.holds);
}

TEST_CASE("audit with a pairing under constant maps") {
  ConstructionTrace t = build_counterexample({40, 6, 0.2, 2, false});
  t.pi_r.assign(40, 0);
  t.pi_b.assign(40, 0);
  Pairing p;
  for (Vertex i = 0; i < 10; ++i) p.pairs.emplace_back(2 * i, 2 * i + 1);
  const EventReport r = audit_instance(t, 0.1, 0.01, &p);
  REQUIRE(r.pairing.has_value());
  CHECK(r.pairing->s == 10);
  CHECK(r.pairing->respectful_r == 0);
  CHECK(r.pairing->respectful_b == 0);
  CHECK(r.pairing->pi_edges.observed == 0);
  CHECK(r.pairing->gamma_edges.observed == 0);
}

TEST_CASE("property: audit invariants on random traces") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 25; ++rep) {
    const std::uint64_t m = 4 + rng() % 30;
    const std::uint64_t n = 20 + rng() % 200;
    const double p = 0.9 / std::sqrt(static_cast<double>(m));
    const ConstructionTrace t = build_counterexample({n, m, p, rng(), false});

    Pairing pairing;
    for (Vertex i = 0; 2 * i + 1 < n && i < 30; ++i) pairing.pairs.emplace_back(2 * i, 2 * i + 1);
    const EventReport r = audit_instance(t, 0.1, 0.001, &pairing);

    // Proof-step bound on cherry-closed pairs.
    CHECK(r.cherries_r_proof_step.holds);
    CHECK(r.cherries_b_proof_step.holds);
    // Closed pairs present in h0 with the other colour are gone from h.
    const Graph red_closed = cherry_closed_pairs(t.h0, EdgeColor::red);
    const Graph blue_closed = cherry_closed_pairs(t.h0, EdgeColor::blue);
    for (const Edge& e : t.h0.blue.edges())
      if (red_closed.adjacent(e.u, e.v)) CHECK_FALSE(t.h.adjacent(e.u, e.v));
    for (const Edge& e : t.h0.red.edges())
      if (blue_closed.adjacent(e.u, e.v)) CHECK_FALSE(t.h.adjacent(e.u, e.v));
    // Raising a bound never flips a true verdict.
    for (const BoundCheck* c : {&r.d_r, &r.d_b, &r.f_r, &r.f_b, &r.t_r, &r.t_b})
      if (c->holds) CHECK(BoundCheck::at_most(c->observed, c->bound * 2 + 1).holds);
    REQUIRE(r.pairing.has_value());
    CHECK(r.pairing->fiber_product_violations.observed == 0);
    CHECK(r.pairing->fiber_product_violations.holds);
    CHECK(r.pairing->gamma_edges.observed <= r.pairing->pi_edges.observed);
    CHECK(r.pairing->gamma_max_degree.observed <= r.pairing->max_fiber_product);
  }
}
