#include <doctest.h>

#include <random>

#include "oddminor/errors.hpp"
#include "oddminor/odd_minor.hpp"
#include "support/oracles.hpp"

using namespace oddminor;
using namespace oddminor::testing;

namespace {

MinorTree single(Vertex v, Color c = Color::white) { return MinorTree{{v}, {}, {c}}; }

MinorModel singletons(std::initializer_list<Vertex> vs) {
  MinorModel m;
  for (Vertex v : vs) m.trees.push_back(single(v));
  return m;
}

}  // namespace

TEST_CASE("verify_model examples") {
  CHECK(verify_model(complete_graph(3), singletons({0, 1, 2})).verdict);

  // Every placement and colouring of three singletons in C_4 fails.
  const Graph c4 = cycle_graph(4);
  for (Vertex a = 0; a < 4; ++a)
    for (Vertex b = 0; b < 4; ++b)
      for (Vertex c = 0; c < 4; ++c) {
        if (a == b || b == c || a == c) continue;
        for (int col = 0; col < 8; ++col) {
          MinorModel m;
          m.trees = {single(a, Color(col & 1)), single(b, Color((col >> 1) & 1)), single(c, Color((col >> 2) & 1))};
          const CertificateReport r = verify_model(c4, m);
          CHECK_FALSE(r.verdict);
          CHECK_FALSE(r.failure.empty());
        }
      }

  MinorModel improper;
  improper.trees.push_back(MinorTree{{0, 1, 2}, {{0, 1}, {1, 2}}, {Color::white, Color::white, Color::white}});
  const CertificateReport r = verify_model(path_graph(3), improper);
  CHECK_FALSE(r.verdict);
  CHECK_FALSE(r.failure.empty());
}

TEST_CASE("verify_model structural failures") {
  const Graph g = complete_graph(4);
  MinorModel overlap;
  overlap.trees = {single(0), single(0)};
  CHECK_FALSE(verify_model(g, overlap).verdict);

  MinorModel non_edge;
  non_edge.trees.push_back(MinorTree{{0, 1}, {{0, 1}}, {Color::white, Color::black}});
  CHECK_FALSE(verify_model(Graph(2), non_edge).verdict);

  MinorModel disconnected;
  disconnected.trees.push_back(MinorTree{{0, 1, 2}, {{0, 1}}, {Color::white, Color::black, Color::white}});
  CHECK_FALSE(verify_model(g, disconnected).verdict);

  MinorModel out_of_range;
  out_of_range.trees = {single(7)};
  CHECK_FALSE(verify_model(g, out_of_range).verdict);

  MinorModel mismatched;
  mismatched.trees.push_back(MinorTree{{0, 1}, {{0, 1}}, {Color::white}});
  CHECK_FALSE(verify_model(g, mismatched).verdict);

  // Two trees linked only by a bichromatic edge.
  MinorModel wrong_link;
  wrong_link.trees = {single(0, Color::white), single(1, Color::black)};
  CHECK_FALSE(verify_model(g, wrong_link).verdict);

  CHECK(verify_model(Graph(0), MinorModel{}).verdict);
}

TEST_CASE("max_odd_clique_minor examples") {
  const auto k5 = max_odd_clique_minor(complete_graph(5));
  CHECK(k5.t == 5);
  CHECK(k5.status == SearchStatus::exact);
  for (const auto& tree : k5.witness.trees) {
    CHECK(tree.vertices.size() == 1);
    CHECK(tree.colors[0] == Color::white);
  }
  CHECK(max_odd_clique_minor(cycle_graph(5)).t == 3);
  CHECK(max_odd_clique_minor(cycle_graph(4)).t == 2);
  CHECK(max_odd_clique_minor(Graph(3)).t == 1);
  CHECK(max_odd_clique_minor(Graph(0)).t == 0);
  const auto pet = max_odd_clique_minor(petersen_graph());
  CHECK(pet.status == SearchStatus::exact);
  // Frozen from the brute-force oracle (about 20 s, so not rerun here).
  CHECK(pet.t == 5);
  CHECK(verify_model(petersen_graph(), pet.witness).verdict);
}

TEST_CASE("max_odd_clique_minor on complete graphs") {
  for (std::size_t t = 1; t <= 8; ++t) {
    const auto r = max_odd_clique_minor(complete_graph(t));
    CHECK(r.t == static_cast<int>(t));
    CHECK(r.status == SearchStatus::exact);
  }
}

TEST_CASE("limits above the exact range") {
  std::mt19937_64 rng(1);
  const Graph big = random_graph(20, 0.5, rng);
  const auto r = max_odd_clique_minor(big);
  CHECK(r.status == SearchStatus::lower_bound);
  CHECK(r.t >= 3);
  CHECK(verify_model(big, r.witness).verdict);

  MinorSearchOptions strict;
  strict.require_exact = true;
  CHECK_THROWS_AS(max_odd_clique_minor(big, strict), LimitExceeded);

  // The exact limit is clamped to the hard limit.
  MinorSearchOptions too_high;
  too_high.exact_limit = 20;
  CHECK(max_odd_clique_minor(big, too_high).status == SearchStatus::lower_bound);

  MinorSearchOptions tiny;
  tiny.budget = 1;
  const auto cut = max_odd_clique_minor(random_graph(10, 0.5, rng), tiny);
  CHECK(cut.status == SearchStatus::lower_bound);
}

TEST_CASE("odd_minor_k3 and find_odd_cycle") {
  CHECK(odd_minor_k3(cycle_graph(5)));
  CHECK_FALSE(odd_minor_k3(star_graph(4)));
  CHECK_FALSE(odd_minor_k3(path_graph(6)));
  CHECK(odd_minor_k3(petersen_graph()));
  CHECK(find_odd_cycle(cycle_graph(6)).empty());
  const auto cyc = find_odd_cycle(petersen_graph());
  REQUIRE(cyc.size() % 2 == 1);
  for (std::size_t i = 0; i < cyc.size(); ++i) CHECK(petersen_graph().adjacent(cyc[i], cyc[(i + 1) % cyc.size()]));
}

TEST_CASE("property: exact search equals the brute-force oracle on small graphs") {
  std::mt19937_64 rng(2);
  for (std::size_t n = 0; n <= 4; ++n) {
    const std::size_t k = n * (n > 0 ? n - 1 : 0) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      const Graph g = graph_from_mask(n, mask);
      const auto r = max_odd_clique_minor(g);
      CHECK(r.t == brute_max_odd_clique_minor(g));
      CHECK(verify_model(g, r.witness).verdict);
      CHECK(r.witness.size() == static_cast<std::size_t>(r.t));
    }
  }
  for (int rep = 0; rep < 40; ++rep) {
    const Graph g = random_graph(5 + rep % 3, rng);
    const auto r = max_odd_clique_minor(g);
    CHECK(r.status == SearchStatus::exact);
    CHECK(r.t == brute_max_odd_clique_minor(g));
    CHECK(verify_model(g, r.witness).verdict);
  }
}

TEST_CASE("property: K_3 odd minor exactly for non-bipartite graphs") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const Graph g = random_graph(1 + rep % 7, rng);
    const auto r = max_odd_clique_minor(g);
    CHECK((r.t >= 3) == odd_minor_k3(g));
    if (is_bipartite(g) && g.edge_count() > 0) CHECK(r.t == 2);
  }
}

TEST_CASE("property: adding an edge never decreases t*") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 60; ++rep) {
    Graph g = random_graph(3 + rep % 5, 0.4, rng);
    const int before = max_odd_clique_minor(g).t;
    const auto missing = complement(g).edges();
    if (missing.empty()) continue;
    const Edge e = missing[rng() % missing.size()];
    g.add_edge(e.u, e.v);
    CHECK(max_odd_clique_minor(g).t >= before);
  }
}

TEST_CASE("property: lower-bound witnesses verify on larger graphs") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    const Graph g = random_graph(13 + rep % 20, rng);
    const auto r = max_odd_clique_minor(g);
    CHECK(verify_model(g, r.witness).verdict);
    CHECK(r.witness.size() == static_cast<std::size_t>(r.t));
  }
}

TEST_CASE("model_to_pairing examples") {
  const Pairing k6 = model_to_pairing(complete_graph(6), singletons({0, 1, 2}), Fraction{1, 6});
  REQUIRE(k6.size() == 1);
  CHECK(k6.pairs[0] == std::pair<Vertex, Vertex>{0, 1});

  // Two edge trees {0,1} and {2,3} linked by the white-white edge {0,2}.
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(0, 2);
  MinorModel two;
  two.trees.push_back(MinorTree{{0, 1}, {{0, 1}}, {Color::white, Color::black}});
  two.trees.push_back(MinorTree{{3, 2}, {{2, 3}}, {Color::black, Color::white}});
  REQUIRE(verify_model(g, two).verdict);
  const Pairing p = model_to_pairing(g, two, Fraction{1, 6});
  REQUIRE(p.size() == 1);
  CHECK(p.pairs[0] == std::pair<Vertex, Vertex>{0, 1});
  // eta = 1/4 needs t >= (1/3 + 1/4) * 4, more than the two trees present.
  CHECK_THROWS_AS(model_to_pairing(g, two, Fraction{1, 4}), PreconditionFailed);

  MinorModel bad;
  bad.trees = {single(0, Color::white), single(1, Color::black)};
  CHECK_THROWS_AS(model_to_pairing(complete_graph(2), bad, Fraction{1, 6}), PreconditionFailed);
  CHECK_THROWS_AS(model_to_pairing(complete_graph(6), singletons({0, 1, 2}), Fraction{0, 6}), PreconditionFailed);
  CHECK_THROWS_AS(model_to_pairing(complete_graph(6), singletons({0, 1, 2}), Fraction{6, 6}), PreconditionFailed);
  // One vertex meets the tree-count condition, yet s = 1 needs two vertices.
  CHECK_THROWS_AS(model_to_pairing(Graph(1), singletons({0}), Fraction{1, 12}), PreconditionFailed);
}

TEST_CASE("property: model_to_pairing size and validity on exact witnesses") {
  std::mt19937_64 rng(6);
  int transformed = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 2 + rep % 7;
    const Graph g = random_graph(n, 0.5 + 0.5 * (rep % 3) / 3.0, rng);
    const auto r = max_odd_clique_minor(g);
    for (const Fraction eta : {Fraction{1, 12}, Fraction{1, 6}}) {
      if (3 * eta.den * r.t < (eta.den + 3 * eta.num) * static_cast<std::int64_t>(n)) continue;
      const Pairing p = model_to_pairing(g, r.witness, eta);
      const auto s = static_cast<std::size_t>((eta.num * static_cast<std::int64_t>(n) + 2 * eta.den - 1) / (2 * eta.den));
      CHECK(p.size() == s);
      CHECK(is_odd_connected_pairing(g, p));
      ++transformed;
    }
  }
  CHECK(transformed > 50);
}
