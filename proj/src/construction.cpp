#include "oddminor/construction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "oddminor/errors.hpp"

namespace oddminor {

using Word = bits::Word;

std::uint64_t default_m(std::uint64_t n) {
  const double l = std::log(static_cast<double>(n));
  const double m = std::ceil(static_cast<double>(n) / std::pow(l, 8.0));
  return m < 1.0 ? 1 : static_cast<std::uint64_t>(m);
}

double default_p(std::uint64_t m) {
  const double lm = std::log(static_cast<double>(m));
  if (lm <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (std::sqrt(static_cast<double>(m)) * lm * lm);
}

ConstructionParams default_params(std::uint64_t n, std::uint64_t seed) {
  if (n < 3) throw DegenerateParams("n = " + std::to_string(n) + " is below 3");
  const std::uint64_t m = default_m(n);
  if (m < 2) throw DegenerateParams("n = " + std::to_string(n) + " gives m = " + std::to_string(m) + " < 2");
  const double p = default_p(m);
  if (!(p <= 1.0)) {
    std::ostringstream os;
    os << "n = " << n << " gives m = " << m << " and p = " << p << " > 1";
    throw DegenerateParams(os.str());
  }
  return ConstructionParams{n, m, p, seed, true};
}

void validate(const ConstructionParams& params) {
  if (params.n == 0) throw DegenerateParams("n must be at least 1");
  if (params.m == 0) throw DegenerateParams("m must be at least 1");
  if (params.n > std::numeric_limits<Vertex>::max()) throw DegenerateParams("n does not fit a vertex label");
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw DegenerateParams("p must lie in [0, 1]");
  const double cap = 1.0 / std::sqrt(static_cast<double>(params.m));
  if (params.p > cap * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "p = " << params.p << " exceeds m^{-1/2} = " << cap;
    throw CouplingViolation(os.str());
  }
}

Graph sample_gnp(std::size_t m, double p, RandomStream& stream) {
  if (!(p >= 0.0 && p <= 1.0)) throw DegenerateParams("edge probability outside [0, 1]");
  Graph g(m);
  if (m < 2 || p == 0.0) return g;
  if (p == 1.0) return complete_graph(m);
  const double log_q = std::log1p(-p);
  // (i, j) is the last pair visited; row i holds columns i+1 .. m-1.
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  const double cap = static_cast<double>(m) * static_cast<double>(m);
  for (;;) {
    const double gap = std::floor(std::log(stream.uniform_open_zero()) / log_q);
    j += 1 + static_cast<std::uint64_t>(std::min(gap, cap));
    while (i + 1 < m && j >= m) {
      j = j - m + i + 2;
      ++i;
    }
    if (i + 1 >= m) break;
    g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  }
  return g;
}

CoupledPair sample_coupled_pair(std::size_t m, double p, RandomStream& stream) {
  if (m == 0) throw DegenerateParams("m must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw DegenerateParams("p must lie in [0, 1]");
  const double root = std::sqrt(static_cast<double>(m));
  if (p > (1.0 / root) * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "p = " << p << " exceeds m^{-1/2} = " << 1.0 / root;
    throw CouplingViolation(os.str());
  }
  CoupledPair out{sample_gnp(m, 1.0 / root, stream), Graph(m)};
  const double keep = p * root;
  for (const Edge& e : out.hstar.edges())
    if (keep >= 1.0 || stream.bernoulli(keep)) out.h.add_edge(e.u, e.v);
  return out;
}

Graph strip_triangle_edges(const Graph& g) {
  Graph out(g.order());
  for (Vertex u = 0; u < g.order(); ++u) {
    auto ru = g.row(u);
    bits::for_each(ru, [&](std::size_t v) {
      if (v > u && !bits::intersects(ru, g.row(static_cast<Vertex>(v)))) out.add_edge(u, static_cast<Vertex>(v));
    });
  }
  return out;
}

VertexMap sample_uniform_map(std::size_t n, std::size_t m, RandomStream& stream) {
  if (m == 0) throw PreconditionFailed("map codomain must be non-empty");
  VertexMap pi(n);
  for (auto& x : pi) x = static_cast<std::uint32_t>(stream.below(m));
  return pi;
}

Graph ColoredGraph::underlying() const {
  Graph out = red;
  for (Vertex u = 0; u < order(); ++u) {
    auto dst = out.mutable_row(u);
    auto src = blue.row(u);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
  }
  return out;
}

Graph pullback(const Graph& base, const VertexMap& pi) {
  const std::size_t n = pi.size();
  const std::size_t m = base.order();
  const std::size_t w = bits::words_for(n);
  std::vector<Word> fibers(m * w, 0);
  std::vector<std::vector<Vertex>> members(m);
  for (Vertex v = 0; v < n; ++v) {
    if (pi[v] >= m) throw PreconditionFailed("map value " + std::to_string(pi[v]) + " outside the base graph");
    bits::set(std::span<Word>(fibers.data() + pi[v] * w, w), v);
    members[pi[v]].push_back(v);
  }
  Graph out(n);
  std::vector<Word> pattern(w);
  for (Vertex x = 0; x < m; ++x) {
    if (members[x].empty()) continue;
    std::fill(pattern.begin(), pattern.end(), 0);
    bits::for_each(base.row(x), [&](std::size_t y) {
      const Word* f = fibers.data() + y * w;
      for (std::size_t i = 0; i < w; ++i) pattern[i] |= f[i];
    });
    for (Vertex u : members[x]) std::copy(pattern.begin(), pattern.end(), out.mutable_row(u).begin());
  }
  return out;
}

ColoredGraph overlay_pullbacks(const Graph& hprime_r, const Graph& hprime_b, const VertexMap& pi_r,
                               const VertexMap& pi_b) {
  if (pi_r.size() != pi_b.size()) throw PreconditionFailed("maps have different domains");
  ColoredGraph h0{pullback(hprime_r, pi_r), pullback(hprime_b, pi_b)};
  if (!is_triangle_free(h0.red)) throw MonochromaticTriangle("red pullback contains a triangle");
  if (!is_triangle_free(h0.blue)) throw MonochromaticTriangle("blue pullback contains a triangle");
  return h0;
}

namespace {

/// For each twin class of `layer`, the union of the rows of its neighbours:
/// the set of vertices sharing a neighbour with any member.
struct ClassClosure {
  TwinClasses tc;
  std::size_t words = 0;
  std::vector<Word> rows;

  explicit ClassClosure(const Graph& layer) : tc(twin_classes(layer)), words(layer.words_per_row()) {
    rows.assign(tc.count() * words, 0);
    std::vector<std::uint32_t> seen(tc.count(), static_cast<std::uint32_t>(-1));
    for (std::uint32_t c = 0; c < tc.count(); ++c) {
      Word* dst = rows.data() + c * words;
      bits::for_each(layer.row(tc.representative[c]), [&](std::size_t x) {
        const std::uint32_t d = tc.class_of[x];
        if (seen[d] == c) return;
        seen[d] = c;
        auto src = layer.row(tc.representative[d]);
        for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
      });
    }
  }

  std::span<const Word> of(Vertex u) const { return {rows.data() + tc.class_of[u] * words, words}; }
};

bool rows_within(std::span<const Word> a, std::span<const Word> b, std::span<const Word> c) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~(b[i] | c[i])) return false;
  return true;
}

}  // namespace

bool is_triangle_free_in_overlay(const Graph& h, const ColoredGraph& h0) {
  const std::size_t n = h.order();
  if (h0.order() != n || h0.blue.order() != n) throw PreconditionFailed("graph and overlay differ in order");
  for (Vertex u = 0; u < n; ++u)
    if (!rows_within(h.row(u), h0.red.row(u), h0.blue.row(u)))
      throw PreconditionFailed("graph is not contained in the overlay");
  const CommonNeighborRelation red(h0.red);
  const CommonNeighborRelation blue(h0.blue);
  // Two same-coloured edges of a triangle meet at a vertex; the third edge
  // then joins two vertices with a common neighbour in that colour.
  for (Vertex u = 0; u < n; ++u) {
    auto ru = h.row(u);
    const bool hit = bits::any_of(ru, [&](std::size_t vv) {
      const auto v = static_cast<Vertex>(vv);
      if (v <= u) return false;
      if (!red.closed(u, v) && !blue.closed(u, v)) return false;
      return bits::intersects(ru, h.row(v));
    });
    if (hit) return false;
  }
  return true;
}

Graph resolve_minority_edges(const ColoredGraph& h0) {
  const std::size_t n = h0.order();
  if (h0.blue.order() != n) throw PreconditionFailed("colour layers differ in order");
  if (!is_triangle_free(h0.red)) throw MonochromaticTriangle("red layer contains a triangle");
  if (!is_triangle_free(h0.blue)) throw MonochromaticTriangle("blue layer contains a triangle");
  const ClassClosure red_closed(h0.red);
  const ClassClosure blue_closed(h0.blue);
  Graph h(n);
  for (Vertex u = 0; u < n; ++u) {
    auto r = h0.red.row(u);
    auto b = h0.blue.row(u);
    auto rc = red_closed.of(u);
    auto bc = blue_closed.of(u);
    auto dst = h.mutable_row(u);
    for (std::size_t i = 0; i < dst.size(); ++i) {
      if (r[i] & b[i] & (rc[i] | bc[i]))
        throw ImpossibleState("a bicoloured edge at vertex " + std::to_string(u) + " is closed by a cherry");
      dst[i] = (r[i] & ~bc[i]) | (b[i] & ~rc[i]);
    }
  }
  if (!is_triangle_free_in_overlay(h, h0)) throw ResidualTriangle("resolved graph contains a triangle");
  return h;
}

ConstructionTrace build_counterexample(const ConstructionParams& params) {
  validate(params);
  ConstructionTrace t;
  t.params = params;
  const auto n = static_cast<std::size_t>(params.n);
  const auto m = static_cast<std::size_t>(params.m);
  {
    RandomStream s(params.seed, kStreamRed);
    auto pair = sample_coupled_pair(m, params.p, s);
    t.hstar_r = std::move(pair.hstar);
    t.h_r = std::move(pair.h);
  }
  {
    RandomStream s(params.seed, kStreamBlue);
    auto pair = sample_coupled_pair(m, params.p, s);
    t.hstar_b = std::move(pair.hstar);
    t.h_b = std::move(pair.h);
  }
  {
    RandomStream s(params.seed, kStreamPiRed);
    t.pi_r = sample_uniform_map(n, m, s);
  }
  {
    RandomStream s(params.seed, kStreamPiBlue);
    t.pi_b = sample_uniform_map(n, m, s);
  }
  t.hprime_r = strip_triangle_edges(t.h_r);
  t.hprime_b = strip_triangle_edges(t.h_b);
  t.h0 = overlay_pullbacks(t.hprime_r, t.hprime_b, t.pi_r, t.pi_b);
  t.h = resolve_minority_edges(t.h0);
  t.g = complement(t.h);
  return t;
}

// -- verification --------------------------------------------------------------

bool TraceVerification::ok() const { return first_failure() == nullptr; }

const InvariantCheck* TraceVerification::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

namespace {

inline constexpr std::size_t kDirectCheckLimit = 8192;

std::string pair_text(std::size_t u, std::size_t v) {
  return "{" + std::to_string(u) + ", " + std::to_string(v) + "}";
}

InvariantCheck subset_check(std::string name, const Graph& small, const Graph& big) {
  InvariantCheck c{std::move(name), true, {}};
  for (Vertex u = 0; u < small.order() && c.passed; ++u) {
    auto a = small.row(u);
    auto b = big.row(u);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (Word extra = a[i] & ~b[i]) {
        c.passed = false;
        c.detail = "edge " + pair_text(u, i * bits::kWordBits + static_cast<std::size_t>(std::countr_zero(extra))) +
                   " is not in the containing graph";
        break;
      }
  }
  return c;
}

InvariantCheck strip_check(std::string name, const Graph& h, const Graph& hprime) {
  InvariantCheck c{std::move(name), true, {}};
  Graph in_triangle(h.order());
  for (const Triangle& t : list_triangles(h)) {
    in_triangle.add_edge(t[0], t[1]);
    in_triangle.add_edge(t[0], t[2]);
    in_triangle.add_edge(t[1], t[2]);
  }
  for (const Edge& e : h.edges()) {
    const bool kept = hprime.adjacent(e.u, e.v);
    if (kept == in_triangle.adjacent(e.u, e.v)) {
      c.passed = false;
      c.detail = "edge " + pair_text(e.u, e.v) + (kept ? " lies in a triangle but was kept" : " lies in no triangle but was deleted");
      return c;
    }
  }
  return c;
}

InvariantCheck pullback_check(std::string name, const Graph& layer, const Graph& base, const VertexMap& pi) {
  InvariantCheck c{std::move(name), true, {}};
  std::vector<std::size_t> fiber(base.order(), 0);
  for (auto x : pi) ++fiber[x];
  for (Vertex u = 0; u < layer.order(); ++u) {
    const std::uint32_t x = pi[u];
    std::size_t expected = 0;
    bits::for_each(base.row(x), [&](std::size_t y) { expected += fiber[y]; });
    std::size_t bad = static_cast<std::size_t>(-1);
    bits::any_of(layer.row(u), [&](std::size_t v) {
      if (!base.adjacent(x, pi[v])) {
        bad = v;
        return true;
      }
      return false;
    });
    if (bad != static_cast<std::size_t>(-1)) {
      c.passed = false;
      c.detail = "edge " + pair_text(u, bad) + " has no base edge under the map";
      return c;
    }
    if (layer.degree(u) != expected) {
      c.passed = false;
      c.detail = "vertex " + std::to_string(u) + " has degree " + std::to_string(layer.degree(u)) +
                 " but the pullback has " + std::to_string(expected);
      return c;
    }
  }
  return c;
}

/// Base-level cherry relation: {x, y} (x == y allowed) is closed when the
/// two share a neighbour whose fibre is non-empty.
std::vector<Word> base_cherries(const Graph& base, const VertexMap& pi) {
  const std::size_t m = base.order();
  const std::size_t w = base.words_per_row();
  std::vector<char> occupied(m, 0);
  for (auto x : pi) occupied[x] = 1;
  std::vector<Word> closed(m * w, 0);
  for (Vertex z = 0; z < m; ++z) {
    if (!occupied[z]) continue;
    auto nz = base.row(z);
    bits::for_each(nz, [&](std::size_t x) {
      Word* dst = closed.data() + x * w;
      for (std::size_t i = 0; i < w; ++i) dst[i] |= nz[i];
    });
  }
  return closed;
}

/// Row x of the result: the top-level vertices whose image is closed with x,
/// i.e. the pullback of the base cherry relation.
std::vector<Word> lifted_cherries(const Graph& base, const VertexMap& pi) {
  const std::size_t m = base.order();
  const std::size_t mw = base.words_per_row();
  const std::size_t n = pi.size();
  const std::size_t w = bits::words_for(n);
  const auto closed = base_cherries(base, pi);
  std::vector<Word> fibers(m * w, 0);
  for (Vertex v = 0; v < n; ++v) bits::set(std::span<Word>(fibers.data() + pi[v] * w, w), v);
  std::vector<Word> out(m * w, 0);
  for (Vertex x = 0; x < m; ++x) {
    Word* dst = out.data() + x * w;
    bits::for_each(std::span<const Word>(closed.data() + x * mw, mw), [&](std::size_t y) {
      const Word* f = fibers.data() + y * w;
      for (std::size_t i = 0; i < w; ++i) dst[i] |= f[i];
    });
  }
  return out;
}

InvariantCheck cherry_check(const ConstructionTrace& t) {
  InvariantCheck c{"cherry_deletion_crosscheck", true, {}};
  const auto lifted_r = lifted_cherries(t.hprime_r, t.pi_r);
  const auto lifted_b = lifted_cherries(t.hprime_b, t.pi_b);
  const std::size_t n = t.h0.order();
  const std::size_t w = t.h.words_per_row();
  for (Vertex u = 0; u < n; ++u) {
    auto r = t.h0.red.row(u);
    auto b = t.h0.blue.row(u);
    auto h = t.h.row(u);
    const Word* closed_r = lifted_r.data() + t.pi_r[u] * w;
    const Word* closed_b = lifted_b.data() + t.pi_b[u] * w;
    for (std::size_t i = 0; i < w; ++i) {
      const Word deleted = (r[i] & closed_b[i]) | (b[i] & closed_r[i]);
      const Word kept = (r[i] | b[i]) & ~deleted;
      if (Word diff = (kept ^ h[i]) & (r[i] | b[i])) {
        const auto v = i * bits::kWordBits + static_cast<std::size_t>(std::countr_zero(diff));
        c.passed = false;
        c.detail = "edge " + pair_text(u, v) +
                   ((h[i] >> (v % bits::kWordBits)) & 1U ? " is closed by a cherry of the other colour but was kept"
                                                         : " was deleted without a closing cherry of the other colour");
        return c;
      }
    }
  }
  return c;
}

InvariantCheck complement_check(const Graph& h, const Graph& g) {
  InvariantCheck c{"g_is_complement", true, {}};
  const std::size_t w = h.words_per_row();
  const Word tail = h.tail_mask();
  for (Vertex u = 0; u < h.order(); ++u) {
    auto hr = h.row(u);
    auto gr = g.row(u);
    for (std::size_t i = 0; i < w; ++i) {
      Word want = ~hr[i];
      if (i + 1 == w) want &= tail;
      if (i == u / bits::kWordBits) want &= ~(Word{1} << (u % bits::kWordBits));
      if (want != gr[i]) {
        c.passed = false;
        c.detail = "row " + std::to_string(u) + " of g differs from the complement of h";
        return c;
      }
    }
  }
  return c;
}

InvariantCheck bool_check(std::string name, bool ok, std::string detail) {
  return InvariantCheck{std::move(name), ok, ok ? std::string{} : std::move(detail)};
}

}  // namespace

TraceVerification verify_trace(const ConstructionTrace& t) {
  TraceVerification out;
  auto& checks = out.checks;
  const std::size_t n = t.params.n;
  const std::size_t m = t.params.m;
  {
    std::string problem;
    for (const Graph* x : {&t.hstar_r, &t.hstar_b, &t.h_r, &t.h_b, &t.hprime_r, &t.hprime_b})
      if (x->order() != m) problem = "a base layer does not have m vertices";
    for (const Graph* x : {&t.h0.red, &t.h0.blue, &t.h, &t.g})
      if (x->order() != n) problem = "a top layer does not have n vertices";
    if (t.pi_r.size() != n || t.pi_b.size() != n) problem = "a map does not have n entries";
    for (const VertexMap* pi : {&t.pi_r, &t.pi_b})
      for (auto x : *pi)
        if (x >= m) problem = "a map value lies outside [m]";
    checks.push_back(bool_check("shape", problem.empty(), problem));
    if (!problem.empty()) return out;
  }
  {
    std::string problem;
    try {
      validate(t.params);
    } catch (const Error& e) {
      problem = e.what();
    }
    checks.push_back(bool_check("params", problem.empty(), problem));
  }
  checks.push_back(subset_check("coupling_containment_r", t.h_r, t.hstar_r));
  checks.push_back(subset_check("coupling_containment_b", t.h_b, t.hstar_b));
  checks.push_back(subset_check("hprime_subset_r", t.hprime_r, t.h_r));
  checks.push_back(subset_check("hprime_subset_b", t.hprime_b, t.h_b));
  checks.push_back(bool_check("hprime_triangle_free_r", list_triangles(t.hprime_r).empty(), "H'_R has a triangle"));
  checks.push_back(bool_check("hprime_triangle_free_b", list_triangles(t.hprime_b).empty(), "H'_B has a triangle"));
  checks.push_back(strip_check("strip_exact_r", t.h_r, t.hprime_r));
  checks.push_back(strip_check("strip_exact_b", t.h_b, t.hprime_b));
  checks.push_back(pullback_check("pullback_consistency_r", t.h0.red, t.hprime_r, t.pi_r));
  checks.push_back(pullback_check("pullback_consistency_b", t.h0.blue, t.hprime_b, t.pi_b));
  checks.push_back(bool_check("no_monochromatic_triangle",
                              is_triangle_free(t.h0.red) && is_triangle_free(t.h0.blue),
                              "a colour class of h0 has a triangle"));
  InvariantCheck within{"h_subset_h0", true, {}};
  for (Vertex u = 0; u < n && within.passed; ++u)
    if (!rows_within(t.h.row(u), t.h0.red.row(u), t.h0.blue.row(u))) {
      within.passed = false;
      within.detail = "vertex " + std::to_string(u) + " has an h edge missing from h0";
    }
  checks.push_back(within);
  checks.push_back(cherry_check(t));
  const bool tri_free = (n <= kDirectCheckLimit || !within.passed) ? is_triangle_free(t.h)
                                                                    : is_triangle_free_in_overlay(t.h, t.h0);
  checks.push_back(bool_check("h_triangle_free", tri_free, "h contains a triangle"));
  const InvariantCheck comp = complement_check(t.h, t.g);
  checks.push_back(comp);
  const bool alpha = n <= kDirectCheckLimit ? independence_at_most_two(t.g) : (comp.passed && tri_free);
  checks.push_back(bool_check("independence_at_most_two", alpha, "g has an independent set of size 3"));
  return out;
}

}  // namespace oddminor
