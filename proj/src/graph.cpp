#include "oddminor/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <string>
#include <unordered_map>

#include "oddminor/errors.hpp"

namespace oddminor {

using bits::Word;

Graph::Graph(std::size_t n) : n_(n), words_(bits::words_for(n)), bits_(n * bits::words_for(n), 0) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_ || u == v)
    throw PreconditionFailed("invalid edge {" + std::to_string(u) + "," + std::to_string(v) +
                             "} for a graph on " + std::to_string(n_) + " vertices");
  bits::set(mutable_row(u), v);
  bits::set(mutable_row(v), u);
}

void Graph::remove_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_) return;
  bits::reset(mutable_row(u), v);
  bits::reset(mutable_row(v), u);
}

std::size_t Graph::edge_count() const noexcept {
  return bits::count(std::span<const Word>(bits_)) / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < n_; ++u) {
    bits::for_each(row(u), [&](std::size_t v) {
      if (v > u) out.push_back({u, static_cast<Vertex>(v)});
    });
  }
  return out;
}

std::vector<Vertex> Graph::neighbors(Vertex u) const {
  std::vector<Vertex> out;
  bits::for_each(row(u), [&](std::size_t v) { out.push_back(static_cast<Vertex>(v)); });
  return out;
}

Graph::Word Graph::tail_mask() const noexcept {
  const std::size_t r = n_ % bits::kWordBits;
  return r == 0 ? ~Word{0} : (Word{1} << r) - 1;
}

// -- named graphs ------------------------------------------------------------

Graph complete_graph(std::size_t n) { return complement(Graph(n)); }

Graph cycle_graph(std::size_t n) {
  Graph g(n);
  if (n < 3) {
    if (n == 2) g.add_edge(0, 1);
    return g;
  }
  for (std::size_t i = 0; i < n; ++i)
    g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return g;
}

Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (std::size_t i = 1; i <= leaves; ++i) g.add_edge(0, static_cast<Vertex>(i));
  return g;
}

Graph petersen_graph() {
  Graph g(10);
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer cycle
    g.add_edge(i, i + 5);                // spokes
    g.add_edge(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return g;
}

// -- kernel operations -------------------------------------------------------

Graph complement(const Graph& g) {
  const std::size_t n = g.order();
  Graph out(n);
  if (n == 0) return out;
  const Word tail = g.tail_mask();
  const std::size_t w = g.words_per_row();
  for (Vertex u = 0; u < n; ++u) {
    auto src = g.row(u);
    auto dst = out.mutable_row(u);
    for (std::size_t i = 0; i < w; ++i) dst[i] = ~src[i];
    dst[w - 1] &= tail;
    bits::reset(dst, u);
  }
  return out;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  Graph out(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (g.adjacent(vertices[i], vertices[j])) out.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return out;
}

std::vector<Triangle> list_triangles(const Graph& g) {
  std::vector<Triangle> out;
  const std::size_t w = g.words_per_row();
  std::vector<Word> common(w);
  for (Vertex u = 0; u < g.order(); ++u) {
    auto ru = g.row(u);
    bits::for_each(ru, [&](std::size_t v) {
      if (v <= u) return;
      auto rv = g.row(static_cast<Vertex>(v));
      for (std::size_t i = 0; i < w; ++i) common[i] = ru[i] & rv[i];
      bits::for_each(std::span<const Word>(common), [&](std::size_t x) {
        if (x > v) out.push_back({u, static_cast<Vertex>(v), static_cast<Vertex>(x)});
      });
    });
  }
  return out;
}

namespace {

bool triangle_free_direct(const Graph& g) {
  for (Vertex u = 0; u < g.order(); ++u) {
    auto ru = g.row(u);
    const bool hit = bits::any_of(ru, [&](std::size_t v) {
      return v > u && bits::intersects(ru, g.row(static_cast<Vertex>(v)));
    });
    if (hit) return false;
  }
  return true;
}

std::uint64_t hash_row(std::span<const Word> row) noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (Word w : row) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return h;
}

Graph quotient(const Graph& g, const TwinClasses& tc) {
  Graph q(tc.count());
  for (std::uint32_t c = 0; c < tc.count(); ++c) {
    auto dst = q.mutable_row(c);
    bits::for_each(g.row(tc.representative[c]), [&](std::size_t v) { bits::set(dst, tc.class_of[v]); });
  }
  return q;
}

}  // namespace

TwinClasses twin_classes(const Graph& g) {
  TwinClasses tc;
  const std::size_t n = g.order();
  tc.class_of.assign(n, 0);
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  buckets.reserve(n);
  for (Vertex u = 0; u < n; ++u) {
    auto r = g.row(u);
    auto& bucket = buckets[hash_row(r)];
    std::uint32_t found = static_cast<std::uint32_t>(-1);
    for (std::uint32_t c : bucket) {
      auto rr = g.row(tc.representative[c]);
      if (std::equal(r.begin(), r.end(), rr.begin())) {
        found = c;
        break;
      }
    }
    if (found == static_cast<std::uint32_t>(-1)) {
      found = static_cast<std::uint32_t>(tc.representative.size());
      tc.representative.push_back(u);
      tc.members.emplace_back();
      bucket.push_back(found);
    }
    tc.class_of[u] = found;
    tc.members[found].push_back(u);
  }
  return tc;
}

bool is_triangle_free(const Graph& g) {
  if (g.order() < 3) return true;
  TwinClasses tc = twin_classes(g);
  if (tc.count() == g.order()) return triangle_free_direct(g);
  return triangle_free_direct(quotient(g, tc));
}

bool independence_at_most_two(const Graph& g) { return is_triangle_free(complement(g)); }

std::size_t max_degree(const Graph& g) {
  std::size_t best = 0;
  for (Vertex u = 0; u < g.order(); ++u) best = std::max(best, g.degree(u));
  return best;
}

std::size_t max_edge_triangle_count(const Graph& g) {
  std::size_t best = 0;
  for (Vertex u = 0; u < g.order(); ++u) {
    auto ru = g.row(u);
    bits::for_each(ru, [&](std::size_t v) {
      if (v > u) best = std::max(best, bits::count_common(ru, g.row(static_cast<Vertex>(v))));
    });
  }
  return best;
}

bool is_bipartite(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<int> side(n, -1);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      const bool clash = bits::any_of(g.row(u), [&](std::size_t v) {
        if (side[v] == -1) {
          side[v] = 1 - side[u];
          queue.push_back(static_cast<Vertex>(v));
          return false;
        }
        return side[v] == side[u];
      });
      if (clash) return false;
    }
  }
  return true;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Vertex>> comps;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    comps.emplace_back();
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      comps.back().push_back(u);
      bits::for_each(g.row(u), [&](std::size_t v) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(static_cast<Vertex>(v));
        }
      });
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

Graph common_neighbor_pairs(const Graph& g) {
  const std::size_t n = g.order();
  const std::size_t w = g.words_per_row();
  Graph out(n);
  if (n == 0) return out;
  TwinClasses tc = twin_classes(g);
  std::vector<std::uint32_t> seen(tc.count(), static_cast<std::uint32_t>(-1));
  std::vector<Word> closure(w);
  for (std::uint32_t c = 0; c < tc.count(); ++c) {
    std::fill(closure.begin(), closure.end(), 0);
    bits::for_each(g.row(tc.representative[c]), [&](std::size_t x) {
      const std::uint32_t d = tc.class_of[x];
      if (seen[d] == c) return;
      seen[d] = c;
      auto rd = g.row(tc.representative[d]);
      for (std::size_t i = 0; i < w; ++i) closure[i] |= rd[i];
    });
    for (Vertex u : tc.members[c]) {
      auto dst = out.mutable_row(u);
      std::copy(closure.begin(), closure.end(), dst.begin());
      bits::reset(dst, u);
    }
  }
  return out;
}

CommonNeighborRelation::CommonNeighborRelation(const Graph& g) : tc_(twin_classes(g)) {
  const std::size_t k = tc_.count();
  words_ = bits::words_for(k);
  std::vector<Word> quotient(k * words_, 0);
  for (std::uint32_t c = 0; c < k; ++c)
    bits::for_each(g.row(tc_.representative[c]), [&](std::size_t x) {
      bits::set(std::span<Word>(quotient.data() + c * words_, words_), tc_.class_of[x]);
    });
  rows_.assign(k * words_, 0);
  for (std::uint32_t c = 0; c < k; ++c) {
    Word* dst = rows_.data() + c * words_;
    bits::for_each(std::span<const Word>(quotient.data() + c * words_, words_), [&](std::size_t d) {
      const Word* src = quotient.data() + d * words_;
      for (std::size_t i = 0; i < words_; ++i) dst[i] |= src[i];
    });
  }
}

std::uint64_t CommonNeighborRelation::pair_count() const {
  std::uint64_t total = 0;
  for (std::uint32_t a = 0; a < tc_.count(); ++a) {
    const std::uint64_t sa = tc_.members[a].size();
    if ((rows_[a * words_ + a / bits::kWordBits] >> (a % bits::kWordBits)) & 1U) total += sa * (sa - 1) / 2;
    bits::for_each(std::span<const Word>(rows_.data() + a * words_, words_), [&](std::size_t b) {
      if (b > a) total += sa * tc_.members[b].size();
    });
  }
  return total;
}

// -- exact colouring ---------------------------------------------------------

namespace {

class ColoringSearch {
 public:
  explicit ColoringSearch(const Graph& g) : n_(static_cast<int>(g.order())), adj_(g.order(), 0) {
    for (Vertex u = 0; u < g.order(); ++u) adj_[u] = g.row(u).empty() ? 0 : g.row(u)[0];
  }

  std::vector<int> solve() {
    if (n_ == 0) return {};
    lower_ = greedy_clique_size();
    best_coloring_ = dsatur_greedy();
    best_ = 1 + *std::max_element(best_coloring_.begin(), best_coloring_.end());
    if (best_ > lower_) {
      color_.assign(static_cast<std::size_t>(n_), -1);
      sat_.assign(static_cast<std::size_t>(n_), 0);
      search(0, 0);
    }
    return best_coloring_;
  }

 private:
  int pick_vertex() const {
    int best_v = -1;
    int best_sat = -1;
    for (int v = 0; v < n_; ++v) {
      if (color_[static_cast<std::size_t>(v)] != -1) continue;
      const int s = std::popcount(sat_[static_cast<std::size_t>(v)]);
      if (s > best_sat) {
        best_sat = s;
        best_v = v;
      }
    }
    return best_v;
  }

  // Returns true once the clique lower bound is met.
  bool search(int colored, int used) {
    if (colored == n_) {
      best_ = used;
      best_coloring_ = color_;
      return best_ == lower_;
    }
    const int v = pick_vertex();
    const auto vi = static_cast<std::size_t>(v);
    for (int c = 0; c < std::min(used + 1, best_ - 1); ++c) {
      if ((sat_[vi] >> c) & 1U) continue;
      color_[vi] = c;
      std::vector<std::pair<int, std::uint64_t>> undo;
      std::uint64_t nb = adj_[vi];
      while (nb) {
        const int u = std::countr_zero(nb);
        nb &= nb - 1;
        const auto ui = static_cast<std::size_t>(u);
        if (color_[ui] == -1 && !((sat_[ui] >> c) & 1U)) {
          undo.emplace_back(u, sat_[ui]);
          sat_[ui] |= std::uint64_t{1} << c;
        }
      }
      const bool done = search(colored + 1, std::max(used, c + 1));
      for (auto& [u, s] : undo) sat_[static_cast<std::size_t>(u)] = s;
      color_[vi] = -1;
      if (done) return true;
    }
    return false;
  }

  std::vector<int> dsatur_greedy() {
    color_.assign(static_cast<std::size_t>(n_), -1);
    sat_.assign(static_cast<std::size_t>(n_), 0);
    for (int k = 0; k < n_; ++k) {
      const int v = pick_vertex();
      const auto vi = static_cast<std::size_t>(v);
      const int c = std::countr_one(sat_[vi]);
      color_[vi] = c;
      std::uint64_t nb = adj_[vi];
      while (nb) {
        const int u = std::countr_zero(nb);
        nb &= nb - 1;
        sat_[static_cast<std::size_t>(u)] |= std::uint64_t{1} << c;
      }
    }
    return color_;
  }

  int greedy_clique_size() const {
    int best = 1;
    for (int s = 0; s < n_; ++s) {
      std::uint64_t cand = adj_[static_cast<std::size_t>(s)];
      int size = 1;
      while (cand) {
        int pick = -1;
        int pick_deg = -1;
        std::uint64_t c = cand;
        while (c) {
          const int u = std::countr_zero(c);
          c &= c - 1;
          const int d = std::popcount(adj_[static_cast<std::size_t>(u)] & cand);
          if (d > pick_deg) {
            pick_deg = d;
            pick = u;
          }
        }
        ++size;
        cand &= adj_[static_cast<std::size_t>(pick)];
      }
      best = std::max(best, size);
    }
    return best;
  }

  int n_;
  std::vector<std::uint64_t> adj_;
  std::vector<int> color_;
  std::vector<std::uint64_t> sat_;
  std::vector<int> best_coloring_;
  int best_ = 0;
  int lower_ = 0;
};

}  // namespace

std::vector<int> optimal_coloring(const Graph& g, std::size_t limit) {
  if (limit > 64) limit = 64;
  if (g.order() > limit)
    throw LimitExceeded("exact colouring limited to " + std::to_string(limit) + " vertices, got " +
                        std::to_string(g.order()));
  return ColoringSearch(g).solve();
}

int chromatic_number(const Graph& g, std::size_t limit) {
  const auto coloring = optimal_coloring(g, limit);
  if (coloring.empty()) return 0;
  return 1 + *std::max_element(coloring.begin(), coloring.end());
}

// -- matchings ---------------------------------------------------------------

AdjacencyList to_adjacency_list(const Graph& g) {
  AdjacencyList a;
  a.offsets.reserve(g.order() + 1);
  a.offsets.push_back(0);
  for (Vertex u = 0; u < g.order(); ++u) {
    bits::for_each(g.row(u), [&](std::size_t v) { a.targets.push_back(static_cast<Vertex>(v)); });
    a.offsets.push_back(static_cast<std::uint32_t>(a.targets.size()));
  }
  return a;
}

AdjacencyList induced_adjacency(const AdjacencyList& g, std::span<const char> keep) {
  const std::size_t n = g.order();
  std::vector<Vertex> relabel(n, static_cast<Vertex>(-1));
  Vertex next = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (keep[v]) relabel[v] = next++;
  AdjacencyList out;
  out.offsets.reserve(next + 1);
  out.offsets.push_back(0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    for (Vertex w : g.neighbors(static_cast<Vertex>(v)))
      if (keep[w]) out.targets.push_back(relabel[w]);
    out.offsets.push_back(static_cast<std::uint32_t>(out.targets.size()));
  }
  return out;
}

namespace {

// Edmonds' algorithm with blossom contraction. Per-search state is reset
// lazily through stamps, so a search only pays for the alternating tree it
// actually grows.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const AdjacencyList& g)
      : g_(g),
        n_(g.order()),
        match_(n_, -1),
        parent_(n_, -1),
        base_(n_, 0),
        used_(n_, 0),
        stamp_(n_, 0),
        lca_mark_(n_, 0),
        blossom_mark_(n_, 0) {}

  Matching run() {
    for (std::size_t v = 0; v < n_; ++v) {
      if (match_[v] != -1) continue;
      for (Vertex w : g_.neighbors(static_cast<Vertex>(v))) {
        if (match_[w] == -1) {
          match_[v] = static_cast<int>(w);
          match_[w] = static_cast<int>(v);
          break;
        }
      }
    }
    for (std::size_t root = 0; root < n_; ++root) {
      if (match_[root] != -1) continue;
      ++search_;
      touched_.clear();
      int v = find_path(static_cast<int>(root));
      while (v != -1) {
        const int pv = parent_[static_cast<std::size_t>(v)];
        const int ppv = match_[static_cast<std::size_t>(pv)];
        match_[static_cast<std::size_t>(v)] = pv;
        match_[static_cast<std::size_t>(pv)] = v;
        v = ppv;
      }
    }
    Matching m;
    for (std::size_t v = 0; v < n_; ++v)
      if (match_[v] > static_cast<int>(v)) m.edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(match_[v])});
    return m;
  }

 private:
  void touch(int v) {
    const auto i = static_cast<std::size_t>(v);
    if (stamp_[i] == search_) return;
    stamp_[i] = search_;
    base_[i] = v;
    parent_[i] = -1;
    used_[i] = 0;
    touched_.push_back(v);
  }

  int lca(int a, int b) {
    ++lca_stamp_;
    for (;;) {
      a = base_[static_cast<std::size_t>(a)];
      lca_mark_[static_cast<std::size_t>(a)] = lca_stamp_;
      if (match_[static_cast<std::size_t>(a)] == -1) break;
      a = parent_[static_cast<std::size_t>(match_[static_cast<std::size_t>(a)])];
    }
    for (;;) {
      b = base_[static_cast<std::size_t>(b)];
      if (lca_mark_[static_cast<std::size_t>(b)] == lca_stamp_) return b;
      b = parent_[static_cast<std::size_t>(match_[static_cast<std::size_t>(b)])];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[static_cast<std::size_t>(v)] != b) {
      const int mv = match_[static_cast<std::size_t>(v)];
      blossom_mark_[static_cast<std::size_t>(base_[static_cast<std::size_t>(v)])] = blossom_stamp_;
      blossom_mark_[static_cast<std::size_t>(base_[static_cast<std::size_t>(mv)])] = blossom_stamp_;
      parent_[static_cast<std::size_t>(v)] = child;
      child = mv;
      v = parent_[static_cast<std::size_t>(mv)];
    }
  }

  int find_path(int root) {
    touch(root);
    used_[static_cast<std::size_t>(root)] = 1;
    queue_.clear();
    queue_.push_back(root);
    std::size_t head = 0;
    while (head < queue_.size()) {
      const int v = queue_[head++];
      const auto vi = static_cast<std::size_t>(v);
      for (Vertex tw : g_.neighbors(static_cast<Vertex>(v))) {
        const int to = static_cast<int>(tw);
        const auto ti = static_cast<std::size_t>(to);
        touch(to);
        if (base_[vi] == base_[ti] || match_[vi] == to) continue;
        const int mt = match_[ti];
        if (mt != -1) touch(mt);
        if (to == root || (mt != -1 && parent_[static_cast<std::size_t>(mt)] != -1)) {
          const int cur = lca(v, to);
          ++blossom_stamp_;
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i : touched_) {
            const auto ii = static_cast<std::size_t>(i);
            if (blossom_mark_[static_cast<std::size_t>(base_[ii])] == blossom_stamp_) {
              base_[ii] = cur;
              if (!used_[ii]) {
                used_[ii] = 1;
                queue_.push_back(i);
              }
            }
          }
        } else if (parent_[ti] == -1) {
          parent_[ti] = v;
          if (mt == -1) return to;
          used_[static_cast<std::size_t>(mt)] = 1;
          queue_.push_back(mt);
        }
      }
    }
    return -1;
  }

  const AdjacencyList& g_;
  std::size_t n_;
  std::vector<int> match_, parent_, base_;
  std::vector<char> used_;
  std::vector<std::uint32_t> stamp_, lca_mark_, blossom_mark_;
  std::uint32_t search_ = 0, lca_stamp_ = 0, blossom_stamp_ = 0;
  std::vector<int> touched_, queue_;
};

}  // namespace

Matching max_matching(const AdjacencyList& g) { return BlossomMatcher(g).run(); }

Matching max_matching(const Graph& g) {
  const AdjacencyList a = to_adjacency_list(g);
  return max_matching(a);
}

Matching greedy_matching(const AdjacencyList& g) {
  std::vector<char> used(g.order(), 0);
  Matching m;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (used[v]) continue;
    for (Vertex w : g.neighbors(v)) {
      if (!used[w] && w != v) {
        used[v] = used[w] = 1;
        m.edges.push_back({std::min(v, w), std::max(v, w)});
        break;
      }
    }
  }
  return m;
}

Matching greedy_matching(const Graph& g) { return greedy_matching(to_adjacency_list(g)); }

}  // namespace oddminor
