#include "oddminor/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "oddminor/errors.hpp"

namespace oddminor {

using bits::Word;

void validate_pairing(const Pairing& pairing, std::size_t n) {
  std::vector<char> seen(n, 0);
  auto touch = [&](Vertex x) {
    if (x >= n) throw InvalidPairing("vertex " + std::to_string(x) + " is outside [0, " + std::to_string(n) + ")");
    if (seen[x]) throw InvalidPairing("vertex " + std::to_string(x) + " appears twice");
    seen[x] = 1;
  };
  for (const auto& [u, v] : pairing.pairs) {
    touch(u);
    touch(v);
  }
}

bool is_odd_connected_pairing(const Graph& g, const Pairing& pairing) {
  validate_pairing(pairing, g.order());
  const auto& p = pairing.pairs;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (!g.adjacent(p[i].first, p[j].first) && !g.adjacent(p[i].second, p[j].second)) return false;
  return true;
}

namespace {

inline constexpr std::size_t kCompatibilityLimit = 128;

bool compatible(const Graph& g, std::pair<Vertex, Vertex> a, std::pair<Vertex, Vertex> b) {
  if (a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second) return false;
  return g.adjacent(a.first, b.first) || g.adjacent(a.second, b.second);
}

Pairing greedy_pairing(const Graph& g) {
  Pairing best;
  const auto n = static_cast<Vertex>(g.order());
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      const std::pair<Vertex, Vertex> cand{u, v};
      bool ok = true;
      for (const auto& q : best.pairs)
        if (!compatible(g, q, cand)) {
          ok = false;
          break;
        }
      if (ok) best.pairs.push_back(cand);
    }
  return best;
}

/// Bitset maximum clique with a greedy colouring bound.
class CliqueSearch {
 public:
  CliqueSearch(std::size_t k, std::vector<Word> adj, std::uint64_t budget)
      : k_(k), words_(bits::words_for(k)), adj_(std::move(adj)), budget_(budget) {}

  void seed(std::vector<std::size_t> clique) { best_ = std::move(clique); }

  /// Returns true when the search completed within budget.
  bool run() {
    std::vector<Word> all(words_, 0);
    for (std::size_t i = 0; i < k_; ++i) bits::set(all, i);
    current_.clear();
    expand(all);
    return !exhausted_;
  }

  const std::vector<std::size_t>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::span<const Word> row(std::size_t i) const { return {adj_.data() + i * words_, words_}; }

  void expand(std::vector<Word> cand) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    // Greedy colour classes over the candidates; the vertex order and its
    // colour numbers give an upper bound for each suffix.
    std::vector<std::size_t> order;
    std::vector<std::size_t> color;
    std::vector<Word> uncolored = cand;
    std::size_t c = 0;
    while (bits::count(uncolored) > 0) {
      ++c;
      std::vector<Word> q = uncolored;
      while (bits::count(q) > 0) {
        std::size_t v = 0;
        for (std::size_t i = 0; i < words_; ++i)
          if (q[i]) {
            v = i * bits::kWordBits + static_cast<std::size_t>(std::countr_zero(q[i]));
            break;
          }
        bits::reset(uncolored, v);
        bits::reset(q, v);
        auto r = row(v);
        for (std::size_t i = 0; i < words_; ++i) q[i] &= ~r[i];
        order.push_back(v);
        color.push_back(c);
      }
    }
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (current_.size() + color[idx] <= best_.size()) return;
      const std::size_t v = order[idx];
      current_.push_back(v);
      std::vector<Word> next(words_);
      auto r = row(v);
      for (std::size_t i = 0; i < words_; ++i) next[i] = cand[i] & r[i];
      if (bits::count(next) == 0) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(std::move(next));
      }
      current_.pop_back();
      bits::reset(cand, v);
      if (exhausted_) return;
    }
  }

  std::size_t k_;
  std::size_t words_;
  std::vector<Word> adj_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
};

}  // namespace

PairingSearchResult max_odd_connected_pairing(const Graph& g, std::uint64_t budget) {
  PairingSearchResult out;
  const std::size_t n = g.order();
  out.witness = greedy_pairing(g);
  out.size = out.witness.size();
  if (n < 2) return out;
  if (n > kCompatibilityLimit) {
    out.status = SearchStatus::lower_bound;
    return out;
  }
  std::vector<std::pair<Vertex, Vertex>> nodes;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) nodes.emplace_back(u, v);
  const std::size_t k = nodes.size();
  const std::size_t w = bits::words_for(k);
  std::vector<Word> adj(k * w, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (compatible(g, nodes[a], nodes[b])) {
        bits::set(std::span<Word>(adj.data() + a * w, w), b);
        bits::set(std::span<Word>(adj.data() + b * w, w), a);
      }
  CliqueSearch search(k, std::move(adj), budget);
  std::vector<std::size_t> seed;
  for (const auto& pr : out.witness.pairs)
    seed.push_back(static_cast<std::size_t>(pr.first) * (n - 1) + (pr.second < pr.first ? pr.second : pr.second - 1));
  search.seed(seed);
  const bool complete = search.run();
  out.nodes = search.nodes();
  out.status = complete ? SearchStatus::exact : SearchStatus::lower_bound;
  if (search.best().size() > out.size) {
    auto best = search.best();
    std::sort(best.begin(), best.end());
    out.witness.pairs.clear();
    for (std::size_t idx : best) out.witness.pairs.push_back(nodes[idx]);
    out.size = out.witness.size();
  }
  return out;
}

std::size_t brute_force_max_pairing(const Graph& g) {
  const std::size_t n = g.order();
  if (n > 10) throw LimitExceeded("brute-force pairing search is limited to n <= 10, got " + std::to_string(n));
  std::vector<std::pair<Vertex, Vertex>> chosen;
  std::vector<char> used(n, 0);
  std::size_t best = 0;
  auto rec = [&](auto&& self, Vertex a) -> void {
    while (a < n && used[a]) ++a;
    best = std::max(best, chosen.size());
    if (a >= n) return;
    used[a] = 1;
    self(self, a + 1);  // a stays unpaired
    for (Vertex b = a + 1; b < n; ++b) {
      if (used[b]) continue;
      used[b] = 1;
      for (std::pair<Vertex, Vertex> cand : {std::pair{a, b}, std::pair{b, a}}) {
        bool ok = true;
        for (const auto& q : chosen)
          if (!g.adjacent(q.first, cand.first) && !g.adjacent(q.second, cand.second)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        chosen.push_back(cand);
        self(self, a + 1);
        chosen.pop_back();
      }
      used[b] = 0;
    }
    used[a] = 0;
  };
  rec(rec, 0);
  return best;
}

Pairing respectful_subpairing(const Pairing& pairing, const VertexMap& pi) {
  validate_pairing(pairing, pi.size());
  std::set<std::pair<std::uint32_t, std::uint32_t>> images;
  Pairing out;
  for (const auto& pr : pairing.pairs) {
    const std::uint32_t x = pi[pr.first];
    const std::uint32_t y = pi[pr.second];
    if (x == y) continue;
    if (images.emplace(std::min(x, y), std::max(x, y)).second) out.pairs.push_back(pr);
  }
  return out;
}

std::size_t respectful_index(const Pairing& pairing, const VertexMap& pi) {
  return respectful_subpairing(pairing, pi).size();
}

bool is_eps_respectful(const Pairing& pairing, const VertexMap& pi, double eps) {
  return static_cast<double>(respectful_index(pairing, pi)) >= eps * static_cast<double>(pairing.size());
}

std::vector<std::pair<Edge, std::size_t>> PairGraph::degrees() const {
  std::map<Edge, std::size_t> deg;
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return {deg.begin(), deg.end()};
}

std::size_t PairGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& [v, d] : degrees()) best = std::max(best, d);
  return best;
}

PairGraph build_pi_graph(const Pairing& pairing, const VertexMap& pi, std::size_t m, const PairPredicate& forbidden) {
  validate_pairing(pairing, pi.size());
  for (auto x : pi)
    if (x >= m) throw InvalidPairing("map value " + std::to_string(x) + " is outside [0, " + std::to_string(m) + ")");
  auto key = [](std::uint32_t a, std::uint32_t b) { return Edge{std::min(a, b), std::max(a, b)}; };
  std::map<std::pair<Edge, Edge>, std::size_t> counted;
  const auto& p = pairing.pairs;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const std::uint32_t ui = pi[p[i].first], uj = pi[p[j].first];
      const std::uint32_t vi = pi[p[i].second], vj = pi[p[j].second];
      if (ui == uj || vi == vj) continue;
      const Edge a = key(ui, uj);
      const Edge b = key(vi, vj);
      if (a == b) continue;
      if (forbidden && (forbidden(p[i].first, p[j].first) || forbidden(p[i].second, p[j].second))) continue;
      ++counted[{std::min(a, b), std::max(a, b)}];
    }
  PairGraph out;
  out.m = m;
  out.edges.reserve(counted.size());
  out.multiplicity.reserve(counted.size());
  for (const auto& [e, c] : counted) {
    out.edges.push_back(e);
    out.multiplicity.push_back(c);
  }
  return out;
}

}  // namespace oddminor
