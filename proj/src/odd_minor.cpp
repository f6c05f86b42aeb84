#include "oddminor/odd_minor.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <string>

#include "oddminor/errors.hpp"

namespace oddminor {

Color MinorTree::color_of(Vertex v) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == v) return colors[i];
  throw PreconditionFailed("vertex " + std::to_string(v) + " is not in the tree");
}

namespace {

std::string tree_name(std::size_t i) { return "tree " + std::to_string(i); }

/// Returns a failure message for tree i, or an empty string.
std::string check_tree(const Graph& g, const MinorTree& tree, std::size_t i, std::vector<int>& owner) {
  if (tree.vertices.empty()) return tree_name(i) + " is empty";
  if (tree.colors.size() != tree.vertices.size()) return tree_name(i) + " has " + std::to_string(tree.colors.size()) +
                                                         " colours for " + std::to_string(tree.vertices.size()) + " vertices";
  for (Vertex v : tree.vertices) {
    if (v >= g.order()) return tree_name(i) + " uses vertex " + std::to_string(v) + " outside the graph";
    if (owner[v] >= 0)
      return "vertex " + std::to_string(v) + " lies in " + tree_name(static_cast<std::size_t>(owner[v])) + " and " + tree_name(i);
    owner[v] = static_cast<int>(i);
  }
  if (tree.edges.size() + 1 != tree.vertices.size())
    return tree_name(i) + " has " + std::to_string(tree.edges.size()) + " edges on " + std::to_string(tree.vertices.size()) +
           " vertices";
  std::vector<std::size_t> parent(tree.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index_of = [&](Vertex v) -> std::size_t {
    auto it = std::find(tree.vertices.begin(), tree.vertices.end(), v);
    return it == tree.vertices.end() ? tree.vertices.size() : static_cast<std::size_t>(it - tree.vertices.begin());
  };
  for (const Edge& e : tree.edges) {
    const std::string name = "edge {" + std::to_string(e.u) + ", " + std::to_string(e.v) + "} of " + tree_name(i);
    const std::size_t a = index_of(e.u);
    const std::size_t b = index_of(e.v);
    if (a == tree.vertices.size() || b == tree.vertices.size()) return name + " leaves the tree";
    if (!g.adjacent(e.u, e.v)) return name + " is not in the graph";
    if (tree.colors[a] == tree.colors[b]) return name + " joins equal colours";
    const std::size_t ra = find(a);
    const std::size_t rb = find(b);
    if (ra == rb) return name + " closes a cycle";
    parent[ra] = rb;
  }
  return {};
}

}  // namespace

CertificateReport verify_model(const Graph& g, const MinorModel& model) {
  std::vector<int> owner(g.order(), -1);
  for (std::size_t i = 0; i < model.trees.size(); ++i) {
    std::string failure = check_tree(g, model.trees[i], i, owner);
    if (!failure.empty()) return {false, failure};
  }
  for (std::size_t i = 0; i < model.trees.size(); ++i)
    for (std::size_t j = i + 1; j < model.trees.size(); ++j) {
      const MinorTree& a = model.trees[i];
      const MinorTree& b = model.trees[j];
      bool linked = false;
      for (std::size_t x = 0; x < a.vertices.size() && !linked; ++x)
        for (std::size_t y = 0; y < b.vertices.size() && !linked; ++y)
          linked = a.colors[x] == b.colors[y] && g.adjacent(a.vertices[x], b.vertices[y]);
      if (!linked) return {false, "no edge joins equal colours of " + tree_name(i) + " and " + tree_name(j)};
    }
  return {};
}

std::vector<Vertex> find_odd_cycle(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<int> depth(n, -1);
  std::vector<Vertex> parent(n, 0);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (depth[s] >= 0) continue;
    depth[s] = 0;
    parent[s] = s;
    queue.push_back(s);
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : g.neighbors(x)) {
        if (depth[y] < 0) {
          depth[y] = depth[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (depth[y] == depth[x]) {
          // Equal BFS depth: the two tree paths up to the common ancestor
          // plus the edge {x, y} form an odd cycle.
          std::vector<Vertex> left{x}, right{y};
          Vertex a = x, b = y;
          while (a != b) {
            a = parent[a];
            b = parent[b];
            left.push_back(a);
            right.push_back(b);
          }
          right.pop_back();
          std::reverse(right.begin(), right.end());
          std::vector<Vertex> cycle(right.begin(), right.end());
          cycle.insert(cycle.end(), left.begin(), left.end());
          return cycle;
        }
      }
    }
  }
  return {};
}

bool odd_minor_k3(const Graph& g) { return !is_bipartite(g); }

namespace {

MinorModel singleton_clique_model(const std::vector<Vertex>& clique) {
  MinorModel m;
  for (Vertex v : clique) m.trees.push_back(MinorTree{{v}, {}, {Color::white}});
  return m;
}

MinorModel odd_cycle_model(const std::vector<Vertex>& cycle) {
  // c0 alone; c1 alone; c2..c_last a path. With c0, c1, c_last white and the
  // path alternating from its far end, every link is monochromatic.
  const std::size_t len = cycle.size();
  MinorModel m;
  m.trees.push_back(MinorTree{{cycle[0]}, {}, {Color::white}});
  m.trees.push_back(MinorTree{{cycle[1]}, {}, {Color::white}});
  MinorTree path;
  for (std::size_t i = 2; i < len; ++i) {
    path.vertices.push_back(cycle[i]);
    path.colors.push_back((len - 1 - i) % 2 == 0 ? Color::white : Color::black);
    if (i > 2) path.edges.push_back(Edge{cycle[i - 1], cycle[i]});
  }
  m.trees.push_back(std::move(path));
  return m;
}

std::vector<Vertex> greedy_clique(const Graph& g) {
  std::vector<Vertex> order(g.order());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  std::vector<Vertex> clique;
  for (Vertex v : order)
    if (std::all_of(clique.begin(), clique.end(), [&](Vertex c) { return g.adjacent(c, v); })) clique.push_back(v);
  std::sort(clique.begin(), clique.end());
  return clique;
}

MinorModel heuristic_model(const Graph& g) {
  const auto clique = greedy_clique(g);
  if (clique.size() >= 3) return singleton_clique_model(clique);
  const auto cycle = find_odd_cycle(g);
  if (!cycle.empty()) return odd_cycle_model(cycle);
  return singleton_clique_model(clique);
}

struct Branch {
  std::uint32_t set;
  std::uint32_t white;
  std::uint32_t near_white;  // vertices adjacent to a white member
  std::uint32_t near_black;
};

class MinorSearch {
 public:
  MinorSearch(const Graph& g, std::uint64_t budget) : n_(static_cast<int>(g.order())), budget_(budget) {
    adj_.assign(static_cast<std::size_t>(n_), 0);
    for (Vertex u = 0; u < g.order(); ++u)
      for (Vertex v : g.neighbors(u)) adj_[u] |= 1U << v;
    by_min_.resize(static_cast<std::size_t>(n_));
    const std::uint32_t full = n_ == 32 ? ~0U : (1U << n_) - 1;
    for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
      std::uint32_t w = s;
      for (;;) {
        if (connected(s, w)) add_branch(s, w);
        if (w == 0) break;
        w = (w - 1) & s;
      }
    }
    for (auto& list : by_min_)
      std::stable_sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
        const Branch& x = branches_[a];
        const Branch& y = branches_[b];
        if (std::popcount(x.set) != std::popcount(y.set)) return std::popcount(x.set) < std::popcount(y.set);
        if (x.set != y.set) return x.set < y.set;
        return x.white > y.white;
      });
  }

  void seed(int t) { best_t_ = t; }

  /// Returns true when the search completed within budget.
  bool run() {
    const std::uint32_t all = n_ == 32 ? ~0U : (1U << n_) - 1;
    dfs(all);
    return !exhausted_;
  }

  int best_t() const { return best_t_; }
  std::uint64_t nodes() const { return nodes_; }

  MinorModel best_model() const {
    MinorModel m;
    for (std::size_t id : best_) m.trees.push_back(to_tree(branches_[id]));
    return m;
  }

 private:
  bool connected(std::uint32_t s, std::uint32_t w) const {
    const std::uint32_t black = s & ~w;
    std::uint32_t seen = s & (~s + 1);
    std::uint32_t frontier = seen;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) {
        const int x = std::countr_zero(f);
        next |= adj_[static_cast<std::size_t>(x)] & (((w >> x) & 1U) ? black : w);
      }
      frontier = next & ~seen;
      seen |= next;
    }
    return seen == s;
  }

  void add_branch(std::uint32_t s, std::uint32_t w) {
    Branch b{s, w, 0, 0};
    for (std::uint32_t f = s; f; f &= f - 1) {
      const int x = std::countr_zero(f);
      ((w >> x) & 1U ? b.near_white : b.near_black) |= adj_[static_cast<std::size_t>(x)];
    }
    by_min_[static_cast<std::size_t>(std::countr_zero(s))].push_back(branches_.size());
    branches_.push_back(b);
  }

  static bool linked(const Branch& a, const Branch& b) {
    return (a.near_white & b.white) || (a.near_black & (b.set & ~b.white));
  }

  void dfs(std::uint32_t avail) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    const int t = static_cast<int>(chosen_.size());
    if (t > best_t_) {
      best_t_ = t;
      best_ = chosen_;
    }
    if (avail == 0 || t + std::popcount(avail) <= best_t_) return;
    const int v = std::countr_zero(avail);
    for (std::size_t id : by_min_[static_cast<std::size_t>(v)]) {
      const Branch& b = branches_[id];
      if (b.set & ~avail) continue;
      if (t == 0 && !((b.white >> v) & 1U)) continue;  // global colour flip
      bool ok = true;
      for (std::size_t c : chosen_)
        if (!linked(branches_[c], b)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen_.push_back(id);
      dfs(avail & ~b.set);
      chosen_.pop_back();
      if (exhausted_ || t + std::popcount(avail) <= best_t_) return;
    }
    dfs(avail & ~(1U << v));
  }

  MinorTree to_tree(const Branch& b) const {
    MinorTree tree;
    const int root = std::countr_zero(b.set);
    std::uint32_t seen = 1U << root;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      tree.vertices.push_back(static_cast<Vertex>(x));
      tree.colors.push_back((b.white >> x) & 1U ? Color::white : Color::black);
      const std::uint32_t other = ((b.white >> x) & 1U) ? (b.set & ~b.white) : b.white;
      for (std::uint32_t f = adj_[static_cast<std::size_t>(x)] & other & ~seen; f; f &= f - 1) {
        const int y = std::countr_zero(f);
        seen |= 1U << y;
        tree.edges.push_back(Edge{static_cast<Vertex>(std::min(x, y)), static_cast<Vertex>(std::max(x, y))});
        queue.push_back(y);
      }
    }
    return tree;
  }

  int n_;
  std::uint64_t budget_;
  std::vector<std::uint32_t> adj_;
  std::vector<Branch> branches_;
  std::vector<std::vector<std::size_t>> by_min_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
  int best_t_ = 0;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

MinorSearchResult max_odd_clique_minor(const Graph& g, const MinorSearchOptions& options) {
  const std::size_t n = g.order();
  const std::size_t limit = std::min<std::size_t>(options.exact_limit, kMinorHardLimit);
  MinorSearchResult out;
  out.witness = heuristic_model(g);
  out.t = static_cast<int>(out.witness.size());
  if (n > limit) {
    if (options.require_exact)
      throw LimitExceeded("exact odd-minor search is limited to n <= " + std::to_string(limit) + ", got " +
                          std::to_string(n));
    out.status = SearchStatus::lower_bound;
    return out;
  }
  MinorSearch search(g, options.budget);
  search.seed(out.t);
  const bool complete = search.run();
  out.nodes = search.nodes();
  out.status = complete ? SearchStatus::exact : SearchStatus::lower_bound;
  if (search.best_t() > out.t) {
    out.t = search.best_t();
    out.witness = search.best_model();
  }
  return out;
}

Pairing model_to_pairing(const Graph& g, const MinorModel& model, Fraction eta) {
  if (eta.den <= 0 || eta.num <= 0 || eta.num >= eta.den) throw PreconditionFailed("eta must lie in (0, 1)");
  const CertificateReport report = verify_model(g, model);
  if (!report.verdict) throw PreconditionFailed("model does not verify: " + report.failure);
  const auto n = static_cast<std::int64_t>(g.order());
  const auto t = static_cast<std::int64_t>(model.size());
  // t >= (1/3 + num/den) n, cleared of denominators.
  if (3 * eta.den * t < (eta.den + 3 * eta.num) * n)
    throw PreconditionFailed("model has " + std::to_string(t) + " trees, fewer than (1/3 + eta) n");
  const std::int64_t s = (eta.num * n + 2 * eta.den - 1) / (2 * eta.den);
  if (2 * s > n) throw PreconditionFailed("no " + std::to_string(s) + "-pairing fits in " + std::to_string(n) + " vertices");

  Pairing out;
  std::vector<const MinorTree*> doubles, singles;
  for (const auto& tree : model.trees) {
    if (tree.vertices.size() == 2) doubles.push_back(&tree);
    if (tree.vertices.size() == 1) singles.push_back(&tree);
  }
  if (static_cast<std::int64_t>(doubles.size()) >= s) {
    for (std::int64_t i = 0; i < s; ++i) {
      const MinorTree& tree = *doubles[static_cast<std::size_t>(i)];
      const std::size_t w = tree.colors[0] == Color::white ? 0 : 1;
      out.pairs.emplace_back(tree.vertices[w], tree.vertices[1 - w]);
    }
  } else if (static_cast<std::int64_t>(singles.size()) >= s) {
    std::vector<char> taken(g.order(), 0);
    for (std::int64_t i = 0; i < s; ++i) taken[singles[static_cast<std::size_t>(i)]->vertices[0]] = 1;
    Vertex next = 0;
    for (std::int64_t i = 0; i < s; ++i) {
      while (next < g.order() && taken[next]) ++next;
      if (next >= g.order()) throw ImpossibleState("ran out of vertices to pair with singleton trees");
      taken[next] = 1;
      out.pairs.emplace_back(singles[static_cast<std::size_t>(i)]->vertices[0], next);
    }
  } else {
    throw ImpossibleState("neither two-vertex nor singleton trees number at least s = " + std::to_string(s));
  }
  if (!is_odd_connected_pairing(g, out)) throw ImpossibleState("transformed pairing is not odd connected");
  return out;
}

}  // namespace oddminor
