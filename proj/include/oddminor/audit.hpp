#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "oddminor/construction.hpp"
#include "oddminor/pairing.hpp"

namespace oddminor {

enum class BoundDirection { at_most, at_least };

/// An integer observation compared against a real bound, with no tolerance.
struct BoundCheck {
  std::uint64_t observed = 0;
  double bound = 0.0;
  BoundDirection direction = BoundDirection::at_most;
  bool holds = true;

  static BoundCheck at_most(std::uint64_t observed, double bound);
  static BoundCheck at_least(std::uint64_t observed, double bound);
};

BoundCheck check_degree_event(const Graph& h, double bound);
/// Observed value is the largest fibre size.
BoundCheck check_fiber_event(const VertexMap& pi, double bound);
/// Observed value is the largest number of triangles through one edge.
BoundCheck check_triangle_count_event(const Graph& hstar, double bound);

enum class EdgeColor { red, blue };

/// Pairs {u, v} joined by a cherry of the given colour, as a graph on [n].
Graph cherry_closed_pairs(const ColoredGraph& h0, EdgeColor color);
/// Size of the same set, without materialising it.
std::uint64_t count_cherry_closed_pairs(const ColoredGraph& h0, EdgeColor color);

struct PairingAudit {
  std::uint64_t s = 0;
  std::uint64_t respectful_r = 0;
  std::uint64_t respectful_b = 0;
  /// |Pi| against eps^4 n^2 / 6.
  BoundCheck pi_edges;
  /// |Pi_Gamma| against gamma n^2.
  BoundCheck gamma_edges;
  /// Max degree of Pi_Gamma against 4 n^2 / m^2.
  BoundCheck gamma_max_degree;
  /// Vertices {x, y} of Pi_Gamma whose degree exceeds f(x) f(y), where f
  /// counts pairing vertices in each red fibre; bound 0.
  BoundCheck fiber_product_violations;
  /// Largest f(x) f(y) over vertices of Pi_Gamma.
  std::uint64_t max_fiber_product = 0;
};

struct EventReport {
  double eps = 0.0;
  double gamma = 0.0;
  BoundCheck d_r, d_b;  // Delta(H_X) <= 2pm
  BoundCheck f_r, f_b;  // max fibre <= 2n/m
  BoundCheck t_r, t_b;  // per-edge triangles in H*_X <= 20 ln m
  /// Cherry-closed pair counts against n^2 / ln n, which holds only for
  /// large n.
  BoundCheck cherries_r_asymptotic, cherries_b_asymptotic;
  /// The same counts against m Delta(H_X)^2 (max fibre)^2, valid always.
  BoundCheck cherries_r_proof_step, cherries_b_proof_step;
  std::optional<PairingAudit> pairing;
};

EventReport audit_instance(const ConstructionTrace& trace, double eps, double gamma,
                           const Pairing* pairing = nullptr);

}  // namespace oddminor
