#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dircheeger/expansion.hpp"
#include "dircheeger/graph.hpp"

namespace dircheeger {

/// Nonnegative weights A over the arcs of a graph, indexed like g.arcs().
struct Reweighting {
  std::vector<double> values;
};

/// D_A(v) = sum_u (A(u,v) + A(v,u)) / 2.
std::vector<double> symmetric_degrees(const DirectedGraph& g, std::span<const double> a);

/// max_v |out_A(v) - in_A(v)|.
double max_imbalance(const DirectedGraph& g, std::span<const double> a);

/// Multipliers of the inner l1 program. In vertex mode q is indexed by vertex
/// (the head of each constraint); in edge mode by arc.
struct DualCertificate {
  Mode mode = Mode::kEdge;
  std::vector<double> q;
  std::vector<double> r;
  double objective = 0.0;
};

struct OracleResult {
  Reweighting a;
  /// sum_uv A(u,v) * l(uv), without any 1/2 factor.
  double value = 0.0;
  DualCertificate dual;
};

/// Smallest q for the given potentials: q(uv) = max{0, l(uv) - r(u) + r(v)}
/// in edge mode, q(v) = max{0, max_u l(uv) - r(u) + r(v)} in vertex mode. The
/// objective is sum w q or sum pi q (pi is ignored in edge mode). r is copied
/// unchanged.
DualCertificate dual_from_potentials(const DirectedGraph& g, Mode mode, std::span<const double> pi,
                                     std::span<const double> lengths, std::vector<double> r);

/// Smallest constraint slack q - l(uv) + r(u) - r(v) over all arcs.
double dual_min_slack(const DirectedGraph& g, const DualCertificate& dual,
                      std::span<const double> lengths);

/// A circulation with w <= A <= alpha * w, or nullopt when none exists.
/// Bounds are scaled to 64-bit integers by a power of two; the returned A
/// balances exactly in that integer grid.
std::optional<Reweighting> hoffman_circulation(const DirectedGraph& g, std::span<const double> w,
                                               double alpha);

/// min{alpha : a Hoffman circulation exists} for the given arc weights, or
/// +infinity when some positive-weight arc leaves its strongly connected
/// component. Bisection stops at relative width 1e-10.
double asymmetric_ratio(const DirectedGraph& g, std::span<const double> w);
/// Edge mode: uses the graph's own weights.
double asymmetric_ratio(const DirectedGraph& g);
/// Vertex mode: uses the pi-induced weights.
double asymmetric_ratio(const DirectedGraph& g, const VertexWeights& pi);

/// max sum A l over 0 <= A <= w with A Eulerian (w = graph weights). Duals
/// come from the optimal node potentials, shifted so that sum d_w r = 0.
OracleResult eulerian_oracle_edge(const DirectedGraph& g, std::span<const double> lengths);

/// max sum A l over A supported on E with every row and column summing to
/// pi. Requires a self-loop at every vertex. Potentials are shifted so that
/// sum pi r = 0.
OracleResult eulerian_oracle_vertex(const DirectedGraph& g, const VertexWeights& pi,
                                    std::span<const double> lengths);

}  // namespace dircheeger
