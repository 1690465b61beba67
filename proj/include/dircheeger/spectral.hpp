#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dircheeger/circulation.hpp"
#include "dircheeger/embedding.hpp"
#include "dircheeger/expansion.hpp"
#include "dircheeger/graph.hpp"
#include "dircheeger/linalg.hpp"

namespace dircheeger {

/// B^{-1/2} (D_A - sym(A)) B^{-1/2} with D_A(v) = sum_u (A(u,v) + A(v,u)) / 2.
/// Vertex mode uses B = pi and the literal I - Pi^{-1/2} sym(A) Pi^{-1/2},
/// which agrees whenever A is feasible; edge mode uses B = d_w of g.
Matrix normalized_laplacian(const DirectedGraph& g, std::span<const double> a, Mode mode,
                            std::span<const double> base);

/// Clique-expansion weights of a hypergraph: one variable per unordered
/// pair {u, v} of every hyperedge, listed edge by edge with u < v.
struct CliquePairs {
  std::vector<int> edge;
  std::vector<int> u;
  std::vector<int> v;
  /// First pair of each hyperedge; pairs of e are [offset[e], offset[e+1]).
  std::vector<int> offset;

  int size() const { return static_cast<int>(edge.size()); }
};

CliquePairs clique_pairs(const Hypergraph& h);

/// D^{-1/2} (D_C - C) D^{-1/2} for clique weights c (indexed like pairs).
Matrix hypergraph_laplacian(const Hypergraph& h, const CliquePairs& pairs, std::span<const double> c);

enum class StepRule { kLineSearch, kOpenLoop };

struct TraceRecord {
  int iteration = 0;
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  double fw_gap = 0.0;
};

using TraceSink = std::function<void(const TraceRecord&)>;

struct GapOptions {
  double tol = 1e-4;
  int max_iters = 5000;
  /// Objective is lambda_2 + ... + lambda_k (lambda_1 = 0 identically).
  int k = 2;
  double mult_tol = 1e-6;
  StepRule step = StepRule::kLineSearch;
  TraceSink trace;
};

struct SpectralBracket {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  /// Reweighting attaining lambda_lo: arc weights of `graph`, or clique
  /// weights for a hypergraph.
  Reweighting witness_a;
  /// Centered embedding with sum weight |f|^2 = k - 1 attaining lambda_hi.
  Embedding witness_f;
  int iterations = 0;
  bool converged = false;
  /// Frank-Wolfe gap of the final iterate.
  double fw_gap = 0.0;
  int k = 2;
  /// Graph the reweighting lives on (vertex mode adds missing self-loops).
  DirectedGraph graph;
  /// Set when the solver short-circuited on a disconnected support.
  int components = 1;
};

/// Frank-Wolfe on the reweighted gap. Vertex mode needs pi (strictly
/// positive); missing self-loops are added with a warning.
SpectralBracket max_reweighted_gap(const DirectedGraph& g, Mode mode,
                                   const std::optional<VertexWeights>& pi, const GapOptions& options = {});

/// gamma_2 of a hypergraph (and bottom-k sums through options.k).
SpectralBracket gamma2_hypergraph(const Hypergraph& h, const GapOptions& options = {});

/// 1/2 * (matching oracle value with lengths |f(u) - f(v)|^2): an upper bound
/// on the gap for any centered f with sum weight |f|^2 = 1. Throws kParameter
/// on an unnormalized or uncentered embedding.
double certify_upper(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi,
                     const Embedding& f);

/// sum_e w(e) max_{u,v in e} |f(u) - f(v)|^2 for a normalized embedding.
double certify_upper_hypergraph(const Hypergraph& h, const Embedding& f);

/// Best lambda_2 + ... + lambda_k found by Frank-Wolfe; a lower bound only.
double sigma_k_lower(const DirectedGraph& g, Mode mode, int k,
                     const std::optional<VertexWeights>& pi = std::nullopt, GapOptions options = {});

/// Base weights of a mode: pi in vertex mode, d_w otherwise.
std::vector<double> base_weights(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi);

/// The graph a vertex-mode solve runs on: g itself if every vertex has a
/// self-loop, else a copy with zero-weight loops added (and a warning).
DirectedGraph with_required_loops(const DirectedGraph& g);

}  // namespace dircheeger
