#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dircheeger/graph.hpp"

namespace dircheeger {

/// Which capacity model a directed-graph routine works in.
enum class Mode { kVertex, kEdge };

const char* to_string(Mode mode);

enum class CutMode { kVertexExpansion, kEdgeConductance, kHypergraphConductance, kCheegerConstant };

const char* to_string(CutMode mode);

struct Cut {
  std::vector<int> vertices;  // sorted
  double value = 0.0;
  CutMode mode = CutMode::kEdgeConductance;
};

/// Per-vertex membership flags (nonzero = in the set).
using Membership = std::vector<char>;

Membership membership(int n, const std::vector<int>& set);
std::vector<int> members(const Membership& in_set);

// Expansion evaluators. All of them are symmetric under complement: the value
// for S and for V - S is bit-identical.

/// min{w(d+(S)), w(d+(V-S))} / min{vol(S), vol(V-S)}.
double directed_edge_conductance(const DirectedGraph& g, const std::vector<int>& set);
double directed_edge_conductance(const DirectedGraph& g, const Membership& in_set);

/// min{pi(N+(S)), pi(N+(V-S))} / min{pi(S), pi(V-S)} with N+ the out-neighbours
/// outside the set (unweighted adjacency, self-loops ignored).
double directed_vertex_expansion(const DirectedGraph& g, const VertexWeights& pi,
                                 const std::vector<int>& set);
double directed_vertex_expansion(const DirectedGraph& g, const VertexWeights& pi,
                                 const Membership& in_set);

/// w(delta(S)) / min{vol(S), vol(V-S)} where delta(S) are the hyperedges
/// meeting both sides.
double hypergraph_conductance(const Hypergraph& h, const std::vector<int>& set);
double hypergraph_conductance(const Hypergraph& h, const Membership& in_set);

inline constexpr int kMaxBruteForceVertices = 24;

/// Exhaustive minimum over all proper nonempty subsets given as bitmasks.
/// `eval` returns nullopt for subsets that should be skipped. Ties go to the
/// numerically smallest mask. Throws kSizeLimit above kMaxBruteForceVertices
/// and kDegenerateCut when every subset was skipped.
Cut brute_force_minimum(int n, CutMode mode,
                        const std::function<std::optional<double>(std::uint64_t)>& eval);

Cut brute_force_edge_conductance(const DirectedGraph& g);
Cut brute_force_vertex_expansion(const DirectedGraph& g, const VertexWeights& pi);
Cut brute_force_hypergraph_conductance(const Hypergraph& h);

/// Strongly connected components in topological order of the condensation
/// (source components first); each component is sorted.
std::vector<std::vector<int>> scc_components(const DirectedGraph& g);

/// Same, restricted to arcs of positive weight.
std::vector<std::vector<int>> positive_scc_components(const DirectedGraph& g);

/// w_pi(uv) = min{pi(u), pi(v)} for every arc, indexed like g.arcs().
std::vector<double> pi_induced_weights(const DirectedGraph& g, const VertexWeights& pi);

}  // namespace dircheeger
