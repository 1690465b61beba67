#include "dircheeger/expansion.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dircheeger/error.hpp"

namespace dircheeger {

const char* to_string(Mode mode) { return mode == Mode::kVertex ? "vertex" : "edge"; }

const char* to_string(CutMode mode) {
  switch (mode) {
    case CutMode::kVertexExpansion: return "vertex-expansion";
    case CutMode::kEdgeConductance: return "edge-conductance";
    case CutMode::kHypergraphConductance: return "hypergraph-conductance";
    case CutMode::kCheegerConstant: return "cheeger-constant";
  }
  return "unknown";
}

namespace {

void check_proper(int n, const Membership& in_set) {
  if (static_cast<int>(in_set.size()) != n) {
    throw Error(ErrorKind::kInvalidCut, "membership vector has wrong length");
  }
  const auto k = std::count_if(in_set.begin(), in_set.end(), [](char c) { return c != 0; });
  if (k == 0 || k == n) throw Error(ErrorKind::kInvalidCut, "cut must be a proper nonempty subset");
}

double ratio(double num, double den) {
  if (!(den > 0.0)) throw Error(ErrorKind::kDegenerateCut, "smaller side has zero volume");
  return num / den;
}

}  // namespace

Membership membership(int n, const std::vector<int>& set) {
  Membership in_set(static_cast<std::size_t>(n), 0);
  for (int v : set) {
    if (v < 0 || v >= n) {
      throw Error(ErrorKind::kInvalidCut, "vertex " + std::to_string(v) + " out of range");
    }
    in_set[static_cast<std::size_t>(v)] = 1;
  }
  return in_set;
}

std::vector<int> members(const Membership& in_set) {
  std::vector<int> out;
  for (std::size_t v = 0; v < in_set.size(); ++v) {
    if (in_set[v]) out.push_back(static_cast<int>(v));
  }
  return out;
}

double directed_edge_conductance(const DirectedGraph& g, const std::vector<int>& set) {
  return directed_edge_conductance(g, membership(g.num_vertices(), set));
}

double directed_edge_conductance(const DirectedGraph& g, const Membership& in_set) {
  check_proper(g.num_vertices(), in_set);
  double out_s = 0.0, out_t = 0.0;
  for (const Arc& a : g.arcs()) {
    const bool ts = in_set[static_cast<std::size_t>(a.tail)] != 0;
    const bool hs = in_set[static_cast<std::size_t>(a.head)] != 0;
    if (ts && !hs) out_s += a.weight;
    if (!ts && hs) out_t += a.weight;
  }
  double vol_s = 0.0, vol_t = 0.0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    (in_set[static_cast<std::size_t>(v)] ? vol_s : vol_t) += g.degree(v);
  }
  return ratio(std::min(out_s, out_t), std::min(vol_s, vol_t));
}

double directed_vertex_expansion(const DirectedGraph& g, const VertexWeights& pi,
                                 const std::vector<int>& set) {
  return directed_vertex_expansion(g, pi, membership(g.num_vertices(), set));
}

double directed_vertex_expansion(const DirectedGraph& g, const VertexWeights& pi,
                                 const Membership& in_set) {
  const int n = g.num_vertices();
  if (pi.size() != n) throw Error(ErrorKind::kParameter, "pi has wrong length");
  check_proper(n, in_set);
  // reached[v] bit 0: v is an out-neighbour of S, bit 1: of the complement.
  std::vector<char> reached(static_cast<std::size_t>(n), 0);
  for (const Arc& a : g.arcs()) {
    if (a.is_loop()) continue;
    const bool ts = in_set[static_cast<std::size_t>(a.tail)] != 0;
    const bool hs = in_set[static_cast<std::size_t>(a.head)] != 0;
    if (ts && !hs) reached[static_cast<std::size_t>(a.head)] |= 1;
    if (!ts && hs) reached[static_cast<std::size_t>(a.head)] |= 2;
  }
  double bd_s = 0.0, bd_t = 0.0, pi_s = 0.0, pi_t = 0.0;
  for (int v = 0; v < n; ++v) {
    const auto uv = static_cast<std::size_t>(v);
    if (reached[uv] & 1) bd_s += pi[v];
    if (reached[uv] & 2) bd_t += pi[v];
    (in_set[uv] ? pi_s : pi_t) += pi[v];
  }
  return ratio(std::min(bd_s, bd_t), std::min(pi_s, pi_t));
}

double hypergraph_conductance(const Hypergraph& h, const std::vector<int>& set) {
  return hypergraph_conductance(h, membership(h.num_vertices(), set));
}

double hypergraph_conductance(const Hypergraph& h, const Membership& in_set) {
  check_proper(h.num_vertices(), in_set);
  double cut = 0.0;
  for (const Hyperedge& e : h.edges()) {
    bool inside = false, outside = false;
    for (int v : e.vertices) (in_set[static_cast<std::size_t>(v)] ? inside : outside) = true;
    if (inside && outside) cut += e.weight;
  }
  double vol_s = 0.0, vol_t = 0.0;
  for (int v = 0; v < h.num_vertices(); ++v) {
    (in_set[static_cast<std::size_t>(v)] ? vol_s : vol_t) += h.degree(v);
  }
  return ratio(cut, std::min(vol_s, vol_t));
}

Cut brute_force_minimum(int n, CutMode mode,
                        const std::function<std::optional<double>(std::uint64_t)>& eval) {
  if (n > kMaxBruteForceVertices) {
    throw Error(ErrorKind::kSizeLimit, "exhaustive search limited to " +
                                           std::to_string(kMaxBruteForceVertices) +
                                           " vertices, got " + std::to_string(n));
  }
  if (n < 2) throw Error(ErrorKind::kInvalidCut, "need at least two vertices for a cut");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::uint64_t best_mask = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    const std::optional<double> value = eval(mask);
    if (value && *value < best) {
      best = *value;
      best_mask = mask;
    }
  }
  if (best_mask == 0) throw Error(ErrorKind::kDegenerateCut, "every cut has zero volume");
  Cut cut;
  cut.mode = mode;
  cut.value = best;
  for (int v = 0; v < n; ++v) {
    if (best_mask >> v & 1) cut.vertices.push_back(v);
  }
  return cut;
}

namespace {

Membership mask_membership(int n, std::uint64_t mask) {
  Membership in_set(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) in_set[static_cast<std::size_t>(v)] = static_cast<char>(mask >> v & 1);
  return in_set;
}

}  // namespace

Cut brute_force_edge_conductance(const DirectedGraph& g) {
  const int n = g.num_vertices();
  return brute_force_minimum(n, CutMode::kEdgeConductance,
                             [&](std::uint64_t mask) -> std::optional<double> {
                               try {
                                 return directed_edge_conductance(g, mask_membership(n, mask));
                               } catch (const Error& e) {
                                 if (e.kind() == ErrorKind::kDegenerateCut) return std::nullopt;
                                 throw;
                               }
                             });
}

Cut brute_force_vertex_expansion(const DirectedGraph& g, const VertexWeights& pi) {
  const int n = g.num_vertices();
  if (pi.size() != n) throw Error(ErrorKind::kParameter, "pi has wrong length");
  if (n > kMaxBruteForceVertices) return brute_force_minimum(n, CutMode::kVertexExpansion, {});
  // Bitmask fast path: out-neighbourhoods as masks.
  std::vector<std::uint64_t> nbr(static_cast<std::size_t>(n), 0);
  for (const Arc& a : g.arcs()) {
    if (!a.is_loop()) nbr[static_cast<std::size_t>(a.tail)] |= std::uint64_t{1} << a.head;
  }
  const std::uint64_t full = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  auto mass = [&](std::uint64_t m) {
    double s = 0.0;
    for (int v = 0; v < n; ++v) {
      if (m >> v & 1) s += pi[v];
    }
    return s;
  };
  return brute_force_minimum(n, CutMode::kVertexExpansion,
                             [&](std::uint64_t mask) -> std::optional<double> {
                               const std::uint64_t rest = full & ~mask;
                               std::uint64_t ns = 0, nt = 0;
                               for (int v = 0; v < n; ++v) {
                                 (mask >> v & 1 ? ns : nt) |= nbr[static_cast<std::size_t>(v)];
                               }
                               const double den = std::min(mass(mask), mass(rest));
                               if (!(den > 0.0)) return std::nullopt;
                               return std::min(mass(ns & rest), mass(nt & mask)) / den;
                             });
}

Cut brute_force_hypergraph_conductance(const Hypergraph& h) {
  const int n = h.num_vertices();
  return brute_force_minimum(n, CutMode::kHypergraphConductance,
                             [&](std::uint64_t mask) -> std::optional<double> {
                               try {
                                 return hypergraph_conductance(h, mask_membership(n, mask));
                               } catch (const Error& e) {
                                 if (e.kind() == ErrorKind::kDegenerateCut) return std::nullopt;
                                 throw;
                               }
                             });
}

namespace {

std::vector<std::vector<int>> tarjan(const DirectedGraph& g, bool positive_only) {
  const int n = g.num_vertices();
  const auto un = static_cast<std::size_t>(n);
  std::vector<int> index(un, -1), low(un, 0), comp(un, -1);
  std::vector<char> on_stack(un, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;
  // Explicit DFS stack of (vertex, position in its out-arc list).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto uv = static_cast<std::size_t>(v);
      if (pos == 0 && index[uv] < 0) {
        index[uv] = low[uv] = counter++;
        stack.push_back(v);
        on_stack[uv] = 1;
      }
      const auto outs = g.out_arcs(v);
      bool descended = false;
      while (pos < outs.size()) {
        const Arc& a = g.arc(outs[pos++]);
        if (positive_only && !(a.weight > 0.0)) continue;
        const auto uw = static_cast<std::size_t>(a.head);
        if (index[uw] < 0) {
          frames.push_back({a.head, 0});
          descended = true;
          break;
        }
        if (on_stack[uw]) low[uv] = std::min(low[uv], index[uw]);
      }
      if (descended) continue;
      if (low[uv] == index[uv]) {
        std::vector<int> c;
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp[static_cast<std::size_t>(w)] = static_cast<int>(components.size());
          c.push_back(w);
        } while (w != v);
        std::sort(c.begin(), c.end());
        components.push_back(std::move(c));
      }
      const int finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        const auto up = static_cast<std::size_t>(frames.back().first);
        low[up] = std::min(low[up], low[static_cast<std::size_t>(finished)]);
      }
    }
  }
  // Tarjan emits sink components first.
  std::reverse(components.begin(), components.end());
  return components;
}

}  // namespace

std::vector<std::vector<int>> scc_components(const DirectedGraph& g) { return tarjan(g, false); }

std::vector<std::vector<int>> positive_scc_components(const DirectedGraph& g) {
  return tarjan(g, true);
}

std::vector<double> pi_induced_weights(const DirectedGraph& g, const VertexWeights& pi) {
  if (pi.size() != g.num_vertices()) throw Error(ErrorKind::kParameter, "pi has wrong length");
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(g.num_arcs()));
  for (const Arc& a : g.arcs()) w.push_back(std::min(pi[a.tail], pi[a.head]));
  return w;
}

}  // namespace dircheeger
