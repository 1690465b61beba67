#pragma once

#include <cstdint>
#include <vector>

#include "dircheeger/graph.hpp"
#include "dircheeger/random.hpp"

namespace fixtures {

using dircheeger::Arc;
using dircheeger::DirectedGraph;

inline DirectedGraph cycle(int n, double w = 1.0) {
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) arcs.push_back({i, (i + 1) % n, w});
  return DirectedGraph(n, arcs);
}

inline DirectedGraph complete_dag(int n) {
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) arcs.push_back({i, j, 1.0});
  }
  return DirectedGraph(n, arcs);
}

inline DirectedGraph bidirected_clique(int n, double w = 1.0) {
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) arcs.push_back({i, j, w});
    }
  }
  return DirectedGraph(n, arcs);
}

/// Hamiltonian cycle in a random order plus each other ordered pair with
/// probability p; weights uniform in [0.5, 2).
inline DirectedGraph random_strong(dircheeger::Rng& rng, int n, double p) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1))]);
  }
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) {
    arcs.push_back({order[static_cast<std::size_t>(i)],
                    order[static_cast<std::size_t>((i + 1) % n)], 0.5 + 1.5 * rng.uniform()});
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && rng.uniform() < p) arcs.push_back({u, v, 0.5 + 1.5 * rng.uniform()});
    }
  }
  return DirectedGraph(n, arcs);
}

}  // namespace fixtures
