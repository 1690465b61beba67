#pragma once

#include <cstdint>
#include <vector>

namespace dircheeger {

/// Dinic max-flow on 64-bit integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);

  /// Adds u->v with the given capacity; returns an id usable with flow().
  int add_edge(int u, int v, std::int64_t capacity);
  std::int64_t run(int source, int sink);
  std::int64_t flow(int id) const;

 private:
  struct Edge {
    int to;
    std::int64_t cap;
  };
  bool bfs(int s, int t);
  std::int64_t dfs(int v, int t, std::int64_t pushed);

  int n_;
  std::vector<Edge> edges_;  // edge 2i is forward, 2i+1 its reverse
  std::vector<std::vector<int>> adj_;
  std::vector<std::int64_t> original_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

/// Min-cost flow with integer capacities and nonnegative real costs, solved by
/// successive shortest paths (Dijkstra with potentials).
class MinCostFlow {
 public:
  explicit MinCostFlow(int num_nodes);

  int add_edge(int u, int v, std::int64_t capacity, double cost);

  /// Routes supply[v] > 0 units out of v and -supply[v] into v. Returns false
  /// when the supplies cannot be routed. Costs must be nonnegative.
  bool solve(const std::vector<std::int64_t>& supply);

  std::int64_t flow(int id) const;

  /// Node potentials p with c(uv) + p(u) - p(v) >= 0 on every residual arc,
  /// recomputed by Bellman-Ford from a virtual root on the final residual
  /// graph. Valid only after a successful solve().
  std::vector<double> residual_potentials() const;

 private:
  struct Edge {
    int to;
    std::int64_t cap;
    double cost;
  };

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::int64_t> original_;
};

/// Power-of-two factor that maps a real total into integers without
/// overflowing 64-bit sums (total * scale <= 2^58).
double integer_scale(double total);

}  // namespace dircheeger
