#include "dircheeger/flow_network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "dircheeger/error.hpp"

namespace dircheeger {

MaxFlow::MaxFlow(int num_nodes)
    : n_(num_nodes), adj_(static_cast<std::size_t>(num_nodes)) {}

int MaxFlow::add_edge(int u, int v, std::int64_t capacity) {
  ensure(capacity >= 0, "max-flow capacity is nonnegative");
  const int id = static_cast<int>(original_.size());
  adj_[static_cast<std::size_t>(u)].push_back(static_cast<int>(edges_.size()));
  edges_.push_back({v, capacity});
  adj_[static_cast<std::size_t>(v)].push_back(static_cast<int>(edges_.size()));
  edges_.push_back({u, 0});
  original_.push_back(capacity);
  return id;
}

bool MaxFlow::bfs(int s, int t) {
  level_.assign(static_cast<std::size_t>(n_), -1);
  std::queue<int> q;
  level_[static_cast<std::size_t>(s)] = 0;
  q.push(s);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int id : adj_[static_cast<std::size_t>(v)]) {
      const Edge& e = edges_[static_cast<std::size_t>(id)];
      if (e.cap > 0 && level_[static_cast<std::size_t>(e.to)] < 0) {
        level_[static_cast<std::size_t>(e.to)] = level_[static_cast<std::size_t>(v)] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[static_cast<std::size_t>(t)] >= 0;
}

std::int64_t MaxFlow::dfs(int v, int t, std::int64_t pushed) {
  if (v == t) return pushed;
  const auto uv = static_cast<std::size_t>(v);
  for (std::size_t& i = it_[uv]; i < adj_[uv].size(); ++i) {
    const int id = adj_[uv][i];
    Edge& e = edges_[static_cast<std::size_t>(id)];
    if (e.cap <= 0 || level_[static_cast<std::size_t>(e.to)] != level_[uv] + 1) continue;
    const std::int64_t got = dfs(e.to, t, std::min(pushed, e.cap));
    if (got > 0) {
      e.cap -= got;
      edges_[static_cast<std::size_t>(id ^ 1)].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int source, int sink) {
  std::int64_t total = 0;
  while (bfs(source, sink)) {
    it_.assign(static_cast<std::size_t>(n_), 0);
    while (const std::int64_t f = dfs(source, sink, std::numeric_limits<std::int64_t>::max())) {
      total += f;
    }
  }
  return total;
}

std::int64_t MaxFlow::flow(int id) const {
  return original_[static_cast<std::size_t>(id)] - edges_[static_cast<std::size_t>(2 * id)].cap;
}

MinCostFlow::MinCostFlow(int num_nodes)
    : n_(num_nodes), adj_(static_cast<std::size_t>(num_nodes) + 2) {}

int MinCostFlow::add_edge(int u, int v, std::int64_t capacity, double cost) {
  ensure(capacity >= 0, "min-cost-flow capacity is nonnegative");
  ensure(cost >= 0.0 && std::isfinite(cost), "min-cost-flow cost is finite and nonnegative");
  const int id = static_cast<int>(original_.size());
  adj_[static_cast<std::size_t>(u)].push_back(static_cast<int>(edges_.size()));
  edges_.push_back({v, capacity, cost});
  adj_[static_cast<std::size_t>(v)].push_back(static_cast<int>(edges_.size()));
  edges_.push_back({u, 0, -cost});
  original_.push_back(capacity);
  return id;
}

bool MinCostFlow::solve(const std::vector<std::int64_t>& supply) {
  ensure(static_cast<int>(supply.size()) == n_, "supply vector matches node count");
  const int s = n_, t = n_ + 1;
  std::int64_t need = 0;
  for (int v = 0; v < n_; ++v) {
    const std::int64_t b = supply[static_cast<std::size_t>(v)];
    if (b > 0) {
      add_edge(s, v, b, 0.0);
      need += b;
    } else if (b < 0) {
      add_edge(v, t, -b, 0.0);
    }
  }
  const auto total = static_cast<std::size_t>(n_ + 2);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> potential(total, 0.0), dist(total);
  std::vector<int> parent_edge(total);
  using Item = std::pair<double, int>;
  std::int64_t sent = 0;
  while (sent < need) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(parent_edge.begin(), parent_edge.end(), -1);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(s)] = 0.0;
    heap.push({0.0, s});
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      const auto uv = static_cast<std::size_t>(v);
      if (d > dist[uv]) continue;
      for (int id : adj_[uv]) {
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        if (e.cap <= 0) continue;
        const auto uw = static_cast<std::size_t>(e.to);
        // Rounding can leave reduced costs a hair below zero.
        const double reduced = std::max(0.0, e.cost + potential[uv] - potential[uw]);
        if (d + reduced < dist[uw]) {
          dist[uw] = d + reduced;
          parent_edge[uw] = id;
          heap.push({dist[uw], e.to});
        }
      }
    }
    if (dist[static_cast<std::size_t>(t)] == inf) return false;
    double reach = 0.0;
    for (double d : dist) {
      if (d < inf) reach = std::max(reach, d);
    }
    for (std::size_t v = 0; v < total; ++v) potential[v] += dist[v] < inf ? dist[v] : reach;

    std::int64_t push = need - sent;
    for (int v = t; v != s;) {
      const int id = parent_edge[static_cast<std::size_t>(v)];
      push = std::min(push, edges_[static_cast<std::size_t>(id)].cap);
      v = edges_[static_cast<std::size_t>(id ^ 1)].to;
    }
    for (int v = t; v != s;) {
      const int id = parent_edge[static_cast<std::size_t>(v)];
      edges_[static_cast<std::size_t>(id)].cap -= push;
      edges_[static_cast<std::size_t>(id ^ 1)].cap += push;
      v = edges_[static_cast<std::size_t>(id ^ 1)].to;
    }
    sent += push;
  }
  return true;
}

std::int64_t MinCostFlow::flow(int id) const {
  return original_[static_cast<std::size_t>(id)] - edges_[static_cast<std::size_t>(2 * id)].cap;
}

std::vector<double> MinCostFlow::residual_potentials() const {
  const auto un = static_cast<std::size_t>(n_);
  std::vector<double> p(un, 0.0);
  for (int pass = 0; pass <= n_; ++pass) {
    bool changed = false;
    for (int u = 0; u < n_; ++u) {
      for (int id : adj_[static_cast<std::size_t>(u)]) {
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        if (e.cap <= 0 || e.to >= n_) continue;
        const double cand = p[static_cast<std::size_t>(u)] + e.cost;
        double& pv = p[static_cast<std::size_t>(e.to)];
        if (cand < pv - 1e-14 * (1.0 + std::abs(pv))) {
          pv = cand;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return p;
}

double integer_scale(double total) {
  ensure(total > 0.0 && std::isfinite(total), "scaling total is positive and finite");
  const int e = std::ilogb(total) + 1;  // total < 2^e
  return std::ldexp(1.0, 58 - e);
}

}  // namespace dircheeger
