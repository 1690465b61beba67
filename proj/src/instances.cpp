#include "dircheeger/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "dircheeger/error.hpp"
#include "dircheeger/io.hpp"
#include "dircheeger/random.hpp"

namespace dircheeger {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorKind::kParameter, what);
}

double random_weight(Rng& rng) { return 0.5 + 1.5 * rng.uniform(); }

std::vector<int> shuffled(int n, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1))]);
  }
  return order;
}

void add_clique(std::vector<Arc>& arcs, int first, int size) {
  for (int i = first; i < first + size; ++i) {
    for (int j = first; j < first + size; ++j) {
      if (i != j) arcs.push_back({i, j, 1.0});
    }
  }
}

void add_complete(std::vector<Arc>& arcs, int from, int from_size, int to, int to_size) {
  for (int i = from; i < from + from_size; ++i) {
    for (int j = to; j < to + to_size; ++j) arcs.push_back({i, j, 1.0});
  }
}

double binomial(int n, int r) {
  double c = 1.0;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

double param(const InstanceSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

int int_param(const InstanceSpec& spec, const std::string& key, int fallback) {
  const double x = param(spec, key, fallback);
  require(x == std::floor(x) && std::abs(x) < 1e9, key + " must be an integer");
  return static_cast<int>(x);
}

const FamilyInfo& lookup(const std::string& name) {
  for (const FamilyInfo& f : families()) {
    if (f.name == name) return f;
  }
  throw Error(ErrorKind::kUnknownFamily, "unknown family '" + name + "'");
}

void check_params(const InstanceSpec& spec, const FamilyInfo& info) {
  for (const auto& [key, value] : spec.params) {
    if (std::find(info.params.begin(), info.params.end(), key) == info.params.end()) {
      throw Error(ErrorKind::kParameter, "family " + info.name + " has no parameter '" + key + "'");
    }
  }
}

}  // namespace

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> all = {
      {"cycle", false, "directed cycle on n vertices", {}},
      {"complete_dag", false, "arcs i->j for i<j on n vertices, unit self-loops unless loops=0", {"loops"}},
      {"bidirected_clique", false, "complete bidirected graph on n vertices", {}},
      {"two_clique_bridge", false, "two n-cliques, all arcs L->R, one arc R->L (2n vertices)", {}},
      {"fast_dropping_cycle", false, "n-cycle with extra arcs i->n-1 for 1<=i<=n-3", {}},
      {"bipartite_counterexample", false, "K_{n,n} on S,T with four n/2-cliques (4n vertices, n even)", {}},
      {"hypercube", false, "bidirected hypercube of dimension n (2^n vertices)", {}},
      {"random_strong", false, "Hamiltonian cycle plus arcs with probability p (default 0.2)", {"p"}},
      {"random_eulerian", false, "sum of `cycles` random cycles (default 3)", {"cycles"}},
      {"random_uniform_hypergraph", true, "m random r-subsets (defaults m=2n, r=3)", {"m", "r"}},
      {"tight_cycle_hypergraph", true, "hyperedges {i..i+r-1} mod n (default r=3)", {"r"}},
  };
  return all;
}

DirectedGraph directed_cycle(int n) {
  require(n >= 2, "cycle needs n >= 2");
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) arcs.push_back({i, (i + 1) % n, 1.0});
  return DirectedGraph(n, arcs);
}

DirectedGraph complete_dag(int n, bool loops) {
  require(n >= 2, "complete_dag needs n >= 2");
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) {
    if (loops) arcs.push_back({i, i, 1.0});
    for (int j = i + 1; j < n; ++j) arcs.push_back({i, j, 1.0});
  }
  return DirectedGraph(n, arcs);
}

DirectedGraph bidirected_clique(int n) {
  require(n >= 2, "bidirected_clique needs n >= 2");
  std::vector<Arc> arcs;
  add_clique(arcs, 0, n);
  return DirectedGraph(n, arcs);
}

DirectedGraph two_clique_bridge(int n) {
  require(n >= 2, "two_clique_bridge needs n >= 2 per side");
  std::vector<Arc> arcs;
  add_clique(arcs, 0, n);
  add_clique(arcs, n, n);
  add_complete(arcs, 0, n, n, n);
  arcs.push_back({2 * n - 1, 0, 1.0});
  return DirectedGraph(2 * n, arcs);
}

DirectedGraph fast_dropping_cycle(int n) {
  require(n >= 4, "fast_dropping_cycle needs n >= 4");
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) arcs.push_back({i, (i + 1) % n, 1.0});
  for (int i = 1; i <= n - 3; ++i) arcs.push_back({i, n - 1, 1.0});
  return DirectedGraph(n, arcs);
}

DirectedGraph bipartite_counterexample(int n) {
  require(n >= 2 && n % 2 == 0, "bipartite_counterexample needs an even n >= 2");
  const int half = n / 2;
  const int s = 0, t = n, c1 = 2 * n, c2 = c1 + half, c3 = c2 + half, c4 = c3 + half;
  std::vector<Arc> arcs;
  add_complete(arcs, s, n, t, n);
  add_complete(arcs, t, n, s, n);
  for (int c : {c1, c2, c3, c4}) add_clique(arcs, c, half);
  add_complete(arcs, s, n, c1, half);
  add_complete(arcs, c2, half, s, n);
  add_complete(arcs, t, n, c3, half);
  add_complete(arcs, c4, half, t, n);
  arcs.push_back({c2 - 1, c2, 1.0});
  arcs.push_back({c4 - 1, c4, 1.0});
  return DirectedGraph(4 * n, arcs);
}

DirectedGraph hypercube(int d) {
  require(d >= 1 && d <= 20, "hypercube dimension must lie in [1, 20]");
  const int n = 1 << d;
  std::vector<Arc> arcs;
  for (int v = 0; v < n; ++v) {
    for (int b = 0; b < d; ++b) arcs.push_back({v, v ^ (1 << b), 1.0});
  }
  return DirectedGraph(n, arcs);
}

DirectedGraph random_strong(int n, double p, std::uint64_t seed) {
  require(n >= 2, "random_strong needs n >= 2");
  require(p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
  Rng rng(seed);
  const std::vector<int> order = shuffled(n, rng);
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) {
    arcs.push_back({order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>((i + 1) % n)],
                    random_weight(rng)});
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && rng.uniform() < p) arcs.push_back({u, v, random_weight(rng)});
    }
  }
  return DirectedGraph(n, arcs);
}

DirectedGraph random_eulerian(int n, int cycles, std::uint64_t seed) {
  require(n >= 2, "random_eulerian needs n >= 2");
  require(cycles >= 1, "cycles must be positive");
  Rng rng(seed);
  std::vector<Arc> arcs;
  for (int c = 0; c < cycles; ++c) {
    std::vector<int> order = shuffled(n, rng);
    const int len = c == 0 ? n : 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    order.resize(static_cast<std::size_t>(len));
    const double w = random_weight(rng);
    for (int i = 0; i < len; ++i) {
      arcs.push_back({order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>((i + 1) % len)], w});
    }
  }
  return DirectedGraph(n, arcs);
}

Hypergraph random_uniform_hypergraph(int n, int m, int r, std::uint64_t seed) {
  require(n >= 2 && r >= 1 && r <= n, "random_uniform_hypergraph needs 1 <= r <= n");
  require(m >= 1 && m <= binomial(n, r), "m must lie in [1, C(n, r)]");
  Rng rng(seed);
  std::set<std::vector<int>> seen;
  std::vector<Hyperedge> edges;
  while (static_cast<int>(edges.size()) < m) {
    std::vector<int> e = shuffled(n, rng);
    e.resize(static_cast<std::size_t>(r));
    std::sort(e.begin(), e.end());
    const double w = random_weight(rng);
    if (seen.insert(e).second) edges.push_back({std::move(e), w});
  }
  return Hypergraph(n, std::move(edges));
}

Hypergraph tight_cycle_hypergraph(int n, int r) {
  require(n >= 2 && r >= 2 && r <= n, "tight_cycle_hypergraph needs 2 <= r <= n");
  std::vector<Hyperedge> edges;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e;
    for (int j = 0; j < r; ++j) e.push_back((i + j) % n);
    std::sort(e.begin(), e.end());
    edges.push_back({std::move(e), 1.0});
  }
  return Hypergraph(n, std::move(edges));
}

Instance generate(const InstanceSpec& spec) {
  const FamilyInfo& info = lookup(spec.family);
  check_params(spec, info);
  const std::string& f = spec.family;
  const int n = spec.n;
  if (f == "cycle") return directed_cycle(n);
  if (f == "complete_dag") return complete_dag(n, int_param(spec, "loops", 1) != 0);
  if (f == "bidirected_clique") return bidirected_clique(n);
  if (f == "two_clique_bridge") return two_clique_bridge(n);
  if (f == "fast_dropping_cycle") return fast_dropping_cycle(n);
  if (f == "bipartite_counterexample") return bipartite_counterexample(n);
  if (f == "hypercube") return hypercube(n);
  if (f == "random_strong") return random_strong(n, param(spec, "p", 0.2), spec.seed);
  if (f == "random_eulerian") return random_eulerian(n, int_param(spec, "cycles", 3), spec.seed);
  if (f == "random_uniform_hypergraph") {
    return random_uniform_hypergraph(n, int_param(spec, "m", 2 * n), int_param(spec, "r", 3), spec.seed);
  }
  return tight_cycle_hypergraph(n, int_param(spec, "r", 3));
}

DirectedGraph generate_digraph(const InstanceSpec& spec) {
  Instance inst = generate(spec);
  if (auto* g = std::get_if<DirectedGraph>(&inst)) return std::move(*g);
  throw Error(ErrorKind::kParameter, "family " + spec.family + " produces a hypergraph");
}

Hypergraph generate_hypergraph(const InstanceSpec& spec) {
  Instance inst = generate(spec);
  if (auto* h = std::get_if<Hypergraph>(&inst)) return std::move(*h);
  throw Error(ErrorKind::kParameter, "family " + spec.family + " produces a directed graph");
}

std::string describe(const InstanceSpec& spec) {
  std::ostringstream out;
  out << "family=" << spec.family << " n=" << spec.n << " seed=" << spec.seed;
  for (const auto& [key, value] : spec.params) out << ' ' << key << '=' << format_double(value);
  return out.str();
}

}  // namespace dircheeger
