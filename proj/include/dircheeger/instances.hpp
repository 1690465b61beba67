#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "dircheeger/graph.hpp"

namespace dircheeger {

/// Generator request. `n` is the family's size parameter (see family_help);
/// `params` holds the optional named extras.
struct InstanceSpec {
  std::string family;
  int n = 0;
  std::uint64_t seed = 1;
  std::map<std::string, double> params;
};

using Instance = std::variant<DirectedGraph, Hypergraph>;

struct FamilyInfo {
  std::string name;
  bool hypergraph = false;
  std::string help;
  std::vector<std::string> params;
};

/// Every known family, in a fixed order.
const std::vector<FamilyInfo>& families();

/// Throws kUnknownFamily for an unknown name, kParameter for bad sizes or
/// unknown parameter names. Equal specs give identical instances.
Instance generate(const InstanceSpec& spec);

DirectedGraph generate_digraph(const InstanceSpec& spec);
Hypergraph generate_hypergraph(const InstanceSpec& spec);

/// One-line description "family=... n=... seed=... key=value", used as the
/// comment header of generated files.
std::string describe(const InstanceSpec& spec);

// Direct constructors used by the generator and the tests.
DirectedGraph directed_cycle(int n);
/// Arcs i -> j for i < j, plus unit self-loops when `loops` is set.
DirectedGraph complete_dag(int n, bool loops = true);
DirectedGraph bidirected_clique(int n);
/// Bidirected cliques L = 0..n-1 and R = n..2n-1, every arc L -> R and one
/// arc from r = 2n-1 to l = 0.
DirectedGraph two_clique_bridge(int n);
/// Cycle 0 -> 1 -> ... -> n-1 -> 0 with extra arcs i -> n-1 for 1 <= i <= n-3.
DirectedGraph fast_dropping_cycle(int n);
/// S = 0..n-1, T = n..2n-1, then cliques C1..C4 of n/2 vertices each. S u T
/// is a bidirected K_{n,n}; S -> C1, C2 -> S, T -> C3, C4 -> T completely; a
/// single arc C1 -> C2 and a single arc C3 -> C4. n must be even.
DirectedGraph bipartite_counterexample(int n);
/// Bidirected d-dimensional hypercube on 2^d vertices.
DirectedGraph hypercube(int d);
/// Random Hamiltonian cycle plus each other ordered pair with probability p;
/// weights uniform in [0.5, 2).
DirectedGraph random_strong(int n, double p, std::uint64_t seed);
/// Sum of one random Hamiltonian cycle and `cycles - 1` random cycles on
/// random vertex subsets; in-weight equals out-weight at every vertex.
DirectedGraph random_eulerian(int n, int cycles, std::uint64_t seed);
/// m distinct random r-subsets with weights uniform in [0.5, 2).
Hypergraph random_uniform_hypergraph(int n, int m, int r, std::uint64_t seed);
/// Hyperedges {i, i+1, ..., i+r-1} mod n.
Hypergraph tight_cycle_hypergraph(int n, int r);

}  // namespace dircheeger
