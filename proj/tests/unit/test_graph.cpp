#include <sstream>

#include "doctest.h"
#include "dircheeger/error.hpp"
#include "dircheeger/expansion.hpp"
#include "dircheeger/io.hpp"
#include "fixtures.hpp"

using namespace dircheeger;
using fixtures::bidirected_clique;
using fixtures::complete_dag;
using fixtures::cycle;

TEST_CASE("graph merges parallel arcs and caches degrees") {
  DirectedGraph g(3, {{0, 1, 1.0}, {0, 1, 2.0}, {1, 2, 1.0}, {2, 2, 0.5}});
  CHECK(g.num_arcs() == 3);
  CHECK(g.arc(0).weight == 3.0);
  CHECK(g.degree(0) == 3.0);
  CHECK(g.degree(2) == 2.0);  // loop counts twice
  CHECK(g.max_degree() == 2);
  CHECK_THROWS_AS(DirectedGraph(2, {{0, 2, 1.0}}), Error);
  CHECK_THROWS_AS(DirectedGraph(2, {{0, 1, -1.0}}), Error);
}

TEST_CASE("edge conductance examples") {
  CHECK(directed_edge_conductance(cycle(4), std::vector<int>{0, 1}) == doctest::Approx(0.25));
  DirectedGraph k2(2, {{0, 1, 1.0}, {1, 0, 1.0}});
  CHECK(directed_edge_conductance(k2, std::vector<int>{0}) == doctest::Approx(0.5));
  CHECK(directed_edge_conductance(complete_dag(3), std::vector<int>{0}) == 0.0);
  CHECK_THROWS_AS(directed_edge_conductance(cycle(4), std::vector<int>{}), Error);
  CHECK_THROWS_AS(directed_edge_conductance(cycle(4), std::vector<int>{0, 1, 2, 3}), Error);
}

TEST_CASE("vertex expansion examples") {
  const auto one4 = VertexWeights::uniform(4);
  CHECK(directed_vertex_expansion(cycle(4), one4, std::vector<int>{0, 1}) == doctest::Approx(0.5));
  CHECK(directed_vertex_expansion(complete_dag(3), VertexWeights::uniform(3), std::vector<int>{2}) ==
        0.0);
  const auto k4 = bidirected_clique(4);
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      CHECK(directed_vertex_expansion(k4, one4, std::vector<int>{a, b}) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("hypergraph conductance examples") {
  Hypergraph h(3, {{{0, 1, 2}, 1.0}});
  CHECK(hypergraph_conductance(h, std::vector<int>{0}) == doctest::Approx(1.0));
  Hypergraph two(4, {{{0, 1}, 1.0}, {{2, 3}, 1.0}});
  CHECK(hypergraph_conductance(two, std::vector<int>{0, 1}) == 0.0);
}

TEST_CASE("brute force optima") {
  const Cut c4 = brute_force_edge_conductance(cycle(4));
  CHECK(c4.value == doctest::Approx(0.25));
  CHECK(c4.vertices == std::vector<int>{0, 1});
  CHECK(brute_force_edge_conductance(complete_dag(5)).value == 0.0);
  CHECK(brute_force_vertex_expansion(complete_dag(5), VertexWeights::uniform(5)).value == 0.0);
  const Cut c6 = brute_force_vertex_expansion(cycle(6), VertexWeights::uniform(6));
  CHECK(c6.value == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(brute_force_edge_conductance(cycle(25)), Error);
}

TEST_CASE("tight-cycle hypergraph matches enumeration") {
  std::vector<Hyperedge> edges;
  for (int i = 0; i < 6; ++i) edges.push_back({{i, (i + 1) % 6, (i + 2) % 6}, 1.0});
  Hypergraph h(6, edges);
  const Cut best = brute_force_hypergraph_conductance(h);
  // Every vertex has degree 3, a contiguous triple cuts 4 edges: 4/9.
  CHECK(best.value == doctest::Approx(4.0 / 9.0));
  for (std::uint64_t mask = 1; mask < 63; ++mask) {
    Membership s(6);
    for (int v = 0; v < 6; ++v) s[static_cast<std::size_t>(v)] = static_cast<char>(mask >> v & 1);
    CHECK(best.value <= hypergraph_conductance(h, s) + 1e-15);
  }
}

TEST_CASE("evaluators are complement symmetric and bounded") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const DirectedGraph g = fixtures::random_strong(rng, n, 0.3).with_loops(0.7);
    std::vector<double> p;
    for (int v = 0; v < n; ++v) p.push_back(0.1 + rng.uniform());
    const VertexWeights pi(p);
    const Cut best_e = brute_force_edge_conductance(g);
    const Cut best_v = brute_force_vertex_expansion(g, pi);
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
      Membership s(static_cast<std::size_t>(n)), t(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) {
        s[static_cast<std::size_t>(v)] = static_cast<char>(mask >> v & 1);
        t[static_cast<std::size_t>(v)] = static_cast<char>(!(mask >> v & 1));
      }
      const double phi = directed_edge_conductance(g, s);
      const double psi = directed_vertex_expansion(g, pi, s);
      CHECK(phi == directed_edge_conductance(g, t));
      CHECK(psi == directed_vertex_expansion(g, pi, t));
      CHECK(phi >= 0.0);
      CHECK(phi <= 1.0);
      CHECK(psi >= 0.0);
      CHECK(psi <= 1.0);
      CHECK(best_e.value <= phi);
      CHECK(best_v.value <= psi + 1e-15);
      // Self-loops never enter a boundary.
      CHECK(directed_vertex_expansion(g.without_loops(), pi, s) == psi);
    }
  }
}

TEST_CASE("strongly connected components") {
  CHECK(scc_components(cycle(7)).size() == 1);
  const auto dag = scc_components(complete_dag(6));
  CHECK(dag.size() == 6);
  CHECK(dag.front() == std::vector<int>{0});  // source first
  std::vector<Arc> arcs;
  for (int base : {0, 3}) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) arcs.push_back({base + i, base + j, 1.0});
      }
    }
  }
  arcs.push_back({2, 3, 1.0});
  const auto two = scc_components(DirectedGraph(6, arcs));
  REQUIRE(two.size() == 2);
  CHECK(two[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("pi-induced weights") {
  const DirectedGraph c3 = cycle(3);
  const auto w = pi_induced_weights(c3, VertexWeights({1.0, 2.0, 3.0}));
  CHECK(w == std::vector<double>{1.0, 2.0, 1.0});
  DirectedGraph uv(2, {{0, 1, 1.0}});
  CHECK(pi_induced_weights(uv, VertexWeights({2.0, 5.0}))[0] == 2.0);
}

TEST_CASE("text formats round trip") {
  std::istringstream in("# comment\ndigraph 3 3\n0 1 1.5\n1 2 2 # trailing\n2 0 0.25\n");
  const DirectedGraph g = read_digraph(in);
  std::ostringstream out;
  write_digraph(out, g);
  std::istringstream again(out.str());
  const DirectedGraph h = read_digraph(again);
  CHECK(h.num_arcs() == 3);
  CHECK(h.arc(2).weight == 0.25);

  std::istringstream hin("hypergraph 4 2\n1 3 0 1 2\n2.5 2 2 3\n");
  const Hypergraph hg = read_hypergraph(hin);
  CHECK(hg.rank() == 3);
  CHECK(hg.degree(2) == 3.5);

  std::istringstream bad("digraph 2 1\n0 5 1\n");
  CHECK_THROWS_AS(read_digraph(bad), Error);
  std::istringstream pin("0 0.5\n1 0.5\n");
  CHECK(read_vertex_weights(pin, 2).total() == 1.0);
}
