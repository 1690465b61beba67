#include <cmath>
#include <limits>

#include "doctest.h"
#include "dircheeger/circulation.hpp"
#include "dircheeger/error.hpp"
#include "dircheeger/flow_network.hpp"
#include "fixtures.hpp"

using namespace dircheeger;
using fixtures::complete_dag;
using fixtures::cycle;

namespace {

/// max over S of w(out S) / w(out V-S), ignoring 0/0 cuts.
double brute_alpha(const DirectedGraph& g, const std::vector<double>& w) {
  const int n = g.num_vertices();
  double best = 0.0;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    double out = 0.0, back = 0.0;
    for (int i = 0; i < g.num_arcs(); ++i) {
      const Arc& a = g.arc(i);
      const bool t = mask >> a.tail & 1, h = mask >> a.head & 1;
      if (t && !h) out += w[static_cast<std::size_t>(i)];
      if (!t && h) back += w[static_cast<std::size_t>(i)];
    }
    if (out == 0.0 && back == 0.0) continue;
    if (back == 0.0) return std::numeric_limits<double>::infinity();
    best = std::max(best, out / back);
  }
  return best;
}

void check_eulerian(const DirectedGraph& g, const Reweighting& a) {
  double l1 = 0.0;
  for (double x : a.values) {
    CHECK(x >= 0.0);
    l1 += x;
  }
  CHECK(max_imbalance(g, a.values) <= 1e-9 * std::max(1.0, l1));
}

void check_duality(const DirectedGraph& g, const OracleResult& res, std::span<const double> lengths) {
  CHECK(dual_min_slack(g, res.dual, lengths) >= -1e-9);
  for (double q : res.dual.q) CHECK(q >= 0.0);
  CHECK(std::abs(res.value - res.dual.objective) <= 1e-6 * (1.0 + std::abs(res.value)));
}

}  // namespace

TEST_CASE("max flow and min cost flow basics") {
  MaxFlow mf(4);
  mf.add_edge(0, 1, 3);
  mf.add_edge(0, 2, 2);
  const int e = mf.add_edge(1, 3, 2);
  mf.add_edge(2, 3, 3);
  mf.add_edge(1, 2, 5);
  CHECK(mf.run(0, 3) == 5);
  CHECK(mf.flow(e) == 2);

  MinCostFlow mc(3);
  const int cheap = mc.add_edge(0, 2, 1, 1.0);
  const int pricey = mc.add_edge(0, 1, 5, 1.0);
  mc.add_edge(1, 2, 5, 2.0);
  REQUIRE(mc.solve({3, 0, -3}));
  CHECK(mc.flow(cheap) == 1);
  CHECK(mc.flow(pricey) == 2);
  CHECK_FALSE(MinCostFlow(2).solve({1, -1}));
}

TEST_CASE("hoffman circulation examples") {
  DirectedGraph g(2, {{0, 1, 1.0}, {1, 0, 2.0}});
  const auto w = g.weights();
  const auto a = hoffman_circulation(g, w, 2.0);
  REQUIRE(a);
  CHECK(a->values[0] == doctest::Approx(2.0));
  CHECK(a->values[1] == doctest::Approx(2.0));
  CHECK_FALSE(hoffman_circulation(g, w, 1.5));
  CHECK_THROWS_AS(hoffman_circulation(g, w, 0.5), Error);

  const DirectedGraph c3 = cycle(3);
  const auto id = hoffman_circulation(c3, c3.weights(), 1.0);
  REQUIRE(id);
  CHECK(id->values == c3.weights());
}

TEST_CASE("asymmetric ratio examples") {
  CHECK(asymmetric_ratio(cycle(5)) == 1.0);
  CHECK(asymmetric_ratio(DirectedGraph(2, {{0, 1, 1.0}, {1, 0, 2.0}})) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::isinf(asymmetric_ratio(complete_dag(4))));
  CHECK_THROWS_AS(asymmetric_ratio(DirectedGraph(3, {})), Error);
}

TEST_CASE("asymmetric ratio matches exhaustive ratio") {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(8));
    const DirectedGraph g = fixtures::random_strong(rng, n, 0.25);
    const auto w = g.weights();
    const double alpha = asymmetric_ratio(g);
    CHECK(alpha == doctest::Approx(brute_alpha(g, w)).epsilon(1e-8));
    // Feasibility is monotone in alpha.
    CHECK(hoffman_circulation(g, w, alpha * 1.01).has_value());
    CHECK(hoffman_circulation(g, w, alpha * 2.0).has_value());
  }
}

TEST_CASE("edge oracle examples") {
  const DirectedGraph c4 = cycle(4);
  const std::vector<double> ones(4, 1.0);
  const OracleResult full = eulerian_oracle_edge(c4, ones);
  CHECK(full.value == doctest::Approx(4.0));
  for (double x : full.a.values) CHECK(x == doctest::Approx(1.0));
  check_duality(c4, full, ones);

  const std::vector<double> partial{1.0, 1.0, 1.0, 0.0};
  const OracleResult three = eulerian_oracle_edge(c4, partial);
  CHECK(three.value == doctest::Approx(3.0));
  check_duality(c4, three, partial);

  DirectedGraph k2(2, {{0, 1, 1.0}, {1, 0, 1.0}});
  const std::vector<double> skew{5.0, 1.0};
  const OracleResult both = eulerian_oracle_edge(k2, skew);
  CHECK(both.value == doctest::Approx(6.0));
  check_duality(k2, both, skew);
  CHECK_THROWS_AS(eulerian_oracle_edge(k2, std::vector<double>{-1.0, 1.0}), Error);
}

TEST_CASE("vertex oracle examples") {
  const DirectedGraph k2 = DirectedGraph(2, {{0, 1, 1.0}, {1, 0, 1.0}}).with_loops(1.0);
  const VertexWeights half({0.5, 0.5});
  std::vector<double> len(static_cast<std::size_t>(k2.num_arcs()), 0.0);
  len[static_cast<std::size_t>(*k2.find_arc(0, 1))] = 1.0;
  len[static_cast<std::size_t>(*k2.find_arc(1, 0))] = 1.0;
  const OracleResult res = eulerian_oracle_vertex(k2, half, len);
  CHECK(res.value == doctest::Approx(1.0));
  CHECK(res.a.values[static_cast<std::size_t>(*k2.find_arc(0, 1))] == doctest::Approx(0.5));
  check_duality(k2, res, len);

  const DirectedGraph c3 = cycle(3).with_loops(1.0);
  const VertexWeights one = VertexWeights::uniform(3);
  std::vector<double> zero(static_cast<std::size_t>(c3.num_arcs()), 0.0);
  const OracleResult idle = eulerian_oracle_vertex(c3, one, zero);
  CHECK(idle.value == 0.0);
  std::vector<double> cyc(zero);
  for (int i = 0; i < c3.num_arcs(); ++i) {
    if (!c3.arc(i).is_loop()) cyc[static_cast<std::size_t>(i)] = 1.0;
  }
  const OracleResult spin = eulerian_oracle_vertex(c3, one, cyc);
  CHECK(spin.value == doctest::Approx(3.0));
  for (int i = 0; i < c3.num_arcs(); ++i) {
    CHECK(spin.a.values[static_cast<std::size_t>(i)] ==
          doctest::Approx(c3.arc(i).is_loop() ? 0.0 : 1.0));
  }
  CHECK_THROWS_AS(eulerian_oracle_vertex(cycle(3), one, std::vector<double>(3, 1.0)), Error);
}

TEST_CASE("oracles are optimal and satisfy the large optimal property") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(8));
    const DirectedGraph g = fixtures::random_strong(rng, n, 0.3).with_loops(0.0);
    std::vector<double> p;
    for (int v = 0; v < n; ++v) p.push_back(0.2 + rng.uniform());
    const VertexWeights pi = VertexWeights(p).normalized();
    std::vector<double> len;
    for (const Arc& a : g.arcs()) len.push_back(a.is_loop() ? 0.0 : rng.uniform());

    const OracleResult e = eulerian_oracle_edge(g, len);
    check_eulerian(g, e.a);
    check_duality(g, e, len);
    for (int i = 0; i < g.num_arcs(); ++i) {
      CHECK(e.a.values[static_cast<std::size_t>(i)] <= g.arc(i).weight * (1.0 + 1e-12));
    }
    double wl = 0.0;
    for (int i = 0; i < g.num_arcs(); ++i) wl += g.arc(i).weight * len[static_cast<std::size_t>(i)];
    CHECK(e.value >= wl / asymmetric_ratio(g) - 1e-9);

    const OracleResult v = eulerian_oracle_vertex(g, pi, len);
    check_eulerian(g, v.a);
    check_duality(g, v, len);
    std::vector<double> col(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < g.num_arcs(); ++i) {
      col[static_cast<std::size_t>(g.arc(i).head)] += v.a.values[static_cast<std::size_t>(i)];
    }
    for (int u = 0; u < n; ++u) CHECK(col[static_cast<std::size_t>(u)] == doctest::Approx(pi[u]).epsilon(1e-12));
    const auto wpi = pi_induced_weights(g, pi);
    double wpil = 0.0;
    for (int i = 0; i < g.num_arcs(); ++i) wpil += wpi[static_cast<std::size_t>(i)] * len[static_cast<std::size_t>(i)];
    CHECK(v.value >= wpil / (g.max_degree() * asymmetric_ratio(g, pi)) - 1e-9);

    double sum_r = 0.0;
    for (int u = 0; u < n; ++u) sum_r += pi[u] * v.dual.r[static_cast<std::size_t>(u)];
    CHECK(std::abs(sum_r) <= 1e-9);
  }
}
