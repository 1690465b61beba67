#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dircheeger/error.hpp"
#include "dircheeger/rounding.hpp"
#include "fixtures.hpp"

using namespace dircheeger;
using fixtures::complete_dag;
using fixtures::cycle;

namespace {

DirectedGraph two_triangles() {
  std::vector<Arc> arcs;
  for (int base : {0, 3}) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) arcs.push_back({base + i, base + j, 1.0});
      }
    }
  }
  return DirectedGraph(6, arcs);
}

Embedding column(std::vector<double> values, std::vector<double> weights, WeightKind kind) {
  Matrix f(static_cast<Eigen::Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) f(static_cast<Eigen::Index>(i), 0) = values[i];
  return make_embedding(f, std::move(weights), kind);
}

/// C4's optimal 2-dim embedding: (cos, sin) of the quarter turns, d = 2.
Embedding c4_circle() {
  Matrix f(4, 2);
  const double s = 1.0 / std::sqrt(8.0);
  for (int v = 0; v < 4; ++v) {
    f(v, 0) = s * std::cos(std::numbers::pi * v / 2.0);
    f(v, 1) = s * std::sin(std::numbers::pi * v / 2.0);
  }
  return make_embedding(f, {2, 2, 2, 2}, WeightKind::kDegree);
}

double l1_mass(const Embedding& g) {
  double s = 0.0;
  for (int v = 0; v < g.size(); ++v) s += g.weights[static_cast<std::size_t>(v)] * std::abs(g.f(v, 0));
  return s;
}

Hypergraph random_hypergraph(Rng& rng, int n, int m) {
  std::vector<Hyperedge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({{v, v + 1}, 0.5 + rng.uniform()});
  for (int e = 0; e < m; ++e) {
    std::vector<int> vs;
    for (int v = 0; v < n; ++v) {
      if (rng.uniform() < 0.4) vs.push_back(v);
    }
    if (vs.size() >= 2) edges.push_back({vs, 0.5 + rng.uniform()});
  }
  return Hypergraph(n, edges);
}

}  // namespace

TEST_CASE("project_random") {
  const Embedding f = column({0.5, 0.0, -0.5, 0.0}, {2, 2, 2, 2}, WeightKind::kDegree);
  const Embedding h = project_random(f, 1, 7);
  const double ratio = h.f(0, 0) / f.f(0, 0);
  for (int v = 0; v < 4; ++v) CHECK(h.f(v, 0) == doctest::Approx(ratio * f.f(v, 0)));
  CHECK(std::abs(ratio) == doctest::Approx(1.0));

  Rng rng(2);
  Matrix m(6, 4);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = rng.normal();
  }
  Embedding e = make_embedding(m, {1, 2, 3, 1, 2, 3}, WeightKind::kPi);
  center(e);
  normalize(e);
  const Embedding p = project_random(e, 2, 99);
  CHECK(p.dim() == 2);
  CHECK(weighted_mean(p).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(weighted_norm2(p) == doctest::Approx(1.0));
  // Same seed, same projection.
  CHECK(project_random(e, 2, 99).f == p.f);
  CHECK_THROWS_AS(project_random(e, 0, 1), Error);
}

TEST_CASE("projections of the C4 circle stay within 4x of the gap") {
  const Embedding f = c4_circle();
  CHECK(certify_upper(cycle(4), Mode::kEdge, std::nullopt, f) == doctest::Approx(0.5));
  std::vector<double> values;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    values.push_back(certify_upper(cycle(4), Mode::kEdge, std::nullopt, project_random(f, 1, seed)));
  }
  std::nth_element(values.begin(), values.begin() + 50, values.end());
  CHECK(values[50] <= 4.0 * 0.5);
}

TEST_CASE("best_coordinate") {
  const Embedding one = column({0.5, 0.0, -0.5, 0.0}, {2, 2, 2, 2}, WeightKind::kDegree);
  const CoordinateChoice c1 = best_coordinate(cycle(4), Mode::kEdge, std::nullopt, one);
  CHECK(c1.index == 0);
  CHECK((c1.f.f - one.f).cwiseAbs().maxCoeff() <= 1e-12);

  // Cosine coordinate (value 1/2) beside the alternating one (value 1).
  Matrix f(4, 2);
  const double a = 0.5 / std::sqrt(2.0), b = 1.0 / std::sqrt(16.0);
  f << a, b, 0, -b, -a, b, 0, -b;
  const CoordinateChoice c2 =
      best_coordinate(cycle(4), Mode::kEdge, std::nullopt, make_embedding(f, {2, 2, 2, 2}, WeightKind::kDegree));
  CHECK(c2.index == 0);
  CHECK(c2.value == doctest::Approx(0.5));

  Rng rng(4);
  Matrix r(6, 3);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = rng.normal();
  }
  Embedding e = make_embedding(r, cycle(6).degrees(), WeightKind::kDegree);
  center(e);
  normalize(e);
  const CoordinateChoice c3 = best_coordinate(cycle(6), Mode::kEdge, std::nullopt, e);
  CHECK(c3.value <= 3.0 * c3.full_value);

  Matrix zero = Matrix::Zero(4, 1);
  CHECK_THROWS_AS(best_coordinate(cycle(4), Mode::kEdge, std::nullopt,
                                  make_embedding(zero, {2, 2, 2, 2}, WeightKind::kDegree)),
                  Error);
}

TEST_CASE("square_map examples") {
  SquareMap s = square_map(column({1, -1}, {0.5, 0.5}, WeightKind::kPi));
  CHECK(s.shift == doctest::Approx(0.0));
  CHECK(s.g.f(0, 0) == doctest::Approx(1.0));
  CHECK(s.g.f(1, 0) == doctest::Approx(-1.0));

  s = square_map(column({1.5, 0.0, -1.5}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, WeightKind::kPi));
  CHECK(s.shift == doctest::Approx(0.0));
  CHECK(s.g.f(0, 0) == doctest::Approx(1.5));
  CHECK(s.g.f(1, 0) == doctest::Approx(0.0));
  CHECK(s.g.f(2, 0) == doctest::Approx(-1.5));

  const Embedding f = column({2.0 / 3, -2.0}, {0.75, 0.25}, WeightKind::kPi);
  s = square_map(f);
  const double x0 = f.f(0, 0) + s.shift, x1 = f.f(1, 0) + s.shift;
  const double residual = 0.75 * (x0 > 0 ? x0 * x0 : -x0 * x0) + 0.25 * (x1 > 0 ? x1 * x1 : -x1 * x1);
  CHECK(std::abs(residual) <= 1e-12);
  CHECK(l1_mass(s.g) == doctest::Approx(1.0));
  CHECK(s.l1_ratio >= 1.0);
  CHECK(s.l1_ratio <= 2.0);

  CHECK_THROWS_AS(square_map(column({1, 1}, {0.5, 0.5}, WeightKind::kPi)), Error);
}

TEST_CASE("square_map on random embeddings") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(9));
    Matrix f(n, 1);
    std::vector<double> w;
    for (int v = 0; v < n; ++v) {
      f(v, 0) = rng.normal() * (trial % 3 == 0 ? 10.0 : 1.0);
      w.push_back(0.1 + rng.uniform());
    }
    Embedding e = make_embedding(f, w, WeightKind::kPi);
    center(e);
    normalize(e);
    const SquareMap s = square_map(e);
    CHECK(s.l1_ratio >= 1.0 - 1e-9);
    CHECK(s.l1_ratio <= 2.0 + 1e-9);
    CHECK(l1_mass(s.g) == doctest::Approx(1.0));
    CHECK(std::abs(weighted_mean(s.g)(0)) <= 1e-10);
    check_square_distortion(fixtures::random_strong(rng, n, 0.5), e, s.shift);
  }
}

TEST_CASE("dual_from_embedding examples") {
  const DirectedGraph tri = two_triangles();
  const double a = 1.0 / 24.0;
  const Embedding split = column({a, a, a, -a, -a, -a}, tri.degrees(), WeightKind::kDegree);
  const DualCertificate d0 = dual_from_embedding(tri, Mode::kEdge, std::nullopt, split);
  CHECK(d0.objective == doctest::Approx(0.0));
  for (double q : d0.q) CHECK(q == doctest::Approx(0.0));

  // Uniform circulation on C4 crosses the two length-1/4 arcs.
  const Embedding half = column({0.125, 0.125, -0.125, -0.125}, {2, 2, 2, 2}, WeightKind::kDegree);
  CHECK(dual_from_embedding(cycle(4), Mode::kEdge, std::nullopt, half).objective == doctest::Approx(0.5));

  const DirectedGraph k2(2, {{0, 1, 1.0}, {1, 0, 1.0}, {0, 0, 1.0}, {1, 1, 1.0}});
  const Embedding pm = column({1, -1}, {0.5, 0.5}, WeightKind::kPi);
  CHECK(dual_from_embedding(k2, Mode::kVertex, VertexWeights({0.5, 0.5}), pm).objective == doctest::Approx(2.0));
}

TEST_CASE("weighted lower median") {
  CHECK(weighted_lower_median({3, 1, 2, 4}, {1, 1, 1, 1}) == 2.0);
  CHECK(weighted_lower_median({1, 2}, {0.5, 0.5}) == 1.0);
  CHECK(weighted_lower_median({1, 2, 3}, {0.1, 0.1, 5}) == 3.0);
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x, w;
    const int n = 1 + static_cast<int>(rng.below(8));
    for (int i = 0; i < n; ++i) {
      x.push_back(static_cast<double>(rng.below(4)));
      w.push_back(rng.below(3) + 1.0);
    }
    const double m = weighted_lower_median(x, w);
    double above = 0.0, below = 0.0, total = 0.0;
    for (int i = 0; i < n; ++i) {
      total += w[static_cast<std::size_t>(i)];
      if (x[static_cast<std::size_t>(i)] > m) above += w[static_cast<std::size_t>(i)];
      if (x[static_cast<std::size_t>(i)] < m) below += w[static_cast<std::size_t>(i)];
    }
    CHECK(above <= total / 2);
    CHECK(below <= total / 2);
  }
}

TEST_CASE("sweep examines every distinct level") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const DirectedGraph g = fixtures::random_strong(rng, n, 0.3);
    std::vector<double> values;
    for (int v = 0; v < n; ++v) values.push_back(rng.uniform());
    const auto eval = [&](const Membership& s) { return directed_edge_conductance(g, s); };
    const SweepResult r = sweep(values, CutMode::kEdgeConductance, eval);
    CHECK(r.examined == n - 1);
    // Exhaustive minimum over the n - 1 prefixes of the sorted order.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return values[static_cast<std::size_t>(a)] > values[static_cast<std::size_t>(b)]; });
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k < n; ++k) {
      best = std::min(best, directed_edge_conductance(g, std::vector<int>(order.begin(), order.begin() + k)));
    }
    REQUIRE(r.best);
    CHECK(r.best->value == best);
  }
  CHECK(sweep({1, 1, 1}, CutMode::kEdgeConductance, [](const Membership&) { return 0.0; }).examined == 0);
}

TEST_CASE("threshold_cut examples") {
  const DirectedGraph tri = two_triangles();
  const double a = 1.0 / 24.0;
  const Embedding split = column({a, a, a, -a, -a, -a}, tri.degrees(), WeightKind::kDegree);
  DualCertificate d;
  d.r.assign(6, 0.0);
  const Cut c = threshold_cut(tri, Mode::kEdge, std::nullopt, split, d);
  CHECK(c.value == 0.0);
  CHECK(c.vertices.size() == 3);
}

TEST_CASE("spectral_cut examples") {
  const CutResult c4 = spectral_cut(cycle(4), Mode::kEdge, std::nullopt);
  CHECK(c4.cut.value == doctest::Approx(0.25));
  CHECK(c4.cut.value <= 46.0 * std::sqrt(c4.diagnostics.lambda_1));
  CHECK(c4.diagnostics.lambda_lo == doctest::Approx(0.5).epsilon(1e-4));
  CHECK_FALSE(c4.diagnostics.scc_bypass);

  const CutResult dag = spectral_cut(complete_dag(6), Mode::kEdge, std::nullopt);
  CHECK(dag.diagnostics.scc_bypass);
  CHECK(dag.cut.value == 0.0);
  CHECK(dag.bracket.lambda_lo == 0.0);

  Rng rng(21);
  const DirectedGraph g = fixtures::random_strong(rng, 10, 0.25);
  const CutResult r = spectral_cut(g, Mode::kEdge, std::nullopt);
  CHECK(r.cut.value >= brute_force_edge_conductance(g).value);
  CHECK(r.cut.value <= 46.0 * std::sqrt(r.diagnostics.lambda_1));
}

TEST_CASE("spectral_cut chain on random digraphs") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const DirectedGraph g = fixtures::random_strong(rng, n, 0.3);
    for (Mode mode : {Mode::kEdge, Mode::kVertex}) {
      std::optional<VertexWeights> pi;
      if (mode == Mode::kVertex) pi = VertexWeights::uniform(n, 1.0 / n);
      CutOptions o;
      o.gap.max_iters = 300;
      o.ensemble = 3;
      const CutResult r = spectral_cut(g, mode, pi, o);
      const CutDiagnostics& d = r.diagnostics;
      const double opt = mode == Mode::kEdge ? brute_force_edge_conductance(g).value
                                             : brute_force_vertex_expansion(g, *pi).value;
      CHECK(r.cut.value >= opt - 1e-12);
      CHECK(r.cut.value <= 8.0 * d.xi * (1 + 1e-9));
      CHECK(d.xi == doctest::Approx(2.0 * d.eta));
      CHECK(d.eta <= 2.0 * std::sqrt(2.0) * std::sqrt(d.lambda_1) * (1 + 1e-9));
      CHECK(r.cut.value <= 46.0 * std::sqrt(d.lambda_1));
      CHECK(d.lambda_1 >= d.lambda_lo * (1 - 1e-6));
    }
  }
}

TEST_CASE("spectral_cut is deterministic in the seed") {
  Rng rng(41);
  const DirectedGraph g = fixtures::random_strong(rng, 8, 0.3);
  CutOptions o;
  o.seed = 5;
  const CutResult a = spectral_cut(g, Mode::kEdge, std::nullopt, o);
  const CutResult b = spectral_cut(g, Mode::kEdge, std::nullopt, o);
  CHECK(a.cut.vertices == b.cut.vertices);
  CHECK(a.cut.value == b.cut.value);
  CHECK(a.diagnostics.lambda_1 == b.diagnostics.lambda_1);
  o.threads = 4;
  const CutResult c = spectral_cut(g, Mode::kEdge, std::nullopt, o);
  CHECK(c.cut.vertices == a.cut.vertices);
  CHECK(c.cut.value == a.cut.value);
  CHECK(c.diagnostics.member_seed == a.diagnostics.member_seed);
}

TEST_CASE("hypergraph_cut") {
  Rng rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const Hypergraph h = random_hypergraph(rng, 4 + static_cast<int>(rng.below(5)), 4);
    CutOptions o;
    o.gap.max_iters = 500;
    o.ensemble = 3;
    const CutResult r = hypergraph_cut(h, o);
    CHECK(r.cut.value >= brute_force_hypergraph_conductance(h).value - 1e-12);
    CHECK(r.cut.value <= 8.0 * r.diagnostics.xi * (1 + 1e-9));
  }
  const Hypergraph split(6, {{{0, 1, 2}, 1.0}, {{3, 4, 5}, 2.0}});
  const CutResult z = hypergraph_cut(split);
  CHECK(z.diagnostics.scc_bypass);
  CHECK(z.cut.value == 0.0);
}
