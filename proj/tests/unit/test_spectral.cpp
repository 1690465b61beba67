#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dircheeger/error.hpp"
#include "dircheeger/spectral.hpp"
#include "fixtures.hpp"

using namespace dircheeger;
using fixtures::bidirected_clique;
using fixtures::complete_dag;
using fixtures::cycle;

namespace {

DirectedGraph k2_with_loops() {
  return DirectedGraph(2, {{0, 1, 1.0}, {1, 0, 1.0}, {0, 0, 1.0}, {1, 1, 1.0}});
}

double cycle_gap(int n) { return (1.0 - std::cos(2.0 * std::numbers::pi / n)) / 2.0; }

/// lambda_2 of D^{-1/2}(D_w / 2 - sym(w))D^{-1/2}, built arc by arc.
double eulerian_lambda2(const DirectedGraph& g) {
  const int n = g.num_vertices();
  Matrix m = Matrix::Zero(n, n);
  for (const Arc& a : g.arcs()) {
    m(a.tail, a.tail) += a.weight / 2.0;
    m(a.head, a.head) += a.weight / 2.0;
    m(a.tail, a.head) -= a.weight / 2.0;
    m(a.head, a.tail) -= a.weight / 2.0;
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) m(u, v) /= std::sqrt(g.degree(u) * g.degree(v));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  return es.eigenvalues()(1);
}

/// Sum of random directed cycles: balanced at every vertex by construction.
DirectedGraph random_eulerian(Rng& rng, int n) {
  std::vector<Arc> arcs;
  for (int c = 0; c < 3; ++c) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(rng.below(i + 1))]);
    }
    const int len = c == 0 ? n : 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    const double w = 0.5 + rng.uniform();
    for (int i = 0; i < len; ++i) {
      arcs.push_back({order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>((i + 1) % len)], w});
    }
  }
  return DirectedGraph(n, arcs);
}

void check_feasible(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi,
                    const SpectralBracket& b) {
  const DirectedGraph& work = b.graph;
  const auto& a = b.witness_a.values;
  REQUIRE(static_cast<int>(a.size()) == work.num_arcs());
  double scale = 0.0;
  for (int i = 0; i < work.num_arcs(); ++i) {
    CHECK(a[static_cast<std::size_t>(i)] >= 0.0);
    scale = std::max(scale, a[static_cast<std::size_t>(i)]);
    if (mode == Mode::kEdge) CHECK(a[static_cast<std::size_t>(i)] <= work.arc(i).weight * (1.0 + 1e-9) + 1e-12);
  }
  CHECK(max_imbalance(work, a) <= 1e-9 * std::max(1.0, scale));
  if (mode == Mode::kVertex) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      double out = 0.0;
      for (int i : work.out_arcs(v)) out += a[static_cast<std::size_t>(i)];
      CHECK(out == doctest::Approx((*pi)[v]).epsilon(1e-9));
    }
  }
}

}  // namespace

TEST_CASE("normalized laplacian examples") {
  const DirectedGraph k2 = k2_with_loops();
  const std::vector<double> pi{0.5, 0.5};
  const std::vector<double> a{0.0, 0.5, 0.5, 0.0};  // arcs sorted: 00, 01, 10, 11
  const Matrix l = normalized_laplacian(k2, a, Mode::kVertex, pi);
  CHECK(l(0, 0) == doctest::Approx(1.0));
  CHECK(l(0, 1) == doctest::Approx(-1.0));
  CHECK(l(1, 1) == doctest::Approx(1.0));
  const EigenPairs e = bottom_eigs(l, 2);
  CHECK(e.values(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e.values(1) == doctest::Approx(2.0));

  const DirectedGraph c4 = cycle(4);
  const std::vector<double> zero(4, 0.0);
  CHECK(normalized_laplacian(c4, zero, Mode::kEdge, c4.degrees()).cwiseAbs().maxCoeff() == 0.0);
  const EigenPairs full = all_eigs(normalized_laplacian(c4, c4.weights(), Mode::kEdge, c4.degrees()));
  const double expect[] = {0.0, 0.5, 0.5, 1.0};
  for (int j = 0; j < 4; ++j) CHECK(full.values(j) == doctest::Approx(expect[j]).epsilon(1e-12));
}

TEST_CASE("bottom eigs examples") {
  EigenPairs e = bottom_eigs(Matrix::Identity(3, 3), 2);
  CHECK(e.values(0) == 1.0);
  CHECK(e.values(1) == 1.0);
  Matrix m(2, 2);
  m << 1, -1, -1, 1;
  e = bottom_eigs(m, 2);
  CHECK(e.values(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e.values(1) == doctest::Approx(2.0));

  // Normalized path laplacian I - D^{-1/2} A D^{-1/2} on P3: spectrum {0, 1, 2}.
  Matrix p = Matrix::Identity(3, 3);
  p(0, 1) = p(1, 0) = p(1, 2) = p(2, 1) = -1.0 / std::sqrt(2.0);
  e = bottom_eigs(p, 3);
  CHECK(e.values(1) == doctest::Approx(1.0));
  CHECK(e.values(2) == doctest::Approx(2.0));
  CHECK((p * e.vectors - e.vectors * e.values.asDiagonal()).norm() <= 1e-8 * p.norm());

  m(0, 1) += 1e-6;
  CHECK_THROWS_AS(bottom_eigs(m, 1), Error);
}

TEST_CASE("certify upper examples") {
  const VertexWeights pi({0.5, 0.5});
  Matrix f(2, 1);
  f << 1.0, -1.0;
  const Embedding e = make_embedding(f, {0.5, 0.5}, WeightKind::kPi);
  CHECK(certify_upper(k2_with_loops(), Mode::kVertex, pi, e) == doctest::Approx(2.0));

  Matrix c(4, 1);
  c << 0.5, 0.0, -0.5, 0.0;
  const Embedding cosine = make_embedding(c, {2, 2, 2, 2}, WeightKind::kDegree);
  CHECK(std::abs(certify_upper(cycle(4), Mode::kEdge, std::nullopt, cosine) - 0.5) <= 1e-9);

  Matrix bad(4, 1);
  bad << 1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(certify_upper(cycle(4), Mode::kEdge, std::nullopt,
                                make_embedding(bad, {2, 2, 2, 2}, WeightKind::kDegree)),
                  Error);
}

TEST_CASE("cycle closed form") {
  for (int n : {3, 4, 5, 6, 8, 10, 12}) {
    GapOptions o;
    o.tol = 1e-5;
    const SpectralBracket b = max_reweighted_gap(cycle(n), Mode::kEdge, std::nullopt, o);
    CHECK(b.converged);
    CHECK(b.lambda_lo == doctest::Approx(cycle_gap(n)).epsilon(1e-4));
    CHECK(b.lambda_hi - b.lambda_lo <= 1e-3);
    CHECK(b.lambda_lo <= b.lambda_hi + 1e-7);
  }
}

TEST_CASE("vertex mode on K2 with loops") {
  const VertexWeights pi({0.5, 0.5});
  const SpectralBracket b = max_reweighted_gap(k2_with_loops(), Mode::kVertex, pi);
  CHECK(b.lambda_lo == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(b.lambda_hi == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("complete dag has a zero gap") {
  for (int n = 3; n <= 8; ++n) {
    const SpectralBracket b = max_reweighted_gap(complete_dag(n), Mode::kEdge, std::nullopt);
    CHECK(b.lambda_lo == 0.0);
    CHECK(b.lambda_hi <= 1e-6);
    CHECK(b.components == n);
    for (int k = 2; k <= n; ++k) CHECK(sigma_k_lower(complete_dag(n), Mode::kEdge, k) <= 1e-6);
  }
}

TEST_CASE("sigma_k examples") {
  std::vector<Arc> arcs;
  for (int base : {0, 3}) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) arcs.push_back({base + i, base + j, 1.0});
      }
    }
  }
  CHECK(sigma_k_lower(DirectedGraph(6, arcs), Mode::kEdge, 2) <= 1e-6);
  CHECK(sigma_k_lower(cycle(4), Mode::kEdge, 3) >= 0.9);
  CHECK_THROWS_AS(sigma_k_lower(cycle(4), Mode::kEdge, 5), Error);
}

TEST_CASE("eulerian inputs are optimal as given") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const DirectedGraph g = random_eulerian(rng, 4 + static_cast<int>(rng.below(5)));
    GapOptions o;
    o.tol = 1e-6;
    const SpectralBracket b = max_reweighted_gap(g, Mode::kEdge, std::nullopt, o);
    const double exact = eulerian_lambda2(g);
    CHECK(b.lambda_lo == doctest::Approx(exact).epsilon(1e-5));
    CHECK(b.lambda_hi >= exact - 1e-9);
  }
}

TEST_CASE("bracket properties on random digraphs") {
  Rng rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const DirectedGraph g = fixtures::random_strong(rng, n, 0.3);
    for (Mode mode : {Mode::kEdge, Mode::kVertex}) {
      std::optional<VertexWeights> pi;
      if (mode == Mode::kVertex) pi = VertexWeights::uniform(n, 1.0 / n);
      GapOptions o;
      o.max_iters = 400;
      double prev_lo = -1.0, prev_hi = std::numeric_limits<double>::infinity();
      bool monotone = true;
      o.trace = [&](const TraceRecord& r) {
        monotone = monotone && r.lambda_lo >= prev_lo && r.lambda_hi <= prev_hi;
        prev_lo = r.lambda_lo;
        prev_hi = r.lambda_hi;
      };
      const SpectralBracket b = max_reweighted_gap(g, mode, pi, o);
      CHECK(monotone);
      CHECK(b.lambda_lo >= 0.0);
      CHECK(b.lambda_lo <= b.lambda_hi + 1e-7);
      CHECK(b.lambda_lo > 1e-4);
      check_feasible(g, mode, pi, b);

      // The witnesses reproduce the bracket ends.
      const std::vector<double> base = base_weights(b.graph, mode, pi);
      const Matrix l = normalized_laplacian(b.graph, b.witness_a.values, mode, base);
      CHECK(bottom_eigs(l, 2).values(1) == doctest::Approx(b.lambda_lo).epsilon(1e-9));
      CHECK(certify_upper(b.graph, mode, pi, b.witness_f) == doctest::Approx(b.lambda_hi).epsilon(1e-7));

      // Easy directions.
      if (mode == Mode::kEdge) {
        CHECK(b.lambda_lo <= 2.0 * brute_force_edge_conductance(g).value + 1e-6);
      } else {
        CHECK(b.lambda_lo <= 2.0 * brute_force_vertex_expansion(g, *pi).value + 1e-6);
      }
    }
  }
}

TEST_CASE("two-uniform hypergraph matches the undirected laplacian") {
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(4));
    std::vector<Hyperedge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({{std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)}, 0.5 + rng.uniform()});
    for (int u = 0; u < n; ++u) {
      for (int v = u + 2; v < n; ++v) {
        if (rng.uniform() < 0.3 && !(u == 0 && v == n - 1)) edges.push_back({{u, v}, 0.5 + rng.uniform()});
      }
    }
    const Hypergraph h(n, edges);
    Matrix m = Matrix::Identity(n, n);
    for (const Hyperedge& e : h.edges()) {
      const int u = e.vertices[0], v = e.vertices[1];
      const double x = e.weight / std::sqrt(h.degree(u) * h.degree(v));
      m(u, v) -= x;
      m(v, u) -= x;
    }
    const double exact = Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvalues()(1);
    GapOptions o;
    o.tol = 1e-5;
    const SpectralBracket b = gamma2_hypergraph(h, o);
    CHECK(b.lambda_lo == doctest::Approx(exact).epsilon(1e-4));
    CHECK(std::abs(b.lambda_hi - exact) <= 1e-3);
  }
}

TEST_CASE("single hyperedge against a grid") {
  const Hypergraph h(3, {{{0, 1, 2}, 1.0}});
  // Clique weights (x, y, 1 - x - y) on pairs 01, 02, 12; degrees are 1.
  double grid = 0.0;
  const int steps = 1000;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; i + j <= steps; ++j) {
      const double x = double(i) / steps, y = double(j) / steps, z = 1.0 - x - y;
      Eigen::Matrix3d l;
      l << x + y, -x, -y, -x, x + z, -z, -y, -z, y + z;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
      es.computeDirect(l, Eigen::EigenvaluesOnly);
      grid = std::max(grid, es.eigenvalues()(1));
    }
  }
  const SpectralBracket b = gamma2_hypergraph(h);
  CHECK(std::abs(b.lambda_lo - grid) <= 1e-3);
  CHECK(std::abs(b.lambda_hi - grid) <= 1e-3);
  CHECK(certify_upper_hypergraph(h, b.witness_f) == doctest::Approx(b.lambda_hi).epsilon(1e-7));
}

TEST_CASE("disjoint hyperedges have a zero gap") {
  const Hypergraph h(6, {{{0, 1, 2}, 1.0}, {{3, 4, 5}, 2.0}});
  const SpectralBracket b = gamma2_hypergraph(h);
  CHECK(b.lambda_lo >= 0.0);
  CHECK(b.lambda_lo <= 1e-12);
  CHECK(b.lambda_hi <= 1e-6);
}

TEST_CASE("vertex mode inserts missing loops") {
  const VertexWeights pi = VertexWeights::uniform(4, 0.25);
  const SpectralBracket b = max_reweighted_gap(cycle(4), Mode::kVertex, pi);
  CHECK(b.graph.has_all_loops());
  CHECK(b.graph.num_arcs() == 8);
  CHECK(b.lambda_lo > 0.0);
}
