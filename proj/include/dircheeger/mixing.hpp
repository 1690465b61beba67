#pragma once

#include <cstdint>
#include <optional>

#include "dircheeger/expansion.hpp"
#include "dircheeger/graph.hpp"
#include "dircheeger/linalg.hpp"
#include "dircheeger/spectral.hpp"

namespace dircheeger {

/// Number of steps, or nullopt for +infinity.
using Steps = std::optional<std::int64_t>;

inline constexpr std::int64_t kMaxMixingSteps = 1'000'000;

/// Ordinary random walk P(u, v) = w(uv) / out(u). Throws kDegenerate when a
/// vertex has no outgoing weight.
Matrix random_walk(const DirectedGraph& g);

/// Throws kParameter unless P is square, nonnegative and row-stochastic
/// within 1e-12.
void check_stochastic(const Matrix& p);

/// || pi^T P - pi^T ||_1.
double stationarity_residual(const Matrix& p, const VertexWeights& pi);

/// Unique stationary distribution of an irreducible chain. Throws kReducible
/// when the support has more than one strongly connected component.
VertexWeights stationary(const Matrix& p);

/// I - (Pi^{1/2} P Pi^{-1/2} + Pi^{-1/2} P^T Pi^{1/2}) / 2. Throws
/// kNotStationary when the residual of pi exceeds 1e-8.
Matrix chung_laplacian(const Matrix& p, const VertexWeights& pi);

/// Exhaustive min over S of sum_{u in S, v not in S} pi(u) P(u, v) / min{pi(S), pi(V - S)}.
Cut cheeger_constant_h(const Matrix& p);
Cut cheeger_constant_h(const DirectedGraph& g);

/// First t with max_u sum_v |P^t(u, v) - pi(v)| < eps. Worst-case distance
/// is nonincreasing in t, so powers are found by doubling and bisection;
/// nullopt when the distance stays >= eps up to kMaxMixingSteps.
Steps mixing_time_tv(const Matrix& p, double eps, const std::optional<VertexWeights>& pi = std::nullopt);

/// Same with the distance max_v (1 - min_u P^t(u, v) / pi(v)).
Steps mixing_time_inf(const Matrix& p, double eps, const std::optional<VertexWeights>& pi = std::nullopt);

struct MixingBounds {
  double pi_min = 0.0;
  /// Exhaustive psi(G) (n <= 24), else nullopt.
  std::optional<double> psi;
  /// 1 / (psi log(1/pi_min)): lower side of the fastest mixing time.
  std::optional<double> psi_lower;
  double lambda_lo = 0.0;
  /// log(1/pi_min) / lambda_lo (infinite when lambda_lo = 0).
  double lambda_upper = 0.0;
};

struct FastestMixing {
  Matrix p;     // P = Pi^{-1} A from the vertex-mode witness
  Matrix lazy;  // (I + P) / 2
  SpectralBracket bracket;
  double residual = 0.0;
  Steps tau;    // tau_{1/e} of the lazy chain
  MixingBounds bounds;
};

/// Chain from the optimal vertex reweighting with stationary distribution pi.
/// Asserts stationarity to 1e-10.
FastestMixing fastest_mixing(const DirectedGraph& g, const VertexWeights& pi, const GapOptions& options = {});

}  // namespace dircheeger
