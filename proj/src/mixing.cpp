#include "dircheeger/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "dircheeger/error.hpp"

namespace dircheeger {

namespace {

using Distance = std::function<double(const Matrix&)>;

/// Doubling then bisection on a distance that is nonincreasing in t.
Steps first_time_below(const Matrix& p, double eps, const Distance& dist) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::kParameter, "eps must lie in (0, 1)");
  const int n = static_cast<int>(p.rows());
  if (dist(Matrix::Identity(n, n)) < eps) return 0;
  std::vector<Matrix> powers{p};  // powers[j] = P^(2^j)
  int j = 0;
  while (!(dist(powers.back()) < eps)) {
    if ((std::int64_t{1} << j) >= kMaxMixingSteps) return std::nullopt;
    powers.push_back(powers.back() * powers.back());
    ++j;
  }
  if (j == 0) return 1;
  Matrix base = powers[static_cast<std::size_t>(j - 1)];
  std::int64_t lo = std::int64_t{1} << (j - 1);
  for (int i = j - 2; i >= 0; --i) {
    Matrix cand = base * powers[static_cast<std::size_t>(i)];
    if (!(dist(cand) < eps)) {
      base = std::move(cand);
      lo += std::int64_t{1} << i;
    }
  }
  const std::int64_t t = lo + 1;
  if (t > kMaxMixingSteps) return std::nullopt;
  return t;
}

VertexWeights resolve_pi(const Matrix& p, const std::optional<VertexWeights>& pi) {
  if (!pi) return stationary(p);
  if (pi->size() != p.rows()) throw Error(ErrorKind::kParameter, "pi has wrong length");
  return *pi;
}

}  // namespace

Matrix random_walk(const DirectedGraph& g) {
  const int n = g.num_vertices();
  Matrix p = Matrix::Zero(n, n);
  for (const Arc& a : g.arcs()) {
    const double out = g.out_weight(a.tail);
    if (!(out > 0.0)) throw Error(ErrorKind::kDegenerate, "vertex " + std::to_string(a.tail) + " has no out-weight");
    p(a.tail, a.head) += a.weight / out;
  }
  for (int v = 0; v < n; ++v) {
    if (!(g.out_weight(v) > 0.0)) throw Error(ErrorKind::kDegenerate, "vertex " + std::to_string(v) + " has no out-weight");
  }
  return p;
}

void check_stochastic(const Matrix& p) {
  if (p.rows() != p.cols() || p.rows() == 0) throw Error(ErrorKind::kParameter, "transition matrix must be square");
  if (p.minCoeff() < 0.0) throw Error(ErrorKind::kParameter, "transition matrix has a negative entry");
  for (Eigen::Index u = 0; u < p.rows(); ++u) {
    if (std::abs(p.row(u).sum() - 1.0) > 1e-12) {
      throw Error(ErrorKind::kParameter, "row " + std::to_string(u) + " does not sum to 1");
    }
  }
}

double stationarity_residual(const Matrix& p, const VertexWeights& pi) {
  const Eigen::Map<const Vector> x(pi.values().data(), pi.size());
  return (p.transpose() * x - x).lpNorm<1>();
}

VertexWeights stationary(const Matrix& p) {
  check_stochastic(p);
  const int n = static_cast<int>(p.rows());
  std::vector<Arc> support;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (p(u, v) > 0.0) support.push_back({u, v, 1.0});
    }
  }
  if (scc_components(DirectedGraph(n, support)).size() != 1) {
    throw Error(ErrorKind::kReducible, "chain is not irreducible");
  }
  // Direct solve of (P^T - I) x = 0 with sum x = 1, then lazy power steps to
  // push the residual down.
  Matrix m = p.transpose() - Matrix::Identity(n, n);
  m.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;
  Vector x = m.fullPivLu().solve(rhs);
  x = x.cwiseMax(0.0);
  x /= x.sum();
  const Matrix lazy_t = 0.5 * (Matrix::Identity(n, n) + p.transpose());
  for (int it = 0; it < 1000 && (p.transpose() * x - x).lpNorm<1>() > 1e-12; ++it) {
    x = lazy_t * x;
    x /= x.sum();
  }
  return VertexWeights(std::vector<double>(x.data(), x.data() + n));
}

Matrix chung_laplacian(const Matrix& p, const VertexWeights& pi) {
  check_stochastic(p);
  if (pi.size() != p.rows()) throw Error(ErrorKind::kParameter, "pi has wrong length");
  if (!pi.all_positive()) throw Error(ErrorKind::kDegenerate, "pi must be strictly positive");
  if (stationarity_residual(p, pi) > 1e-8) throw Error(ErrorKind::kNotStationary, "pi is not stationary for P");
  const int n = static_cast<int>(p.rows());
  Vector root(n);
  for (int v = 0; v < n; ++v) root(v) = std::sqrt(pi[v]);
  const Matrix s = root.asDiagonal() * p * root.cwiseInverse().asDiagonal();
  return Matrix::Identity(n, n) - 0.5 * (s + s.transpose());
}

Cut cheeger_constant_h(const Matrix& p) {
  const VertexWeights pi = stationary(p);
  const int n = static_cast<int>(p.rows());
  Matrix flow(n, n);
  for (int u = 0; u < n; ++u) flow.row(u) = pi[u] * p.row(u);
  const double total = pi.total();
  return brute_force_minimum(n, CutMode::kCheegerConstant, [&](std::uint64_t mask) -> std::optional<double> {
    double out = 0.0, mass = 0.0;
    for (int u = 0; u < n; ++u) {
      if (!(mask >> u & 1)) continue;
      mass += pi[u];
      for (int v = 0; v < n; ++v) {
        if (!(mask >> v & 1)) out += flow(u, v);
      }
    }
    const double den = std::min(mass, total - mass);
    if (!(den > 0.0)) return std::nullopt;
    return out / den;
  });
}

Cut cheeger_constant_h(const DirectedGraph& g) { return cheeger_constant_h(random_walk(g)); }

Steps mixing_time_tv(const Matrix& p, double eps, const std::optional<VertexWeights>& pi) {
  check_stochastic(p);
  const VertexWeights target = resolve_pi(p, pi);
  const Eigen::Map<const Vector> x(target.values().data(), target.size());
  return first_time_below(p, eps, [&](const Matrix& q) {
    return (q.rowwise() - x.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
  });
}

Steps mixing_time_inf(const Matrix& p, double eps, const std::optional<VertexWeights>& pi) {
  check_stochastic(p);
  const VertexWeights target = resolve_pi(p, pi);
  if (!target.all_positive()) throw Error(ErrorKind::kDegenerate, "pi must be strictly positive");
  const Eigen::Map<const Vector> x(target.values().data(), target.size());
  return first_time_below(p, eps, [&](const Matrix& q) {
    return (Vector::Ones(x.size()) - q.colwise().minCoeff().transpose().cwiseQuotient(x)).maxCoeff();
  });
}

FastestMixing fastest_mixing(const DirectedGraph& g, const VertexWeights& pi, const GapOptions& options) {
  if (!pi.is_distribution(1e-9)) throw Error(ErrorKind::kParameter, "pi must be a probability distribution");
  if (!pi.all_positive()) throw Error(ErrorKind::kDegenerate, "pi must be strictly positive");
  FastestMixing out;
  out.bracket = max_reweighted_gap(g, Mode::kVertex, pi, options);
  const DirectedGraph& work = out.bracket.graph;
  const int n = g.num_vertices();
  out.p = Matrix::Zero(n, n);
  for (int i = 0; i < work.num_arcs(); ++i) {
    const Arc& a = work.arc(i);
    out.p(a.tail, a.head) += out.bracket.witness_a.values[static_cast<std::size_t>(i)] / pi[a.tail];
  }
  out.residual = stationarity_residual(out.p, pi);
  ensure(out.residual <= 1e-10, "fastest mixing chain is not stationary for pi");
  out.lazy = 0.5 * (Matrix::Identity(n, n) + out.p);
  out.tau = mixing_time_tv(out.lazy, 1.0 / std::numbers::e, pi);

  MixingBounds& b = out.bounds;
  b.pi_min = *std::min_element(pi.values().begin(), pi.values().end());
  const double log_term = std::log(1.0 / b.pi_min);
  if (n <= kMaxBruteForceVertices) {
    b.psi = brute_force_vertex_expansion(g, pi).value;
    b.psi_lower = *b.psi > 0.0 ? 1.0 / (*b.psi * log_term) : std::numeric_limits<double>::infinity();
  }
  b.lambda_lo = out.bracket.lambda_lo;
  b.lambda_upper = b.lambda_lo > 0.0 ? log_term / b.lambda_lo : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace dircheeger
