#include "dircheeger/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dircheeger/error.hpp"
#include "dircheeger/log.hpp"

namespace dircheeger {

namespace {

constexpr double kDeflation = 10.0;

void check_base(std::span<const double> base) {
  for (double b : base) {
    if (!(b > 0.0)) throw Error(ErrorKind::kDegenerate, "base weights must be strictly positive");
  }
}

Matrix scale_by_base(Matrix m, std::span<const double> base) {
  const auto n = static_cast<Eigen::Index>(base.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) /= std::sqrt(base[static_cast<std::size_t>(i)] * base[static_cast<std::size_t>(j)]);
    }
  }
  return m;
}

/// One Frank-Wolfe instance: variables x_i on vertex pairs (eu[i], ev[i]),
/// Laplacian B^{-1/2} (sum_i kappa x_i (e_u - e_v)(e_u - e_v)^T) B^{-1/2}.
struct Problem {
  int n = 0;
  std::vector<double> base;
  WeightKind kind = WeightKind::kPi;
  double kappa = 0.5;
  std::vector<int> eu, ev;
  /// Linear maximization oracle: fills the maximizing polytope vertex and
  /// returns sum_i vertex_i * lengths_i.
  std::function<double(const std::vector<double>&, std::vector<double>&)> lmo;
};

struct Spectrum {
  double objective = 0.0;
  Vector values;
  Matrix vectors;
};

class Engine {
 public:
  Engine(Problem p, int k) : p_(std::move(p)), m_(k - 1) {
    const auto n = static_cast<Eigen::Index>(p_.n);
    inv_sqrt_ = Vector(n);
    trivial_ = Vector(n);
    for (Eigen::Index v = 0; v < n; ++v) {
      inv_sqrt_(v) = 1.0 / std::sqrt(p_.base[static_cast<std::size_t>(v)]);
      trivial_(v) = std::sqrt(p_.base[static_cast<std::size_t>(v)]);
    }
    trivial_.normalize();
  }

  const Problem& problem() const { return p_; }

  Matrix laplacian(const std::vector<double>& x) const {
    Matrix m = Matrix::Zero(p_.n, p_.n);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const int u = p_.eu[i], v = p_.ev[i];
      if (u == v) continue;
      const double c = p_.kappa * x[i];
      m(u, u) += c;
      m(v, v) += c;
      m(u, v) -= c;
      m(v, u) -= c;
    }
    return inv_sqrt_.asDiagonal() * m * inv_sqrt_.asDiagonal();
  }

  Spectrum spectrum(const std::vector<double>& x) const {
    Matrix m = laplacian(x);
    m += kDeflation * trivial_ * trivial_.transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    ensure(solver.info() == Eigen::Success, "symmetric eigensolver converged");
    Spectrum s;
    s.values = solver.eigenvalues();
    s.vectors = solver.eigenvectors();
    s.objective = s.values.head(m_).sum();
    return s;
  }

  double objective(const std::vector<double>& x) const { return spectrum(x).objective; }

  /// Ky Fan matrix for the bottom m eigenvectors; eigenvalues within tol of
  /// the m-th share its weight equally.
  Matrix ky_fan(const Spectrum& s, double tol) const {
    const double edge = s.values(m_ - 1);
    int first = m_ - 1, last = m_ - 1;
    while (first > 0 && edge - s.values(first - 1) <= tol) --first;
    while (last + 1 < p_.n - 1 && s.values(last + 1) - edge <= tol) ++last;
    const double shared = static_cast<double>(m_ - first) / static_cast<double>(last - first + 1);
    Matrix y = Matrix::Zero(p_.n, p_.n);
    for (int j = 0; j <= last; ++j) {
      const double w = j < first ? 1.0 : shared;
      y.noalias() += w * s.vectors.col(j) * s.vectors.col(j).transpose();
    }
    return y;
  }

  /// -mu log sum_i exp(-lambda_i / mu) over the nontrivial eigenvalues.
  double soft_min(const Spectrum& s, double mu) const {
    const double low = s.values(0);
    double z = 0.0;
    for (int i = 0; i < p_.n - 1; ++i) z += std::exp(-(s.values(i) - low) / mu);
    return low - mu * std::log(z);
  }

  /// Gibbs weights exp(-lambda_i / mu) / Z over the nontrivial eigenvalues.
  Vector gibbs_weights(const Spectrum& s, double mu) const {
    Vector w(p_.n - 1);
    for (int i = 0; i < p_.n - 1; ++i) w(i) = std::exp(-(s.values(i) - s.values(0)) / mu);
    return w / w.sum();
  }

  /// Gradient of soft_min: a trace-one PSD matrix orthogonal to the trivial
  /// eigenvector.
  Matrix gibbs(const Spectrum& s, double mu) const {
    const Vector w = gibbs_weights(s, mu);
    const Matrix v = s.vectors.leftCols(p_.n - 1);
    return v * w.asDiagonal() * v.transpose();
  }

  /// tr(L Y) for Y = gibbs(s, mu).
  double gibbs_energy(const Spectrum& s, double mu) const {
    return gibbs_weights(s, mu).dot(s.values.head(p_.n - 1));
  }

  /// Lengths |f(u) - f(v)|^2 of the embedding behind a Ky Fan matrix Y.
  std::vector<double> lengths(const Matrix& y) const {
    const Matrix yy = inv_sqrt_.asDiagonal() * y * inv_sqrt_.asDiagonal();
    std::vector<double> out(p_.eu.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const int u = p_.eu[i], v = p_.ev[i];
      out[i] = std::max(0.0, yy(u, u) + yy(v, v) - 2.0 * yy(u, v));
    }
    return out;
  }

  double upper(const Matrix& y, std::vector<double>& vertex) const {
    return p_.kappa * p_.lmo(lengths(y), vertex);
  }

  /// Embedding whose Gram matrix (in B-weighted coordinates) is Y.
  Embedding embedding(const Matrix& y) const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (y + y.transpose()));
    const double top = std::max(solver.eigenvalues().maxCoeff(), 0.0);
    std::vector<int> keep;
    for (int j = p_.n - 1; j >= 0; --j) {
      if (solver.eigenvalues()(j) > 1e-12 * std::max(1.0, top)) keep.push_back(j);
    }
    Matrix f = Matrix::Zero(p_.n, std::max<Eigen::Index>(1, static_cast<Eigen::Index>(keep.size())));
    for (std::size_t c = 0; c < keep.size(); ++c) {
      const int j = keep[c];
      f.col(static_cast<Eigen::Index>(c)) =
          std::sqrt(solver.eigenvalues()(j)) * inv_sqrt_.asDiagonal() * solver.eigenvectors().col(j);
    }
    Embedding e = make_embedding(std::move(f), p_.base, p_.kind);
    center(e);
    normalize(e, static_cast<double>(m_));
    return e;
  }

  /// Ky Fan matrix of an orthonormal family spanning vectors constant on
  /// each group and orthogonal to the trivial eigenvector.
  Matrix group_matrix(const std::vector<std::vector<int>>& groups) const {
    std::vector<Vector> basis;
    for (const auto& g : groups) {
      Vector x = Vector::Zero(p_.n);
      for (int v : g) x(v) = trivial_(v);
      x -= trivial_.dot(x) * trivial_;
      for (const Vector& b : basis) x -= b.dot(x) * b;
      if (x.norm() > 1e-9) basis.push_back(x.normalized());
      if (static_cast<int>(basis.size()) == m_) break;
    }
    ensure(static_cast<int>(basis.size()) == m_, "enough components for a zero certificate");
    Matrix y = Matrix::Zero(p_.n, p_.n);
    for (const Vector& b : basis) y.noalias() += b * b.transpose();
    return y;
  }

 private:
  Problem p_;
  int m_;
  Vector inv_sqrt_;
  Vector trivial_;
};

/// Maximizes a concave phi on [0, 1]. A geometric scan brackets the peak
/// (steps can be tiny near a kink), then golden section refines it. Returns 0
/// when no step beats phi(0).
double line_max(const std::function<double(double)>& phi, double& best_value) {
  const double f0 = phi(0.0);
  best_value = f0;
  double lo = 0.0, hi = 1.0, prev = phi(1.0), step = 1.0;
  bool bracketed = false;
  for (int j = 1; j <= 50; ++j) {
    const double h = std::ldexp(1.0, -j);
    const double fh = phi(h);
    if (prev >= fh) {
      lo = h;
      hi = std::min(1.0, 4.0 * h);
      bracketed = true;
      break;
    }
    prev = fh;
    step = h;
  }
  if (!bracketed) {
    if (prev > f0) {
      best_value = prev;
      return step;
    }
    return 0.0;
  }
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = phi(c), fd = phi(d);
  while (b - a > 1e-4 * hi) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = phi(d);
    }
  }
  const double end = phi(hi);
  double arg = hi, val = end;
  if (fc > val) {
    arg = c;
    val = fc;
  }
  if (fd > val) {
    arg = d;
    val = fd;
  }
  if (!(val > f0)) return 0.0;
  best_value = val;
  return arg;
}

SpectralBracket zero_bracket(const Engine& engine, std::vector<double> x,
                             const std::vector<std::vector<int>>& groups, int k) {
  SpectralBracket b;
  b.k = k;
  b.lambda_lo = std::max(0.0, engine.objective(x));
  b.witness_a.values = std::move(x);
  const Matrix y = engine.group_matrix(groups);
  std::vector<double> scratch;
  b.lambda_hi = engine.upper(y, scratch);
  b.witness_f = engine.embedding(y);
  b.fw_gap = b.lambda_hi - b.lambda_lo;
  b.converged = true;
  b.components = static_cast<int>(groups.size());
  return b;
}

/// Active-set representation x = sum_j theta_j atom_j used by pairwise steps.
struct ActiveSet {
  std::vector<std::vector<double>> atoms;
  std::vector<double> theta;

  int find(const std::vector<double>& v) const {
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (atoms[j] == v) return static_cast<int>(j);
    }
    return -1;
  }

  int add(const std::vector<double>& v) {
    const int j = find(v);
    if (j >= 0) return j;
    atoms.push_back(v);
    theta.push_back(0.0);
    return static_cast<int>(atoms.size()) - 1;
  }

  void prune() {
    std::size_t out = 0;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (theta[j] > 1e-14) {
        if (out != j) {
          atoms[out] = std::move(atoms[j]);
          theta[out] = theta[j];
        }
        ++out;
      }
    }
    atoms.resize(out);
    theta.resize(out);
  }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

SpectralBracket frank_wolfe(const Engine& engine, std::vector<double> x, const GapOptions& opt) {
  const int k = opt.k;
  const int n = engine.problem().n;
  const double kappa = engine.problem().kappa;
  SpectralBracket b;
  b.k = k;
  Spectrum s = engine.spectrum(x);
  b.lambda_lo = s.objective;
  b.witness_a.values = x;
  b.lambda_hi = std::numeric_limits<double>::infinity();
  Matrix best_y, avg_y;
  std::vector<double> vertex, scratch;
  double tol = opt.mult_tol;
  int since_improvement = 0;
  ActiveSet active;
  active.add(x);
  active.theta[0] = 1.0;

  // For k = 2 the ascent runs on the soft-min -mu log sum exp(-lambda_i / mu),
  // a smooth concave minorant of lambda_2; mu shrinks once the smoothed
  // problem is solved to within its own bias.
  const bool smooth = k == 2 && n > 2;
  const double log_n = std::log(static_cast<double>(std::max(2, n - 1)));
  const double mu_floor = opt.tol / (4.0 * log_n);
  double mu = std::max(mu_floor, 0.1 * std::max(s.objective, 1e-2));

  auto consider = [&](const Matrix& y, std::vector<double>& v) {
    const double up = engine.upper(y, v);
    if (up < b.lambda_hi) {
      b.lambda_hi = up;
      best_y = y;
    }
    return up;
  };
  auto value_at = [&](const Spectrum& sp) { return smooth ? engine.soft_min(sp, mu) : sp.objective; };

  for (int t = 0;; ++t) {
    const Matrix cluster = engine.ky_fan(s, tol);
    Matrix y = cluster;
    double linear = s.objective;
    if (smooth) {
      y = engine.gibbs(s, mu);
      linear = engine.gibbs_energy(s, mu);
      consider(cluster, scratch);
    }
    const double up = consider(y, vertex);
    b.fw_gap = up - linear;
    // Running average of the ascent matrices is feasible for the min side
    // too and often certifies a much tighter bound than any single one.
    avg_y = t == 0 ? y : Matrix((1.0 - 2.0 / (t + 2.0)) * avg_y + (2.0 / (t + 2.0)) * y);
    if (t > 0) consider(avg_y, scratch);

    b.iterations = t;
    if (opt.trace) opt.trace({t, b.lambda_lo, b.lambda_hi, b.fw_gap});
    if (b.lambda_hi - b.lambda_lo <= opt.tol * std::max(1.0, b.lambda_hi)) {
      b.converged = true;
      break;
    }
    if (t >= opt.max_iters) break;
    if (smooth && b.fw_gap <= mu * log_n && mu > mu_floor) {
      mu = std::max(mu_floor, 0.5 * mu);
      continue;
    }

    // Direction: toward the oracle vertex, and for pairwise steps away from
    // the active atom with the worst linearized value.
    std::vector<double> dir(x.size());
    double gamma_max = 1.0;
    int toward = -1, away = -1;
    if (opt.step == StepRule::kLineSearch) {
      const std::vector<double> len = engine.lengths(y);
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < active.atoms.size(); ++j) {
        const double g = kappa * dot(active.atoms[j], len);
        if (g < worst) {
          worst = g;
          away = static_cast<int>(j);
        }
      }
      toward = active.add(vertex);
      // Degenerate pair: fall back to a plain step toward the vertex.
      if (toward == away) away = -1;
    }
    if (away >= 0) {
      gamma_max = active.theta[static_cast<std::size_t>(away)];
      const auto& from = active.atoms[static_cast<std::size_t>(away)];
      for (std::size_t i = 0; i < x.size(); ++i) dir[i] = vertex[i] - from[i];
    } else {
      for (std::size_t i = 0; i < x.size(); ++i) dir[i] = vertex[i] - x[i];
    }
    auto moved = [&](double gamma) {
      std::vector<double> z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = std::max(0.0, x[i] + gamma * dir[i]);
      return z;
    };

    double gamma = 2.0 / (t + 2.0);
    if (opt.step == StepRule::kLineSearch) {
      double best = 0.0;
      const double frac =
          line_max([&](double g) { return value_at(engine.spectrum(moved(g * gamma_max))); }, best);
      gamma = frac * gamma_max;
      if (gamma > 0.0 && away >= 0) {
        active.theta[static_cast<std::size_t>(toward)] += gamma;
        active.theta[static_cast<std::size_t>(away)] -= gamma;
        if (frac == 1.0) active.theta[static_cast<std::size_t>(away)] = 0.0;
      } else if (gamma > 0.0) {
        for (double& th : active.theta) th *= 1.0 - gamma;
        active.theta[static_cast<std::size_t>(toward)] += gamma;
      }
      active.prune();
    }
    if (gamma > 0.0) {
      x = moved(gamma);
      s = engine.spectrum(x);
    }
    if (s.objective > b.lambda_lo * (1.0 + 1e-12) + 1e-15) {
      b.lambda_lo = s.objective;
      b.witness_a.values = x;
      since_improvement = 0;
    } else if (++since_improvement >= 10) {
      // Stalled: a near-multiple eigenvalue is probably splitting the
      // supergradient, so treat a wider band as one cluster.
      if (!smooth && tol < 1e-2) tol *= 10.0;
      if (smooth && mu > mu_floor) mu = std::max(mu_floor, 0.5 * mu);
      since_improvement = 0;
    }
  }
  b.witness_f = engine.embedding(best_y);
  return b;
}

std::vector<double> hoffman_start(const DirectedGraph& g, std::vector<double> w,
                                  const std::vector<int>& comp) {
  for (int i = 0; i < g.num_arcs(); ++i) {
    const Arc& a = g.arc(i);
    if (a.is_loop() || comp[static_cast<std::size_t>(a.tail)] != comp[static_cast<std::size_t>(a.head)]) {
      w[static_cast<std::size_t>(i)] = 0.0;
    }
  }
  if (!(std::accumulate(w.begin(), w.end(), 0.0) > 0.0)) return std::vector<double>(w.size(), 0.0);
  const double alpha = asymmetric_ratio(g, w);
  ensure(std::isfinite(alpha), "intra-component weights have finite asymmetric ratio");
  auto a = hoffman_circulation(g, w, alpha);
  ensure(a.has_value(), "Hoffman circulation exists at the computed ratio");
  return std::move(a->values);
}

std::vector<int> component_index(int n, const std::vector<std::vector<int>>& groups) {
  std::vector<int> comp(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < groups.size(); ++c) {
    for (int v : groups[c]) comp[static_cast<std::size_t>(v)] = static_cast<int>(c);
  }
  return comp;
}

void check_k(int k, int n) {
  if (k < 2 || k > n) {
    throw Error(ErrorKind::kParameter, "k must lie in [2, n], got " + std::to_string(k));
  }
}

}  // namespace

Matrix normalized_laplacian(const DirectedGraph& g, std::span<const double> a, Mode mode,
                            std::span<const double> base) {
  const int n = g.num_vertices();
  if (static_cast<int>(base.size()) != n || static_cast<int>(a.size()) != g.num_arcs()) {
    throw Error(ErrorKind::kParameter, "Laplacian inputs do not match the graph");
  }
  check_base(base);
  Matrix sym = Matrix::Zero(n, n);
  for (int i = 0; i < g.num_arcs(); ++i) {
    const Arc& arc = g.arc(i);
    sym(arc.tail, arc.head) += 0.5 * a[static_cast<std::size_t>(i)];
    sym(arc.head, arc.tail) += 0.5 * a[static_cast<std::size_t>(i)];
  }
  if (mode == Mode::kVertex) {
    return Matrix::Identity(n, n) - scale_by_base(sym, base);
  }
  Matrix lap = -sym;
  const std::vector<double> d = symmetric_degrees(g, a);
  for (int v = 0; v < n; ++v) lap(v, v) += d[static_cast<std::size_t>(v)];
  return scale_by_base(lap, base);
}

CliquePairs clique_pairs(const Hypergraph& h) {
  CliquePairs p;
  for (int e = 0; e < h.num_edges(); ++e) {
    p.offset.push_back(p.size());
    const auto& vs = h.edge(e).vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        p.edge.push_back(e);
        p.u.push_back(vs[i]);
        p.v.push_back(vs[j]);
      }
    }
  }
  p.offset.push_back(p.size());
  return p;
}

Matrix hypergraph_laplacian(const Hypergraph& h, const CliquePairs& pairs, std::span<const double> c) {
  const int n = h.num_vertices();
  check_base(h.degrees());
  Matrix lap = Matrix::Zero(n, n);
  for (int i = 0; i < pairs.size(); ++i) {
    const int u = pairs.u[static_cast<std::size_t>(i)], v = pairs.v[static_cast<std::size_t>(i)];
    const double x = c[static_cast<std::size_t>(i)];
    lap(u, u) += x;
    lap(v, v) += x;
    lap(u, v) -= x;
    lap(v, u) -= x;
  }
  return scale_by_base(lap, h.degrees());
}

std::vector<double> base_weights(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi) {
  if (mode == Mode::kEdge) return g.degrees();
  if (!pi) throw Error(ErrorKind::kParameter, "vertex mode needs vertex weights");
  if (pi->size() != g.num_vertices()) throw Error(ErrorKind::kParameter, "pi has wrong length");
  return {pi->values().begin(), pi->values().end()};
}

DirectedGraph with_required_loops(const DirectedGraph& g) {
  if (g.has_all_loops()) return g;
  warn("vertex-capacitated solve: adding missing self-loops");
  return g.with_loops(0.0);
}

SpectralBracket max_reweighted_gap(const DirectedGraph& g, Mode mode,
                                   const std::optional<VertexWeights>& pi, const GapOptions& options) {
  check_k(options.k, g.num_vertices());
  const DirectedGraph work = mode == Mode::kVertex ? with_required_loops(g) : g;
  Problem p;
  p.n = work.num_vertices();
  p.base = base_weights(work, mode, pi);
  check_base(p.base);
  p.kind = mode == Mode::kVertex ? WeightKind::kPi : WeightKind::kDegree;
  p.kappa = 0.5;
  for (const Arc& a : work.arcs()) {
    p.eu.push_back(a.tail);
    p.ev.push_back(a.head);
  }

  std::vector<std::vector<int>> groups;
  std::vector<double> x0;
  if (mode == Mode::kEdge) {
    groups = positive_scc_components(work);
    p.lmo = [&work](const std::vector<double>& len, std::vector<double>& vertex) {
      OracleResult r = eulerian_oracle_edge(work, len);
      vertex = std::move(r.a.values);
      return r.value;
    };
    x0 = hoffman_start(work, work.weights(), component_index(p.n, groups));
    double rho = 0.0;
    for (int i = 0; i < work.num_arcs(); ++i) {
      if (x0[static_cast<std::size_t>(i)] > 0.0) {
        rho = std::max(rho, x0[static_cast<std::size_t>(i)] / work.arc(i).weight);
      }
    }
    // Divide by the realized ratio rather than alpha: the tightest scaling
    // that keeps A <= w.
    if (rho > 0.0) {
      for (int i = 0; i < work.num_arcs(); ++i) {
        auto& v = x0[static_cast<std::size_t>(i)];
        v = std::min(v / rho, work.arc(i).weight);
      }
    }
  } else {
    const VertexWeights& w = *pi;
    groups = scc_components(work);
    p.lmo = [&work, &w](const std::vector<double>& len, std::vector<double>& vertex) {
      OracleResult r = eulerian_oracle_vertex(work, w, len);
      vertex = std::move(r.a.values);
      return r.value;
    };
    x0 = hoffman_start(work, pi_induced_weights(work, w), component_index(p.n, groups));
    std::vector<double> out(static_cast<std::size_t>(p.n), 0.0);
    for (int i = 0; i < work.num_arcs(); ++i) out[static_cast<std::size_t>(work.arc(i).tail)] += x0[static_cast<std::size_t>(i)];
    double rho = 0.0;
    for (int v = 0; v < p.n; ++v) rho = std::max(rho, out[static_cast<std::size_t>(v)] / w[v]);
    if (rho > 0.0) {
      for (double& v : x0) v /= rho;
    }
    for (int v = 0; v < p.n; ++v) {
      const double used = rho > 0.0 ? out[static_cast<std::size_t>(v)] / rho : 0.0;
      x0[static_cast<std::size_t>(*work.find_arc(v, v))] += std::max(0.0, w[v] - used);
    }
  }

  const Engine engine(std::move(p), options.k);
  SpectralBracket b = static_cast<int>(groups.size()) >= options.k
                          ? zero_bracket(engine, std::move(x0), groups, options.k)
                          : frank_wolfe(engine, std::move(x0), options);
  b.components = static_cast<int>(groups.size());
  b.graph = work;
  return b;
}

SpectralBracket gamma2_hypergraph(const Hypergraph& h, const GapOptions& options) {
  if (h.num_edges() == 0) throw Error(ErrorKind::kParameter, "hypergraph has no hyperedges");
  check_k(options.k, h.num_vertices());
  const CliquePairs pairs = clique_pairs(h);
  Problem p;
  p.n = h.num_vertices();
  p.base.assign(h.degrees().begin(), h.degrees().end());
  check_base(p.base);
  p.kind = WeightKind::kDegree;
  p.kappa = 1.0;
  p.eu = pairs.u;
  p.ev = pairs.v;
  p.lmo = [&h, &pairs](const std::vector<double>& len, std::vector<double>& vertex) {
    vertex.assign(len.size(), 0.0);
    double value = 0.0;
    for (int e = 0; e < h.num_edges(); ++e) {
      const int lo = pairs.offset[static_cast<std::size_t>(e)], hi = pairs.offset[static_cast<std::size_t>(e) + 1];
      if (lo == hi) continue;
      int arg = lo;
      for (int i = lo + 1; i < hi; ++i) {
        if (len[static_cast<std::size_t>(i)] > len[static_cast<std::size_t>(arg)]) arg = i;
      }
      vertex[static_cast<std::size_t>(arg)] = h.edge(e).weight;
      value += h.edge(e).weight * len[static_cast<std::size_t>(arg)];
    }
    return value;
  };

  std::vector<double> x0(static_cast<std::size_t>(pairs.size()), 0.0);
  for (int e = 0; e < h.num_edges(); ++e) {
    const int lo = pairs.offset[static_cast<std::size_t>(e)], hi = pairs.offset[static_cast<std::size_t>(e) + 1];
    for (int i = lo; i < hi; ++i) x0[static_cast<std::size_t>(i)] = h.edge(e).weight / (hi - lo);
  }

  // Connected components of the clique expansion (positive weights only).
  std::vector<Arc> arcs;
  for (int i = 0; i < pairs.size(); ++i) {
    if (h.edge(pairs.edge[static_cast<std::size_t>(i)]).weight > 0.0) {
      arcs.push_back({pairs.u[static_cast<std::size_t>(i)], pairs.v[static_cast<std::size_t>(i)], 1.0});
      arcs.push_back({pairs.v[static_cast<std::size_t>(i)], pairs.u[static_cast<std::size_t>(i)], 1.0});
    }
  }
  const auto groups = scc_components(DirectedGraph(h.num_vertices(), arcs));

  const Engine engine(std::move(p), options.k);
  SpectralBracket b = static_cast<int>(groups.size()) >= options.k
                          ? zero_bracket(engine, std::move(x0), groups, options.k)
                          : frank_wolfe(engine, std::move(x0), options);
  b.components = static_cast<int>(groups.size());
  return b;
}

double certify_upper(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi,
                     const Embedding& f) {
  const DirectedGraph work = mode == Mode::kVertex ? with_required_loops(g) : g;
  const std::vector<double> base = base_weights(work, mode, pi);
  if (f.size() != work.num_vertices()) throw Error(ErrorKind::kParameter, "embedding has wrong size");
  Embedding check = make_embedding(f.f, base, f.kind);
  if (!is_centered(check) || !is_normalized(check)) {
    throw Error(ErrorKind::kParameter, "embedding must be centered and normalized for its mode");
  }
  const std::vector<double> len = squared_lengths(work, f);
  const OracleResult r = mode == Mode::kVertex ? eulerian_oracle_vertex(work, *pi, len)
                                               : eulerian_oracle_edge(work, len);
  return 0.5 * r.value;
}

double certify_upper_hypergraph(const Hypergraph& h, const Embedding& f) {
  if (f.size() != h.num_vertices()) throw Error(ErrorKind::kParameter, "embedding has wrong size");
  Embedding check = make_embedding(f.f, {h.degrees().begin(), h.degrees().end()}, WeightKind::kDegree);
  if (!is_centered(check) || !is_normalized(check)) {
    throw Error(ErrorKind::kParameter, "embedding must be centered and normalized");
  }
  double value = 0.0;
  for (const Hyperedge& e : h.edges()) {
    double top = 0.0;
    for (std::size_t i = 0; i < e.vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < e.vertices.size(); ++j) {
        top = std::max(top, (f.f.row(e.vertices[i]) - f.f.row(e.vertices[j])).squaredNorm());
      }
    }
    value += e.weight * top;
  }
  return value;
}

double sigma_k_lower(const DirectedGraph& g, Mode mode, int k, const std::optional<VertexWeights>& pi,
                     GapOptions options) {
  options.k = k;
  return max_reweighted_gap(g, mode, pi, options).lambda_lo;
}

}  // namespace dircheeger
