#include "dircheeger/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dircheeger/error.hpp"
#include "dircheeger/parallel.hpp"
#include "dircheeger/random.hpp"

namespace dircheeger {

namespace {

constexpr double kChainSlack = 1e-9;

bool within(double value, double bound) { return value <= bound * (1.0 + kChainSlack) + 1e-12; }

CoordinateChoice choose_coordinate(const Embedding& f, const std::function<double(const Embedding&)>& value) {
  CoordinateChoice out;
  out.full_value = value(f);
  for (int j = 0; j < f.dim(); ++j) {
    Embedding c = coordinate(f, j);
    if (!(weighted_norm2(c) > 1e-300)) continue;
    center(c);
    normalize(c);
    const double v = value(c);
    if (out.index < 0 || v < out.value) {
      out.value = v;
      out.index = j;
      out.f = std::move(c);
    }
  }
  if (out.index < 0) throw Error(ErrorKind::kDegenerate, "every coordinate of the embedding is zero");
  ensure(within(out.value, f.dim() * out.full_value), "best coordinate exceeds dim times the full value");
  return out;
}

double signed_square(double x) { return x > 0.0 ? x * x : -x * x; }

void check_pair(double fu, double fv, double shift) {
  const double gu = signed_square(fu + shift), gv = signed_square(fv + shift);
  const double lhs = (gu - gv) * (gu - gv);
  const double rhs = 2.0 * (fu - fv) * (fu - fv) * (std::abs(gu) + std::abs(gv));
  ensure(lhs <= rhs * (1.0 + 1e-9) + 1e-15 * (gu * gu + gv * gv), "squaring map distortion bound violated");
}

void check_l1_embedding(const Embedding& g) {
  if (g.dim() != 1) throw Error(ErrorKind::kParameter, "rounding needs a 1-dim embedding");
  double l1 = 0.0;
  for (int v = 0; v < g.size(); ++v) l1 += g.weights[static_cast<std::size_t>(v)] * std::abs(g.f(v, 0));
  if (std::abs(l1 - 1.0) > 1e-9 || !is_centered(g)) {
    throw Error(ErrorKind::kParameter, "embedding must be centered with sum weight |g| = 1");
  }
}

/// Shared four-function rounding; `eval` is the mode's expansion.
Cut threshold_generic(const Embedding& g1, std::vector<double> r, CutMode mode, double objective,
                      const std::function<double(const Membership&)>& eval) {
  check_l1_embedding(g1);
  const std::vector<double>& w = g1.weights;
  const std::size_t n = w.size();
  if (r.size() != n) throw Error(ErrorKind::kParameter, "potentials have wrong length");
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  double mean_r = 0.0;
  for (std::size_t v = 0; v < n; ++v) mean_r += w[v] * r[v];
  mean_r /= total;
  for (double& x : r) x -= mean_r;

  std::vector<double> plus(n), minus(n);
  for (std::size_t v = 0; v < n; ++v) {
    plus[v] = g1.f(static_cast<Eigen::Index>(v), 0) + r[v];
    minus[v] = g1.f(static_cast<Eigen::Index>(v), 0) - r[v];
  }
  const double c1 = weighted_lower_median(plus, w);
  const double c2 = weighted_lower_median(minus, w);
  std::vector<std::vector<double>> funcs(4, std::vector<double>(n));
  double mass = 0.0;
  std::vector<double> support(4, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    funcs[0][v] = std::max(0.0, plus[v] - c1);
    funcs[1][v] = std::max(0.0, minus[v] - c2);
    funcs[2][v] = std::max(0.0, -minus[v] + c2);
    funcs[3][v] = std::max(0.0, -plus[v] + c1);
    for (int i = 0; i < 4; ++i) {
      mass += w[v] * funcs[static_cast<std::size_t>(i)][v];
      if (funcs[static_cast<std::size_t>(i)][v] > 0.0) support[static_cast<std::size_t>(i)] += w[v];
    }
  }
  for (double s : support) ensure(s <= total / 2.0 * (1.0 + 1e-12), "median split left more than half the mass");
  ensure(mass >= 0.5 - 1e-9, "threshold functions carry less than 1/2 total mass");

  std::optional<Cut> best;
  for (const auto& fn : funcs) {
    const SweepResult s = sweep(fn, mode, eval);
    if (s.best && (!best || s.best->value < best->value)) best = s.best;
  }
  if (!best) throw Error(ErrorKind::kDegenerate, "threshold functions produced no proper cut");
  ensure(within(best->value, 8.0 * objective), "threshold cut exceeds 8 times the dual objective");
  return *best;
}

struct Candidate {
  Cut cut;
  CutDiagnostics diag;
};

/// One ensemble member at one projection dimension.
template <typename Ops>
Candidate run_member(const Ops& ops, const Embedding& witness, int dim, std::uint64_t seed) {
  const Embedding h = project_random(witness, dim, seed);
  const CoordinateChoice choice = ops.best(h);
  const SquareMap sq = square_map(choice.f);
  ops.distortion(choice.f, sq.shift);
  const DualCertificate dual = ops.dual(sq.g);
  Candidate c;
  c.cut = ops.threshold(sq.g, dual);
  c.diag.lambda_1 = choice.value;
  c.diag.xi = dual.objective;
  c.diag.eta = dual.objective / 2.0;
  c.diag.projection_dim = dim;
  c.diag.member_seed = seed;
  c.diag.dual_bound = 8.0 * c.diag.xi;
  c.diag.chain_bound = 46.0 * std::sqrt(choice.value);
  ensure(within(c.diag.eta, 2.0 * std::sqrt(2.0) * std::sqrt(choice.value)),
         "l1 value exceeds 2 sqrt(2) sqrt(lambda_1)");
  ensure(within(c.cut.value, c.diag.chain_bound), "cut exceeds 46 sqrt(lambda_1)");
  return c;
}

template <typename Ops>
CutResult run_pipeline(const Ops& ops, SpectralBracket bracket, double complexity, const CutOptions& options) {
  if (options.ensemble < 1) throw Error(ErrorKind::kParameter, "ensemble must be at least 1");
  CutResult out;
  const int full_dim = bracket.witness_f.dim();
  int dim = static_cast<int>(std::ceil(options.projection_constant * std::log2(std::max(1.0, complexity))));
  dim = std::clamp(dim, 1, std::max(1, full_dim));
  std::vector<int> dims{dim};
  if (dim != 1) dims.push_back(1);
  Rng master(options.seed);
  std::vector<std::uint64_t> seeds;
  for (int m = 0; m < options.ensemble; ++m) seeds.push_back(master.next_u64());

  // Members are independent; they may run on worker threads but the
  // reduction below is sequential, so the result does not depend on timing.
  const std::size_t jobs = seeds.size() * dims.size();
  std::vector<std::optional<Candidate>> results(jobs);
  parallel_for(jobs, options.threads, [&](std::size_t j) {
    results[j] = run_member(ops, bracket.witness_f, dims[j % dims.size()], seeds[j / dims.size()]);
  });

  std::optional<Candidate> best;
  for (std::size_t j = 0; j < jobs; ++j) {
    results[j]->diag.member = static_cast<int>(j / dims.size());
    if (!best || results[j]->cut.value < best->cut.value) best = std::move(results[j]);
  }
  out.cut = best->cut;
  out.diagnostics = best->diag;
  out.diagnostics.lambda_lo = bracket.lambda_lo;
  out.diagnostics.lambda_hi = bracket.lambda_hi;
  out.diagnostics.converged = bracket.converged;
  out.bracket = std::move(bracket);
  return out;
}

struct DirectedOps {
  const DirectedGraph& input;
  const DirectedGraph& work;
  Mode mode;
  const std::optional<VertexWeights>& pi;

  CoordinateChoice best(const Embedding& h) const { return best_coordinate(work, mode, pi, h); }
  void distortion(const Embedding& f, double shift) const { check_square_distortion(work, f, shift); }
  DualCertificate dual(const Embedding& g) const { return dual_from_embedding(work, mode, pi, g); }
  Cut threshold(const Embedding& g, const DualCertificate& d) const { return threshold_cut(input, mode, pi, g, d); }
};

struct HyperOps {
  const Hypergraph& h;

  CoordinateChoice best(const Embedding& e) const { return best_coordinate(h, e); }
  void distortion(const Embedding& f, double shift) const {
    for (const Hyperedge& e : h.edges()) {
      for (std::size_t i = 0; i < e.vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < e.vertices.size(); ++j) {
          check_pair(f.f(e.vertices[i], 0), f.f(e.vertices[j], 0), shift);
        }
      }
    }
  }
  DualCertificate dual(const Embedding& g) const { return dual_from_embedding(h, g); }
  Cut threshold(const Embedding& g, const DualCertificate& d) const { return threshold_cut(h, g, d); }
};

/// Vertex sets of the clique expansion's connected components.
std::vector<std::vector<int>> hypergraph_components(const Hypergraph& h) {
  const int n = h.num_vertices();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const Hyperedge& e : h.edges()) {
    if (!(e.weight > 0.0)) continue;
    for (int v : e.vertices) parent[static_cast<std::size_t>(find(v))] = find(e.vertices.front());
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    const int root = find(v);
    if (index[static_cast<std::size_t>(root)] < 0) {
      index[static_cast<std::size_t>(root)] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(index[static_cast<std::size_t>(root)])].push_back(v);
  }
  return groups;
}

}  // namespace

Embedding project_random(const Embedding& f, int k, std::uint64_t seed) {
  if (k < 1) throw Error(ErrorKind::kParameter, "projection dimension must be at least 1");
  Rng rng(seed);
  Matrix gauss(f.dim(), k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < f.dim(); ++i) gauss(i, j) = rng.normal();
  }
  Embedding h = make_embedding(f.f * gauss / std::sqrt(static_cast<double>(k)), f.weights, f.kind);
  center(h);
  normalize(h);
  return h;
}

CoordinateChoice best_coordinate(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi,
                                 const Embedding& f) {
  return choose_coordinate(f, [&](const Embedding& e) { return certify_upper(g, mode, pi, e); });
}

CoordinateChoice best_coordinate(const Hypergraph& h, const Embedding& f) {
  return choose_coordinate(f, [&](const Embedding& e) { return certify_upper_hypergraph(h, e); });
}

SquareMap square_map(const Embedding& f) {
  if (f.dim() != 1) throw Error(ErrorKind::kParameter, "squaring map needs a 1-dim embedding");
  if (!is_centered(f)) throw Error(ErrorKind::kParameter, "squaring map needs a centered embedding");
  const double norm2 = weighted_norm2(f);
  if (!(norm2 > 0.0)) throw Error(ErrorKind::kDegenerate, "embedding is identically zero");
  const std::vector<double>& w = f.weights;
  auto balance = [&](double c) {
    double s = 0.0, scale = 0.0;
    for (int v = 0; v < f.size(); ++v) {
      const double x = f.f(v, 0) + c;
      s += w[static_cast<std::size_t>(v)] * signed_square(x);
      scale += w[static_cast<std::size_t>(v)] * x * x;
    }
    return std::pair{s, scale};
  };
  double lo = -f.f.maxCoeff(), hi = -f.f.minCoeff();
  double c = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const auto [s, scale] = balance(c);
    if (std::abs(s) <= 1e-12 * scale) break;
    (s > 0.0 ? hi : lo) = c;
    const double mid = 0.5 * (lo + hi);
    if (mid == c) break;
    c = mid;
  }

  SquareMap out;
  out.shift = c;
  Matrix g(f.size(), 1);
  double l1 = 0.0;
  for (int v = 0; v < f.size(); ++v) {
    g(v, 0) = signed_square(f.f(v, 0) + c);
    l1 += w[static_cast<std::size_t>(v)] * std::abs(g(v, 0));
  }
  out.l1_ratio = l1 / norm2;
  ensure(out.l1_ratio >= 1.0 - 1e-9 && out.l1_ratio <= 2.0 + 1e-9, "squared embedding l1 mass outside [1, 2]");
  out.g = make_embedding(g / l1, w, f.kind);
  out.g.centered = true;
  return out;
}

void check_square_distortion(const DirectedGraph& g, const Embedding& f, double shift) {
  for (const Arc& a : g.arcs()) check_pair(f.f(a.tail, 0), f.f(a.head, 0), shift);
}

DualCertificate dual_from_embedding(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi,
                                    const Embedding& g1) {
  if (g1.dim() != 1) throw Error(ErrorKind::kParameter, "dual extraction needs a 1-dim embedding");
  if (mode == Mode::kVertex && !pi) throw Error(ErrorKind::kParameter, "vertex mode needs pi");
  const DirectedGraph work = mode == Mode::kVertex ? with_required_loops(g) : g;
  const std::vector<double> len = abs_lengths(work, g1);
  const OracleResult r = mode == Mode::kVertex ? eulerian_oracle_vertex(work, *pi, len) : eulerian_oracle_edge(work, len);
  ensure(std::abs(r.value - r.dual.objective) <= 1e-6 * (1.0 + std::abs(r.value)), "l1 oracle duality gap");
  return r.dual;
}

DualCertificate dual_from_embedding(const Hypergraph& h, const Embedding& g1) {
  if (g1.dim() != 1) throw Error(ErrorKind::kParameter, "dual extraction needs a 1-dim embedding");
  DualCertificate d;
  d.mode = Mode::kEdge;
  d.r.assign(static_cast<std::size_t>(h.num_vertices()), 0.0);
  for (const Hyperedge& e : h.edges()) {
    double top = -std::numeric_limits<double>::infinity(), bottom = std::numeric_limits<double>::infinity();
    for (int v : e.vertices) {
      top = std::max(top, g1.f(v, 0));
      bottom = std::min(bottom, g1.f(v, 0));
    }
    d.q.push_back(top - bottom);
    d.objective += e.weight * (top - bottom);
  }
  return d;
}

double weighted_lower_median(const std::vector<double>& values, const std::vector<double>& weights) {
  if (values.empty() || values.size() != weights.size()) throw Error(ErrorKind::kParameter, "median needs matching inputs");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double cum = 0.0;
  for (std::size_t i : order) {
    cum += weights[i];
    if (cum >= 0.5 * total) return values[i];
  }
  return values[order.back()];
}

SweepResult sweep(const std::vector<double>& values, CutMode mode,
                  const std::function<double(const Membership&)>& eval) {
  std::vector<double> levels(values);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  SweepResult out;
  Membership in(values.size(), 0);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    // {v : value > midpoint} without forming the midpoint, which can round
    // onto a level when the two are adjacent doubles.
    for (std::size_t v = 0; v < values.size(); ++v) in[v] = values[v] >= levels[i];
    ++out.examined;
    double value = 0.0;
    try {
      value = eval(in);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDegenerateCut) throw;
      continue;
    }
    if (!out.best || value < out.best->value) out.best = Cut{members(in), value, mode};
  }
  return out;
}

Cut threshold_cut(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi, const Embedding& g1,
                  const DualCertificate& dual) {
  if (mode == Mode::kVertex) {
    if (!pi) throw Error(ErrorKind::kParameter, "vertex mode needs pi");
    return threshold_generic(g1, dual.r, CutMode::kVertexExpansion, dual.objective,
                             [&](const Membership& s) { return directed_vertex_expansion(g, *pi, s); });
  }
  return threshold_generic(g1, dual.r, CutMode::kEdgeConductance, dual.objective,
                           [&](const Membership& s) { return directed_edge_conductance(g, s); });
}

Cut threshold_cut(const Hypergraph& h, const Embedding& g1, const DualCertificate& dual) {
  return threshold_generic(g1, dual.r, CutMode::kHypergraphConductance, dual.objective,
                           [&](const Membership& s) { return hypergraph_conductance(h, s); });
}

CutResult spectral_cut(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi,
                       const CutOptions& options) {
  SpectralBracket bracket = max_reweighted_gap(g, mode, pi, options.gap);
  if (bracket.components >= 2) {
    // Source component of the condensation: nothing enters it, so one side
    // of the cut has an empty boundary.
    const auto comps = mode == Mode::kEdge ? positive_scc_components(g) : scc_components(g);
    const Membership in = membership(g.num_vertices(), comps.front());
    CutResult out;
    out.cut.vertices = comps.front();
    out.cut.mode = mode == Mode::kEdge ? CutMode::kEdgeConductance : CutMode::kVertexExpansion;
    out.cut.value = mode == Mode::kEdge ? directed_edge_conductance(g, in) : directed_vertex_expansion(g, *pi, in);
    ensure(out.cut.value == 0.0, "source component cut is not zero");
    out.diagnostics.scc_bypass = true;
    out.diagnostics.converged = true;
    out.diagnostics.lambda_lo = bracket.lambda_lo;
    out.diagnostics.lambda_hi = bracket.lambda_hi;
    out.diagnostics.alpha = std::numeric_limits<double>::infinity();
    out.bracket = std::move(bracket);
    return out;
  }
  const double alpha = mode == Mode::kEdge ? asymmetric_ratio(g) : asymmetric_ratio(g, *pi);
  const double complexity = mode == Mode::kEdge ? alpha : g.max_degree() * alpha;
  const DirectedGraph work = bracket.graph;
  CutResult out = run_pipeline(DirectedOps{g, work, mode, pi}, std::move(bracket), complexity, options);
  out.diagnostics.alpha = alpha;
  return out;
}

CutResult hypergraph_cut(const Hypergraph& h, const CutOptions& options) {
  SpectralBracket bracket = gamma2_hypergraph(h, options.gap);
  if (bracket.components >= 2) {
    const auto comps = hypergraph_components(h);
    CutResult out;
    out.cut.vertices = comps.front();
    out.cut.mode = CutMode::kHypergraphConductance;
    out.cut.value = hypergraph_conductance(h, comps.front());
    ensure(out.cut.value == 0.0, "component cut is not zero");
    out.diagnostics.scc_bypass = true;
    out.diagnostics.converged = true;
    out.diagnostics.lambda_lo = bracket.lambda_lo;
    out.diagnostics.lambda_hi = bracket.lambda_hi;
    out.bracket = std::move(bracket);
    return out;
  }
  return run_pipeline(HyperOps{h}, std::move(bracket), static_cast<double>(h.rank()), options);
}

}  // namespace dircheeger
