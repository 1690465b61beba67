#include "dircheeger/circulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dircheeger/error.hpp"
#include "dircheeger/flow_network.hpp"

namespace dircheeger {

namespace {

void check_lengths(const DirectedGraph& g, std::span<const double> lengths) {
  if (static_cast<int>(lengths.size()) != g.num_arcs()) {
    throw Error(ErrorKind::kParameter, "length vector does not match arc count");
  }
  for (double l : lengths) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw Error(ErrorKind::kParameter, "lengths must be finite and nonnegative");
    }
  }
}

void shift_potentials(std::vector<double>& r, std::span<const double> base) {
  double num = 0.0, den = 0.0;
  for (std::size_t v = 0; v < r.size(); ++v) {
    num += base[v] * r[v];
    den += base[v];
  }
  if (den > 0.0) {
    const double c = num / den;
    for (double& x : r) x -= c;
  }
}

std::int64_t to_int(double x) { return static_cast<std::int64_t>(x); }

}  // namespace

std::vector<double> symmetric_degrees(const DirectedGraph& g, std::span<const double> a) {
  std::vector<double> d(static_cast<std::size_t>(g.num_vertices()), 0.0);
  for (int i = 0; i < g.num_arcs(); ++i) {
    const Arc& arc = g.arc(i);
    d[static_cast<std::size_t>(arc.tail)] += 0.5 * a[static_cast<std::size_t>(i)];
    d[static_cast<std::size_t>(arc.head)] += 0.5 * a[static_cast<std::size_t>(i)];
  }
  return d;
}

double max_imbalance(const DirectedGraph& g, std::span<const double> a) {
  std::vector<double> net(static_cast<std::size_t>(g.num_vertices()), 0.0);
  for (int i = 0; i < g.num_arcs(); ++i) {
    const Arc& arc = g.arc(i);
    net[static_cast<std::size_t>(arc.tail)] += a[static_cast<std::size_t>(i)];
    net[static_cast<std::size_t>(arc.head)] -= a[static_cast<std::size_t>(i)];
  }
  double worst = 0.0;
  for (double x : net) worst = std::max(worst, std::abs(x));
  return worst;
}

DualCertificate dual_from_potentials(const DirectedGraph& g, Mode mode, std::span<const double> pi,
                                     std::span<const double> lengths, std::vector<double> r) {
  DualCertificate dual;
  dual.mode = mode;
  if (mode == Mode::kEdge) {
    dual.q.assign(static_cast<std::size_t>(g.num_arcs()), 0.0);
    for (int i = 0; i < g.num_arcs(); ++i) {
      const Arc& a = g.arc(i);
      const double need = lengths[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(a.tail)] +
                          r[static_cast<std::size_t>(a.head)];
      dual.q[static_cast<std::size_t>(i)] = std::max(0.0, need);
      dual.objective += a.weight * dual.q[static_cast<std::size_t>(i)];
    }
  } else {
    dual.q.assign(static_cast<std::size_t>(g.num_vertices()), 0.0);
    for (int i = 0; i < g.num_arcs(); ++i) {
      const Arc& a = g.arc(i);
      const double need = lengths[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(a.tail)] +
                          r[static_cast<std::size_t>(a.head)];
      double& q = dual.q[static_cast<std::size_t>(a.head)];
      q = std::max(q, need);
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
      dual.objective += pi[static_cast<std::size_t>(v)] * dual.q[static_cast<std::size_t>(v)];
    }
  }
  dual.r = std::move(r);
  return dual;
}

double dual_min_slack(const DirectedGraph& g, const DualCertificate& dual,
                      std::span<const double> lengths) {
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.num_arcs(); ++i) {
    const Arc& a = g.arc(i);
    const double q = dual.q[static_cast<std::size_t>(dual.mode == Mode::kEdge ? i : a.head)];
    const double slack = q - lengths[static_cast<std::size_t>(i)] +
                         dual.r[static_cast<std::size_t>(a.tail)] -
                         dual.r[static_cast<std::size_t>(a.head)];
    worst = std::min(worst, slack);
  }
  return worst;
}

std::optional<Reweighting> hoffman_circulation(const DirectedGraph& g, std::span<const double> w,
                                               double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::kParameter, "alpha must be finite and at least 1");
  }
  if (static_cast<int>(w.size()) != g.num_arcs()) {
    throw Error(ErrorKind::kParameter, "weight vector does not match arc count");
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const int n = g.num_vertices();
  if (!(total > 0.0)) return Reweighting{std::vector<double>(w.size(), 0.0)};

  // Lower bounds round down and upper bounds round up, so the integer problem
  // is a relaxation that is off by at most one grid unit per arc.
  const double scale = integer_scale(alpha * total * (1.0 + 1e-9));
  MaxFlow net(n + 2);
  const int s = n, t = n + 1;
  std::vector<std::int64_t> lower(w.size()), excess(static_cast<std::size_t>(n), 0);
  std::vector<int> ids(w.size());
  for (int i = 0; i < g.num_arcs(); ++i) {
    const Arc& a = g.arc(i);
    const double wi = w[static_cast<std::size_t>(i)];
    if (!(wi >= 0.0)) throw Error(ErrorKind::kParameter, "weights must be nonnegative");
    const std::int64_t lo = to_int(std::floor(wi * scale));
    const std::int64_t hi = to_int(std::ceil(alpha * wi * scale));
    lower[static_cast<std::size_t>(i)] = lo;
    ids[static_cast<std::size_t>(i)] = net.add_edge(a.tail, a.head, hi - lo);
    excess[static_cast<std::size_t>(a.head)] += lo;
    excess[static_cast<std::size_t>(a.tail)] -= lo;
  }
  std::int64_t need = 0;
  for (int v = 0; v < n; ++v) {
    const std::int64_t e = excess[static_cast<std::size_t>(v)];
    if (e > 0) {
      net.add_edge(s, v, e);
      need += e;
    } else if (e < 0) {
      net.add_edge(v, t, -e);
    }
  }
  if (net.run(s, t) != need) return std::nullopt;
  Reweighting out;
  out.values.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.values[i] = static_cast<double>(lower[i] + net.flow(ids[i])) / scale;
  }
  return out;
}

double asymmetric_ratio(const DirectedGraph& g, std::span<const double> w) {
  if (static_cast<int>(w.size()) != g.num_arcs()) {
    throw Error(ErrorKind::kParameter, "weight vector does not match arc count");
  }
  double total = 0.0;
  std::vector<Arc> positive;
  for (int i = 0; i < g.num_arcs(); ++i) {
    const Arc& a = g.arc(i);
    const double wi = w[static_cast<std::size_t>(i)];
    total += wi;
    if (wi > 0.0) positive.push_back({a.tail, a.head, wi});
  }
  if (!(total > 0.0)) throw Error(ErrorKind::kDegenerate, "asymmetric ratio undefined without weighted arcs");

  const DirectedGraph support(g.num_vertices(), positive);
  std::vector<int> comp(static_cast<std::size_t>(g.num_vertices()));
  const auto components = scc_components(support);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (int v : components[c]) comp[static_cast<std::size_t>(v)] = static_cast<int>(c);
  }
  for (const Arc& a : positive) {
    if (comp[static_cast<std::size_t>(a.tail)] != comp[static_cast<std::size_t>(a.head)]) {
      return std::numeric_limits<double>::infinity();
    }
  }

  auto feasible = [&](double alpha) { return hoffman_circulation(g, w, alpha).has_value(); };
  if (feasible(1.0)) return 1.0;
  double lo = 1.0, hi = 2.0;
  while (!feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 0x1.0p64) return std::numeric_limits<double>::infinity();
  }
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

double asymmetric_ratio(const DirectedGraph& g) {
  const std::vector<double> w = g.weights();
  return asymmetric_ratio(g, w);
}

double asymmetric_ratio(const DirectedGraph& g, const VertexWeights& pi) {
  const std::vector<double> w = pi_induced_weights(g, pi);
  return asymmetric_ratio(g, w);
}

OracleResult eulerian_oracle_edge(const DirectedGraph& g, std::span<const double> lengths) {
  check_lengths(g, lengths);
  const int n = g.num_vertices();
  const auto m = static_cast<std::size_t>(g.num_arcs());
  OracleResult res;
  res.a.values.assign(m, 0.0);
  std::vector<double> r(static_cast<std::size_t>(n), 0.0);

  if (g.total_weight() > 0.0) {
    // Arcs of positive length start saturated; the network can only undo
    // saturation (cost +l) or push along zero-length arcs (cost 0), so every
    // cost is nonnegative.
    const double scale = integer_scale(g.total_weight());
    MinCostFlow net(n);
    std::vector<std::int64_t> supply(static_cast<std::size_t>(n), 0), cap(m);
    std::vector<int> ids(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
      const Arc& a = g.arc(static_cast<int>(i));
      cap[i] = to_int(std::floor(a.weight * scale));
      if (a.is_loop()) continue;
      if (lengths[i] > 0.0) {
        ids[i] = net.add_edge(a.head, a.tail, cap[i], lengths[i]);
        supply[static_cast<std::size_t>(a.head)] += cap[i];
        supply[static_cast<std::size_t>(a.tail)] -= cap[i];
      } else {
        ids[i] = net.add_edge(a.tail, a.head, cap[i], 0.0);
      }
    }
    ensure(net.solve(supply), "undoing saturation is always feasible");
    for (std::size_t i = 0; i < m; ++i) {
      const Arc& a = g.arc(static_cast<int>(i));
      std::int64_t flow = 0;
      if (a.is_loop()) {
        flow = lengths[i] > 0.0 ? cap[i] : 0;
      } else if (lengths[i] > 0.0) {
        flow = cap[i] - net.flow(ids[i]);
      } else {
        flow = net.flow(ids[i]);
      }
      res.a.values[i] = static_cast<double>(flow) / scale;
      res.value += res.a.values[i] * lengths[i];
    }
    r = net.residual_potentials();
  }
  const std::vector<double> d = g.degrees();
  shift_potentials(r, d);
  res.dual = dual_from_potentials(g, Mode::kEdge, {}, lengths, std::move(r));
  return res;
}

OracleResult eulerian_oracle_vertex(const DirectedGraph& g, const VertexWeights& pi,
                                    std::span<const double> lengths) {
  check_lengths(g, lengths);
  const int n = g.num_vertices();
  if (pi.size() != n) throw Error(ErrorKind::kParameter, "pi has wrong length");
  if (!g.has_all_loops()) {
    throw Error(ErrorKind::kInfeasible, "vertex-capacitated oracle needs a self-loop at every vertex");
  }
  const auto m = static_cast<std::size_t>(g.num_arcs());
  double top = 0.0;
  for (double l : lengths) top = std::max(top, l);

  // Transportation form: out-copy u supplies pi(u), in-copy n+v demands pi(v).
  const double scale = integer_scale(pi.total());
  MinCostFlow net(2 * n);
  std::vector<std::int64_t> supply(static_cast<std::size_t>(2 * n), 0);
  std::int64_t total = 0;
  for (int v = 0; v < n; ++v) {
    const std::int64_t p = to_int(std::floor(pi[v] * scale));
    supply[static_cast<std::size_t>(v)] = p;
    supply[static_cast<std::size_t>(n + v)] = -p;
    total += p;
  }
  std::vector<int> ids(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Arc& a = g.arc(static_cast<int>(i));
    ids[i] = net.add_edge(a.tail, n + a.head, total, top - lengths[i]);
  }
  ensure(net.solve(supply), "self-loops make the transportation problem feasible");

  OracleResult res;
  res.a.values.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    res.a.values[i] = static_cast<double>(net.flow(ids[i])) / scale;
  }
  // Hand the rounding remainder of pi to the self-loops so that rows and
  // columns match pi in floating point.
  for (int v = 0; v < n; ++v) {
    const double rest = pi[v] - static_cast<double>(supply[static_cast<std::size_t>(v)]) / scale;
    res.a.values[static_cast<std::size_t>(*g.find_arc(v, v))] += rest;
  }
  for (std::size_t i = 0; i < m; ++i) res.value += res.a.values[i] * lengths[i];

  const std::vector<double> p = net.residual_potentials();
  std::vector<double> r(p.begin(), p.begin() + n);
  shift_potentials(r, pi.values());
  res.dual = dual_from_potentials(g, Mode::kVertex, pi.values(), lengths, std::move(r));
  return res;
}

}  // namespace dircheeger
