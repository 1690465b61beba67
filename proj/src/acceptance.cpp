#include "dircheeger/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "dircheeger/error.hpp"
#include "dircheeger/instances.hpp"
#include "dircheeger/parallel.hpp"
#include "dircheeger/random.hpp"

namespace dircheeger {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Collects checks; remembers the first failure.
class Checker {
 public:
  void check(bool ok, const std::string& what) {
    ++total_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
  }
  bool ok() const { return first_failure_.empty(); }
  int total() const { return total_; }
  const std::string& first_failure() const { return first_failure_; }

 private:
  int total_ = 0;
  std::string first_failure_;
};

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

struct Context {
  std::uint64_t seed;
  int threads;

  /// Independent stream per (criterion, instance).
  Rng rng(int criterion, int index) const {
    Rng base(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(criterion * 1000 + index + 1)));
    return base.split();
  }
};

struct Sample {
  DirectedGraph g;
  VertexWeights pi;
};

/// Random strongly connected digraph with 3..max_n vertices and random pi.
Sample random_sample(Rng& rng, int max_n) {
  const int n = 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - 2)));
  const double p = 0.15 + 0.35 * rng.uniform();
  Sample s{random_strong(n, p, rng.next_u64()), {}};
  std::vector<double> w(static_cast<std::size_t>(n));
  for (double& x : w) x = 0.5 + 1.5 * rng.uniform();
  s.pi = VertexWeights(w);
  return s;
}

std::vector<Sample> corpus(const Context& ctx, int criterion, int count, int max_n) {
  std::vector<Sample> out;
  for (int i = 0; i < count; ++i) {
    Rng rng = ctx.rng(criterion, i);
    out.push_back(random_sample(rng, max_n));
  }
  return out;
}

/// max over S of w(d+(S)) / w(d+(V-S)) by enumeration.
double brute_alpha(const DirectedGraph& g, const std::vector<double>& w) {
  const int n = g.num_vertices();
  double best = 0.0;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    double out = 0.0, in = 0.0;
    for (int i = 0; i < g.num_arcs(); ++i) {
      const Arc& a = g.arc(i);
      const bool t = mask >> a.tail & 1, h = mask >> a.head & 1;
      if (t && !h) out += w[static_cast<std::size_t>(i)];
      if (!t && h) in += w[static_cast<std::size_t>(i)];
    }
    if (out == 0.0 && in == 0.0) continue;
    best = std::max(best, in == 0.0 ? kInf : out / in);
  }
  return best;
}

bool close(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

bool leq(double a, double b) { return a <= b * (1.0 + 1e-9) + 1e-12; }

std::string what(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return std::string(to_string(err->kind())) + ": " + e.what();
  return e.what();
}

// ---------------------------------------------------------------------------

void exact_evaluators(const Context&, Checker& c, Json& data) {
  const DirectedGraph c4 = directed_cycle(4);
  const DirectedGraph dag = complete_dag(5);
  const VertexWeights ones = VertexWeights::uniform(4);
  const double phi_direct = directed_edge_conductance(c4, std::vector<int>{0, 1});
  const double phi_brute = brute_force_edge_conductance(c4).value;
  const double psi_direct = directed_vertex_expansion(c4, ones, std::vector<int>{0, 1});
  const double psi_brute = brute_force_vertex_expansion(c4, ones).value;
  const double dag_direct = directed_edge_conductance(dag, std::vector<int>{0});
  const double dag_brute = brute_force_edge_conductance(dag).value;
  c.check(phi_direct == 0.25, "phi(C4) direct = " + fmt(phi_direct));
  c.check(phi_brute == 0.25, "phi(C4) brute force = " + fmt(phi_brute));
  c.check(psi_direct == 0.5, "psi(C4) direct = " + fmt(psi_direct));
  c.check(psi_brute == 0.5, "psi(C4) brute force = " + fmt(psi_brute));
  c.check(dag_direct == 0.0, "phi(DAG) direct = " + fmt(dag_direct));
  c.check(dag_brute == 0.0, "phi(DAG) brute force = " + fmt(dag_brute));
  data = {{"phi_c4", {phi_direct, phi_brute}}, {"psi_c4", {psi_direct, psi_brute}}, {"phi_dag", {dag_direct, dag_brute}}};
}

void cycle_closed_form(const Context& ctx, Checker& c, Json& data) {
  const std::vector<int> sizes{4, 6, 8, 10, 12};
  std::vector<SpectralBracket> brackets(sizes.size());
  parallel_for(sizes.size(), ctx.threads, [&](std::size_t i) {
    GapOptions o;
    o.tol = 1e-4;
    o.max_iters = 20000;
    brackets[i] = max_reweighted_gap(directed_cycle(sizes[i]), Mode::kEdge, std::nullopt, o);
  });
  data = Json::array();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const int n = sizes[i];
    const double target = (1.0 - std::cos(2.0 * std::numbers::pi / n)) / 2.0;
    const SpectralBracket& b = brackets[i];
    const std::string tag = "C" + std::to_string(n) + ": ";
    c.check(std::abs(b.lambda_lo - target) <= 1e-3, tag + "lambda_lo " + fmt(b.lambda_lo) + " vs " + fmt(target));
    c.check(std::abs(b.lambda_hi - target) <= 1e-3, tag + "lambda_hi " + fmt(b.lambda_hi) + " vs " + fmt(target));
    c.check(b.lambda_hi - b.lambda_lo <= 1e-3, tag + "bracket width " + fmt(b.lambda_hi - b.lambda_lo));
    data.push_back({{"n", n}, {"target", target}, {"lambda_lo", b.lambda_lo}, {"lambda_hi", b.lambda_hi}});
  }
}

/// Random strongly connected blocks joined by forward arcs only.
DirectedGraph multi_scc(Rng& rng, int& blocks) {
  blocks = 2 + static_cast<int>(rng.below(3));
  std::vector<int> start{0};
  std::vector<Arc> arcs;
  for (int b = 0; b < blocks; ++b) {
    const int size = 1 + static_cast<int>(rng.below(3));
    if (size > 1) {
      const DirectedGraph piece = random_strong(size, 0.4, rng.next_u64());
      for (const Arc& a : piece.arcs()) arcs.push_back({a.tail + start.back(), a.head + start.back(), a.weight});
    }
    start.push_back(start.back() + size);
  }
  const int n = start.back();
  for (int b = 0; b + 1 < blocks; ++b) {
    // one guaranteed forward arc keeps the condensation connected
    arcs.push_back({start[static_cast<std::size_t>(b)], start[static_cast<std::size_t>(b) + 1], 1.0});
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const auto bu = std::upper_bound(start.begin(), start.end(), u) - start.begin();
      const auto bv = std::upper_bound(start.begin(), start.end(), v) - start.begin();
      if (bu < bv && rng.uniform() < 0.3) arcs.push_back({u, v, 0.5 + 1.5 * rng.uniform()});
    }
  }
  return DirectedGraph(n, arcs);
}

void zero_law(const Context& ctx, Checker& c, Json& data) {
  struct Job {
    DirectedGraph g;
    std::optional<VertexWeights> pi;
    int sccs = 0;
    bool strong = false;
    std::vector<double> edge, vertex;  // sigma_k for k = 2..sccs, or lambda_lo
    std::string error;
  };
  std::vector<Job> jobs;
  for (int n = 3; n <= 8; ++n) {
    Job j;
    j.g = complete_dag(n);
    j.pi = VertexWeights::uniform(n);
    j.sccs = n;
    jobs.push_back(std::move(j));
  }
  for (int i = 0; i < 20; ++i) {
    Rng rng = ctx.rng(3, i);
    int blocks = 0;
    Job j;
    j.g = multi_scc(rng, blocks);
    j.pi = VertexWeights::uniform(j.g.num_vertices());
    j.sccs = blocks;
    jobs.push_back(std::move(j));
  }
  for (int i = 0; i < 20; ++i) {
    Rng rng = ctx.rng(3, 100 + i);
    Sample s = random_sample(rng, 10);
    Job j;
    j.g = std::move(s.g);
    j.pi = std::move(s.pi);
    j.sccs = 1;
    j.strong = true;
    jobs.push_back(std::move(j));
  }
  parallel_for(jobs.size(), ctx.threads, [&](std::size_t i) {
    Job& j = jobs[i];
    try {
      if (j.strong) {
        j.edge.push_back(max_reweighted_gap(j.g, Mode::kEdge, std::nullopt).lambda_lo);
        j.vertex.push_back(max_reweighted_gap(j.g, Mode::kVertex, j.pi).lambda_lo);
        return;
      }
      for (int k = 2; k <= j.sccs; ++k) {
        j.edge.push_back(sigma_k_lower(j.g, Mode::kEdge, k));
        j.vertex.push_back(sigma_k_lower(j.g, Mode::kVertex, k, j.pi));
      }
    } catch (const std::exception& e) {
      j.error = what(e);
    }
  });
  double worst_zero = 0.0, min_strong = kInf;
  int sigma_checks = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& j = jobs[i];
    const std::string tag = "instance " + std::to_string(i) + ": ";
    c.check(j.error.empty(), tag + j.error);
    if (!j.error.empty()) continue;
    if (!j.strong) {
      c.check(static_cast<int>(scc_components(j.g).size()) == j.sccs, tag + "unexpected SCC count");
    }
    for (std::size_t t = 0; t < j.edge.size(); ++t) {
      for (double v : {j.edge[t], j.vertex[t]}) {
        if (j.strong) {
          min_strong = std::min(min_strong, v);
          c.check(v > 1e-4, tag + "strong graph has lambda_lo " + fmt(v));
        } else {
          ++sigma_checks;
          worst_zero = std::max(worst_zero, v);
          c.check(v <= 1e-6, tag + "sigma_" + std::to_string(t + 2) + " = " + fmt(v));
        }
      }
    }
  }
  data = {{"sigma_checks", sigma_checks}, {"max_sigma", worst_zero}, {"min_strong_lambda_lo", number(min_strong)}};
}

struct EasyJob {
  double phi = 0.0, psi = 0.0;
  SpectralBracket edge, vertex;
  std::string error;
};

void easy_directions(const Context& ctx, Checker& c, Json& data) {
  const std::vector<Sample> samples = corpus(ctx, 4, 50, 10);
  std::vector<EasyJob> jobs(samples.size());
  parallel_for(samples.size(), ctx.threads, [&](std::size_t i) {
    const Sample& s = samples[i];
    EasyJob& j = jobs[i];
    try {
      j.phi = brute_force_edge_conductance(s.g).value;
      j.psi = brute_force_vertex_expansion(s.g, s.pi).value;
      j.edge = max_reweighted_gap(s.g, Mode::kEdge, std::nullopt);
      j.vertex = max_reweighted_gap(s.g, Mode::kVertex, s.pi);
    } catch (const std::exception& e) {
      j.error = what(e);
    }
  });
  double slack_edge = kInf, slack_vertex = kInf;
  int converged = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const EasyJob& j = jobs[i];
    const std::string tag = "graph " + std::to_string(i) + ": ";
    c.check(j.error.empty(), tag + j.error);
    if (!j.error.empty()) continue;
    c.check(j.edge.lambda_lo <= 2 * j.phi + 1e-6, tag + "edge lambda_lo " + fmt(j.edge.lambda_lo) + " > 2 phi");
    c.check(j.vertex.lambda_lo <= 2 * j.psi + 1e-6, tag + "vertex lambda_lo " + fmt(j.vertex.lambda_lo) + " > 2 psi");
    slack_edge = std::min(slack_edge, 2 * j.phi - j.edge.lambda_lo);
    slack_vertex = std::min(slack_vertex, 2 * j.psi - j.vertex.lambda_lo);
    converged += j.edge.converged + j.vertex.converged;
  }
  data = {{"graphs", samples.size()},
          {"min_slack_edge", number(slack_edge)},
          {"min_slack_vertex", number(slack_vertex)},
          {"converged_brackets", converged}};
}

void rounding_chain(const Context& ctx, Checker& c, Json& data) {
  const std::vector<Sample> samples = corpus(ctx, 4, 50, 10);
  struct Job {
    Mode mode;
    double opt = 0.0;
    CutResult r;
    std::string error;
  };
  std::vector<Job> jobs(2 * samples.size());
  parallel_for(jobs.size(), ctx.threads, [&](std::size_t i) {
    const Sample& s = samples[i / 2];
    Job& j = jobs[i];
    j.mode = i % 2 == 0 ? Mode::kEdge : Mode::kVertex;
    try {
      CutOptions o;
      o.seed = ctx.seed + i;
      if (j.mode == Mode::kEdge) {
        j.opt = brute_force_edge_conductance(s.g).value;
        j.r = spectral_cut(s.g, j.mode, std::nullopt, o);
      } else {
        j.opt = brute_force_vertex_expansion(s.g, s.pi).value;
        j.r = spectral_cut(s.g, j.mode, s.pi, o);
      }
    } catch (const std::exception& e) {
      j.error = what(e);
    }
  });
  double worst_dual = 0.0, worst_chain = 0.0, worst_eta = 0.0, worst_ratio = 0.0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& j = jobs[i];
    const std::string tag = "graph " + std::to_string(i / 2) + " " + to_string(j.mode) + ": ";
    c.check(j.error.empty(), tag + j.error);
    if (!j.error.empty()) continue;
    const CutDiagnostics& d = j.r.diagnostics;
    const double value = j.r.cut.value;
    c.check(value >= j.opt - 1e-12, tag + "cut " + fmt(value) + " below the optimum " + fmt(j.opt));
    c.check(!d.scc_bypass, tag + "unexpected component bypass on a strongly connected graph");
    c.check(leq(value, 8 * d.xi), tag + "cut " + fmt(value) + " > 8 xi = " + fmt(8 * d.xi));
    c.check(close(d.xi, 2 * d.eta, 1e-9), tag + "dual objective " + fmt(d.xi) + " != 2 eta = " + fmt(2 * d.eta));
    c.check(leq(d.eta, 2 * std::numbers::sqrt2 * std::sqrt(d.lambda_1)),
            tag + "eta " + fmt(d.eta) + " > 2 sqrt2 sqrt(lambda_1)");
    c.check(leq(value, 46 * std::sqrt(d.lambda_1)), tag + "cut " + fmt(value) + " > 46 sqrt(lambda_1)");
    if (d.xi > 0) worst_dual = std::max(worst_dual, value / (8 * d.xi));
    if (d.lambda_1 > 0) {
      worst_chain = std::max(worst_chain, value / (46 * std::sqrt(d.lambda_1)));
      worst_eta = std::max(worst_eta, d.eta / (2 * std::numbers::sqrt2 * std::sqrt(d.lambda_1)));
    }
    if (j.opt > 0) worst_ratio = std::max(worst_ratio, value / j.opt);
  }
  data = {{"runs", jobs.size()},
          {"max_cut_over_8xi", worst_dual},
          {"max_eta_over_2sqrt2_sqrt_lambda1", worst_eta},
          {"max_cut_over_46_sqrt_lambda1", worst_chain},
          {"max_cut_over_optimum", worst_ratio}};
}

void asymmetric_ratio_check(const Context& ctx, Checker& c, Json& data) {
  const std::vector<Sample> samples = corpus(ctx, 6, 30, 10);
  struct Job {
    double alpha = 0, brute = 0, phi = 0, alpha_v = 0, brute_v = 0, psi = 0;
    int delta = 1;
    std::string error;
  };
  std::vector<Job> jobs(samples.size());
  parallel_for(samples.size(), ctx.threads, [&](std::size_t i) {
    const Sample& s = samples[i];
    Job& j = jobs[i];
    try {
      j.alpha = asymmetric_ratio(s.g);
      j.brute = brute_alpha(s.g, s.g.weights());
      j.phi = brute_force_edge_conductance(s.g).value;
      j.alpha_v = asymmetric_ratio(s.g, s.pi);
      j.brute_v = brute_alpha(s.g, pi_induced_weights(s.g, s.pi));
      j.psi = brute_force_vertex_expansion(s.g, s.pi).value;
      j.delta = s.g.max_degree();
    } catch (const std::exception& e) {
      j.error = what(e);
    }
  });
  double worst_err = 0.0, worst_edge = 0.0, worst_vertex = 0.0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& j = jobs[i];
    const std::string tag = "graph " + std::to_string(i) + ": ";
    c.check(j.error.empty(), tag + j.error);
    if (!j.error.empty()) continue;
    c.check(close(j.alpha, j.brute, 1e-5), tag + "alpha " + fmt(j.alpha) + " vs brute force " + fmt(j.brute));
    c.check(close(j.alpha_v, j.brute_v, 1e-5),
            tag + "pi-induced alpha " + fmt(j.alpha_v) + " vs brute force " + fmt(j.brute_v));
    c.check(leq(j.alpha, 1.0 / j.phi), tag + "alpha " + fmt(j.alpha) + " > 1/phi");
    c.check(leq(j.alpha_v, 3.0 * j.delta / j.psi), tag + "alpha " + fmt(j.alpha_v) + " > 3 Delta / psi");
    worst_err = std::max({worst_err, std::abs(j.alpha - j.brute) / std::max(1.0, j.brute),
                          std::abs(j.alpha_v - j.brute_v) / std::max(1.0, j.brute_v)});
    worst_edge = std::max(worst_edge, j.alpha * j.phi);
    worst_vertex = std::max(worst_vertex, j.alpha_v * j.psi / (3.0 * j.delta));
  }
  data = {{"graphs", samples.size()},
          {"max_relative_error", worst_err},
          {"max_alpha_times_phi", worst_edge},
          {"max_alpha_psi_over_3delta", worst_vertex}};
}

void large_optimal(const Context& ctx, Checker& c, Json& data) {
  struct Job {
    double edge_value = 0, edge_bound = 0, vertex_value = 0, vertex_bound = 0;
    std::string error;
  };
  std::vector<Job> jobs(30);
  parallel_for(jobs.size(), ctx.threads, [&](std::size_t i) {
    Rng rng = ctx.rng(7, static_cast<int>(i));
    const Sample s = random_sample(rng, 10);
    Job& j = jobs[i];
    try {
      // lengths |f(u) - f(v)|^2 of a random 3-dim embedding
      const int n = s.g.num_vertices();
      Matrix f(n, 3);
      for (int v = 0; v < n; ++v) {
        for (int d = 0; d < 3; ++d) f(v, d) = rng.normal();
      }
      auto lengths = [&f](const DirectedGraph& g) {
        std::vector<double> l;
        for (const Arc& a : g.arcs()) l.push_back((f.row(a.tail) - f.row(a.head)).squaredNorm());
        return l;
      };
      const std::vector<double> le = lengths(s.g);
      const std::vector<double> w = s.g.weights();
      double mass = 0.0;
      for (std::size_t a = 0; a < le.size(); ++a) mass += w[a] * le[a];
      j.edge_value = eulerian_oracle_edge(s.g, le).value;
      j.edge_bound = mass / asymmetric_ratio(s.g);

      const DirectedGraph gl = with_required_loops(s.g);
      const std::vector<double> lv = lengths(gl);
      const std::vector<double> wpi = pi_induced_weights(gl, s.pi);
      double mass_pi = 0.0;
      for (std::size_t a = 0; a < lv.size(); ++a) mass_pi += wpi[a] * lv[a];
      j.vertex_value = eulerian_oracle_vertex(gl, s.pi, lv).value;
      j.vertex_bound = mass_pi / (s.g.max_degree() * asymmetric_ratio(s.g, s.pi));
    } catch (const std::exception& e) {
      j.error = what(e);
    }
  });
  double worst = kInf;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& j = jobs[i];
    const std::string tag = "pair " + std::to_string(i) + ": ";
    c.check(j.error.empty(), tag + j.error);
    if (!j.error.empty()) continue;
    c.check(j.edge_value >= j.edge_bound * (1 - 1e-9),
            tag + "edge oracle " + fmt(j.edge_value) + " < " + fmt(j.edge_bound));
    c.check(j.vertex_value >= j.vertex_bound * (1 - 1e-9),
            tag + "vertex oracle " + fmt(j.vertex_value) + " < " + fmt(j.vertex_bound));
    worst = std::min({worst, j.edge_value / j.edge_bound, j.vertex_value / j.vertex_bound});
  }
  data = {{"pairs", jobs.size()}, {"min_value_over_bound", number(worst)}};
}

void mixing_bound(const Context& ctx, Checker& c, Json& data) {
  struct Job {
    double psi = 0;
    Steps tau;
    double residual = -1;
    std::string error;
  };
  std::vector<Job> chains(20);
  parallel_for(chains.size(), ctx.threads, [&](std::size_t i) {
    Rng rng = ctx.rng(8, static_cast<int>(i));
    Job& j = chains[i];
    try {
      const int n = 3 + static_cast<int>(rng.below(10));
      Matrix p = random_walk(random_strong(n, 0.1 + 0.4 * rng.uniform(), rng.next_u64()));
      if (i % 2 == 1) p = 0.5 * (Matrix::Identity(n, n) + p);
      const VertexWeights pi = stationary(p);
      std::vector<Arc> support;
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          if (p(u, v) > 0) support.push_back({u, v, 1.0});
        }
      }
      j.psi = brute_force_vertex_expansion(DirectedGraph(n, support), pi).value;
      j.tau = mixing_time_inf(p, 1.0 / std::numbers::e, pi);
    } catch (const std::exception& e) {
      j.error = what(e);
    }
  });
  std::vector<Job> fastest(6);
  parallel_for(fastest.size(), ctx.threads, [&](std::size_t i) {
    Job& j = fastest[i];
    try {
      if (i == 0) {
        j.residual = fastest_mixing(directed_cycle(8), VertexWeights::uniform(8, 1.0 / 8)).residual;
        return;
      }
      Rng rng = ctx.rng(8, 100 + static_cast<int>(i));
      Sample s = random_sample(rng, 8);
      j.residual = fastest_mixing(s.g, s.pi.normalized()).residual;
    } catch (const std::exception& e) {
      j.error = what(e);
    }
  });
  double min_ratio = kInf, max_residual = 0.0;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const Job& j = chains[i];
    const std::string tag = "chain " + std::to_string(i) + ": ";
    c.check(j.error.empty(), tag + j.error);
    if (!j.error.empty()) continue;
    const double bound = 1.0 / (4.0 * j.psi);
    const double tau = j.tau ? static_cast<double>(*j.tau) : kInf;
    c.check(tau > bound, tag + "tau_inf " + fmt(tau) + " <= 1/(4 psi) = " + fmt(bound));
    min_ratio = std::min(min_ratio, tau / bound);
  }
  for (std::size_t i = 0; i < fastest.size(); ++i) {
    const Job& j = fastest[i];
    const std::string tag = "fastest " + std::to_string(i) + ": ";
    c.check(j.error.empty(), tag + j.error);
    if (!j.error.empty()) continue;
    c.check(j.residual <= 1e-10, tag + "stationarity residual " + fmt(j.residual));
    max_residual = std::max(max_residual, j.residual);
  }
  data = {{"chains", chains.size()},
          {"min_tau_over_bound", number(min_ratio)},
          {"fastest_chains", fastest.size()},
          {"max_residual", max_residual}};
}

void separation(const Context&, Checker& c, Json& data) {
  const DirectedGraph g = two_clique_bridge(8);
  const Cut h = cheeger_constant_h(g);
  const double phi = brute_force_edge_conductance(g).value;
  const double psi = brute_force_vertex_expansion(g, VertexWeights::uniform(16)).value;
  c.check(h.value >= 0.05, "h = " + fmt(h.value) + " < 0.05");
  c.check(phi <= 1.0 / 64, "phi = " + fmt(phi) + " > 1/64");
  c.check(psi <= 1.0 / 8, "psi = " + fmt(psi) + " > 1/8");
  data = {{"h", h.value}, {"h_set", h.vertices}, {"phi", phi}, {"psi", psi}};
}

bool covers_all(const Hypergraph& h) {
  std::vector<bool> hit(static_cast<std::size_t>(h.num_vertices()), false);
  for (const Hyperedge& e : h.edges()) {
    for (int v : e.vertices) hit[static_cast<std::size_t>(v)] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

void hypergraphs(const Context& ctx, Checker& c, Json& data) {
  // 2-uniform hypergraphs against the undirected normalized Laplacian
  double worst_two = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    Rng rng = ctx.rng(10, trial);
    const int n = 4 + static_cast<int>(rng.below(4));
    std::vector<Hyperedge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({{i, i + 1}, 0.5 + rng.uniform()});
    for (int u = 0; u < n; ++u) {
      for (int v = u + 2; v < n; ++v) {
        if (rng.uniform() < 0.35) edges.push_back({{u, v}, 0.5 + rng.uniform()});
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
    const double exact = all_eigs(m).values(1);
    const SpectralBracket b = gamma2_hypergraph(h);
    const std::string tag = "2-uniform " + std::to_string(trial) + ": ";
    c.check(std::abs(b.lambda_lo - exact) <= 1e-3, tag + "lambda_lo " + fmt(b.lambda_lo) + " vs " + fmt(exact));
    c.check(std::abs(b.lambda_hi - exact) <= 1e-3, tag + "lambda_hi " + fmt(b.lambda_hi) + " vs " + fmt(exact));
    worst_two = std::max({worst_two, std::abs(b.lambda_lo - exact), std::abs(b.lambda_hi - exact)});
  }

  // one hyperedge {0, 1, 2}: grid over clique weights (x, y, 1 - x - y)
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
  const SpectralBracket single = gamma2_hypergraph(Hypergraph(3, {{{0, 1, 2}, 1.0}}));
  c.check(std::abs(single.lambda_lo - grid) <= 1e-3, "single hyperedge lambda_lo " + fmt(single.lambda_lo));
  c.check(std::abs(single.lambda_hi - grid) <= 1e-3, "single hyperedge lambda_hi " + fmt(single.lambda_hi));

  // hyper-cut chain
  struct Job {
    double opt = 0;
    CutResult r;
    std::string error;
  };
  std::vector<Job> jobs(12);
  parallel_for(jobs.size(), ctx.threads, [&](std::size_t i) {
    Rng rng = ctx.rng(10, 100 + static_cast<int>(i));
    Job& j = jobs[i];
    try {
      const int n = 5 + static_cast<int>(rng.below(5));
      const int m = n + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      Hypergraph h = tight_cycle_hypergraph(n, 3);
      // the spectral side needs positive degrees; redraw until every vertex is covered
      while (i >= 2) {
        h = random_uniform_hypergraph(n, m, 3, rng.next_u64());
        if (covers_all(h)) break;
      }
      j.opt = brute_force_hypergraph_conductance(h).value;
      CutOptions o;
      o.seed = ctx.seed + i;
      j.r = hypergraph_cut(h, o);
    } catch (const std::exception& e) {
      j.error = what(e);
    }
  });
  double worst_dual = 0.0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& j = jobs[i];
    const std::string tag = "hyper-cut " + std::to_string(i) + ": ";
    c.check(j.error.empty(), tag + j.error);
    if (!j.error.empty()) continue;
    const double value = j.r.cut.value;
    c.check(value >= j.opt - 1e-12, tag + "cut below the optimum");
    if (j.r.diagnostics.scc_bypass) {
      c.check(value == 0.0, tag + "bypass cut is not zero");
      continue;
    }
    c.check(leq(value, 8 * j.r.diagnostics.xi), tag + "cut " + fmt(value) + " > 8 xi = " + fmt(8 * j.r.diagnostics.xi));
    if (j.r.diagnostics.xi > 0) worst_dual = std::max(worst_dual, value / (8 * j.r.diagnostics.xi));
  }
  data = {{"max_two_uniform_error", worst_two},
          {"single_edge_grid", grid},
          {"single_edge_bracket", {single.lambda_lo, single.lambda_hi}},
          {"hyper_cuts", jobs.size()},
          {"max_cut_over_8xi", worst_dual}};
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  void (*run)(const Context&, Checker&, Json&);
};

const Criterion kCriteria[] = {
    {1, "exact evaluators", 1.0, exact_evaluators},
    {2, "cycle closed form", 30.0, cycle_closed_form},
    {3, "zero law", 60.0, zero_law},
    {4, "easy directions", 120.0, easy_directions},
    {5, "rounding chain", 300.0, rounding_chain},
    {6, "asymmetric ratio", 60.0, asymmetric_ratio_check},
    {7, "large optimal property", 30.0, large_optimal},
    {8, "mixing lower bound", 60.0, mixing_bound},
    {9, "two-clique separation", 30.0, separation},
    {10, "hypergraph", 60.0, hypergraphs},
};

}  // namespace

std::vector<CriterionOutcome> run_acceptance(const AcceptanceOptions& options) {
  for (int id : options.only) {
    if (id < 1 || id > kNumCriteria) throw Error(ErrorKind::kParameter, "criterion ids run from 1 to 10");
  }
  const Context ctx{options.seed, options.threads};
  std::vector<CriterionOutcome> out;
  for (const Criterion& crit : kCriteria) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), crit.id) == options.only.end()) {
      continue;
    }
    CriterionOutcome o;
    o.id = crit.id;
    o.name = crit.name;
    o.limit_seconds = crit.limit;
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.run(ctx, checker, o.data);
    } catch (const std::exception& e) {
      checker.check(false, what(e));
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = o.seconds <= crit.limit;
    o.passed = checker.ok() && in_time;
    if (!checker.ok()) {
      o.detail = checker.first_failure();
    } else if (!in_time) {
      o.detail = "exceeded the time limit";
    } else {
      o.detail = std::to_string(checker.total()) + " checks";
    }
    out.push_back(std::move(o));
  }
  return out;
}

Json acceptance_result(const std::vector<CriterionOutcome>& outcomes) {
  Json list = Json::array();
  bool all = true;
  for (const CriterionOutcome& o : outcomes) {
    // the verdict ignores wall time here so that payloads stay reproducible;
    // time limits are reported by format_outcome and the timing field
    const bool checks_ok = o.passed || o.detail == "exceeded the time limit";
    list.push_back({{"id", o.id}, {"name", o.name}, {"checks_passed", checks_ok}, {"detail", o.detail}, {"data", o.data}});
    all = all && checks_ok;
  }
  return {{"criteria", list}, {"checks_passed", all}};
}

std::string format_outcome(const CriterionOutcome& o) {
  std::ostringstream out;
  out << (o.passed ? "[PASS] " : "[FAIL] ") << (o.id < 10 ? " " : "") << o.id << ' ' << o.name << " ("
      << std::fixed;
  out.precision(2);
  out << o.seconds << " s / " << static_cast<long>(o.limit_seconds) << " s): " << o.detail;
  return out.str();
}

}  // namespace dircheeger
