#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dircheeger/acceptance.hpp"
#include "dircheeger/error.hpp"
#include "dircheeger/instances.hpp"
#include "dircheeger/io.hpp"
#include "dircheeger/log.hpp"
#include "dircheeger/report.hpp"

using namespace dircheeger;

namespace {

enum Exit { kOk = 0, kFailed = 1, kInvalid = 2, kNoConvergence = 3, kInfeasibleExit = 4 };

struct Flags {
  std::string input;
  std::string mode = "edge";
  std::string pi_file;
  double tol = 1e-4;
  int max_iters = 5000;
  std::uint64_t seed = 1;
  int k = 2;
  int ensemble = 5;
  int threads = 0;
  bool json = false;
  bool quiet = false;
  bool witnesses = false;
  std::string trace_file;
  // command specific
  std::string set;
  double alpha = 1.0;
  double eps = 1.0 / std::numbers::e;
  bool lazy = false;
  std::string family;
  int n = 0;
  std::vector<std::string> params;
  std::string output;
  std::vector<int> only;
  std::uint64_t selftest_seed = 20240601;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParse, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Mode parse_mode(const std::string& s) { return s == "vertex" ? Mode::kVertex : Mode::kEdge; }

/// Loaded graph input plus the digest of every file that went into it.
struct Input {
  std::string digest;
  DirectedGraph g;
  std::optional<VertexWeights> pi;
};

Input load_directed(const Flags& f, bool need_pi) {
  Input in;
  std::string bytes = read_file(f.input);
  std::istringstream s(bytes);
  in.g = read_digraph(s);
  if (!f.pi_file.empty()) {
    const std::string pbytes = read_file(f.pi_file);
    std::istringstream ps(pbytes);
    in.pi = read_vertex_weights(ps, in.g.num_vertices());
    bytes += '\0' + pbytes;
  } else if (need_pi) {
    in.pi = VertexWeights::uniform(in.g.num_vertices());
  }
  in.digest = fnv1a_hex(bytes);
  return in;
}

Hypergraph load_hyper(const Flags& f, std::string& digest) {
  const std::string bytes = read_file(f.input);
  digest = fnv1a_hex(bytes);
  std::istringstream s(bytes);
  return read_hypergraph(s);
}

std::vector<int> parse_set(const std::string& text) {
  std::vector<int> out;
  std::string token;
  std::istringstream s(text);
  while (std::getline(s, token, ',')) {
    if (token.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::kParse, "bad vertex '" + token + "' in --set");
    }
  }
  return out;
}

GapOptions gap_options(const Flags& f, std::ofstream* trace) {
  GapOptions o;
  o.tol = f.tol;
  o.max_iters = f.max_iters;
  o.k = f.k;
  if (trace) {
    o.trace = [trace](const TraceRecord& r) {
      *trace << Json{{"iteration", r.iteration},
                     {"lambda_lo", number(r.lambda_lo)},
                     {"lambda_hi", number(r.lambda_hi)},
                     {"fw_gap", number(r.fw_gap)}}
                    .dump()
             << '\n';
    };
  }
  return o;
}

Json gap_parameters(const Flags& f) {
  return {{"mode", f.mode}, {"tol", f.tol}, {"max_iters", f.max_iters}, {"k", f.k}};
}

/// What a command produced.
struct Outcome {
  std::string digest;
  Json parameters = Json::object();
  Json result = Json::object();
  int exit = kOk;
};

void print_human(const std::string& command, const Json& result, std::ostream& out) {
  out << command << '\n';
  for (const auto& [key, value] : result.items()) {
    out << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

// --- commands ---------------------------------------------------------------

Outcome cmd_expansion(const Flags& f) {
  Outcome o;
  const std::vector<int> set = parse_set(f.set);
  if (peek_is_hypergraph(f.input)) {
    const Hypergraph h = load_hyper(f, o.digest);
    o.result = {{"value", number(hypergraph_conductance(h, set))}, {"measure", "hypergraph-conductance"}};
  } else {
    const Mode mode = parse_mode(f.mode);
    const Input in = load_directed(f, mode == Mode::kVertex);
    o.digest = in.digest;
    const double value = mode == Mode::kEdge ? directed_edge_conductance(in.g, set)
                                             : directed_vertex_expansion(in.g, *in.pi, set);
    o.result = {{"value", number(value)},
                {"measure", to_string(mode == Mode::kEdge ? CutMode::kEdgeConductance : CutMode::kVertexExpansion)}};
    o.parameters = {{"mode", f.mode}};
  }
  std::vector<int> sorted = set;
  std::sort(sorted.begin(), sorted.end());
  o.result["set"] = sorted;
  return o;
}

Outcome cmd_bruteforce(const Flags& f) {
  Outcome o;
  if (peek_is_hypergraph(f.input)) {
    const Hypergraph h = load_hyper(f, o.digest);
    o.result = to_json(brute_force_hypergraph_conductance(h));
    return o;
  }
  const Mode mode = parse_mode(f.mode);
  const Input in = load_directed(f, mode == Mode::kVertex);
  o.digest = in.digest;
  o.parameters = {{"mode", f.mode}};
  o.result = to_json(mode == Mode::kEdge ? brute_force_edge_conductance(in.g)
                                         : brute_force_vertex_expansion(in.g, *in.pi));
  return o;
}

Outcome cmd_alpha(const Flags& f) {
  Outcome o;
  const Mode mode = parse_mode(f.mode);
  const Input in = load_directed(f, mode == Mode::kVertex);
  o.digest = in.digest;
  o.parameters = {{"mode", f.mode}};
  const double alpha = mode == Mode::kEdge ? asymmetric_ratio(in.g) : asymmetric_ratio(in.g, *in.pi);
  o.result = {{"alpha", number(alpha)}};
  if (mode == Mode::kVertex) o.result["max_degree"] = in.g.max_degree();
  return o;
}

Outcome cmd_circulation(const Flags& f) {
  Outcome o;
  const Mode mode = parse_mode(f.mode);
  const Input in = load_directed(f, mode == Mode::kVertex);
  o.digest = in.digest;
  o.parameters = {{"mode", f.mode}, {"alpha", f.alpha}};
  const std::vector<double> w = mode == Mode::kEdge ? in.g.weights() : pi_induced_weights(in.g, *in.pi);
  const auto a = hoffman_circulation(in.g, w, f.alpha);
  o.result["feasible"] = a.has_value();
  if (!a) {
    o.exit = kInfeasibleExit;
    return o;
  }
  Json arcs = Json::array();
  for (int i = 0; i < in.g.num_arcs(); ++i) {
    const Arc& arc = in.g.arc(i);
    arcs.push_back({arc.tail, arc.head, number(a->values[static_cast<std::size_t>(i)])});
  }
  o.result["arcs"] = arcs;
  o.result["max_imbalance"] = number(max_imbalance(in.g, a->values));
  return o;
}

Outcome cmd_gap(const Flags& f, std::ofstream* trace) {
  Outcome o;
  const Mode mode = parse_mode(f.mode);
  const Input in = load_directed(f, mode == Mode::kVertex);
  o.digest = in.digest;
  o.parameters = gap_parameters(f);
  const SpectralBracket b = max_reweighted_gap(in.g, mode, in.pi, gap_options(f, trace));
  o.result = to_json(b, f.witnesses);
  if (!b.converged) o.exit = kNoConvergence;
  return o;
}

Outcome cmd_cut(const Flags& f, std::ofstream* trace) {
  Outcome o;
  const Mode mode = parse_mode(f.mode);
  const Input in = load_directed(f, mode == Mode::kVertex);
  o.digest = in.digest;
  o.parameters = gap_parameters(f);
  o.parameters["seed"] = f.seed;
  o.parameters["ensemble"] = f.ensemble;
  CutOptions c;
  c.gap = gap_options(f, trace);
  c.seed = f.seed;
  c.ensemble = f.ensemble;
  c.threads = f.threads;
  const CutResult r = spectral_cut(in.g, mode, in.pi, c);
  o.result = to_json(r);
  if (!r.bracket.converged) o.exit = kNoConvergence;
  return o;
}

Outcome cmd_hyper_gap(const Flags& f, std::ofstream* trace) {
  Outcome o;
  const Hypergraph h = load_hyper(f, o.digest);
  o.parameters = {{"tol", f.tol}, {"max_iters", f.max_iters}, {"k", f.k}};
  const SpectralBracket b = gamma2_hypergraph(h, gap_options(f, trace));
  o.result = to_json(b, f.witnesses);
  if (!b.converged) o.exit = kNoConvergence;
  return o;
}

Outcome cmd_hyper_cut(const Flags& f, std::ofstream* trace) {
  Outcome o;
  const Hypergraph h = load_hyper(f, o.digest);
  o.parameters = {{"tol", f.tol}, {"max_iters", f.max_iters}, {"seed", f.seed}, {"ensemble", f.ensemble}};
  CutOptions c;
  c.gap = gap_options(f, trace);
  c.seed = f.seed;
  c.ensemble = f.ensemble;
  c.threads = f.threads;
  const CutResult r = hypergraph_cut(h, c);
  o.result = to_json(r);
  if (!r.bracket.converged) o.exit = kNoConvergence;
  return o;
}

Outcome cmd_mixing(const Flags& f) {
  Outcome o;
  const Input in = load_directed(f, false);
  o.digest = in.digest;
  o.parameters = {{"eps", f.eps}, {"lazy", f.lazy}};
  const int n = in.g.num_vertices();
  Matrix p = random_walk(in.g);
  if (f.lazy) p = 0.5 * (Matrix::Identity(n, n) + p);
  const VertexWeights pi = stationary(p);
  Json pij = Json::array();
  for (int v = 0; v < n; ++v) pij.push_back(number(pi[v]));
  o.result["stationary"] = pij;
  o.result["tau_tv"] = steps(mixing_time_tv(p, f.eps, pi));
  o.result["tau_inf"] = steps(mixing_time_inf(p, f.eps, pi));
  const double chung = n >= 2 ? all_eigs(chung_laplacian(p, pi)).values(1) : 0.0;
  o.result["chung_lambda_2"] = number(chung);

  MixingBounds b;
  b.pi_min = *std::min_element(pi.values().begin(), pi.values().end());
  if (n <= kMaxBruteForceVertices) {
    std::vector<Arc> support;
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (p(u, v) > 0) support.push_back({u, v, 1.0});
      }
    }
    b.psi = brute_force_vertex_expansion(DirectedGraph(n, support), pi).value;
    b.psi_lower = *b.psi > 0 ? 1.0 / (*b.psi * std::log(1.0 / b.pi_min)) : std::numeric_limits<double>::infinity();
    o.result["tau_inf_lower"] = number(*b.psi > 0 ? 1.0 / (4.0 * *b.psi) : std::numeric_limits<double>::infinity());
    o.result["cheeger_h"] = to_json(cheeger_constant_h(p));
  }
  // lambda_2 of Chung's Laplacian is lambda_2 of the reweighting A = Pi P
  b.lambda_lo = chung;
  b.lambda_upper = b.lambda_lo > 0 ? std::log(1.0 / b.pi_min) / b.lambda_lo : std::numeric_limits<double>::infinity();
  o.result["bounds"] = to_json(b);
  return o;
}

Outcome cmd_fastest(const Flags& f, std::ofstream* trace) {
  Outcome o;
  Input in = load_directed(f, true);
  o.digest = in.digest;
  o.parameters = gap_parameters(f);
  o.parameters.erase("mode");
  const VertexWeights pi = in.pi->normalized();
  const FastestMixing fm = fastest_mixing(in.g, pi, gap_options(f, trace));
  o.result = to_json(fm);
  if (!fm.bracket.converged) o.exit = kNoConvergence;
  return o;
}

Outcome cmd_gen(const Flags& f) {
  Outcome o;
  InstanceSpec spec{f.family, f.n, f.seed, {}};
  for (const std::string& p : f.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::kParameter, "--param expects key=value, got '" + p + "'");
    try {
      spec.params[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::kParameter, "bad value in --param " + p);
    }
  }
  const Instance inst = generate(spec);
  std::ostringstream text;
  text << "# " << describe(spec) << '\n';
  if (const auto* g = std::get_if<DirectedGraph>(&inst)) {
    write_digraph(text, *g);
    o.result = {{"kind", "digraph"}, {"vertices", g->num_vertices()}, {"arcs", g->num_arcs()}};
  } else {
    const Hypergraph& h = std::get<Hypergraph>(inst);
    write_hypergraph(text, h);
    o.result = {{"kind", "hypergraph"}, {"vertices", h.num_vertices()}, {"edges", h.num_edges()}};
  }
  o.digest = fnv1a_hex(text.str());
  o.parameters = {{"family", f.family}, {"n", f.n}, {"seed", f.seed}};
  for (const auto& [key, value] : spec.params) o.parameters["params"][key] = value;
  if (f.output.empty() || f.output == "-") {
    if (!f.json) std::cout << text.str();
  } else {
    std::ofstream out(f.output, std::ios::binary);
    if (!out) throw Error(ErrorKind::kParameter, "cannot write " + f.output);
    out << text.str();
    o.result["file"] = f.output;
  }
  return o;
}

Outcome cmd_selftest(const Flags& f) {
  Outcome o;
  AcceptanceOptions a;
  a.seed = f.selftest_seed;
  a.threads = f.threads;
  a.only = f.only;
  // the corpus feeds loopless graphs to vertex mode on purpose
  set_warning_sink({});
  const std::vector<CriterionOutcome> outcomes = run_acceptance(a);
  bool all = true;
  for (const CriterionOutcome& c : outcomes) {
    if (!f.json && !f.quiet) std::cout << format_outcome(c) << std::endl;
    all = all && c.passed;
  }
  o.digest = fnv1a_hex("selftest " + std::to_string(f.selftest_seed));
  o.parameters = {{"seed", f.selftest_seed}, {"only", f.only}};
  o.result = acceptance_result(outcomes);
  o.exit = all ? kOk : kFailed;
  return o;
}

// --- wiring -----------------------------------------------------------------

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kInfeasible: return kInfeasibleExit;
    case ErrorKind::kInternal: return kFailed;
    default: return kInvalid;
  }
}

void add_output_flags(CLI::App* sub, Flags& f) {
  sub->add_flag("--json", f.json, "Print the JSON result envelope");
  sub->add_flag("-q,--quiet", f.quiet, "Print nothing; report through the exit code");
}

void add_input(CLI::App* sub, Flags& f) {
  sub->add_option("input", f.input, "Graph or hypergraph file")->required()->check(CLI::ExistingFile);
}

void add_mode(CLI::App* sub, Flags& f) {
  sub->add_option("--mode", f.mode, "Capacity model")->check(CLI::IsMember({"vertex", "edge"}));
  sub->add_option("--pi", f.pi_file, "Vertex weights file (vertex mode; default all ones)")->check(CLI::ExistingFile);
}

void add_solver(CLI::App* sub, Flags& f) {
  sub->add_option("--tol", f.tol, "Bracket width at which Frank-Wolfe stops")->check(CLI::PositiveNumber);
  sub->add_option("--max-iters", f.max_iters, "Frank-Wolfe iteration cap")->check(CLI::PositiveNumber);
  sub->add_option("--k", f.k, "Objective lambda_2 + ... + lambda_k")->check(CLI::Range(2, 1 << 20));
  sub->add_option("--trace", f.trace_file, "Write one JSON line per iteration to this file");
  sub->add_flag("--witness", f.witnesses, "Include the witness reweighting and embedding");
}

void add_rounding(CLI::App* sub, Flags& f) {
  sub->add_option("--seed", f.seed, "Random seed");
  sub->add_option("--ensemble", f.ensemble, "Number of projection seeds")->check(CLI::PositiveNumber);
  sub->add_option("--threads", f.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reweighted spectral gaps, directed expansion and rounding"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Flags f;

  struct Command {
    CLI::App* app;
    std::function<Outcome(std::ofstream*)> run;
  };
  std::vector<Command> commands;
  auto add = [&](const char* name, const char* help, auto run) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_output_flags(sub, f);
    commands.push_back({sub, run});
    return sub;
  };

  CLI::App* s = add("expansion", "Evaluate the expansion of a given vertex set", [&](std::ofstream*) { return cmd_expansion(f); });
  add_input(s, f);
  add_mode(s, f);
  s->add_option("--set", f.set, "Comma-separated vertex list")->required();

  s = add("bruteforce", "Exhaustive minimum over all cuts (n <= 24)", [&](std::ofstream*) { return cmd_bruteforce(f); });
  add_input(s, f);
  add_mode(s, f);

  s = add("alpha", "Asymmetric ratio by Hoffman bisection", [&](std::ofstream*) { return cmd_alpha(f); });
  add_input(s, f);
  add_mode(s, f);

  s = add("circulation", "Hoffman circulation with w <= A <= alpha w", [&](std::ofstream*) { return cmd_circulation(f); });
  add_input(s, f);
  add_mode(s, f);
  s->add_option("--alpha", f.alpha, "Upper bound multiplier")->required()->check(CLI::Range(1.0, 1e300));

  s = add("gap", "Certified bracket on the reweighted spectral gap", [&](std::ofstream* t) { return cmd_gap(f, t); });
  add_input(s, f);
  add_mode(s, f);
  add_solver(s, f);

  s = add("cut", "Spectral rounding to a cut with chain diagnostics", [&](std::ofstream* t) { return cmd_cut(f, t); });
  add_input(s, f);
  add_mode(s, f);
  add_solver(s, f);
  add_rounding(s, f);

  s = add("hyper-gap", "Certified bracket on the hypergraph gap", [&](std::ofstream* t) { return cmd_hyper_gap(f, t); });
  add_input(s, f);
  add_solver(s, f);

  s = add("hyper-cut", "Hypergraph rounding to a cut", [&](std::ofstream* t) { return cmd_hyper_cut(f, t); });
  add_input(s, f);
  add_solver(s, f);
  add_rounding(s, f);

  s = add("mixing", "Random-walk mixing times, Cheeger constant and bounds", [&](std::ofstream*) { return cmd_mixing(f); });
  add_input(s, f);
  s->add_option("--eps", f.eps, "Mixing threshold")->check(CLI::Range(1e-300, 1.0));
  s->add_flag("--lazy", f.lazy, "Use the lazy walk (I + P) / 2");

  s = add("fastest", "Chain from the optimal vertex reweighting", [&](std::ofstream* t) { return cmd_fastest(f, t); });
  add_input(s, f);
  s->add_option("--pi", f.pi_file, "Target stationary distribution (default uniform)")->check(CLI::ExistingFile);
  add_solver(s, f);

  s = add("gen", "Write an instance from a named family", [&](std::ofstream*) { return cmd_gen(f); });
  std::string families_help = "Family:";
  for (const FamilyInfo& fi : families()) families_help += "\n  " + fi.name + ": " + fi.help;
  s->add_option("family", f.family, families_help)->required();
  s->add_option("--n", f.n, "Size parameter")->required();
  s->add_option("--seed", f.seed, "Random seed");
  s->add_option("--param", f.params, "Extra parameter key=value (repeatable)");
  s->add_option("-o,--output", f.output, "Output file (default stdout)");

  s = add("selftest", "Run the acceptance criteria", [&](std::ofstream*) { return cmd_selftest(f); });
  s->add_option("--seed", f.selftest_seed, "Corpus seed")->capture_default_str();
  s->add_option("--threads", f.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  s->add_option("--only", f.only, "Criterion ids to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  set_warning_sink([&f](std::string_view msg) {
    if (!f.quiet) std::cerr << "warning: " << msg << '\n';
  });

  for (const Command& c : commands) {
    if (!c.app->parsed()) continue;
    const std::string name = c.app->get_name();
    try {
      std::unique_ptr<std::ofstream> trace;
      if (!f.trace_file.empty()) {
        trace = std::make_unique<std::ofstream>(f.trace_file);
        if (!*trace) throw Error(ErrorKind::kParameter, "cannot write " + f.trace_file);
      }
      const auto start = std::chrono::steady_clock::now();
      Outcome o = c.run(trace.get());
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (f.json) {
        std::cout << envelope(name, o.digest, o.parameters, o.result, seconds).dump(2) << std::endl;
      } else if (!f.quiet && name != "selftest" && !(name == "gen" && (f.output.empty() || f.output == "-"))) {
        print_human(name, o.result, std::cout);
      }
      if (o.exit == kNoConvergence && !f.quiet) std::cerr << "bracket did not reach the tolerance\n";
      return o.exit;
    } catch (const Error& e) {
      if (!f.quiet) std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
      return exit_for(e);
    } catch (const std::exception& e) {
      if (!f.quiet) std::cerr << "error: " << e.what() << '\n';
      return kFailed;
    }
  }
  return kInvalid;
}
