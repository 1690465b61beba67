#include "dircheeger/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "dircheeger/error.hpp"

namespace dircheeger {

namespace {

/// Token stream over a text source with '#' comments stripped.
class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens_.push_back(std::move(tok));
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }

  const std::string& next(const char* what) {
    if (done()) throw Error(ErrorKind::kParse, std::string("unexpected end of input, expected ") + what);
    return tokens_[pos_++];
  }

  long long integer(const char* what) {
    const std::string& t = next(what);
    long long v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) {
      throw Error(ErrorKind::kParse, std::string("expected integer ") + what + ", got '" + t + "'");
    }
    return v;
  }

  int vertex(int n, const char* what) {
    const long long v = integer(what);
    if (v < 0 || v >= n) {
      throw Error(ErrorKind::kParse, std::string(what) + " " + std::to_string(v) + " out of range");
    }
    return static_cast<int>(v);
  }

  double real(const char* what) {
    const std::string& t = next(what);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) {
      throw Error(ErrorKind::kParse, std::string("expected number ") + what + ", got '" + t + "'");
    }
    return v;
  }

  void expect(const std::string& keyword) {
    const std::string& t = next(keyword.c_str());
    if (t != keyword) throw Error(ErrorKind::kParse, "expected header '" + keyword + "', got '" + t + "'");
  }

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open '" + path + "'");
  return in;
}

void expect_end(const Tokens& t) {
  if (!t.done()) throw Error(ErrorKind::kParse, "trailing tokens after declared records");
}

int count(Tokens& t, const char* what) {
  const long long v = t.integer(what);
  if (v < 0 || v > (1LL << 30)) throw Error(ErrorKind::kParse, std::string("bad ") + what);
  return static_cast<int>(v);
}

}  // namespace

DirectedGraph read_digraph(std::istream& in) {
  Tokens t(in);
  t.expect("digraph");
  const int n = count(t, "vertex count");
  const int m = count(t, "arc count");
  if (n < 1) throw Error(ErrorKind::kParse, "graph needs at least one vertex");
  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Arc a;
    a.tail = t.vertex(n, "tail");
    a.head = t.vertex(n, "head");
    a.weight = t.real("weight");
    arcs.push_back(a);
  }
  expect_end(t);
  return DirectedGraph(n, std::move(arcs));
}

Hypergraph read_hypergraph(std::istream& in) {
  Tokens t(in);
  t.expect("hypergraph");
  const int n = count(t, "vertex count");
  const int m = count(t, "edge count");
  if (n < 1) throw Error(ErrorKind::kParse, "hypergraph needs at least one vertex");
  std::vector<Hyperedge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Hyperedge e;
    e.weight = t.real("weight");
    const int k = count(t, "hyperedge size");
    for (int j = 0; j < k; ++j) e.vertices.push_back(t.vertex(n, "vertex"));
    edges.push_back(std::move(e));
  }
  expect_end(t);
  return Hypergraph(n, std::move(edges));
}

VertexWeights read_vertex_weights(std::istream& in, int n) {
  Tokens t(in);
  std::vector<double> pi(static_cast<std::size_t>(n), 0.0);
  while (!t.done()) {
    const int v = t.vertex(n, "vertex");
    pi[static_cast<std::size_t>(v)] = t.real("pi");
  }
  return VertexWeights(std::move(pi));
}

DirectedGraph load_digraph(const std::string& path) {
  auto in = open(path);
  return read_digraph(in);
}

Hypergraph load_hypergraph(const std::string& path) {
  auto in = open(path);
  return read_hypergraph(in);
}

VertexWeights load_vertex_weights(const std::string& path, int n) {
  auto in = open(path);
  return read_vertex_weights(in, n);
}

bool peek_is_hypergraph(const std::string& path) {
  auto in = open(path);
  Tokens t(in);
  if (t.done()) throw Error(ErrorKind::kParse, "empty input '" + path + "'");
  const std::string& head = t.next("header");
  if (head == "hypergraph") return true;
  if (head == "digraph") return false;
  throw Error(ErrorKind::kParse, "unknown header '" + head + "'");
}

std::string format_double(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

void write_digraph(std::ostream& out, const DirectedGraph& g) {
  out << "digraph " << g.num_vertices() << ' ' << g.num_arcs() << '\n';
  for (const Arc& a : g.arcs()) {
    out << a.tail << ' ' << a.head << ' ' << format_double(a.weight) << '\n';
  }
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << "hypergraph " << h.num_vertices() << ' ' << h.num_edges() << '\n';
  for (const Hyperedge& e : h.edges()) {
    out << format_double(e.weight) << ' ' << e.vertices.size();
    for (int v : e.vertices) out << ' ' << v;
    out << '\n';
  }
}

void write_vertex_weights(std::ostream& out, const VertexWeights& pi) {
  for (int v = 0; v < pi.size(); ++v) out << v << ' ' << format_double(pi[v]) << '\n';
}

}  // namespace dircheeger
