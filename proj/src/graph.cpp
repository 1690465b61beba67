#include "dircheeger/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dircheeger/error.hpp"

namespace dircheeger {

namespace {

void check_vertex(int n, int v, const char* what) {
  if (v < 0 || v >= n) {
    throw Error(ErrorKind::kParameter, std::string(what) + " vertex " +
                                           std::to_string(v) + " out of range [0, " +
                                           std::to_string(n) + ")");
  }
}

void check_weight(double w) {
  if (!std::isfinite(w) || w < 0.0) {
    throw Error(ErrorKind::kParameter, "weights must be finite and nonnegative");
  }
}

}  // namespace

DirectedGraph::DirectedGraph(int n, std::vector<Arc> arcs) : n_(n) {
  if (n < 1) throw Error(ErrorKind::kParameter, "graph needs at least one vertex");
  for (const Arc& a : arcs) {
    check_vertex(n, a.tail, "tail");
    check_vertex(n, a.head, "head");
    check_weight(a.weight);
  }
  std::stable_sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
  });
  for (const Arc& a : arcs) {
    if (!arcs_.empty() && arcs_.back().tail == a.tail && arcs_.back().head == a.head) {
      arcs_.back().weight += a.weight;
    } else {
      arcs_.push_back(a);
    }
  }

  const auto un = static_cast<std::size_t>(n);
  out_.assign(un, {});
  in_.assign(un, {});
  out_weight_.assign(un, 0.0);
  in_weight_.assign(un, 0.0);
  std::vector<int> unweighted(un, 0);
  for (int i = 0; i < num_arcs(); ++i) {
    const Arc& a = arcs_[static_cast<std::size_t>(i)];
    out_[static_cast<std::size_t>(a.tail)].push_back(i);
    in_[static_cast<std::size_t>(a.head)].push_back(i);
    out_weight_[static_cast<std::size_t>(a.tail)] += a.weight;
    in_weight_[static_cast<std::size_t>(a.head)] += a.weight;
    total_weight_ += a.weight;
    if (!a.is_loop()) {
      ++unweighted[static_cast<std::size_t>(a.tail)];
      ++unweighted[static_cast<std::size_t>(a.head)];
    }
  }
  max_degree_ = std::max(1, *std::max_element(unweighted.begin(), unweighted.end()));
}

std::vector<double> DirectedGraph::degrees() const {
  std::vector<double> d(static_cast<std::size_t>(n_));
  for (int v = 0; v < n_; ++v) d[static_cast<std::size_t>(v)] = degree(v);
  return d;
}

bool DirectedGraph::has_loop(int v) const { return find_arc(v, v).has_value(); }

bool DirectedGraph::has_all_loops() const {
  for (int v = 0; v < n_; ++v) {
    if (!has_loop(v)) return false;
  }
  return true;
}

std::optional<int> DirectedGraph::find_arc(int tail, int head) const {
  for (int i : out_arcs(tail)) {
    if (arcs_[static_cast<std::size_t>(i)].head == head) return i;
  }
  return std::nullopt;
}

DirectedGraph DirectedGraph::with_loops(double weight) const {
  std::vector<Arc> arcs(arcs_.begin(), arcs_.end());
  for (int v = 0; v < n_; ++v) {
    if (!has_loop(v)) arcs.push_back({v, v, weight});
  }
  return DirectedGraph(n_, std::move(arcs));
}

DirectedGraph DirectedGraph::without_loops() const {
  std::vector<Arc> arcs;
  for (const Arc& a : arcs_) {
    if (!a.is_loop()) arcs.push_back(a);
  }
  return DirectedGraph(n_, std::move(arcs));
}

DirectedGraph DirectedGraph::reweighted(std::span<const double> weights) const {
  if (weights.size() != arcs_.size()) {
    throw Error(ErrorKind::kParameter, "weight vector does not match arc count");
  }
  std::vector<Arc> arcs(arcs_.begin(), arcs_.end());
  for (std::size_t i = 0; i < arcs.size(); ++i) arcs[i].weight = weights[i];
  return DirectedGraph(n_, std::move(arcs));
}

std::vector<double> DirectedGraph::weights() const {
  std::vector<double> w;
  w.reserve(arcs_.size());
  for (const Arc& a : arcs_) w.push_back(a.weight);
  return w;
}

VertexWeights::VertexWeights(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::kParameter, "vertex weights are empty");
  for (double p : values_) {
    check_weight(p);
    total_ += p;
    if (p > 0.0 && (min_positive_ == 0.0 || p < min_positive_)) min_positive_ = p;
  }
  if (!(total_ > 0.0)) throw Error(ErrorKind::kParameter, "vertex weights sum to zero");
}

VertexWeights VertexWeights::uniform(int n, double value) {
  return VertexWeights(std::vector<double>(static_cast<std::size_t>(n), value));
}

bool VertexWeights::all_positive() const {
  return std::all_of(values_.begin(), values_.end(), [](double p) { return p > 0.0; });
}

bool VertexWeights::is_distribution(double tol) const { return std::abs(total_ - 1.0) <= tol; }

VertexWeights VertexWeights::normalized() const {
  std::vector<double> p(values_);
  for (double& x : p) x /= total_;
  return VertexWeights(std::move(p));
}

Hypergraph::Hypergraph(int n, std::vector<Hyperedge> edges) : n_(n) {
  if (n < 1) throw Error(ErrorKind::kParameter, "hypergraph needs at least one vertex");
  degree_.assign(static_cast<std::size_t>(n), 0.0);
  for (Hyperedge& e : edges) {
    if (e.vertices.empty()) throw Error(ErrorKind::kParameter, "empty hyperedge");
    check_weight(e.weight);
    std::sort(e.vertices.begin(), e.vertices.end());
    e.vertices.erase(std::unique(e.vertices.begin(), e.vertices.end()), e.vertices.end());
    for (int v : e.vertices) {
      check_vertex(n, v, "hyperedge");
      degree_[static_cast<std::size_t>(v)] += e.weight;
    }
    rank_ = std::max(rank_, static_cast<int>(e.vertices.size()));
  }
  edges_ = std::move(edges);
}

}  // namespace dircheeger
