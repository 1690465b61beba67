#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace dircheeger {

struct Arc {
  int tail = 0;
  int head = 0;
  double weight = 0.0;

  bool is_loop() const { return tail == head; }
};

/// Weighted directed graph on vertices 0..n-1.
///
/// Parallel arcs are merged additively at construction and arcs are stored
/// sorted by (tail, head), so arc indices are stable for a given input.
/// Self-loops are kept; they count towards volume but never towards any
/// boundary. Zero-weight arcs are kept structurally. Immutable once built.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  DirectedGraph(int n, std::vector<Arc> arcs);

  int num_vertices() const { return n_; }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  std::span<const Arc> arcs() const { return arcs_; }
  const Arc& arc(int index) const { return arcs_[static_cast<std::size_t>(index)]; }

  /// Indices of arcs leaving / entering v (self-loops appear in both).
  std::span<const int> out_arcs(int v) const { return out_[static_cast<std::size_t>(v)]; }
  std::span<const int> in_arcs(int v) const { return in_[static_cast<std::size_t>(v)]; }

  double out_weight(int v) const { return out_weight_[static_cast<std::size_t>(v)]; }
  double in_weight(int v) const { return in_weight_[static_cast<std::size_t>(v)]; }
  /// d_w(v) = d+(v) + d-(v); a self-loop contributes twice.
  double degree(int v) const { return out_weight(v) + in_weight(v); }
  std::vector<double> degrees() const;
  double total_weight() const { return total_weight_; }

  /// Maximum unweighted total degree (in-arcs + out-arcs), self-loops
  /// excluded, floored at 1.
  int max_degree() const { return max_degree_; }

  bool has_loop(int v) const;
  bool has_all_loops() const;
  std::optional<int> find_arc(int tail, int head) const;

  /// Copy with a self-loop of the given weight added where one is missing.
  DirectedGraph with_loops(double weight = 0.0) const;
  DirectedGraph without_loops() const;
  /// Same structure with replaced arc weights (indexed like arcs()).
  DirectedGraph reweighted(std::span<const double> weights) const;

  std::vector<double> weights() const;

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<double> out_weight_;
  std::vector<double> in_weight_;
  double total_weight_ = 0.0;
  int max_degree_ = 1;
};

/// Nonnegative vertex weights pi with a positive total.
class VertexWeights {
 public:
  VertexWeights() = default;
  explicit VertexWeights(std::vector<double> values);

  static VertexWeights uniform(int n, double value = 1.0);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int v) const { return values_[static_cast<std::size_t>(v)]; }
  std::span<const double> values() const { return values_; }
  double total() const { return total_; }
  /// Smallest positive entry.
  double min_positive() const { return min_positive_; }
  bool all_positive() const;
  bool is_distribution(double tol = 1e-12) const;
  VertexWeights normalized() const;

 private:
  std::vector<double> values_;
  double total_ = 0.0;
  double min_positive_ = 0.0;
};

struct Hyperedge {
  std::vector<int> vertices;  // sorted, distinct
  double weight = 0.0;
};

/// Weighted hypergraph; every hyperedge is a nonempty vertex set.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(int n, std::vector<Hyperedge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  std::span<const Hyperedge> edges() const { return edges_; }
  const Hyperedge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  double degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }
  std::span<const double> degrees() const { return degree_; }
  /// Largest hyperedge size.
  int rank() const { return rank_; }

 private:
  int n_ = 0;
  std::vector<Hyperedge> edges_;
  std::vector<double> degree_;
  int rank_ = 1;
};

}  // namespace dircheeger
