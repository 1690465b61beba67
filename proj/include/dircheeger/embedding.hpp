#pragma once

#include <span>
#include <vector>

#include "dircheeger/graph.hpp"
#include "dircheeger/linalg.hpp"

namespace dircheeger {

enum class WeightKind { kPi, kDegree };

/// Vertex -> R^dim map together with the vertex weights its centering and
/// normalization refer to (pi in vertex mode, degrees otherwise).
struct Embedding {
  Matrix f;  // n x dim
  std::vector<double> weights;
  WeightKind kind = WeightKind::kPi;
  bool centered = false;
  bool normalized = false;

  int size() const { return static_cast<int>(f.rows()); }
  int dim() const { return static_cast<int>(f.cols()); }
};

Embedding make_embedding(Matrix f, std::vector<double> weights, WeightKind kind);

/// sum_v weight(v) f(v).
Vector weighted_mean(const Embedding& e);
/// sum_v weight(v) |f(v)|^2.
double weighted_norm2(const Embedding& e);

/// Subtracts the weighted mean (divided by the total weight) from every row.
void center(Embedding& e);
/// Rescales to sum_v weight(v) |f(v)|^2 = target. Throws kDegenerate on a
/// zero embedding.
void normalize(Embedding& e, double target = 1.0);

/// Checks the centered/normalized flags against the data within tol.
bool is_centered(const Embedding& e, double tol = 1e-9);
bool is_normalized(const Embedding& e, double target = 1.0, double tol = 1e-9);

/// One column as a 1-dim embedding (flags cleared).
Embedding coordinate(const Embedding& e, int j);

/// |f(tail) - f(head)|^2 for every arc.
std::vector<double> squared_lengths(const DirectedGraph& g, const Embedding& e);
/// |f(tail) - f(head)| for every arc of a 1-dim embedding.
std::vector<double> abs_lengths(const DirectedGraph& g, const Embedding& e);

}  // namespace dircheeger
