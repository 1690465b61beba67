#include "dircheeger/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dircheeger/error.hpp"

namespace dircheeger {

Embedding make_embedding(Matrix f, std::vector<double> weights, WeightKind kind) {
  if (static_cast<Eigen::Index>(weights.size()) != f.rows()) {
    throw Error(ErrorKind::kParameter, "embedding weights do not match vertex count");
  }
  Embedding e;
  e.f = std::move(f);
  e.weights = std::move(weights);
  e.kind = kind;
  return e;
}

Vector weighted_mean(const Embedding& e) {
  Vector s = Vector::Zero(e.dim());
  for (int v = 0; v < e.size(); ++v) s += e.weights[static_cast<std::size_t>(v)] * e.f.row(v).transpose();
  return s;
}

double weighted_norm2(const Embedding& e) {
  double s = 0.0;
  for (int v = 0; v < e.size(); ++v) s += e.weights[static_cast<std::size_t>(v)] * e.f.row(v).squaredNorm();
  return s;
}

void center(Embedding& e) {
  const double total = std::accumulate(e.weights.begin(), e.weights.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorKind::kDegenerate, "embedding weights sum to zero");
  const Vector mean = weighted_mean(e) / total;
  e.f.rowwise() -= mean.transpose();
  e.centered = true;
}

void normalize(Embedding& e, double target) {
  const double norm2 = weighted_norm2(e);
  if (!(norm2 > 0.0)) throw Error(ErrorKind::kDegenerate, "embedding is identically zero");
  e.f *= std::sqrt(target / norm2);
  e.normalized = true;
}

bool is_centered(const Embedding& e, double tol) {
  const double scale = std::max(1.0, std::sqrt(weighted_norm2(e)));
  return weighted_mean(e).cwiseAbs().maxCoeff() <= tol * scale;
}

bool is_normalized(const Embedding& e, double target, double tol) {
  return std::abs(weighted_norm2(e) - target) <= tol * std::max(1.0, target);
}

Embedding coordinate(const Embedding& e, int j) {
  return make_embedding(e.f.col(j), e.weights, e.kind);
}

std::vector<double> squared_lengths(const DirectedGraph& g, const Embedding& e) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(g.num_arcs()));
  for (const Arc& a : g.arcs()) out.push_back((e.f.row(a.tail) - e.f.row(a.head)).squaredNorm());
  return out;
}

std::vector<double> abs_lengths(const DirectedGraph& g, const Embedding& e) {
  ensure(e.dim() == 1, "absolute lengths need a 1-dim embedding");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(g.num_arcs()));
  for (const Arc& a : g.arcs()) out.push_back(std::abs(e.f(a.tail, 0) - e.f(a.head, 0)));
  return out;
}

}  // namespace dircheeger
