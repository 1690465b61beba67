#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dircheeger/circulation.hpp"
#include "dircheeger/embedding.hpp"
#include "dircheeger/expansion.hpp"
#include "dircheeger/graph.hpp"
#include "dircheeger/spectral.hpp"

namespace dircheeger {

/// h(v) = (1/sqrt(k)) (<f(v), g_1>, ..., <f(v), g_k>) for k seeded Gaussian
/// directions, re-centered and renormalized to sum weight |h|^2 = 1.
Embedding project_random(const Embedding& f, int k, std::uint64_t seed);

struct CoordinateChoice {
  Embedding f;         // chosen coordinate, renormalized
  int index = -1;
  double value = 0.0;  // its certified l2^2 value
  double full_value = 0.0;
};

/// Coordinate with the smallest certify_upper value. Asserts
/// value <= dim * full_value. f must be centered and normalized.
CoordinateChoice best_coordinate(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi,
                                 const Embedding& f);
CoordinateChoice best_coordinate(const Hypergraph& h, const Embedding& f);

struct SquareMap {
  Embedding g;           // centered, sum weight |g| = 1
  double shift = 0.0;    // c in g = sign(f + c) (f + c)^2
  double l1_ratio = 0.0; // sum weight |g| / sum weight f^2 before rescaling, in [1, 2]
};

/// Squaring map of a centered 1-dim embedding. The shift is found by
/// bisection on the increasing function c -> sum weight sign(f+c)(f+c)^2.
SquareMap square_map(const Embedding& f);

/// Asserts |g(u) - g(v)|^2 <= 2 (f(u) - f(v))^2 (|g(u)| + |g(v)|) on every
/// arc for the unscaled map g = sign(f+c)(f+c)^2.
void check_square_distortion(const DirectedGraph& g, const Embedding& f, double shift);

/// Inner l1 program at g: runs the mode's oracle with lengths |g(u) - g(v)|.
/// The returned objective is 2 * eta(g); strong duality is asserted.
DualCertificate dual_from_embedding(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi,
                                    const Embedding& g1);
/// Hypergraph version: q(e) = max pair |g(u) - g(v)| in e, r = 0.
DualCertificate dual_from_embedding(const Hypergraph& h, const Embedding& g1);

/// Smallest x with weight{values <= x} >= total / 2.
double weighted_lower_median(const std::vector<double>& values, const std::vector<double>& weights);

struct SweepResult {
  std::optional<Cut> best;
  int examined = 0;
};

/// Level sets {v : values(v) > t} at midpoints between consecutive distinct
/// values; cuts with a zero-volume side are skipped. Ties go to the first
/// (highest) threshold.
SweepResult sweep(const std::vector<double>& values, CutMode mode,
                  const std::function<double(const Membership&)>& eval);

/// Four-function threshold rounding of a dual solution (g, r). Asserts the
/// denominator bound sum weight (g1 + g2 + g3 + g4) >= 1/2 and
/// value <= 8 * dual.objective.
Cut threshold_cut(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi, const Embedding& g1,
                  const DualCertificate& dual);
Cut threshold_cut(const Hypergraph& h, const Embedding& g1, const DualCertificate& dual);

struct CutOptions {
  GapOptions gap;
  std::uint64_t seed = 1;
  int ensemble = 5;
  /// Projection dimension is max(1, ceil(C log2(alpha))) (Delta * alpha in
  /// vertex mode, hypergraph rank for hypergraphs).
  double projection_constant = 2.0;
  /// Worker threads for the ensemble (0 = all cores). Results do not depend on it.
  int threads = 1;
};

struct CutDiagnostics {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  /// Certified l2^2 value of the 1-dim embedding that was squared.
  double lambda_1 = 0.0;
  /// l1 program value at the squared embedding, and its dual objective 2 * eta.
  double eta = 0.0;
  double xi = 0.0;
  double alpha = 0.0;
  int projection_dim = 1;
  int member = -1;
  std::uint64_t member_seed = 0;
  bool scc_bypass = false;
  bool converged = false;
  /// 8 xi, and 46 sqrt(lambda_1); the cut value is at most both.
  double dual_bound = 0.0;
  double chain_bound = 0.0;
};

struct CutResult {
  Cut cut;
  SpectralBracket bracket;
  CutDiagnostics diagnostics;
};

/// Gap solve, projection of the SDP witness, best coordinate, squaring map,
/// dual extraction and threshold rounding, best over a seed ensemble. Every
/// link of cut <= 8 xi = 16 eta <= 32 sqrt(2) sqrt(lambda_1) is asserted.
CutResult spectral_cut(const DirectedGraph& g, Mode mode, const std::optional<VertexWeights>& pi,
                       const CutOptions& options = {});
CutResult hypergraph_cut(const Hypergraph& h, const CutOptions& options = {});

}  // namespace dircheeger
