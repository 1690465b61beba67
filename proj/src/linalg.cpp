#include "dircheeger/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dircheeger/error.hpp"

namespace dircheeger {

double asymmetry(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  }
  return worst;
}

EigenPairs all_eigs(const Matrix& m) { return bottom_eigs(m, static_cast<int>(m.rows())); }

EigenPairs bottom_eigs(const Matrix& m, int k) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::kAsymmetric, "matrix is not square");
  if (k < 1 || k > m.rows()) {
    throw Error(ErrorKind::kParameter, "k must lie in [1, n], got " + std::to_string(k));
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (asymmetry(m) > 1e-10 * scale) throw Error(ErrorKind::kAsymmetric, "matrix is not symmetric");
  // Symmetrize exactly so the solver sees the same lower and upper triangle.
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  ensure(solver.info() == Eigen::Success, "symmetric eigensolver converged");
  return {solver.eigenvalues().head(k), solver.eigenvectors().leftCols(k)};
}

}  // namespace dircheeger
