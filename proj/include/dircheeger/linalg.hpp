#pragma once

#include <Eigen/Dense>

namespace dircheeger {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct EigenPairs {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns, matching values
};

/// Largest |M(i,j) - M(j,i)|.
double asymmetry(const Matrix& m);

/// The k smallest eigenpairs of a symmetric matrix (dense solver). Throws
/// kAsymmetric when M deviates from symmetry by more than 1e-10 * max(1, |M|).
EigenPairs bottom_eigs(const Matrix& m, int k);

/// All eigenpairs, ascending.
EigenPairs all_eigs(const Matrix& m);

}  // namespace dircheeger
