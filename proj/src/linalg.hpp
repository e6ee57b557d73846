// linalg.hpp: thin LAPACK wrappers for symmetric eigenproblems (internal)

#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "dicke/model.hpp"

namespace dicke::linalg {

/// All eigenvalues of a banded symmetric matrix, ascending (band reduction + QR).
Eigen::VectorXd band_eigenvalues(const SymmetricMatrixRep& h);

/// The k lowest eigenpairs of the dense matrix.
void dense_lowest_eigenpairs(const SymmetricMatrixRep& h, std::size_t k, Eigen::VectorXd& values,
                             Eigen::MatrixXd& vectors);

/// Eigenvectors for known eigenvalues (ascending) by inverse iteration on the
/// band LU factorization. Vectors whose eigenvalues are closer than
/// cluster_gap are re-orthogonalized against each other.
Eigen::MatrixXd band_inverse_iteration(const SymmetricMatrixRep& h, const Eigen::VectorXd& values,
                                       double cluster_gap);

/// All eigenpairs of a symmetric tridiagonal matrix stored as a band of width 1.
void tridiagonal_eigenpairs(const SymmetricMatrixRep& h, Eigen::VectorXd& values,
                            Eigen::MatrixXd& vectors);

}  // namespace dicke::linalg
