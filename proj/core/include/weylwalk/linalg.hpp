#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace weylwalk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};

/// Pauli matrix sigma_axis for axis in {0, 1, 2} (x, y, z).
Matrix pauli(int axis);

/// Largest singular value.
double spectral_norm(const Matrix& m);

double hermiticity_defect(const Matrix& m);
double unitarity_defect(const Matrix& m);

/// exp(-i * h * t) for Hermitian h, by eigendecomposition. Only the lower
/// triangle of h is read.
Matrix unitary_propagator(const Matrix& h, double t);

/// Principal logarithm of a unitary, eigenphases in (-pi, pi). Throws
/// BranchAmbiguityError when an eigenphase lies within `tol` of +-pi.
Matrix log_unitary(const Matrix& u, double tol);

/// Eigenphases arg(lambda) of a unitary (normal) matrix, ascending.
std::vector<double> eigenphases(const Matrix& u);

/// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const Matrix& h);

/// u^n by binary powering, n >= 0.
Matrix matrix_power(const Matrix& u, long n);

}  // namespace weylwalk
