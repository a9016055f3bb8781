#include "weylwalk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "weylwalk/errors.hpp"

namespace weylwalk {

Matrix pauli(int axis) {
  Matrix s = Matrix::Zero(2, 2);
  switch (axis) {
    case 0:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 1:
      s(0, 1) = -kI;
      s(1, 0) = kI;
      break;
    case 2:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    default:
      throw std::out_of_range("pauli axis must be 0, 1 or 2");
  }
  return s;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double hermiticity_defect(const Matrix& m) { return spectral_norm(m - m.adjoint()); }

double unitarity_defect(const Matrix& m) {
  return spectral_norm(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols()));
}

Matrix unitary_propagator(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const auto& z = eig.eigenvectors();
  ComplexVector phases(h.rows());
  for (Eigen::Index j = 0; j < h.rows(); ++j) {
    phases(j) = std::exp(-kI * eig.eigenvalues()(j) * t);
  }
  return z * phases.asDiagonal() * z.adjoint();
}

Matrix log_unitary(const Matrix& u, double tol) {
  // A unitary is normal, so its Schur form is diagonal up to rounding.
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& t = schur.matrixT();
  const Matrix& z = schur.matrixU();
  ComplexVector logs(u.rows());
  for (Eigen::Index j = 0; j < u.rows(); ++j) {
    const double phase = std::arg(t(j, j));
    if (std::numbers::pi - std::abs(phase) <= tol) {
      std::ostringstream msg;
      msg << "eigenphase " << phase << " lies on the branch cut of the principal logarithm";
      throw BranchAmbiguityError(msg.str());
    }
    logs(j) = Complex(std::log(std::abs(t(j, j))), phase);
  }
  return z * logs.asDiagonal() * z.adjoint();
}

std::vector<double> eigenphases(const Matrix& u) {
  Eigen::ComplexEigenSolver<Matrix> eig(u, /*computeEigenvectors=*/false);
  std::vector<double> phases;
  phases.reserve(u.rows());
  for (Eigen::Index j = 0; j < u.rows(); ++j) phases.push_back(std::arg(eig.eigenvalues()(j)));
  std::sort(phases.begin(), phases.end());
  return phases;
}

std::vector<double> hermitian_eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

Matrix matrix_power(const Matrix& u, long n) {
  if (n < 0) throw std::invalid_argument("matrix_power needs n >= 0");
  Matrix result = Matrix::Identity(u.rows(), u.cols());
  Matrix base = u;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace weylwalk
