#include "weylwalk/canonical.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "weylwalk/errors.hpp"

namespace weylwalk {

std::string_view to_string(Handedness h) {
  switch (h) {
    case Handedness::right:
      return "right";
    case Handedness::left:
      return "left";
    case Handedness::degenerate:
      return "degenerate";
  }
  return "degenerate";
}

PauliDecomposition pauli_decompose(const BMatrices& bm, double hermitian_tol) {
  if (bm.internal_dim() != 2) {
    throw UnsupportedDimensionError("Pauli decomposition needs a two-level internal space, got k = " +
                                    std::to_string(bm.internal_dim()));
  }
  const auto d = bm.dim();
  PauliDecomposition pd;
  pd.c = RealVector::Zero(d);
  pd.n = RealMatrix::Zero(d, 3);
  for (int i = 0; i < d; ++i) {
    const Matrix& bi = bm.b[static_cast<std::size_t>(i)];
    if (hermiticity_defect(bi) > hermitian_tol) {
      throw PreconditionError("B_" + std::to_string(i + 1) + " is not Hermitian");
    }
    pd.c(i) = 0.5 * bi.trace().real();
    for (int j = 0; j < 3; ++j) pd.n(i, j) = 0.5 * (pauli(j) * bi).trace().real();
  }
  return pd;
}

namespace {

RealMatrix padded_coupling(const RealMatrix& n) {
  RealMatrix padded = RealMatrix::Zero(3, 3);
  padded.topRows(n.rows()) = n;
  return padded;
}

int count_above(const RealVector& gamma, double tol) {
  if (gamma.size() == 0 || gamma(0) <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < gamma.size(); ++i) {
    if (gamma(i) > tol * gamma(0)) ++rank;
  }
  return rank;
}

}  // namespace

int coupling_rank(const PauliDecomposition& pd, double tol) {
  Eigen::JacobiSVD<RealMatrix> svd(pd.n);
  return count_above(svd.singularValues(), tol);
}

CanonicalForm canonicalize(const PauliDecomposition& pd, double tol) {
  if (pd.n.rows() > 3) {
    throw UnsupportedDimensionError("canonicalization is implemented for d <= 3; use coupling_rank");
  }
  const RealMatrix n = padded_coupling(pd.n);
  Eigen::JacobiSVD<RealMatrix> svd(n, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealMatrix u = svd.matrixU();
  RealMatrix v = svd.matrixV();

  // Fix column signs: the first two spatial columns start with a positive
  // entry, the third is chosen so det U = +1. Flips on U are mirrored on V so
  // the product U diag(gamma) V^T is unchanged.
  for (int j = 0; j < 2; ++j) {
    for (int r = 0; r < 3; ++r) {
      if (std::abs(u(r, j)) > 1e-12) {
        if (u(r, j) < 0.0) {
          u.col(j) *= -1.0;
          v.col(j) *= -1.0;
        }
        break;
      }
    }
  }
  if (u.determinant() < 0.0) {
    u.col(2) *= -1.0;
    v.col(2) *= -1.0;
  }

  CanonicalForm cf;
  cf.gamma = svd.singularValues();
  cf.spatial_rotation = u.transpose();
  cf.spin_rotation = v.transpose();
  cf.beta = pd.c;
  cf.effective_dim = count_above(cf.gamma, tol);
  if (cf.effective_dim < 3) {
    cf.handedness = Handedness::degenerate;
  } else {
    cf.handedness = v.determinant() > 0.0 ? Handedness::right : Handedness::left;
  }
  return cf;
}

double weyl_residual(const CanonicalForm& cf, const BMatrices& bm,
                     const std::vector<RealVector>& samples, bool restricted) {
  if (bm.internal_dim() != 2) throw UnsupportedDimensionError("Weyl residual needs k = 2");
  const int axes = restricted ? cf.effective_dim : 3;
  const Matrix id = Matrix::Identity(2, 2);
  double worst = 0.0;
  for (const auto& p : samples) {
    RealVector p3 = RealVector::Zero(3);
    p3.head(p.size()) = p;
    const RealVector rotated = cf.spatial_rotation * p3;
    double energy_sq = 0.0;
    for (int i = 0; i < axes; ++i) energy_sq += cf.gamma(i) * cf.gamma(i) * rotated(i) * rotated(i);
    const Matrix h = hamiltonian_symbol(bm, p) - cf.beta.dot(p) * id;
    worst = std::max(worst, spectral_norm(h * h - energy_sq * id));
  }
  return worst;
}

double lorentz_trace_test(const BMatrices& bm, const RealVector& p) {
  if (!bm.massless()) throw PreconditionError("trace test is defined for massless walks");
  if (bm.dim() != 3) throw UnsupportedDimensionError("trace test needs d = 3");
  const Matrix h = hamiltonian_symbol(bm, p);
  return (h * h).trace().real() - static_cast<double>(bm.internal_dim()) * p.squaredNorm();
}

}  // namespace weylwalk
