#include "weylwalk/continuum.hpp"

#include <algorithm>

#include "weylwalk/errors.hpp"

namespace weylwalk {

BMatrices b_matrices(const MassDecomposition& decomp, const WalkSpec& spec) {
  const auto k = spec.internal_dim();
  BMatrices bm;
  bm.speed = spec.scale().speed();
  bm.b.assign(static_cast<std::size_t>(spec.dim()), Matrix::Zero(k, k));
  for (const auto& [q, aq] : decomp.normalized_coins) {
    for (std::size_t i = 0; i < bm.b.size(); ++i) {
      if (q[i] != 0) bm.b[i] += static_cast<double>(q[i]) * aq;
    }
  }
  for (auto& bi : bm.b) bi *= bm.speed;
  bm.mass = decomp.mass;
  bm.global_phase = decomp.global_phase;
  return bm;
}

BMatrices continuum_limit(const WalkSpec& spec, double tol) {
  return b_matrices(mass_decompose(spec, tol), spec);
}

Matrix hamiltonian_symbol(const BMatrices& bm, const RealVector& p) {
  if (p.size() != bm.dim()) throw StructuralError("momentum has the wrong dimension");
  const auto k = bm.internal_dim();
  Matrix h = bm.mass ? *bm.mass : Matrix::Zero(k, k);
  for (std::size_t i = 0; i < bm.b.size(); ++i) h += p(static_cast<Eigen::Index>(i)) * bm.b[i];
  return h;
}

double hermiticity_defect(const BMatrices& bm) {
  double worst = 0.0;
  for (const auto& bi : bm.b) worst = std::max(worst, hermiticity_defect(bi));
  return worst;
}

Matrix continuum_propagator(const BMatrices& bm, const RealVector& p, double dt, long steps) {
  const double t = dt * static_cast<double>(steps);
  Matrix v = unitary_propagator(hamiltonian_symbol(bm, p), t);
  if (bm.global_phase != 0.0) v *= std::exp(kI * bm.global_phase * static_cast<double>(steps));
  return v;
}

}  // namespace weylwalk
