#pragma once

#include <optional>
#include <vector>

#include "weylwalk/walk.hpp"

namespace weylwalk {

/// First-order continuum data: H(p) = sum_i B_i p_i + M.
struct BMatrices {
  std::vector<Matrix> b;
  std::optional<Matrix> mass;
  // Global phase of a massless W; the discrete step is compared against
  // exp(i phase) exp(-i H dt).
  double global_phase = 0.0;
  double speed = 1.0;  // a / dt

  int dim() const noexcept { return static_cast<int>(b.size()); }
  int internal_dim() const noexcept { return b.empty() ? 0 : static_cast<int>(b.front().rows()); }
  bool massless() const noexcept { return !mass.has_value(); }
};

/// B_i = (a/dt) sum_q A'_q q_i, with M attached for massive walks.
BMatrices b_matrices(const MassDecomposition& decomp, const WalkSpec& spec);

/// Convenience: mass_decompose followed by b_matrices.
BMatrices continuum_limit(const WalkSpec& spec, double tol = kDefaultTolerance);

Matrix hamiltonian_symbol(const BMatrices& bm, const RealVector& p);

/// max_i || B_i - B_i^dagger ||.
double hermiticity_defect(const BMatrices& bm);

/// exp(i n phase) exp(-i H(p) n dt): the continuum counterpart of U(p)^n.
Matrix continuum_propagator(const BMatrices& bm, const RealVector& p, double dt, long steps);

}  // namespace weylwalk
