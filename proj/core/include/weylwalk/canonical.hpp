#pragma once

#include <string_view>
#include <vector>

#include "weylwalk/continuum.hpp"

namespace weylwalk {

/// B_i = c_i 1 + sum_j N_ij sigma_j for a two-level walk.
struct PauliDecomposition {
  RealVector c;  // drift, one entry per spatial axis
  RealMatrix n;  // d x 3
};

enum class Handedness { right, left, degenerate };

std::string_view to_string(Handedness h);

/// Weyl form H - beta.p = sum_i gamma_i sigma'_i p'_i with p' = spatial_rotation p
/// and sigma'_i = sum_j spin_rotation_ij sigma_j.
struct CanonicalForm {
  RealVector gamma;            // 3 entries, descending, >= 0
  Handedness handedness = Handedness::degenerate;
  RealMatrix spatial_rotation; // 3 x 3, det +1
  RealMatrix spin_rotation;    // 3 x 3, det = sign(det N) unless degenerate
  RealVector beta;             // drift, d entries
  int effective_dim = 0;
};

/// Throws UnsupportedDimensionError for k != 2 and PreconditionError when a
/// B_i is not Hermitian within `hermitian_tol`.
PauliDecomposition pauli_decompose(const BMatrices& bm, double hermitian_tol = 1e-8);

/// Real SVD of N (zero-padded to 3 x 3). Throws UnsupportedDimensionError for d > 3.
CanonicalForm canonicalize(const PauliDecomposition& pd, double tol = kDefaultTolerance);

/// Rank of N at relative tolerance; defined for any d.
int coupling_rank(const PauliDecomposition& pd, double tol = kDefaultTolerance);

/// max_p || (H(p) - beta.p)^2 - (sum_i gamma_i^2 p'_i^2) 1 ||. With
/// `restricted`, only the first effective_dim canonical axes contribute.
double weyl_residual(const CanonicalForm& cf, const BMatrices& bm,
                     const std::vector<RealVector>& samples, bool restricted = false);

/// tr(H(p)^2) - k |p|^2 for a massless three-dimensional walk.
double lorentz_trace_test(const BMatrices& bm, const RealVector& p);

}  // namespace weylwalk
