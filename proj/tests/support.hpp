#pragma once

// Test-only generators and oracles. Nothing here calls into the code paths
// it is used to check.

#include <random>
#include <vector>

#include "weylwalk/walk.hpp"

namespace weylwalk::oracle {

/// Haar-random element of U(n) (QR of a complex Gaussian, phases fixed).
Matrix haar_unitary(int n, std::mt19937_64& rng);

/// Rank-one projector onto a Haar-random state in C^2.
Matrix random_projector(std::mt19937_64& rng);

/// exp(-i theta n.sigma) = cos(theta) 1 - i sin(theta) n.sigma for unit n.
Matrix spin_half_rotation(double theta, const RealVector& axis);

/// Random massless two-level walk on Z^3 with support inside {-1,0,1}^3:
/// V0 T_x V1 T_y V2 T_z (V0 V1 V2)^dagger, each T_b a conditional shift with a
/// random projector, either S_b P + S_b^dagger (1-P) or S_b P + (1-P).
WalkSpec random_massless_walk_3d(std::mt19937_64& rng, LatticeScale scale = {});

/// Random unitary 1D walk with support inside {-1,0,1} and k = 2.
WalkSpec random_unitary_walk_1d(std::mt19937_64& rng, LatticeScale scale = {});

/// Random (generally non-unitary) 1D walk with support inside {-1,0,1}.
WalkSpec random_walk_1d(std::mt19937_64& rng, int k, LatticeScale scale = {});

/// Dense L*k x L*k matrix of sum_q A_q S_q on a periodic ring of L sites.
Matrix ring_matrix(const WalkSpec& spec, int sites);

/// Block of ring_matrix in the Fourier basis at p_j = 2 pi j / (L a).
Matrix ring_fourier_block(const Matrix& ring, int sites, int k, int j);

/// Largest singular value by power iteration on M^dagger M.
double power_iteration_norm(const Matrix& m, int iterations = 500);

/// Centered finite difference (i/dt) [U'(eps e_i) - U'(-eps e_i)] / (2 eps), with
/// U' = W^dagger U evaluated by direct summation of the coins.
Matrix finite_difference_b(const WalkSpec& spec, int axis, double eps);

/// Brute-force symbol sum_q A_q exp(-i a q.p).
Matrix direct_symbol(const WalkSpec& spec, const RealVector& p);

/// Rotation matrix about unit axis n by angle theta (Rodrigues).
RealMatrix rodrigues(const RealVector& axis, double theta);

RealVector random_vector(std::mt19937_64& rng, int dim, double scale = 1.0);
RealVector random_unit_vector(std::mt19937_64& rng, int dim);

}  // namespace weylwalk::oracle
