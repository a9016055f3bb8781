#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include <Eigen/SVD>

#include "support.hpp"
#include "weylwalk/canonical.hpp"
#include "weylwalk/zoo.hpp"

using namespace weylwalk;

TEST(Zoo, EveryWalkIsUnitary) {
  for (const auto& entry : zoo::entries()) {
    for (const LatticeScale scale : {LatticeScale{1.0, 1.0}, LatticeScale{0.1, 0.05}}) {
      const auto spec = entry.build(entry.massive ? 0.7 : 0.0, scale);
      EXPECT_LE(validate_unitarity(spec, 1e-12).max_residual, 1e-12) << entry.name;
      EXPECT_TRUE(validate_unitarity(spec, 1e-12).passed) << entry.name;
    }
  }
}

TEST(Zoo, LookupByName) {
  std::set<std::string> names;
  for (const auto& entry : zoo::entries()) names.insert(entry.name);
  EXPECT_EQ(names, (std::set<std::string>{"massless_1d", "massive_1d", "bb_weyl_3d", "spin1_3d", "dirac_3d"}));
  EXPECT_EQ(zoo::find("spin1_3d").name, "spin1_3d");
  EXPECT_THROW(zoo::find("nope"), std::out_of_range);
}

TEST(Zoo, BccSupportIsTheCubeCorners) {
  const auto spec = zoo::bb_weyl_3d();
  EXPECT_EQ(spec.nonzero_coin_count(), 8u);
  for (const auto& [q, coin] : spec.coins()) {
    EXPECT_NEAR(q.norm(), std::sqrt(3.0), 1e-15) << q.to_string();
    // Product of three rank-one projectors.
    const auto sv = Eigen::JacobiSVD<Matrix>(coin).singularValues();
    EXPECT_GT(sv(0), 0.1);
    EXPECT_LE(sv(1), 1e-15);
  }
}

TEST(Zoo, BccCanonicalData) {
  const LatticeScale scale{0.2, 0.1};
  const auto bm = continuum_limit(zoo::bb_weyl_3d(scale));
  const auto cf = canonicalize(pauli_decompose(bm));
  EXPECT_LE((cf.gamma - RealVector::Constant(3, scale.speed())).norm(), 1e-12);
  EXPECT_EQ(cf.handedness, Handedness::right);
  std::mt19937_64 rng(151);
  std::vector<RealVector> ps;
  for (int i = 0; i < 30; ++i) ps.push_back(oracle::random_vector(rng, 3, 3.0));
  EXPECT_LE(weyl_residual(cf, bm, ps), 1e-10);
}

TEST(Zoo, OddAxisPermutationFlipsHandedness) {
  const auto spec = zoo::bb_weyl_3d();
  const auto swapped = permute_axes(spec, {1, 0, 2});
  const auto cyclic = permute_axes(spec, {1, 2, 0});
  EXPECT_EQ(canonicalize(pauli_decompose(continuum_limit(swapped))).handedness, Handedness::left);
  EXPECT_EQ(canonicalize(pauli_decompose(continuum_limit(cyclic))).handedness, Handedness::right);
}

TEST(Zoo, MassiveWalkReducesToMassless) {
  const LatticeScale scale{0.1, 0.1};
  const auto massive = zoo::massive_1d(0.0, scale);
  const auto massless = zoo::massless_1d(scale);
  for (const auto& [q, coin] : massless.coins()) {
    EXPECT_LE(spectral_norm(massive.coins().at(q) - coin), 1e-15);
  }
  const double m = 1.5;
  const auto bm = continuum_limit(zoo::massive_1d(m, scale));
  ASSERT_TRUE(bm.mass.has_value());
  EXPECT_LE(spectral_norm(*bm.mass - m * pauli(0)), 1e-10);
  EXPECT_LE(spectral_norm(bm.b[0] - pauli(2)), 1e-12);
}

TEST(Zoo, Spin1WalkData) {
  const auto spec = zoo::spin1_3d();
  EXPECT_EQ(spec.internal_dim(), 3);
  EXPECT_EQ(spec.nonzero_coin_count(), 22u);
  for (int i = 0; i < 3; ++i) {
    const Matrix j = zoo::spin1_generator(i);
    EXPECT_LE(hermiticity_defect(j), 0.0);
    const auto ev = hermitian_eigenvalues(j);
    EXPECT_NEAR(ev[0], -1.0, 1e-14);
    EXPECT_NEAR(ev[1], 0.0, 1e-14);
    EXPECT_NEAR(ev[2], 1.0, 1e-14);
  }
  // [J_x, J_y] = i J_z
  const Matrix commutator = zoo::spin1_generator(0) * zoo::spin1_generator(1) -
                            zoo::spin1_generator(1) * zoo::spin1_generator(0);
  EXPECT_LE(spectral_norm(commutator - kI * zoo::spin1_generator(2)), 1e-15);
}

TEST(Zoo, MasslessDiracIsTwoOppositeWeylWalks) {
  const auto spec = zoo::dirac_3d(0.0);
  const auto right = zoo::bb_weyl_3d();
  const auto left = zoo::bb_weyl_3d_left();
  for (const auto& [q, coin] : spec.coins()) {
    ASSERT_EQ(coin.rows(), 4);
    EXPECT_EQ(coin.topRightCorner(2, 2).norm(), 0.0);
    EXPECT_EQ(coin.bottomLeftCorner(2, 2).norm(), 0.0);
    EXPECT_LE(spectral_norm(coin.topLeftCorner(2, 2) - right.coins().at(q)), 1e-15);
    EXPECT_LE(spectral_norm(coin.bottomRightCorner(2, 2) - left.coins().at(q)), 1e-15);
  }
}

TEST(Zoo, DiracEigenvalues) {
  const double m = 0.6;
  const auto bm = continuum_limit(zoo::dirac_3d(m, {0.05, 0.05}));
  std::mt19937_64 rng(157);
  for (int i = 0; i < 20; ++i) {
    const RealVector p = oracle::random_vector(rng, 3, 1.5);
    const auto ev = hermitian_eigenvalues(hamiltonian_symbol(bm, p));
    const double e = std::sqrt(p.squaredNorm() + m * m);
    EXPECT_NEAR(ev[0], -e, 1e-8);
    EXPECT_NEAR(ev[3], e, 1e-8);
  }
}

TEST(Zoo, CoinsMatchOracleSymbol) {
  std::mt19937_64 rng(163);
  for (const auto& entry : zoo::entries()) {
    const auto spec = entry.build(0.3, {0.2, 0.1});
    for (int i = 0; i < 5; ++i) {
      const RealVector p = oracle::random_vector(rng, spec.dim(), 4.0);
      EXPECT_LE(spectral_norm(momentum_symbol(spec, p) - oracle::direct_symbol(spec, p)), 1e-13) << entry.name;
    }
  }
}
