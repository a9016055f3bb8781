#include "weylwalk/zoo.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "weylwalk/errors.hpp"

namespace weylwalk::zoo {

namespace {

// Coins of exp(-i a p_b sigma_b) = S_b (1 + s sigma_b)/2 + S_b^dagger (1 - s sigma_b)/2,
// s = +1 for the right-handed factor and -1 for the swapped one.
CoinMap conditional_shift(int axis, double orientation) {
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix s = orientation * pauli(axis);
  CoinMap coins;
  coins.emplace(Displacement::unit(3, static_cast<std::size_t>(axis), +1), 0.5 * (id + s));
  coins.emplace(Displacement::unit(3, static_cast<std::size_t>(axis), -1), 0.5 * (id - s));
  return coins;
}

CoinMap weyl_product(double orientation) {
  return compose(compose(conditional_shift(0, orientation), conditional_shift(1, orientation)),
                 conditional_shift(2, orientation));
}

// exp(-i a P_b J_b) = S_b P_{+1} + P_0 + S_b^dagger P_{-1}; the spectral
// projectors of J_b are polynomials in J_b.
CoinMap spin1_shift(int axis) {
  const Matrix j = spin1_generator(axis);
  const Matrix id = Matrix::Identity(3, 3);
  const Matrix j2 = j * j;
  CoinMap coins;
  coins.emplace(Displacement::unit(3, static_cast<std::size_t>(axis), +1), 0.5 * (j2 + j));
  coins.emplace(Displacement::zero(3), id - j2);
  coins.emplace(Displacement::unit(3, static_cast<std::size_t>(axis), -1), 0.5 * (j2 - j));
  return coins;
}

Matrix rotation_about_x(double angle) {
  // exp(-i angle sigma_x) = cos(angle) 1 - i sin(angle) sigma_x
  return std::cos(angle) * Matrix::Identity(2, 2) - kI * std::sin(angle) * pauli(0);
}

void check_mass(double mass) {
  if (!(mass >= 0.0) || !std::isfinite(mass)) throw StructuralError("mass must be a non-negative number");
}

}  // namespace

Matrix spin1_generator(int axis) {
  if (axis < 0 || axis > 2) throw std::out_of_range("spin-1 axis must be 0, 1 or 2");
  Matrix j = Matrix::Zero(3, 3);
  // epsilon_{axis, b, c} = +1 for (b, c) cyclic after axis.
  const int b = (axis + 1) % 3;
  const int c = (axis + 2) % 3;
  j(b, c) = -kI;
  j(c, b) = kI;
  return j;
}

WalkSpec massless_1d(LatticeScale scale) {
  Matrix r = Matrix::Zero(2, 2);
  Matrix l = Matrix::Zero(2, 2);
  r(0, 0) = 1.0;
  l(1, 1) = 1.0;
  CoinMap coins;
  coins.emplace(Displacement{+1}, r);
  coins.emplace(Displacement{-1}, l);
  return WalkSpec(1, 2, std::move(coins), scale);
}

WalkSpec massive_1d(double mass, LatticeScale scale) {
  check_mass(mass);
  const WalkSpec base = massless_1d(scale);
  return WalkSpec(1, 2, premultiply(rotation_about_x(mass * scale.dt), base.coins()), scale);
}

WalkSpec bb_weyl_3d(LatticeScale scale) { return WalkSpec(3, 2, prune(weyl_product(+1.0)), scale); }

WalkSpec bb_weyl_3d_left(LatticeScale scale) { return WalkSpec(3, 2, prune(weyl_product(-1.0)), scale); }

WalkSpec spin1_3d(LatticeScale scale) {
  // Projector products are exact in binary floating point; orthogonal pairs
  // give exact zeros, which are dropped from the support.
  return WalkSpec(3, 3, prune(compose(compose(spin1_shift(0), spin1_shift(1)), spin1_shift(2))), scale);
}

WalkSpec dirac_3d(double mass, LatticeScale scale) {
  check_mass(mass);
  const CoinMap right = weyl_product(+1.0);
  const CoinMap left = weyl_product(-1.0);
  CoinMap blocks;
  for (const auto& [q, ar] : right) {
    Matrix c = Matrix::Zero(4, 4);
    c.topLeftCorner(2, 2) = ar;
    c.bottomRightCorner(2, 2) = left.at(q);
    blocks.emplace(q, c);
  }
  // beta swaps the two Weyl blocks; beta^2 = 1 so exp(-i theta beta) = cos - i sin beta.
  Matrix beta = Matrix::Zero(4, 4);
  beta.topRightCorner(2, 2) = Matrix::Identity(2, 2);
  beta.bottomLeftCorner(2, 2) = Matrix::Identity(2, 2);
  const double theta = mass * scale.dt;
  const Matrix w = std::cos(theta) * Matrix::Identity(4, 4) - kI * std::sin(theta) * beta;
  return WalkSpec(3, 4, prune(premultiply(w, blocks)), scale);
}

std::span<const ZooEntry> entries() {
  static const std::array<ZooEntry, 5> table = {{
      {"massless_1d", "1D conditional shift S|r><r| + S^dagger|l><l|", false,
       [](double, LatticeScale s) { return massless_1d(s); }},
      {"massive_1d", "1D Dirac walk exp(-i m dt sigma_x)(S|r><r| + S^dagger|l><l|)", true,
       [](double m, LatticeScale s) { return massive_1d(m, s); }},
      {"bb_weyl_3d", "3D Weyl walk T_x T_y T_z on the BCC corners", false,
       [](double, LatticeScale s) { return bb_weyl_3d(s); }},
      {"spin1_3d", "3D spin-1 walk T_b = exp(-i a P_b J_b)", false,
       [](double, LatticeScale s) { return spin1_3d(s); }},
      {"dirac_3d", "3D Dirac walk: right (+) left Weyl walks mixed by exp(-i m dt beta)", true,
       [](double m, LatticeScale s) { return dirac_3d(m, s); }},
  }};
  return table;
}

const ZooEntry& find(std::string_view name) {
  for (const auto& e : entries()) {
    if (e.name == name) return e;
  }
  throw std::out_of_range("unknown zoo walk: " + std::string(name));
}

}  // namespace weylwalk::zoo
