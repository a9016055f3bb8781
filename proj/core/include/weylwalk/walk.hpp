#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weylwalk/linalg.hpp"

namespace weylwalk {

inline constexpr double kDefaultTolerance = 1e-10;

/// Integer lattice displacement q in Z^d.
class Displacement {
 public:
  Displacement() = default;
  explicit Displacement(std::vector<std::int64_t> components)
      : components_(std::move(components)) {}
  Displacement(std::initializer_list<std::int64_t> components)
      : components_(components) {}

  static Displacement zero(std::size_t dim) {
    return Displacement(std::vector<std::int64_t>(dim, 0));
  }
  static Displacement unit(std::size_t dim, std::size_t axis, std::int64_t sign = 1);

  std::size_t dim() const noexcept { return components_.size(); }
  std::int64_t operator[](std::size_t i) const { return components_[i]; }
  const std::vector<std::int64_t>& components() const noexcept { return components_; }

  bool is_zero() const noexcept;
  double norm() const noexcept;
  /// q . p with real momentum p (p.size() == dim()).
  double dot(const RealVector& p) const;

  friend Displacement operator+(const Displacement& lhs, const Displacement& rhs);
  friend Displacement operator-(const Displacement& lhs, const Displacement& rhs);
  friend auto operator<=>(const Displacement&, const Displacement&) = default;
  friend bool operator==(const Displacement&, const Displacement&) = default;

  std::string to_string() const;

 private:
  std::vector<std::int64_t> components_;
};

struct LatticeScale {
  double a = 1.0;   // lattice spacing
  double dt = 1.0;  // time step

  double speed() const noexcept { return a / dt; }
  /// Throws StructuralError unless a > 0, dt > 0 and a/dt is finite.
  void validate() const;

  static LatticeScale from_ratio(double a, double ratio) { return {a, a / ratio}; }
};

/// Coins A_q keyed by displacement; ordered so iteration is deterministic.
using CoinMap = std::map<Displacement, Matrix>;

/// A causal translation-invariant walk U_D = sum_q A_q S_q. Immutable.
class WalkSpec {
 public:
  /// Throws StructuralError on empty support, wrong displacement length,
  /// non-square or mis-sized coins, or an invalid scale.
  WalkSpec(int dim, int internal_dim, CoinMap coins, LatticeScale scale);

  int dim() const noexcept { return dim_; }
  int internal_dim() const noexcept { return internal_dim_; }
  const CoinMap& coins() const noexcept { return coins_; }
  const LatticeScale& scale() const noexcept { return scale_; }

  /// Number of coins that are not identically zero.
  std::size_t nonzero_coin_count() const;
  /// Largest |q| over nonzero coins.
  double max_displacement_norm() const;

  WalkSpec with_scale(LatticeScale scale) const;

 private:
  int dim_;
  int internal_dim_;
  CoinMap coins_;
  LatticeScale scale_;
};

struct DisplacementResidual {
  Displacement offset;  // d' = p - q
  double residual;      // || sum_q A_q^dagger A_{q + d'} ||
};

struct ValidationReport {
  std::vector<DisplacementResidual> offsets;
  double completeness = 0.0;  // || sum_q A_q^dagger A_q - 1 ||
  double max_residual = 0.0;
  double tolerance = kDefaultTolerance;
  bool passed = false;
};

/// Per-displacement unitarity conditions of U_D.
ValidationReport validate_unitarity(const WalkSpec& spec, double tol = kDefaultTolerance);

/// U(p) = sum_q A_q exp(-i a q.p).
Matrix momentum_symbol(const WalkSpec& spec, const RealVector& p);

/// dU/dp_axis at p.
Matrix momentum_symbol_derivative(const WalkSpec& spec, const RealVector& p, int axis);

struct MassDecomposition {
  Matrix coin_sum;           // W = sum_q A_q
  CoinMap normalized_coins;  // A'_q = W^dagger A_q
  std::optional<Matrix> mass;
  bool massless = false;
  // W = exp(i phase) * 1 when massless; zero otherwise.
  double global_phase = 0.0;
};

/// Splits U_D = W sum_q A'_q S_q. A global phase W = exp(i phi) 1 counts as
/// massless. Otherwise M = (i/dt) log W on the principal branch.
MassDecomposition mass_decompose(const WalkSpec& spec, double tol = kDefaultTolerance);

/// Coins of the walk product (left)(right): A_q B_p lands on q + p.
CoinMap compose(const CoinMap& left, const CoinMap& right);
/// W * A_q for every coin.
CoinMap premultiply(const Matrix& w, const CoinMap& coins);
/// Drops coins whose largest entry magnitude is <= threshold.
CoinMap prune(CoinMap coins, double threshold = 0.0);

/// Relabels axes: new axis i is old axis perm[i].
WalkSpec permute_axes(const WalkSpec& spec, const std::vector<int>& perm);

}  // namespace weylwalk
