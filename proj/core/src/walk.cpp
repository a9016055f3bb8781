#include "weylwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "weylwalk/errors.hpp"

namespace weylwalk {

Displacement Displacement::unit(std::size_t dim, std::size_t axis, std::int64_t sign) {
  std::vector<std::int64_t> c(dim, 0);
  c.at(axis) = sign;
  return Displacement(std::move(c));
}

bool Displacement::is_zero() const noexcept {
  return std::all_of(components_.begin(), components_.end(), [](auto v) { return v == 0; });
}

double Displacement::norm() const noexcept {
  double s = 0.0;
  for (auto v : components_) s += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(s);
}

double Displacement::dot(const RealVector& p) const {
  double s = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    s += static_cast<double>(components_[i]) * p(static_cast<Eigen::Index>(i));
  }
  return s;
}

Displacement operator+(const Displacement& lhs, const Displacement& rhs) {
  std::vector<std::int64_t> c(lhs.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = lhs[i] + rhs[i];
  return Displacement(std::move(c));
}

Displacement operator-(const Displacement& lhs, const Displacement& rhs) {
  std::vector<std::int64_t> c(lhs.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = lhs[i] - rhs[i];
  return Displacement(std::move(c));
}

std::string Displacement::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out << ',';
    out << components_[i];
  }
  out << ')';
  return out.str();
}

void LatticeScale::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw StructuralError("lattice spacing a must be positive and finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw StructuralError("time step dt must be positive and finite");
  if (!std::isfinite(speed())) throw StructuralError("lattice speed a/dt is not finite");
}

WalkSpec::WalkSpec(int dim, int internal_dim, CoinMap coins, LatticeScale scale)
    : dim_(dim), internal_dim_(internal_dim), coins_(std::move(coins)), scale_(scale) {
  if (dim_ < 1) throw StructuralError("spatial dimension must be >= 1");
  if (internal_dim_ < 1) throw StructuralError("internal dimension must be >= 1");
  if (coins_.empty()) throw StructuralError("coin support is empty");
  scale_.validate();
  for (const auto& [q, a] : coins_) {
    if (q.dim() != static_cast<std::size_t>(dim_)) {
      throw StructuralError("displacement " + q.to_string() + " does not have " +
                            std::to_string(dim_) + " components");
    }
    if (a.rows() != internal_dim_ || a.cols() != internal_dim_) {
      std::ostringstream msg;
      msg << "coin at " << q.to_string() << " is " << a.rows() << "x" << a.cols()
          << ", expected " << internal_dim_ << "x" << internal_dim_;
      throw StructuralError(msg.str());
    }
    if (!a.allFinite()) throw StructuralError("coin at " + q.to_string() + " has non-finite entries");
  }
}

std::size_t WalkSpec::nonzero_coin_count() const {
  return static_cast<std::size_t>(std::count_if(coins_.begin(), coins_.end(), [](const auto& kv) {
    return kv.second.cwiseAbs().maxCoeff() > 0.0;
  }));
}

double WalkSpec::max_displacement_norm() const {
  double best = 0.0;
  for (const auto& [q, a] : coins_) {
    if (a.cwiseAbs().maxCoeff() > 0.0) best = std::max(best, q.norm());
  }
  return best;
}

WalkSpec WalkSpec::with_scale(LatticeScale scale) const {
  return WalkSpec(dim_, internal_dim_, coins_, scale);
}

ValidationReport validate_unitarity(const WalkSpec& spec, double tol) {
  const auto k = spec.internal_dim();
  std::map<Displacement, Matrix> products;
  for (const auto& [q, aq] : spec.coins()) {
    const Matrix aq_dag = aq.adjoint();
    for (const auto& [p, ap] : spec.coins()) {
      auto [it, inserted] = products.try_emplace(p - q, Matrix::Zero(k, k));
      it->second.noalias() += aq_dag * ap;
    }
  }

  ValidationReport report;
  report.tolerance = tol;
  for (auto& [offset, sum] : products) {
    if (offset.is_zero()) {
      report.completeness = spectral_norm(sum - Matrix::Identity(k, k));
    } else {
      report.offsets.push_back({offset, spectral_norm(sum)});
    }
  }
  report.max_residual = report.completeness;
  for (const auto& r : report.offsets) report.max_residual = std::max(report.max_residual, r.residual);
  report.passed = report.max_residual <= tol;
  return report;
}

Matrix momentum_symbol(const WalkSpec& spec, const RealVector& p) {
  if (p.size() != spec.dim()) throw StructuralError("momentum has the wrong dimension");
  const double a = spec.scale().a;
  const auto k = spec.internal_dim();
  Matrix u = Matrix::Zero(k, k);
  for (const auto& [q, aq] : spec.coins()) {
    u += aq * std::exp(-kI * (a * q.dot(p)));
  }
  return u;
}

Matrix momentum_symbol_derivative(const WalkSpec& spec, const RealVector& p, int axis) {
  if (p.size() != spec.dim()) throw StructuralError("momentum has the wrong dimension");
  const double a = spec.scale().a;
  const auto k = spec.internal_dim();
  Matrix du = Matrix::Zero(k, k);
  for (const auto& [q, aq] : spec.coins()) {
    const auto qi = static_cast<double>(q[static_cast<std::size_t>(axis)]);
    if (qi == 0.0) continue;
    du += aq * (-kI * a * qi * std::exp(-kI * (a * q.dot(p))));
  }
  return du;
}

MassDecomposition mass_decompose(const WalkSpec& spec, double tol) {
  const auto k = spec.internal_dim();
  MassDecomposition out;
  out.coin_sum = Matrix::Zero(k, k);
  for (const auto& [q, aq] : spec.coins()) out.coin_sum += aq;

  const Matrix& w = out.coin_sum;
  if (unitarity_defect(w) > 100.0 * tol) {
    throw PreconditionError("coin sum W is not unitary; validate the walk first");
  }

  const Matrix w_dag = w.adjoint();
  for (const auto& [q, aq] : spec.coins()) out.normalized_coins.emplace(q, w_dag * aq);

  const double phi = std::arg(w(0, 0));
  const Matrix phase_identity = std::exp(kI * phi) * Matrix::Identity(k, k);
  if (spectral_norm(w - phase_identity) <= tol) {
    out.massless = true;
    out.global_phase = phi;
    return out;
  }

  // W = exp(-i M dt)  =>  M = (i / dt) log W.
  out.mass = (kI / spec.scale().dt) * log_unitary(w, tol);
  return out;
}

CoinMap compose(const CoinMap& left, const CoinMap& right) {
  CoinMap out;
  for (const auto& [q, aq] : left) {
    for (const auto& [p, bp] : right) {
      auto [it, inserted] = out.try_emplace(q + p, Matrix::Zero(aq.rows(), bp.cols()));
      it->second.noalias() += aq * bp;
    }
  }
  return out;
}

CoinMap premultiply(const Matrix& w, const CoinMap& coins) {
  CoinMap out;
  for (const auto& [q, aq] : coins) out.emplace(q, w * aq);
  return out;
}

CoinMap prune(CoinMap coins, double threshold) {
  std::erase_if(coins, [threshold](const auto& kv) {
    return kv.second.size() == 0 || kv.second.cwiseAbs().maxCoeff() <= threshold;
  });
  return coins;
}

WalkSpec permute_axes(const WalkSpec& spec, const std::vector<int>& perm) {
  const auto d = static_cast<std::size_t>(spec.dim());
  if (perm.size() != d) throw StructuralError("axis permutation has the wrong length");
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> identity(d);
  std::iota(identity.begin(), identity.end(), 0);
  if (sorted != identity) throw StructuralError("not a permutation of the spatial axes");

  CoinMap coins;
  for (const auto& [q, aq] : spec.coins()) {
    std::vector<std::int64_t> c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = q[static_cast<std::size_t>(perm[i])];
    coins.emplace(Displacement(std::move(c)), aq);
  }
  return WalkSpec(spec.dim(), spec.internal_dim(), std::move(coins), spec.scale());
}

}  // namespace weylwalk
