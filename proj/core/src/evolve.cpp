#include "weylwalk/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "weylwalk/errors.hpp"

namespace weylwalk {

void StudyConfig::validate() const {
  if (grid_per_dim < 16) throw PreconditionError("grid_per_dim must be >= 16");
  for (std::size_t i = 0; i < a_schedule.size(); ++i) {
    check_cutoff(lambda, a_schedule[i]);
    if (i > 0 && !(a_schedule[i] < a_schedule[i - 1])) {
      throw PreconditionError("a_schedule must be strictly descending");
    }
  }
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw PreconditionError("ratio a/dt must be positive");
}

void check_cutoff(double lambda, double a) {
  if (!(lambda > 0.0)) throw CutoffError("momentum cutoff must be positive");
  if (!(lambda < std::numbers::pi / a)) {
    std::ostringstream msg;
    msg << "cutoff lambda = " << lambda << " is not inside the Brillouin zone (pi/a = "
        << std::numbers::pi / a << ")";
    throw CutoffError(msg.str());
  }
}

namespace {

std::vector<RealVector> ball_grid(int dim, double lambda, int grid) {
  const double h = 2.0 * lambda / static_cast<double>(grid - 1);
  const double limit = lambda * lambda * (1.0 + 1e-12);
  std::vector<RealVector> points;
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  RealVector p(dim);
  while (true) {
    for (int i = 0; i < dim; ++i) p(i) = -lambda + h * idx[static_cast<std::size_t>(i)];
    if (p.squaredNorm() <= limit) points.push_back(p);
    int axis = 0;
    while (axis < dim && ++idx[static_cast<std::size_t>(axis)] == grid) {
      idx[static_cast<std::size_t>(axis)] = 0;
      ++axis;
    }
    if (axis == dim) break;
  }
  return points;
}

std::vector<RealVector> refinement_points(const RealVector& center, double lambda, double h) {
  const int dim = static_cast<int>(center.size());
  constexpr int kReach = 3;
  const double step = h / 3.0;
  std::vector<RealVector> points;
  std::vector<int> idx(static_cast<std::size_t>(dim), -kReach);
  RealVector p(dim);
  while (true) {
    for (int i = 0; i < dim; ++i) p(i) = center(i) + step * idx[static_cast<std::size_t>(i)];
    const double r = p.norm();
    if (r > lambda) p *= lambda / r;
    points.push_back(p);
    int axis = 0;
    while (axis < dim && ++idx[static_cast<std::size_t>(axis)] > kReach) {
      idx[static_cast<std::size_t>(axis)] = -kReach;
      ++axis;
    }
    if (axis == dim) break;
  }
  return points;
}

Matrix step_difference(const WalkSpec& spec, const BMatrices& bm, const RealVector& p, long steps) {
  const Matrix v = continuum_propagator(bm, p, spec.scale().dt, steps);
  const Matrix u = momentum_symbol(spec, p);
  return v - (steps == 1 ? u : matrix_power(u, steps));
}

}  // namespace

NormEstimate sup_over_ball(int dim, double lambda, int grid_per_dim,
                           const std::function<double(const RealVector&)>& f,
                           const ExecPolicy& policy) {
  if (grid_per_dim < 2) throw PreconditionError("grid_per_dim must be >= 2");
  const auto coarse = ball_grid(dim, lambda, grid_per_dim);
  const auto cmax = parallel_max(coarse.size(), policy, [&](std::size_t i) { return f(coarse[i]); });

  const double h = 2.0 * lambda / static_cast<double>(grid_per_dim - 1);
  const auto fine = refinement_points(coarse[cmax.index], lambda, h);
  const auto fmax = parallel_max(fine.size(), policy, [&](std::size_t i) { return f(fine[i]); });

  NormEstimate est;
  est.samples = coarse.size() + fine.size();
  if (fmax.value > cmax.value) {
    est.value = fmax.value;
    est.argmax = fine[fmax.index];
  } else {
    est.value = cmax.value;
    est.argmax = coarse[cmax.index];
  }
  return est;
}

NormEstimate one_step_norm(const WalkSpec& spec, const BMatrices& bm, double lambda,
                           int grid_per_dim, const ExecPolicy& policy) {
  check_cutoff(lambda, spec.scale().a);
  return sup_over_ball(
      spec.dim(), lambda, grid_per_dim,
      [&](const RealVector& p) { return spectral_norm(step_difference(spec, bm, p, 1)); }, policy);
}

double massless_one_step_bound(std::size_t coin_count, double max_q, double lambda_a) {
  const double alpha = static_cast<double>(coin_count) * max_q * lambda_a;
  return 2.0 * (std::numbers::e - 2.0) * alpha * alpha;
}

BoundReport massless_bound_report(const WalkSpec& spec, const BMatrices& bm, double lambda,
                             int grid_per_dim, const ExecPolicy& policy) {
  if (!bm.massless()) throw PreconditionError("the massless one-step bound needs W = 1");
  BoundReport report;
  report.coin_count = spec.nonzero_coin_count();
  report.max_q = spec.max_displacement_norm();
  report.lambda = lambda;
  report.a = spec.scale().a;
  const double lambda_a = lambda * report.a;
  const double limit = 1.0 / (static_cast<double>(report.coin_count) * report.max_q);
  if (lambda_a > limit) {
    std::ostringstream msg;
    msg << "lambda a = " << lambda_a << " exceeds 1/(K q) = " << limit;
    throw RangeError(msg.str());
  }
  report.analytic = massless_one_step_bound(report.coin_count, report.max_q, lambda_a);
  report.measured = one_step_norm(spec, bm, lambda, grid_per_dim, policy).value;
  report.satisfied = report.measured <= report.analytic;
  return report;
}

long steps_for_time(double t, double dt) {
  const double ratio = t / dt;
  const double n = std::round(ratio);
  if (!(n >= 1.0) || std::abs(ratio - n) > 1e-9 * std::max(1.0, n)) {
    std::ostringstream msg;
    msg << "t = " << t << " is not a positive integer multiple of dt = " << dt;
    throw PreconditionError(msg.str());
  }
  return static_cast<long>(n);
}

NStepReport n_step_norm(const WalkSpec& spec, const BMatrices& bm, double lambda, double t,
                        int grid_per_dim, const ExecPolicy& policy) {
  NStepReport report;
  report.steps = steps_for_time(t, spec.scale().dt);
  report.one_step = one_step_norm(spec, bm, lambda, grid_per_dim, policy).value;
  if (report.steps == 1) {
    report.measured = report.one_step;
  } else {
    const long n = report.steps;
    report.measured =
        sup_over_ball(
            spec.dim(), lambda, grid_per_dim,
            [&](const RealVector& p) { return spectral_norm(step_difference(spec, bm, p, n)); },
            policy)
            .value;
  }
  report.chain_holds = report.measured <= static_cast<double>(report.steps) * report.one_step;
  return report;
}

PowerLaw fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("power-law fit needs >= 2 paired points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(y[i] > 0.0) || !(x[i] > 0.0)) throw FitUndefinedError("power-law fit on a non-positive value");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double cov = sxy - sx * sy / n;
  const double varx = sxx - sx * sx / n;
  const double vary = syy - sy * sy / n;
  PowerLaw fit;
  fit.exponent = cov / varx;
  fit.intercept = (sy - fit.exponent * sx) / n;
  fit.r_squared = vary > 0.0 ? (cov * cov) / (varx * vary) : 1.0;
  return fit;
}

ScalingFit scaling_fit(const WalkFamily& family, const StudyConfig& config, const ExecPolicy& policy) {
  if (config.a_schedule.size() < 4) throw PreconditionError("scaling fit needs >= 4 lattice spacings");
  config.validate();
  ScalingFit fit;
  std::vector<double> xs, ys;
  for (double a : config.a_schedule) {
    const WalkSpec spec = family(LatticeScale::from_ratio(a, config.ratio));
    const BMatrices bm = continuum_limit(spec);
    const double norm = one_step_norm(spec, bm, config.lambda, config.grid_per_dim, policy).value;
    fit.points.push_back({a, spec.scale().dt, norm});
    xs.push_back(a);
    ys.push_back(norm);
  }
  for (const auto& pt : fit.points) {
    if (pt.norm <= kExactNormThreshold) {
      throw FitUndefinedError("one-step norm vanishes: the walk is exactly its continuum limit");
    }
  }
  const PowerLaw law = fit_power_law(xs, ys);
  fit.exponent = law.exponent;
  fit.r_squared = law.r_squared;
  return fit;
}

std::vector<CutoffSweepRow> cutoff_sweep(const WalkFamily& family, const StudyConfig& config,
                                         const ExecPolicy& policy) {
  if (config.a_schedule.empty()) throw PreconditionError("cutoff sweep needs a lattice-spacing schedule");
  const double a0 = config.a_schedule.front();
  std::vector<CutoffSweepRow> rows;
  for (double a : config.a_schedule) {
    CutoffSweepRow row;
    row.a = a;
    row.lambda = config.lambda * std::pow(a / a0, -0.25);
    const WalkSpec spec = family(LatticeScale::from_ratio(a, config.ratio));
    const BMatrices bm = continuum_limit(spec);
    const auto report = n_step_norm(spec, bm, row.lambda, config.t, config.grid_per_dim, policy);
    row.steps = report.steps;
    row.n_step = report.measured;
    row.lambda_squared_a = row.lambda * row.lambda * a;
    rows.push_back(row);
  }
  return rows;
}

DispersionTable dispersion(const WalkSpec& spec, const BMatrices& bm, const RealVector& from,
                           const RealVector& to, int samples) {
  if (from.size() != spec.dim() || to.size() != spec.dim()) {
    throw StructuralError("dispersion path endpoints have the wrong dimension");
  }
  if (samples < 1) throw PreconditionError("dispersion needs at least one sample");
  DispersionTable table;
  table.dim = spec.dim();
  table.internal_dim = spec.internal_dim();
  const double dt = spec.scale().dt;
  for (int j = 0; j < samples; ++j) {
    DispersionRow row;
    row.s = samples == 1 ? 0.0 : static_cast<double>(j) / (samples - 1);
    row.p = from + row.s * (to - from);
    row.discrete = eigenphases(momentum_symbol(spec, row.p));
    for (auto& theta : row.discrete) theta /= dt;
    row.continuum = hermitian_eigenvalues(hamiltonian_symbol(bm, row.p));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace weylwalk
