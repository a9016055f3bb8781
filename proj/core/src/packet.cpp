#include "weylwalk/evolve.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "weylwalk/errors.hpp"

namespace weylwalk {

namespace {

// (exp(-i x tau) - exp(-i y tau)) / (x - y), stable as x -> y.
Complex divided_exponential(double x, double y, double tau) {
  const double half = 0.5 * (x - y) * tau;
  const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
  return -kI * tau * std::exp(-kI * 0.5 * (x + y) * tau) * sinc;
}

struct MomentumGrid {
  std::vector<RealVector> points;
  int box_sites = 0;
};

MomentumGrid packet_grid(const WalkSpec& spec, const WavePacket& packet, long steps,
                         const PacketOptions& options) {
  const double a = spec.scale().a;
  const int d = spec.dim();
  const double sigma = packet.width;

  const int min_box = static_cast<int>(std::ceil(20.0 * sigma / a));
  MomentumGrid grid;
  if (options.box_sites > 0) {
    if (options.box_sites < min_box) {
      throw PreconditionError("periodic box must span at least 20 packet widths (" +
                              std::to_string(min_box) + " sites)");
    }
    grid.box_sites = options.box_sites;
  } else {
    const double drift = 4.0 * static_cast<double>(steps) * spec.max_displacement_norm();
    grid.box_sites = min_box + static_cast<int>(std::ceil(drift));
  }

  const double dp = 2.0 * std::numbers::pi / (grid.box_sites * a);
  const double half_width = options.window_widths / sigma;
  std::vector<long> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const double p0 = packet.mean_momentum(i);
    if (std::abs(p0) + half_width >= std::numbers::pi / a) {
      throw PreconditionError("packet momentum window leaves the Brillouin zone");
    }
    lo[static_cast<std::size_t>(i)] = static_cast<long>(std::ceil((p0 - half_width) / dp));
    hi[static_cast<std::size_t>(i)] = static_cast<long>(std::floor((p0 + half_width) / dp));
  }

  std::vector<long> idx = lo;
  RealVector p(d);
  while (true) {
    for (int i = 0; i < d; ++i) p(i) = dp * static_cast<double>(idx[static_cast<std::size_t>(i)]);
    grid.points.push_back(p);
    int axis = 0;
    while (axis < d && ++idx[static_cast<std::size_t>(axis)] > hi[static_cast<std::size_t>(axis)]) {
      idx[static_cast<std::size_t>(axis)] = lo[static_cast<std::size_t>(axis)];
      ++axis;
    }
    if (axis == d) break;
  }
  return grid;
}

// psi and its momentum derivatives at one grid point.
struct LocalState {
  ComplexVector psi;
  std::vector<ComplexVector> dpsi;
};

// Per-point contributions: norm, then (mean, second moment) per axis.
void moments(const LocalState& s, double* out) {
  out[0] = s.psi.squaredNorm();
  for (std::size_t i = 0; i < s.dpsi.size(); ++i) {
    out[1 + 2 * i] = -s.psi.dot(s.dpsi[i]).imag();  // Re(i psi^dagger dpsi)
    out[2 + 2 * i] = s.dpsi[i].squaredNorm();
  }
}

void summarize(const std::vector<double>& contrib, std::size_t stride, int d, RealVector& mean,
               double& spread, double& norm) {
  std::vector<double> total(stride, 0.0);
  const std::size_t n = contrib.size() / stride;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < stride; ++c) total[c] += contrib[j * stride + c];
  }
  norm = std::sqrt(total[0]);
  mean = RealVector(d);
  double variance = 0.0;
  for (int i = 0; i < d; ++i) {
    mean(i) = total[1 + 2 * static_cast<std::size_t>(i)];
    variance += total[2 + 2 * static_cast<std::size_t>(i)] - mean(i) * mean(i);
  }
  spread = std::sqrt(std::max(0.0, variance));
}

}  // namespace

ComplexVector positive_energy_state(const BMatrices& bm, const RealVector& p0) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hamiltonian_symbol(bm, p0));
  return eig.eigenvectors().col(eig.eigenvectors().cols() - 1);
}

RealVector fitted_velocity(const PacketTrace& trace, bool discrete) {
  if (trace.steps.size() < 2) throw PreconditionError("velocity fit needs at least two steps");
  const auto d = (discrete ? trace.steps.front().mean_discrete : trace.steps.front().mean_continuum).size();
  RealVector v(d);
  const auto n = static_cast<double>(trace.steps.size());
  for (Eigen::Index i = 0; i < d; ++i) {
    double st = 0, sx = 0, stt = 0, stx = 0;
    for (const auto& s : trace.steps) {
      const double x = discrete ? s.mean_discrete(i) : s.mean_continuum(i);
      st += s.time;
      sx += x;
      stt += s.time * s.time;
      stx += s.time * x;
    }
    v(i) = (stx - st * sx / n) / (stt - st * st / n);
  }
  return v;
}

PacketTrace evolve_packet(const WalkSpec& spec, const BMatrices& bm, const WavePacket& packet,
                          double t, const PacketOptions& options, const ExecPolicy& policy) {
  const int d = spec.dim();
  const auto k = spec.internal_dim();
  const double a = spec.scale().a;
  const double dt = spec.scale().dt;
  if (packet.center.size() != d || packet.mean_momentum.size() != d) {
    throw StructuralError("packet vectors have the wrong dimension");
  }
  if (packet.internal_state.size() != k) throw StructuralError("packet internal state has the wrong dimension");
  if (std::abs(packet.internal_state.norm() - 1.0) > 1e-8) {
    throw PreconditionError("packet internal state must have unit norm");
  }
  if (!(packet.width >= 10.0 * a)) throw PreconditionError("packet must span at least 10 lattice sites");
  const long steps = steps_for_time(t, dt);

  const MomentumGrid grid = packet_grid(spec, packet, steps, options);
  const auto& pts = grid.points;
  const std::size_t npts = pts.size();
  const double sigma2 = packet.width * packet.width;

  // Initial amplitudes exp(-|p - p0|^2 sigma^2 - i p.x0) chi, normalized on the grid.
  std::vector<double> weight(npts);
  double total = 0.0;
  for (std::size_t j = 0; j < npts; ++j) {
    weight[j] = std::exp(-2.0 * (pts[j] - packet.mean_momentum).squaredNorm() * sigma2);
    total += weight[j];
  }
  const double scale = 1.0 / std::sqrt(total);

  std::vector<LocalState> initial(npts), discrete(npts), continuum(npts);
  for (std::size_t j = 0; j < npts; ++j) {
    const RealVector dp = pts[j] - packet.mean_momentum;
    const Complex amp = scale * std::exp(-dp.squaredNorm() * sigma2 - kI * pts[j].dot(packet.center));
    LocalState s;
    s.psi = amp * packet.internal_state;
    for (int i = 0; i < d; ++i) s.dpsi.push_back((-kI * packet.center(i) - 2.0 * sigma2 * dp(i)) * s.psi);
    initial[j] = s;
  }
  discrete = initial;
  continuum = initial;

  PacketTrace trace;
  trace.dim = d;
  trace.box_sites = grid.box_sites;
  trace.momentum_points = npts;

  double max_p = 0.0;
  for (const auto& p : pts) max_p = std::max(max_p, p.norm());
  trace.lambda = options.lambda > 0.0 ? options.lambda : std::min(max_p, 0.999 * std::numbers::pi / a);
  for (std::size_t j = 0; j < npts; ++j) {
    if (pts[j].norm() > trace.lambda) trace.out_of_band_weight += initial[j].psi.squaredNorm();
  }
  trace.one_step = one_step_norm(spec, bm, trace.lambda, options.norm_grid, policy).value;

  // Per-point walk symbol, its derivatives, and the Hamiltonian eigensystem.
  struct Cached {
    Matrix u;
    std::vector<Matrix> du;
    Matrix z;
    RealVector energies;
    std::vector<Matrix> b_eigen;  // Z^dagger B_i Z
  };
  std::vector<Cached> cache(npts);
  parallel_for(npts, policy, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      Cached& c = cache[j];
      c.u = momentum_symbol(spec, pts[j]);
      for (int i = 0; i < d; ++i) c.du.push_back(momentum_symbol_derivative(spec, pts[j], i));
      Eigen::SelfAdjointEigenSolver<Matrix> eig(hamiltonian_symbol(bm, pts[j]));
      c.z = eig.eigenvectors();
      c.energies = eig.eigenvalues();
      for (int i = 0; i < d; ++i) c.b_eigen.push_back(c.z.adjoint() * bm.b[static_cast<std::size_t>(i)] * c.z);
    }
  });

  const std::size_t stride = 1 + 2 * static_cast<std::size_t>(d);
  std::vector<double> cd(npts * stride), cc(npts * stride);

  auto record = [&](long step) {
    PacketStep ps;
    ps.step = step;
    ps.time = static_cast<double>(step) * dt;
    summarize(cd, stride, d, ps.mean_discrete, ps.spread_discrete, ps.norm_discrete);
    summarize(cc, stride, d, ps.mean_continuum, ps.spread_continuum, ps.norm_continuum);
    trace.steps.push_back(std::move(ps));
  };

  for (std::size_t j = 0; j < npts; ++j) {
    moments(discrete[j], &cd[j * stride]);
    moments(continuum[j], &cc[j * stride]);
  }
  record(0);

  for (long step = 1; step <= steps; ++step) {
    const double tau = static_cast<double>(step) * dt;
    const Complex global = std::exp(kI * bm.global_phase * static_cast<double>(step));
    parallel_for(npts, policy, [&](std::size_t begin, std::size_t end) {
      Matrix f(k, k);
      ComplexVector phases(k);
      for (std::size_t j = begin; j < end; ++j) {
        const Cached& c = cache[j];

        LocalState& s = discrete[j];
        for (int i = 0; i < d; ++i) {
          s.dpsi[static_cast<std::size_t>(i)] = c.du[static_cast<std::size_t>(i)] * s.psi +
                                                c.u * s.dpsi[static_cast<std::size_t>(i)];
        }
        s.psi = c.u * s.psi;
        moments(s, &cd[j * stride]);

        for (Eigen::Index r = 0; r < k; ++r) phases(r) = global * std::exp(-kI * c.energies(r) * tau);
        const Matrix v = c.z * phases.asDiagonal() * c.z.adjoint();
        for (Eigen::Index r = 0; r < k; ++r) {
          for (Eigen::Index col = 0; col < k; ++col) {
            f(r, col) = global * divided_exponential(c.energies(r), c.energies(col), tau);
          }
        }
        const LocalState& s0 = initial[j];
        LocalState& sc = continuum[j];
        sc.psi = v * s0.psi;
        for (int i = 0; i < d; ++i) {
          const Matrix dv = c.z * f.cwiseProduct(c.b_eigen[static_cast<std::size_t>(i)]) * c.z.adjoint();
          sc.dpsi[static_cast<std::size_t>(i)] = dv * s0.psi + v * s0.dpsi[static_cast<std::size_t>(i)];
        }
        moments(sc, &cc[j * stride]);
      }
    });
    record(step);
  }

  double dist2 = 0.0;
  for (std::size_t j = 0; j < npts; ++j) dist2 += (discrete[j].psi - continuum[j].psi).squaredNorm();
  trace.final_distance = std::sqrt(dist2);
  trace.distance_bound =
      static_cast<double>(steps) * trace.one_step + 2.0 * std::sqrt(trace.out_of_band_weight);
  trace.bound_holds = trace.final_distance <= trace.distance_bound;
  return trace;
}

}  // namespace weylwalk
