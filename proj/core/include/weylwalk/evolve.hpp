#pragma once

#include <functional>
#include <span>
#include <vector>

#include "weylwalk/continuum.hpp"
#include "weylwalk/parallel.hpp"

namespace weylwalk {

/// Parameters shared by the convergence studies.
struct StudyConfig {
  double lambda = 1.0;             // momentum cutoff
  int grid_per_dim = 64;
  double t = 0.0;                  // total time for n-step studies
  double ratio = 1.0;              // a / dt, held fixed across the schedule
  std::vector<double> a_schedule;  // descending lattice spacings

  /// Throws CutoffError if lambda >= pi/a for some a, PreconditionError if
  /// grid_per_dim < 16 or the schedule is not strictly descending.
  void validate() const;
};

struct NormEstimate {
  double value = 0.0;
  RealVector argmax;
  std::size_t samples = 0;
};

/// Throws CutoffError unless 0 < lambda < pi/a.
void check_cutoff(double lambda, double a);

/// Supremum of f over the ball |p| <= lambda in `dim` dimensions: uniform
/// grid_per_dim^dim grid, then one refinement pass at a third of the grid
/// spacing around the maximiser (candidates outside the ball are projected
/// radially onto its surface).
NormEstimate sup_over_ball(int dim, double lambda, int grid_per_dim,
                           const std::function<double(const RealVector&)>& f,
                           const ExecPolicy& policy = {});

/// sup_{|p| <= lambda} || exp(-i H(p) dt) - U(p) ||_2.
NormEstimate one_step_norm(const WalkSpec& spec, const BMatrices& bm, double lambda,
                           int grid_per_dim = 64, const ExecPolicy& policy = {});

struct BoundReport {
  double measured = 0.0;
  double analytic = 0.0;
  std::size_t coin_count = 0;  // K
  double max_q = 0.0;          // largest |q|
  double lambda = 0.0;
  double a = 0.0;
  bool satisfied = false;
};

/// 2 (e - 2) (K q lambda a)^2.
double massless_one_step_bound(std::size_t coin_count, double max_q, double lambda_a);

/// Compares the measured one-step norm with the massless bound. Throws
/// PreconditionError for massive walks and RangeError when lambda a > 1/(K q).
BoundReport massless_bound_report(const WalkSpec& spec, const BMatrices& bm, double lambda,
                             int grid_per_dim = 64, const ExecPolicy& policy = {});

struct NStepReport {
  double measured = 0.0;  // sup || exp(-i H t) - U^n ||
  double one_step = 0.0;
  long steps = 0;
  bool chain_holds = false;  // measured <= n * one_step
};

/// Throws PreconditionError unless t / dt is a positive integer.
long steps_for_time(double t, double dt);

NStepReport n_step_norm(const WalkSpec& spec, const BMatrices& bm, double lambda, double t,
                        int grid_per_dim = 64, const ExecPolicy& policy = {});

/// A walk family parameterised by its lattice scale (massive walks depend on dt).
using WalkFamily = std::function<WalkSpec(const LatticeScale&)>;

struct ScalingPoint {
  double a = 0.0;
  double dt = 0.0;
  double norm = 0.0;
};

struct ScalingFit {
  double exponent = 0.0;
  double r_squared = 0.0;
  std::vector<ScalingPoint> points;
};

struct PowerLaw {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least squares of log y against log x. Throws FitUndefinedError on a zero y.
PowerLaw fit_power_law(std::span<const double> x, std::span<const double> y);

/// Norms below this are treated as exact agreement.
inline constexpr double kExactNormThreshold = 1e-13;

/// Slope of log(one_step_norm) against log(a) over config.a_schedule at fixed
/// ratio and lambda. Needs four or more points. Throws FitUndefinedError (exact)
/// when some norm is numerically zero.
ScalingFit scaling_fit(const WalkFamily& family, const StudyConfig& config,
                       const ExecPolicy& policy = {});

struct CutoffSweepRow {
  double a = 0.0;
  double lambda = 0.0;
  long steps = 0;
  double n_step = 0.0;
  double lambda_squared_a = 0.0;
};

/// Study mode with lambda = lambda0 * (a / a0)^(-1/4): the cutoff grows while
/// lambda^2 a shrinks. No threshold is attached.
std::vector<CutoffSweepRow> cutoff_sweep(const WalkFamily& family, const StudyConfig& config,
                                         const ExecPolicy& policy = {});

struct DispersionRow {
  double s = 0.0;  // path parameter in [0, 1]
  RealVector p;
  std::vector<double> discrete;   // eigenphases of U(p) / dt, ascending
  std::vector<double> continuum;  // eigenvalues of H(p), ascending
};

struct DispersionTable {
  int dim = 0;
  int internal_dim = 0;
  std::vector<DispersionRow> rows;
};

/// Samples the straight segment from `from` to `to` at `samples` points.
DispersionTable dispersion(const WalkSpec& spec, const BMatrices& bm, const RealVector& from,
                           const RealVector& to, int samples);

struct WavePacket {
  RealVector center;            // x0
  RealVector mean_momentum;     // p0
  double width = 0.0;           // sigma_x, position-space standard deviation per axis
  ComplexVector internal_state; // unit norm
};

struct PacketStep {
  long step = 0;
  double time = 0.0;
  RealVector mean_discrete;
  RealVector mean_continuum;
  double spread_discrete = 0.0;
  double spread_continuum = 0.0;
  double norm_discrete = 0.0;
  double norm_continuum = 0.0;
};

struct PacketTrace {
  int dim = 0;
  std::vector<PacketStep> steps;
  double final_distance = 0.0;           // || psi_discrete - psi_continuum ||
  double out_of_band_weight = 0.0;       // sum_{|p| > lambda} |psi_0(p)|^2
  double lambda = 0.0;
  double one_step = 0.0;                 // one_step_norm(lambda)
  double distance_bound = 0.0;           // n * one_step + 2 sqrt(out_of_band_weight)
  bool bound_holds = false;
  int box_sites = 0;
  std::size_t momentum_points = 0;
};

struct PacketOptions {
  double lambda = 0.0;       // cutoff for the distance bound
  int box_sites = 0;         // periodic box edge in sites; 0 picks one
  int norm_grid = 32;        // grid for one_step_norm(lambda)
  double window_widths = 6;  // momentum window half-width in units of 1/sigma_x
};

/// Mean velocity from a least-squares fit of the mean position against time.
RealVector fitted_velocity(const PacketTrace& trace, bool discrete = true);

/// Evolves a Gaussian packet under U(p)^n and exp(-i H(p) t) on a periodic
/// momentum grid. Position moments come from exact momentum derivatives.
/// Throws PreconditionError when the packet spans fewer than 10 sites, the
/// box is smaller than 20 widths, or t / dt is not an integer.
PacketTrace evolve_packet(const WalkSpec& spec, const BMatrices& bm, const WavePacket& packet,
                          double t, const PacketOptions& options, const ExecPolicy& policy = {});

/// Internal state with the largest eigenvalue of H(p0).
ComplexVector positive_energy_state(const BMatrices& bm, const RealVector& p0);

}  // namespace weylwalk
