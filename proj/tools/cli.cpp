#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weylwalk/canonical.hpp"
#include "weylwalk/continuum.hpp"
#include "weylwalk/errors.hpp"
#include "weylwalk/evolve.hpp"
#include "weylwalk/io.hpp"
#include "weylwalk/walk.hpp"
#include "weylwalk/zoo.hpp"

namespace weylwalk::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_number(const std::string& text, const std::string& flag) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [end, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || end != last || !std::isfinite(value)) {
    throw UsageError(flag + ": '" + text + "' is not a decimal number");
  }
  return value;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    values.push_back(parse_number(text.substr(start, comma - start), flag));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

RealVector parse_vector(const std::string& text, const std::string& flag, int dim) {
  const auto values = parse_list(text, flag);
  if (static_cast<int>(values.size()) != dim) {
    throw UsageError(flag + " needs " + std::to_string(dim) + " comma-separated components");
  }
  return Eigen::Map<const RealVector>(values.data(), dim);
}

std::string fmt(double v, int digits = 10) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

std::string fmt_vector(const RealVector& v, int digits = 10) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt(v(i), digits);
  }
  return s + ")";
}

void print_matrix(std::ostream& out, const std::string& label, const Matrix& m) {
  out << label << ":\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "  [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ", ";
      const Complex z = m(r, c);
      out << fmt(std::abs(z.real()) < 1e-15 ? 0.0 : z.real(), 8);
      const double im = std::abs(z.imag()) < 1e-15 ? 0.0 : z.imag();
      out << (im < 0 ? " - " : " + ") << fmt(std::abs(im), 8) << "i";
    }
    out << "]\n";
  }
}

void print_real_matrix(std::ostream& out, const std::string& label, const RealMatrix& m) {
  out << label << ":\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) out << "  " << fmt_vector(m.row(r).transpose(), 10) << "\n";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << contents;
  if (!f) throw Error("failed writing " + path);
}

// Writes CSV to --out when given, otherwise to stdout.
void emit(std::ostream& out, const std::string& path, const std::string& csv) {
  if (path.empty()) {
    out << csv;
  } else {
    write_file(path, csv);
    out << "wrote " << path << "\n";
  }
}

struct Options {
  std::string file;
  std::string out_path;
  std::string tol = "1e-10";
  std::string lambda;
  int grid = 64;
  std::string a;
  std::string dt;
  std::string ratio = "1";
  long steps = 0;
  std::string p;
  std::string p_from;
  std::string a_schedule;
  std::string name;
  std::string mass = "0";
  std::string sigma;
  std::string x0;
};

double tolerance(const Options& o) {
  const double tol = parse_number(o.tol, "--tol");
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
  return tol;
}

WalkSpec load(const Options& o) {
  WalkSpec spec = io::load_walk(o.file);
  if (o.a.empty() && o.dt.empty()) return spec;
  LatticeScale scale = spec.scale();
  if (!o.a.empty()) scale.a = parse_number(o.a, "--a");
  if (!o.dt.empty()) scale.dt = parse_number(o.dt, "--dt");
  return spec.with_scale(scale);
}

double require_lambda(const Options& o) {
  if (o.lambda.empty()) throw UsageError("--lambda is required");
  return parse_number(o.lambda, "--lambda");
}

int cmd_validate(const Options& o, std::ostream& out) {
  const WalkSpec spec = load(o);
  const auto report = validate_unitarity(spec, tolerance(o));
  out << "walk: d = " << spec.dim() << ", k = " << spec.internal_dim() << ", coins = " << spec.coins().size()
      << "\n";
  out << "completeness residual ||sum A^dagger A - 1|| = " << fmt(report.completeness, 6) << "\n";
  for (const auto& r : report.offsets) {
    out << "offset " << r.offset.to_string() << " residual = " << fmt(r.residual, 6) << "\n";
  }
  out << "max residual = " << fmt(report.max_residual, 6) << " (tol " << fmt(report.tolerance, 6) << ")\n";
  out << (report.passed ? "unitary: PASS" : "unitary: FAIL") << "\n";
  return report.passed ? kExitOk : kExitCheckFailed;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  const double tol = tolerance(o);
  const WalkSpec spec = load(o);
  const auto decomp = mass_decompose(spec, tol);
  const auto bm = b_matrices(decomp, spec);
  print_matrix(out, "W = sum_q A_q", decomp.coin_sum);
  out << "massless: " << (decomp.massless ? "true" : "false") << "\n";
  if (decomp.massless && decomp.global_phase != 0.0) {
    out << "global phase: " << fmt(decomp.global_phase) << "\n";
  }
  if (decomp.mass) print_matrix(out, "M = (i/dt) log W", *decomp.mass);
  out << "a/dt = " << fmt(bm.speed) << "\n";
  for (int i = 0; i < bm.dim(); ++i) print_matrix(out, "B_" + std::to_string(i + 1), bm.b[static_cast<std::size_t>(i)]);
  const double defect = hermiticity_defect(bm);
  out << "max ||B_i - B_i^dagger|| = " << fmt(defect, 6) << "\n";
  return defect <= 1e-8 ? kExitOk : kExitCheckFailed;
}

std::vector<RealVector> sample_momenta(int dim, int count) {
  // Fixed low-discrepancy samples so the printed residual is reproducible.
  std::vector<RealVector> samples;
  for (int j = 1; j <= count; ++j) {
    RealVector p(dim);
    for (int i = 0; i < dim; ++i) {
      const double frac = std::fmod(j * (std::numbers::sqrt2 + i * std::numbers::phi), 1.0);
      p(i) = 2.0 * frac - 1.0;
    }
    samples.push_back(p);
  }
  return samples;
}

int cmd_canonicalize(const Options& o, std::ostream& out) {
  const double tol = tolerance(o);
  const WalkSpec spec = load(o);
  const auto bm = continuum_limit(spec, tol);
  const auto pd = pauli_decompose(bm);
  const auto cf = canonicalize(pd, tol);
  const double residual = weyl_residual(cf, bm, sample_momenta(spec.dim(), 100), true);
  out << "a/dt = " << fmt(bm.speed) << "\n";
  out << "gamma = " << fmt_vector(cf.gamma / bm.speed) << " x (a/dt)\n";
  out << "handedness: " << to_string(cf.handedness) << "\n";
  out << "effective dimension: " << cf.effective_dim << "\n";
  out << "beta = " << fmt_vector(cf.beta) << "\n";
  print_real_matrix(out, "spatial rotation", cf.spatial_rotation);
  print_real_matrix(out, "spin rotation", cf.spin_rotation);
  if (bm.mass) print_matrix(out, "mass M", *bm.mass);
  out << "weyl residual = " << fmt(residual, 6) << "\n";
  return residual <= 1e-8 ? kExitOk : kExitCheckFailed;
}

int cmd_trace_test(const Options& o, std::ostream& out) {
  const WalkSpec spec = load(o);
  if (o.p.empty()) throw UsageError("--p is required");
  const RealVector p = parse_vector(o.p, "--p", spec.dim());
  const auto bm = continuum_limit(spec, tolerance(o));
  const double value = lorentz_trace_test(bm, p);
  out << "tr(H^2) - k|p|^2 = " << std::fixed << std::setprecision(10) << value << std::defaultfloat << "\n";
  return kExitOk;
}

int cmd_dispersion(const Options& o, std::ostream& out) {
  const WalkSpec spec = load(o);
  if (o.p.empty()) throw UsageError("--p is required (path end point)");
  const RealVector to = parse_vector(o.p, "--p", spec.dim());
  const RealVector from = o.p_from.empty() ? RealVector(-to) : parse_vector(o.p_from, "--p-from", spec.dim());
  const int samples = o.steps > 0 ? static_cast<int>(o.steps) : 101;
  const auto bm = continuum_limit(spec, tolerance(o));
  emit(out, o.out_path, io::emit_csv(dispersion(spec, bm, from, to, samples)));
  return kExitOk;
}

int cmd_bound_check(const Options& o, std::ostream& out, const ExecPolicy& policy) {
  const WalkSpec spec = load(o);
  const auto bm = continuum_limit(spec, tolerance(o));
  const auto report = massless_bound_report(spec, bm, require_lambda(o), o.grid, policy);
  out << "K = " << report.coin_count << ", qmax = " << fmt(report.max_q) << ", lambda a = "
      << fmt(report.lambda * report.a) << "\n";
  out << "measured one-step norm = " << fmt(report.measured, 8) << "\n";
  out << "analytic bound 2(e-2)(K q lambda a)^2 = " << fmt(report.analytic, 8) << "\n";
  out << (report.satisfied ? "bound: PASS" : "bound: FAIL") << "\n";
  if (!o.out_path.empty()) emit(out, o.out_path, io::emit_csv(report));
  return report.satisfied ? kExitOk : kExitCheckFailed;
}

int cmd_scaling_study(const Options& o, std::ostream& out, const ExecPolicy& policy) {
  WalkFamily family;
  if (!o.name.empty()) {
    const auto& entry = zoo::find(o.name);
    const double mass = parse_number(o.mass, "--mass");
    family = [&entry, mass](const LatticeScale& s) { return entry.build(mass, s); };
  } else if (!o.file.empty()) {
    const WalkSpec base = load(o);
    family = [base](const LatticeScale& s) { return base.with_scale(s); };
  } else {
    throw UsageError("scaling-study needs a walk file or --name");
  }
  if (o.a_schedule.empty()) throw UsageError("--a-schedule is required");
  StudyConfig config;
  config.lambda = require_lambda(o);
  config.grid_per_dim = o.grid;
  config.ratio = parse_number(o.ratio, "--ratio");
  config.a_schedule = parse_list(o.a_schedule, "--a-schedule");
  try {
    const auto fit = scaling_fit(family, config, policy);
    for (const auto& pt : fit.points) {
      out << "a = " << fmt(pt.a) << ", dt = " << fmt(pt.dt) << ", one-step norm = " << fmt(pt.norm, 8) << "\n";
    }
    out << "exponent = " << fmt(fit.exponent, 8) << ", r^2 = " << fmt(fit.r_squared, 8) << "\n";
    if (!o.out_path.empty()) emit(out, o.out_path, io::emit_csv(fit));
  } catch (const FitUndefinedError& e) {
    out << "exact: " << e.what() << "\n";
  }
  return kExitOk;
}

int cmd_evolve(const Options& o, std::ostream& out, const ExecPolicy& policy) {
  const WalkSpec spec = load(o);
  const auto bm = continuum_limit(spec, tolerance(o));
  const int d = spec.dim();
  const double a = spec.scale().a;
  if (o.steps <= 0) throw UsageError("--steps must be a positive integer");
  WavePacket packet;
  packet.mean_momentum = o.p.empty() ? RealVector(RealVector::Zero(d)) : parse_vector(o.p, "--p", d);
  packet.center = o.x0.empty() ? RealVector(RealVector::Zero(d)) : parse_vector(o.x0, "--x0", d);
  packet.width = o.sigma.empty() ? 20.0 * a : parse_number(o.sigma, "--sigma");
  packet.internal_state = positive_energy_state(bm, packet.mean_momentum);
  PacketOptions options;
  if (!o.lambda.empty()) options.lambda = parse_number(o.lambda, "--lambda");
  options.norm_grid = o.grid;
  const double t = static_cast<double>(o.steps) * spec.scale().dt;
  const auto trace = evolve_packet(spec, bm, packet, t, options, policy);
  const RealVector v = fitted_velocity(trace);
  out << "steps = " << o.steps << ", box = " << trace.box_sites << " sites, momentum points = "
      << trace.momentum_points << "\n";
  out << "mean velocity (discrete) = " << fmt_vector(v, 8) << ", |v| / (a/dt) = " << fmt(v.norm() / bm.speed, 8)
      << "\n";
  out << "spread: " << fmt(trace.steps.front().spread_discrete, 8) << " -> "
      << fmt(trace.steps.back().spread_discrete, 8) << "\n";
  out << "final distance = " << fmt(trace.final_distance, 8) << ", bound = " << fmt(trace.distance_bound, 8)
      << " (lambda " << fmt(trace.lambda, 8) << ", out-of-band weight " << fmt(trace.out_of_band_weight, 6)
      << ")\n";
  out << (trace.bound_holds ? "distance bound: PASS" : "distance bound: FAIL") << "\n";
  if (!o.out_path.empty()) emit(out, o.out_path, io::emit_csv(trace));
  return trace.bound_holds ? kExitOk : kExitCheckFailed;
}

int cmd_zoo_list(std::ostream& out) {
  for (const auto& e : zoo::entries()) {
    out << std::left << std::setw(14) << e.name << (e.massive ? " [--mass] " : "          ") << e.summary << "\n";
  }
  return kExitOk;
}

int cmd_zoo_export(const Options& o, std::ostream& out) {
  if (o.name.empty()) throw UsageError("--name is required");
  if (o.out_path.empty()) throw UsageError("--out is required");
  const auto& entry = zoo::find(o.name);
  LatticeScale scale;
  if (!o.a.empty()) scale.a = parse_number(o.a, "--a");
  if (!o.dt.empty()) scale.dt = parse_number(o.dt, "--dt");
  const WalkSpec spec = entry.build(parse_number(o.mass, "--mass"), scale);
  write_file(o.out_path, io::serialize_walk(spec));
  out << "wrote " << o.name << " to " << o.out_path << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"weylwalk: continuum limits of causal quantum walks"};
  app.name("weylwalk");
  app.require_subcommand(1, 1);
  Options o;

  auto file_arg = [&](CLI::App* cmd) { cmd->add_option("file", o.file, "walk definition (weylwalk/1 JSON)")->required(); };
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", o.tol, "structural tolerance")->capture_default_str();
    cmd->add_option("--a", o.a, "override lattice spacing");
    cmd->add_option("--dt", o.dt, "override time step");
  };

  auto* validate = app.add_subcommand("validate", "check the unitarity conditions of a walk");
  file_arg(validate);
  common(validate);

  auto* decompose = app.add_subcommand("decompose", "split off W and print B matrices");
  file_arg(decompose);
  common(decompose);

  auto* canonical = app.add_subcommand("canonicalize", "reduce a two-level walk to Weyl form");
  file_arg(canonical);
  common(canonical);

  auto* trace = app.add_subcommand("trace-test", "tr(H^2) - k|p|^2 at one momentum");
  file_arg(trace);
  common(trace);
  trace->add_option("--p", o.p, "momentum X,Y,Z");

  auto* disp = app.add_subcommand("dispersion", "eigenphases of U(p)/dt against H(p) along a segment");
  file_arg(disp);
  common(disp);
  disp->add_option("--p", o.p, "segment end point (start defaults to -p)");
  disp->add_option("--p-from", o.p_from, "segment start point");
  disp->add_option("--steps", o.steps, "number of samples along the segment");
  disp->add_option("--out", o.out_path, "CSV output path");

  auto* bound = app.add_subcommand("bound-check", "one-step norm against the massless analytic bound");
  file_arg(bound);
  common(bound);
  bound->add_option("--lambda", o.lambda, "momentum cutoff");
  bound->add_option("--grid", o.grid, "samples per dimension")->capture_default_str();
  bound->add_option("--out", o.out_path, "CSV output path");

  auto* scaling = app.add_subcommand("scaling-study", "fit one-step norm ~ a^exponent");
  scaling->add_option("file", o.file, "walk definition; coins are kept fixed across scales");
  common(scaling);
  scaling->add_option("--name", o.name, "zoo walk rebuilt at each scale");
  scaling->add_option("--mass", o.mass, "mass for massive zoo walks");
  scaling->add_option("--lambda", o.lambda, "momentum cutoff");
  scaling->add_option("--grid", o.grid, "samples per dimension")->capture_default_str();
  scaling->add_option("--ratio", o.ratio, "fixed a/dt")->capture_default_str();
  scaling->add_option("--a-schedule", o.a_schedule, "descending lattice spacings, comma separated");
  scaling->add_option("--out", o.out_path, "CSV output path");

  auto* evolve = app.add_subcommand("evolve", "evolve a Gaussian packet under the walk and its continuum limit");
  file_arg(evolve);
  common(evolve);
  evolve->add_option("--steps", o.steps, "number of time steps");
  evolve->add_option("--p", o.p, "mean momentum");
  evolve->add_option("--x0", o.x0, "initial center");
  evolve->add_option("--sigma", o.sigma, "position width (default 20 a)");
  evolve->add_option("--lambda", o.lambda, "cutoff for the distance bound");
  evolve->add_option("--grid", o.grid, "samples per dimension for the one-step norm")->capture_default_str();
  evolve->add_option("--out", o.out_path, "CSV output path");

  auto* zoo_cmd = app.add_subcommand("zoo", "built-in walks");
  zoo_cmd->require_subcommand(1, 1);
  auto* zoo_list = zoo_cmd->add_subcommand("list", "list built-in walks");
  auto* zoo_export = zoo_cmd->add_subcommand("export", "write a built-in walk to a file");
  zoo_export->add_option("--name", o.name, "walk name");
  zoo_export->add_option("--mass", o.mass, "mass for massive walks")->capture_default_str();
  zoo_export->add_option("--a", o.a, "lattice spacing");
  zoo_export->add_option("--dt", o.dt, "time step");
  zoo_export->add_option("--out", o.out_path, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    const ExecPolicy policy = ExecPolicy::from_environment();
    if (o.grid < 2) throw UsageError("--grid must be >= 2");
    if (*validate) return cmd_validate(o, out);
    if (*decompose) return cmd_decompose(o, out);
    if (*canonical) return cmd_canonicalize(o, out);
    if (*trace) return cmd_trace_test(o, out);
    if (*disp) return cmd_dispersion(o, out);
    if (*bound) return cmd_bound_check(o, out, policy);
    if (*scaling) return cmd_scaling_study(o, out, policy);
    if (*evolve) return cmd_evolve(o, out, policy);
    if (*zoo_list) return cmd_zoo_list(out);
    if (*zoo_export) return cmd_zoo_export(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace weylwalk::cli
