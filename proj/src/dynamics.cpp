#include "zzlab/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "zzlab/errors.hpp"
#include "zzlab/parallel.hpp"
#include "zzlab/spectrum.hpp"
#include "zzlab/units.hpp"

namespace zzlab {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

/// psi <- V exp(-i E h) V^T psi for real V, using real products only.
void apply_propagator(const RealMatrix& vectors, const RealVector& energies, double h, ComplexMatrix& psi) {
  RealMatrix re = vectors.transpose() * psi.real();
  RealMatrix im = vectors.transpose() * psi.imag();
  for (Eigen::Index r = 0; r < energies.size(); ++r) {
    const double c = std::cos(energies(r) * h);
    const double s = std::sin(energies(r) * h);
    for (Eigen::Index k = 0; k < re.cols(); ++k) {
      const double a = re(r, k);
      const double b = im(r, k);
      re(r, k) = a * c + b * s;
      im(r, k) = b * c - a * s;
    }
  }
  psi.real() = vectors * re;
  psi.imag() = vectors * im;
}

// Parameters closer than this (GHz) share one eigendecomposition.
constexpr double kReuseTolerance = 1e-12;

bool same_parameters(const DeviceSpec& a, const DeviceSpec& b) {
  for (std::size_t j = 0; j < a.modes.size(); ++j)
    if (std::abs(a.modes[j].frequency - b.modes[j].frequency) > kReuseTolerance) return false;
  for (std::size_t j = 0; j < a.couplings.size(); ++j)
    if (std::abs(a.couplings[j].strength - b.couplings[j].strength) > kReuseTolerance) return false;
  return true;
}

double max_norm_drift(const ComplexMatrix& psi) {
  double drift = 0.0;
  for (Eigen::Index k = 0; k < psi.cols(); ++k) drift = std::max(drift, std::abs(psi.col(k).norm() - 1.0));
  return drift;
}

ComplexMatrix to_complex(const RealMatrix& m) { return m.cast<cd>(); }

ComplexMatrix matrix_power(ComplexMatrix base, std::size_t exponent) {
  ComplexMatrix result = ComplexMatrix::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1U) result = base * result;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

struct SinusoidFit {
  double omega = 0.0;
  double amplitude = 0.0;
  double residual = 0.0;
};

SinusoidFit fit_at(std::span<const double> t, std::span<const double> y, double omega) {
  Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  double yy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Eigen::Vector3d basis(1.0, std::cos(omega * t[i]), std::sin(omega * t[i]));
    normal += basis * basis.transpose();
    rhs += basis * y[i];
    yy += y[i] * y[i];
  }
  const Eigen::Vector3d coef = normal.ldlt().solve(rhs);
  return {omega, std::hypot(coef(1), coef(2)), std::max(0.0, yy - coef.dot(rhs))};
}

/// Least-squares sinusoid: frequency grid then golden-section refinement of
/// the variable-projection residual.
SinusoidFit fit_sinusoid(std::span<const double> t, std::span<const double> y) {
  const double span = t.back() - t.front();
  const double spacing = span / static_cast<double>(t.size() - 1);
  const double lo = std::numbers::pi / span;
  const double hi = std::numbers::pi / spacing;
  const double step = std::numbers::pi / (4.0 * span);
  SinusoidFit best = fit_at(t, y, lo);
  for (double w = lo + step; w < hi; w += step) {
    const auto f = fit_at(t, y, w);
    if (f.residual < best.residual) best = f;
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::max(lo, best.omega - step);
  double b = std::min(hi, best.omega + step);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  auto f1 = fit_at(t, y, x1);
  auto f2 = fit_at(t, y, x2);
  while (b - a > 1e-12 * best.omega) {
    if (f1.residual < f2.residual) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fit_at(t, y, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fit_at(t, y, x2);
    }
  }
  const auto refined = fit_at(t, y, 0.5 * (a + b));
  return refined.residual <= best.residual ? refined : best;
}

}  // namespace

EvolutionResult evolve(const DeviceSpec& idle, const PulseSchedule& schedule, std::span<const DriveSpec> drives,
                       const ComplexMatrix& initial, const EvolutionOptions& options) {
  idle.validate();
  schedule.check_against(idle);
  if (!(options.dt > 0.0)) throw InvalidArgument("evolve: dt must be > 0");
  const auto dim = static_cast<Eigen::Index>(idle.dimension());
  if (initial.rows() != dim) throw InvalidArgument("evolve: initial state has the wrong dimension");
  for (Eigen::Index k = 0; k < initial.cols(); ++k)
    if (std::abs(initial.col(k).norm() - 1.0) > 1e-8) throw InvalidArgument("evolve: initial state is not normalized");

  HamiltonianAssembler assembler(idle);
  std::vector<DriveOperator> drive_ops;
  for (const auto& d : drives) drive_ops.emplace_back(idle, d);

  const double duration = schedule.duration();
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(duration / options.dt - 1e-9)));
  const double h = duration / static_cast<double>(steps);

  EvolutionResult result;
  result.states = initial;
  result.steps = steps;
  result.step = h;
  if (options.observer) options.observer(0.0, result.states);

  Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
  DeviceSpec previous;
  bool have_previous = false;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = (static_cast<double>(k) + 0.5) * h;
    DeviceSpec current = schedule.device_at(idle, t);
    if (!(have_previous && drive_ops.empty() && same_parameters(current, previous))) {
      RealMatrix hamiltonian = assembler.assemble(current);
      for (const auto& d : drive_ops) hamiltonian += d.envelope(t) * d.quadrature();
      solver.compute(hamiltonian);
      if (solver.info() != Eigen::Success) throw IntegratorFailure("eigendecomposition failed during evolution");
      previous = std::move(current);
      have_previous = true;
    }
    apply_propagator(solver.eigenvectors(), solver.eigenvalues(), h, result.states);
    if (options.observer && ((k + 1) % std::max<std::size_t>(1, options.observe_every) == 0 || k + 1 == steps))
      options.observer(static_cast<double>(k + 1) * h, result.states);
  }
  result.max_norm_drift = max_norm_drift(result.states);
  if (result.max_norm_drift > options.norm_tolerance)
    throw IntegratorFailure("norm drifted by " + std::to_string(result.max_norm_drift) + "; reduce dt");
  return result;
}

DriveSpec cross_resonance_drive(const DeviceSpec& spec, double amplitude) {
  const auto [f1, f2] = dressed_frequencies(spec);
  (void)f1;
  return {spec.modes.front().label, amplitude, f2, 0.0};
}

CrResult cr_period(const DeviceSpec& spec, const DriveSpec& drive, double duration, const CrOptions& options) {
  spec.validate();
  if (!(duration > 0.0)) throw InvalidArgument("cr_period: duration must be > 0");
  if (!(drive.frequency > 0.0)) throw InvalidArgument("cr_period: drive frequency must be > 0");
  if (options.samples < 8) throw InvalidArgument("cr_period: need at least 8 samples");

  const auto spectrum = diagonalize(spec);
  const auto [f1, f2] = dressed_frequencies(spectrum);
  CrResult result;
  result.delta12 = f1 - f2;

  HamiltonianAssembler assembler(spec);
  const RealMatrix h0 = assembler.assemble(spec);
  const DriveOperator drive_op(spec, drive);

  // One drive period, stepped at <= dt with midpoint sampling.
  const double period = 1.0 / drive.frequency;
  const auto substeps = static_cast<std::size_t>(std::ceil(period / options.dt - 1e-9));
  const double h = period / static_cast<double>(substeps);
  ComplexMatrix u = ComplexMatrix::Identity(h0.rows(), h0.cols());
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
  for (std::size_t k = 0; k < substeps; ++k) {
    const double t = (static_cast<double>(k) + 0.5) * h;
    solver.compute(h0 + drive_op.envelope(t) * drive_op.quadrature());
    apply_propagator(solver.eigenvectors(), solver.eigenvalues(), h, u);
  }

  const auto periods_per_sample = static_cast<std::size_t>(
      std::max(1.0, std::floor(duration / (static_cast<double>(options.samples) * period))));
  const double sample_spacing = static_cast<double>(periods_per_sample) * period;
  const auto n_samples = static_cast<std::size_t>(std::floor(duration / sample_spacing + 1e-9)) + 1;
  const ComplexMatrix stride = matrix_power(u, periods_per_sample);

  const auto& levels = spectrum.level_counts();
  std::vector<Eigen::Index> target_states;
  for (std::size_t b = 0; b < spec.dimension(); ++b)
    if (bare_occupations(levels, b).back() == 1)
      target_states.push_back(static_cast<Eigen::Index>(spectrum.labels().label_of[b]));

  ComplexVector psi = to_complex(spectrum.state(qubit_occupations(levels.size(), 0, 0)));
  const RealMatrix& v = spectrum.states();
  result.times.reserve(n_samples);
  result.target_population.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const ComplexVector amplitudes = v.transpose().cast<cd>() * psi;
    double p = 0.0;
    for (const auto e : target_states) p += std::norm(amplitudes(e));
    result.times.push_back(static_cast<double>(s) * sample_spacing);
    result.target_population.push_back(p);
    psi = stride * psi;
  }

  const auto fit = fit_sinusoid(result.times, result.target_population);
  result.contrast = fit.amplitude;
  const double fitted_period = kTwoPi / fit.omega;
  if (fit.amplitude >= options.min_contrast && fitted_period <= duration) {
    result.resolved = true;
    result.period = fitted_period;
    result.j_estimate = std::abs(result.delta12) / (result.period * drive.amplitude);
  }
  return result;
}

GateRealization iswap_unitary(const DeviceSpec& idle, const PulseSchedule& schedule, double dt) {
  idle.validate();
  const auto spectrum = diagonalize(idle);
  const auto occ = computational_occupations(idle.modes.size());
  std::vector<double> overlaps;
  bool mixed = false;
  for (const auto& o : occ) {
    overlaps.push_back(spectrum.overlap(o));
    mixed = mixed || spectrum.is_mixed(o);
  }
  if (mixed) throw IllDefined("computational states are mixed at the idle point", overlaps);

  const auto dim = static_cast<Eigen::Index>(idle.dimension());
  RealMatrix basis(dim, 4);
  Eigen::Vector4d energies;
  for (std::size_t k = 0; k < 4; ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = spectrum.state(occ[k]);
    energies(static_cast<Eigen::Index>(k)) = spectrum.energy(occ[k]);
  }

  EvolutionOptions options;
  options.dt = dt;
  const auto evolved = evolve(idle, schedule, {}, to_complex(basis), options);

  GateRealization gate;
  gate.duration = schedule.duration();
  const ComplexMatrix projected = basis.transpose().cast<cd>() * evolved.states;
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j)
      gate.matrix(i, j) = std::polar(1.0, energies(i) * gate.duration) * projected(i, j);
  for (Eigen::Index j = 0; j < 4; ++j)
    gate.leakage[static_cast<std::size_t>(j)] = std::max(0.0, 1.0 - gate.matrix.col(j).squaredNorm());
  return gate;
}

double conditional_phase_error(const Eigen::Matrix4cd& m) {
  if (std::abs(m(1, 2)) < 1e-3 || std::abs(m(2, 1)) < 1e-3)
    throw IllDefined("conditional phase is undefined: transfer amplitude below 1e-3",
                     {std::abs(m(1, 2)), std::abs(m(2, 1))});
  const double combination =
      std::arg(m(0, 0)) + std::arg(m(3, 3)) - std::arg(m(1, 2)) - std::arg(m(2, 1)) + std::numbers::pi;
  return std::abs(std::remainder(combination, kTwoPi));
}

double iswap_fidelity(const Eigen::Matrix4cd& m) {
  // Local Z phases on both sides enter Tr(U_iSWAP^dag M) only through two
  // combinations: x on the |10> -> |01> transfer, y on |01> -> |10>, and
  // x + y on |11>.
  const cd a = m(0, 0);
  const cd b = m(3, 3);
  const cd c = -kI * m(1, 2);
  const cd d = -kI * m(2, 1);
  auto overlap = [&](double x, double y) {
    return std::norm(a + b * std::polar(1.0, x + y) + c * std::polar(1.0, x) + d * std::polar(1.0, y));
  };
  constexpr int kGrid = 32;
  double step = kTwoPi / kGrid;
  double bx = 0.0;
  double by = 0.0;
  double best = -1.0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const double v = overlap(i * step, j * step);
      if (v > best) {
        best = v;
        bx = i * step;
        by = j * step;
      }
    }
  }
  // Pattern search refinement.
  while (step > 1e-11) {
    bool moved = false;
    for (const auto& [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}}) {
      const double v = overlap(bx + dx * step, by + dy * step);
      if (v > best) {
        best = v;
        bx += dx * step;
        by += dy * step;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return (m.squaredNorm() + best) / 20.0;
}

GateMetrics gate_metrics(const Eigen::Matrix4cd& m, double hold_time) {
  GateMetrics g;
  g.swap_error = std::clamp(1.0 - std::norm(m(1, 2)), 0.0, 1.0);
  g.leakage_l1 = std::clamp(1.0 - m.squaredNorm() / 4.0, 0.0, 1.0);
  try {
    g.conditional_phase_error = conditional_phase_error(m);
  } catch (const IllDefined&) {
    g.conditional_phase_error = std::numeric_limits<double>::quiet_NaN();
  }
  g.fidelity = std::clamp(iswap_fidelity(m), 0.0, 1.0);
  g.hold_time = hold_time;
  return g;
}

GateMetrics gate_metrics(const GateRealization& gate, double hold_time) { return gate_metrics(gate.matrix, hold_time); }

PulseSchedule IswapPlan::schedule(const DeviceSpec& idle) const {
  std::vector<ParameterTrack> tracks;
  double end = 0.0;
  for (const auto& [mode, target] : targets) {
    FlatTopPulse pulse;
    pulse.idle_value = idle.modes[idle.mode_index(mode)].frequency;
    pulse.interaction_value = target;
    pulse.rise_time = rise_time;
    pulse.hold_time = hold_time;
    end = std::max(end, pulse.end_time());
    tracks.push_back({mode, pulse});
  }
  if (tracks.empty()) {
    FlatTopPulse reference;
    reference.rise_time = rise_time;
    reference.hold_time = hold_time;
    end = reference.end_time();
  }
  return PulseSchedule(std::move(tracks), end);
}

double dressed_resonance_target(const DeviceSpec& idle, std::string_view coupler, double coupler_frequency,
                                std::string_view partner, double search_half_width) {
  const auto& first = idle.modes.front();
  const auto& last = idle.modes.back();
  if (partner != first.label && partner != last.label) throw InvalidArgument("partner must be one of the qubits");
  const double fixed = partner == first.label ? last.frequency : first.frequency;
  const DeviceSpec interaction = idle.with_mode_frequency(coupler, coupler_frequency);
  return resonant_partner_frequency(interaction, partner, {fixed - search_half_width, fixed + search_half_width})
      .first;
}

std::vector<GateMetrics> hold_scan(const DeviceSpec& idle, const IswapPlan& plan, std::span<const double> holds,
                                   unsigned threads) {
  std::vector<GateMetrics> out(holds.size());
  parallel_for(holds.size(), threads, [&](std::size_t i) {
    IswapPlan p = plan;
    p.hold_time = holds[i];
    out[i] = gate_metrics(iswap_unitary(idle, p.schedule(idle), p.dt), holds[i]);
  });
  return out;
}

GateMetrics optimize_hold(const DeviceSpec& idle, const IswapPlan& plan, std::pair<double, double> bracket,
                          double tolerance) {
  auto run = [&](double hold) {
    IswapPlan p = plan;
    p.hold_time = hold;
    return gate_metrics(iswap_unitary(idle, p.schedule(idle), p.dt), hold);
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = bracket.first;
  double b = bracket.second;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  GateMetrics g1 = run(x1);
  GateMetrics g2 = run(x2);
  while (b - a > tolerance) {
    if (g1.fidelity > g2.fidelity) {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - inv_phi * (b - a);
      g1 = run(x1);
    } else {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + inv_phi * (b - a);
      g2 = run(x2);
    }
  }
  return g1.fidelity > g2.fidelity ? g1 : g2;
}

}  // namespace zzlab
