#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zzlab/model.hpp"
#include "zzlab/pulse.hpp"

namespace zzlab {

inline constexpr double kDefaultFluxDt = 0.02;    // ns, undriven schedules
inline constexpr double kDefaultDrivenDt = 0.005;  // ns, microwave-driven runs

struct EvolutionOptions {
  double dt = kDefaultFluxDt;
  double norm_tolerance = 1e-6;
  /// Called with (t, states) at t = 0 and after every `observe_every` steps.
  std::function<void(double, const ComplexMatrix&)> observer;
  std::size_t observe_every = 1;
};

struct EvolutionResult {
  ComplexMatrix states;
  std::size_t steps = 0;
  double step = 0.0;  // realized dt
  double max_norm_drift = 0.0;
};

/// Solves i d|psi>/dt = H(t)|psi> for every column of `initial`, using the
/// exact exponential of the midpoint-sampled Hamiltonian over each step.
/// The step is shrunk so an integer number of steps spans the schedule.
/// Throws IntegratorFailure when any column's norm drifts beyond tolerance.
EvolutionResult evolve(const DeviceSpec& idle, const PulseSchedule& schedule, std::span<const DriveSpec> drives,
                       const ComplexMatrix& initial, const EvolutionOptions& options = {});

/// Drive on Q1 (first mode) at the dressed frequency of Q2 (last mode).
DriveSpec cross_resonance_drive(const DeviceSpec& spec, double amplitude);

struct CrOptions {
  double dt = kDefaultDrivenDt;
  std::size_t samples = 2000;
  double min_contrast = 1e-4;
};

struct CrResult {
  bool resolved = false;
  double period = std::numeric_limits<double>::quiet_NaN();      // ns
  double j_estimate = std::numeric_limits<double>::quiet_NaN();  // GHz
  double contrast = 0.0;
  double delta12 = 0.0;  // dressed f1 - f2, GHz
  std::vector<double> times;
  std::vector<double> target_population;
};

/// Cross-resonance oscillation from dressed |000>: Q2 excited population
/// under a weak drive on Q1, fitted with a sinusoid, J = |delta12| / (T Omega).
/// The drive is periodic, so one drive period is propagated once and powered.
/// Unresolved when the contrast is below min_contrast or no full fitted
/// period fits inside `duration`.
CrResult cr_period(const DeviceSpec& spec, const DriveSpec& drive, double duration, const CrOptions& options = {});

/// Computational block in the idle dressed basis |00>, |01>, |10>, |11>
/// (|000>, |001>, |100>, |101>), with idle free evolution removed.
struct GateRealization {
  Eigen::Matrix4cd matrix;
  std::array<double, 4> leakage{};  // per input column
  double duration = 0.0;
};

GateRealization iswap_unitary(const DeviceSpec& idle, const PulseSchedule& schedule, double dt = kDefaultFluxDt);

struct GateMetrics {
  double swap_error = 0.0;
  double leakage_l1 = 0.0;
  double conditional_phase_error = 0.0;  // rad
  double fidelity = 0.0;
  double hold_time = std::numeric_limits<double>::quiet_NaN();
};

/// Conditional phase |wrap(theta00 + theta11 - theta_{01,10} - theta_{10,01} + pi)|.
/// Throws IllDefined when a transfer amplitude is below 1e-3.
double conditional_phase_error(const Eigen::Matrix4cd& m);

/// Average gate fidelity to iSWAP, maximized over local Z phases.
double iswap_fidelity(const Eigen::Matrix4cd& m);

GateMetrics gate_metrics(const Eigen::Matrix4cd& m, double hold_time = std::numeric_limits<double>::quiet_NaN());
GateMetrics gate_metrics(const GateRealization& gate, double hold_time = std::numeric_limits<double>::quiet_NaN());

/// Flux-pulse iSWAP: each listed mode moves from its idle frequency to the
/// target frequency along a common Gaussian flat-top pulse.
struct IswapPlan {
  std::vector<std::pair<std::string, double>> targets;
  double rise_time = 5.66;
  double hold_time = 0.0;
  double dt = kDefaultFluxDt;

  PulseSchedule schedule(const DeviceSpec& idle) const;
};

/// Bare frequency of `partner` that puts the dressed qubits on resonance
/// when the coupler sits at `coupler_frequency`.
double dressed_resonance_target(const DeviceSpec& idle, std::string_view coupler, double coupler_frequency,
                                std::string_view partner, double search_half_width = 0.05);

std::vector<GateMetrics> hold_scan(const DeviceSpec& idle, const IswapPlan& plan, std::span<const double> holds,
                                   unsigned threads = 1);

/// Golden-section refinement of the hold time maximizing fidelity.
GateMetrics optimize_hold(const DeviceSpec& idle, const IswapPlan& plan, std::pair<double, double> bracket,
                          double tolerance = 0.01);

}  // namespace zzlab
