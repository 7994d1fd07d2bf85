#pragma once

#include <string>
#include <vector>

#include "zzlab/model.hpp"

namespace zzlab {

/// 10%-90% width of a Gaussian step, in units of its sigma: 2 * Phi^-1(0.9).
inline constexpr double kRiseToSigma = 2.5631031310892007;

/// Gaussian flat-top excursion of one parameter. The shape
///   s(t) = Phi((t - t_a) / sigma) - Phi((t - t_b) / sigma)
/// uses the normal CDF Phi, ramps centered at t_a and t_b = t_a + hold_time
/// (so hold_time is the full width at half maximum), and sigma chosen so the
/// 10%-90% rise equals rise_time. Ramp centres sit five sigma inside
/// [start_time, end_time()], leaving s below 3e-7 outside the window.
struct FlatTopPulse {
  double idle_value = 0.0;
  double interaction_value = 0.0;
  double rise_time = 5.66;  // ns
  double hold_time = 0.0;   // ns
  double start_time = 0.0;  // ns

  void validate() const;
  double sigma() const noexcept { return rise_time / kRiseToSigma; }
  double padding() const noexcept { return 5.0 * sigma(); }
  double first_midpoint() const noexcept { return start_time + padding(); }
  double second_midpoint() const noexcept { return first_midpoint() + hold_time; }
  double end_time() const noexcept { return second_midpoint() + padding(); }
};

/// Normalized excursion s(t) in [0, 1].
double flattop_shape(const FlatTopPulse& pulse, double t);
double flattop_value(const FlatTopPulse& pulse, double t);

/// Trajectory of one mode frequency (GHz).
struct ParameterTrack {
  std::string mode;
  FlatTopPulse pulse;
};

/// Time-dependent device parameters over [0, duration]. Couplings follow
/// their CouplingSpec scaling at every sample.
class PulseSchedule {
 public:
  PulseSchedule() = default;
  PulseSchedule(std::vector<ParameterTrack> tracks, double duration);

  /// No excursion at all; the device sits at its idle point.
  static PulseSchedule idle(double duration);

  double duration() const noexcept { return duration_; }
  const std::vector<ParameterTrack>& tracks() const noexcept { return tracks_; }

  /// Throws InvalidArgument when a track names an unknown mode or its idle
  /// value disagrees with the device.
  void check_against(const DeviceSpec& idle) const;

  DeviceSpec device_at(const DeviceSpec& idle, double t) const;

 private:
  std::vector<ParameterTrack> tracks_;
  double duration_ = 0.0;
};

}  // namespace zzlab
