#include "zzlab/pulse.hpp"

#include <cmath>
#include <numbers>

#include "zzlab/errors.hpp"

namespace zzlab {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

void FlatTopPulse::validate() const {
  if (!(rise_time > 0.0)) throw InvalidArgument("pulse rise_time must be > 0");
  if (!(hold_time >= 0.0)) throw InvalidArgument("pulse hold_time must be >= 0");
  if (!std::isfinite(start_time)) throw InvalidArgument("pulse start_time must be finite");
}

double flattop_shape(const FlatTopPulse& pulse, double t) {
  const double sigma = pulse.sigma();
  return normal_cdf((t - pulse.first_midpoint()) / sigma) - normal_cdf((t - pulse.second_midpoint()) / sigma);
}

double flattop_value(const FlatTopPulse& pulse, double t) {
  return pulse.idle_value + (pulse.interaction_value - pulse.idle_value) * flattop_shape(pulse, t);
}

PulseSchedule::PulseSchedule(std::vector<ParameterTrack> tracks, double duration)
    : tracks_(std::move(tracks)), duration_(duration) {
  if (!(duration_ > 0.0)) throw InvalidArgument("schedule duration must be > 0");
  for (const auto& track : tracks_) track.pulse.validate();
}

PulseSchedule PulseSchedule::idle(double duration) { return PulseSchedule({}, duration); }

void PulseSchedule::check_against(const DeviceSpec& idle) const {
  for (const auto& track : tracks_) {
    const auto& mode = idle.modes[idle.mode_index(track.mode)];
    if (std::abs(mode.frequency - track.pulse.idle_value) > 1e-12)
      throw InvalidArgument("track for '" + track.mode + "' starts at " + std::to_string(track.pulse.idle_value) +
                            " GHz but the device idles at " + std::to_string(mode.frequency) + " GHz");
  }
}

DeviceSpec PulseSchedule::device_at(const DeviceSpec& idle, double t) const {
  DeviceSpec out = idle;
  for (const auto& track : tracks_) out = out.with_mode_frequency(track.mode, flattop_value(track.pulse, t));
  return out;
}

}  // namespace zzlab
