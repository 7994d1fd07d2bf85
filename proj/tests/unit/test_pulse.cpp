#include <doctest.h>

#include <cmath>

#include "devices.hpp"
#include "zzlab/errors.hpp"
#include "zzlab/pulse.hpp"

using namespace zzlab;

namespace {

double bisect(const FlatTopPulse& p, double a, double b, double level) {
  const bool rising = flattop_shape(p, a) < level;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if ((flattop_shape(p, m) < level) == rising)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_SUITE("pulse") {

TEST_CASE("plateau and ramp midpoints") {
  const FlatTopPulse p{8.7, 7.79, 5.66, 57.0, 0.0};
  CHECK(flattop_shape(p, 0.5 * (p.first_midpoint() + p.second_midpoint())) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(flattop_shape(p, p.first_midpoint()) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(flattop_shape(p, p.second_midpoint()) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(flattop_value(p, p.first_midpoint()) == doctest::Approx(0.5 * (8.7 + 7.79)));
}

TEST_CASE("hold time is the full width at half maximum") {
  const FlatTopPulse p{0.0, 1.0, 5.66, 57.0, 3.0};
  const double centre = 0.5 * (p.first_midpoint() + p.second_midpoint());
  const double up = bisect(p, p.start_time, centre, 0.5);
  const double down = bisect(p, centre, p.end_time(), 0.5);
  CHECK(std::abs((down - up) - 57.0) < 0.01);
}

TEST_CASE("10-90 rise equals rise time") {
  const FlatTopPulse p{0.0, 1.0, 5.66, 40.0, 0.0};
  const double centre = 0.5 * (p.first_midpoint() + p.second_midpoint());
  const double t10 = bisect(p, p.start_time, centre, 0.1);
  const double t90 = bisect(p, p.start_time, centre, 0.9);
  CHECK(t90 - t10 == doctest::Approx(5.66).epsilon(1e-3));
}

TEST_CASE("idle outside the window") {
  const FlatTopPulse p{8.7, 7.04, 5.66, 14.3, 2.0};
  const double excursion = std::abs(p.interaction_value - p.idle_value);
  CHECK(std::abs(flattop_value(p, 0.0) - 8.7) < 1e-6 * excursion);
  CHECK(std::abs(flattop_value(p, p.start_time) - 8.7) < 1e-6 * excursion);
  CHECK(std::abs(flattop_value(p, p.end_time()) - 8.7) < 1e-6 * excursion);
  CHECK(std::abs(flattop_value(p, p.end_time() + 100.0) - 8.7) < 1e-6 * excursion);
}

TEST_CASE("zero hold stays below the full excursion") {
  const FlatTopPulse p{0.0, 1.0, 5.66, 0.0, 0.0};
  CHECK(flattop_shape(p, p.first_midpoint()) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS((FlatTopPulse{0.0, 1.0, 0.0, 1.0, 0.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((FlatTopPulse{0.0, 1.0, 5.66, -1.0, 0.0}.validate()), InvalidArgument);
  CHECK_NOTHROW((FlatTopPulse{0.0, 1.0, 5.66, 0.0, 0.0}.validate()));
}

TEST_CASE("schedule moves modes and rescales couplings") {
  const auto idle = testing::tunable_device();
  const FlatTopPulse p{8.7, 7.79, 5.66, 57.0, 0.0};
  const PulseSchedule s({{"c", p}}, p.end_time());
  CHECK_NOTHROW(s.check_against(idle));
  const double centre = 0.5 * (p.first_midpoint() + p.second_midpoint());
  const auto d = s.device_at(idle, centre);
  CHECK(d.modes[1].frequency == doctest::Approx(7.79));
  CHECK(d.coupling("q1", "c") == doctest::Approx(0.125 * std::sqrt(7.79 / 6.5)));
  CHECK(d.coupling("q1", "q2") == idle.coupling("q1", "q2"));

  const auto before = s.device_at(idle, 0.0);
  CHECK(std::abs(before.modes[1].frequency - 8.7) < 1e-6 * (8.7 - 7.79));

  const PulseSchedule unknown({{"x", p}}, p.end_time());
  CHECK_THROWS_AS(unknown.check_against(idle), InvalidArgument);
  const PulseSchedule mismatched({{"c", FlatTopPulse{8.0, 7.79, 5.66, 57.0, 0.0}}}, p.end_time());
  CHECK_THROWS_AS(mismatched.check_against(idle), InvalidArgument);

  CHECK(PulseSchedule::idle(12.0).tracks().empty());
  CHECK(PulseSchedule::idle(12.0).duration() == 12.0);
}

}  // TEST_SUITE
