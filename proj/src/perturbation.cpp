#include "zzlab/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zzlab/errors.hpp"

namespace zzlab {

namespace {

struct ThreeMode {
  const ModeSpec& q1;
  const ModeSpec& c;
  const ModeSpec& q2;
  double g12;
  double g1c;
  double g2c;
};

ThreeMode three_mode(const DeviceSpec& spec) {
  if (spec.modes.size() != 3)
    throw InvalidArgument("perturbative estimates need exactly three modes (Q1, coupler, Q2)");
  const auto& m = spec.modes;
  return {m[0], m[1], m[2], spec.coupling(m[0].label, m[2].label), spec.coupling(m[0].label, m[1].label),
          spec.coupling(m[2].label, m[1].label)};
}

constexpr double kSingular = 1e-12;  // GHz

double checked_inverse(double denominator, const char* what) {
  if (std::abs(denominator) < kSingular) throw SingularParameter(std::string("vanishing denominator: ") + what);
  return 1.0 / denominator;
}

}  // namespace

DetuningSet detunings(const DeviceSpec& spec) {
  const auto d = three_mode(spec);
  DetuningSet out;
  out.delta1 = d.q1.frequency - d.c.frequency;
  out.delta2 = d.q2.frequency - d.c.frequency;
  out.delta12 = d.q1.frequency - d.q2.frequency;
  if (std::abs(out.delta1) >= kSingular && std::abs(out.delta2) >= kSingular &&
      std::abs(out.delta1 + out.delta2) >= kSingular)
    out.delta_bar = 2.0 / (1.0 / out.delta1 + 1.0 / out.delta2);
  return out;
}

double xy_perturbative(const DeviceSpec& spec) {
  const auto d = three_mode(spec);
  const auto det = detunings(spec);
  if (!det.delta_bar) {
    if (d.g1c == 0.0 || d.g2c == 0.0) return d.g12;
    throw SingularParameter("xy_perturbative: qubit-coupler detuning is zero");
  }
  return d.g12 + d.g1c * d.g2c / *det.delta_bar;
}

double xy_perturbative_counter_rotating(const DeviceSpec& spec) {
  const auto d = three_mode(spec);
  const auto det = detunings(spec);
  const double s1 = d.q1.frequency + d.c.frequency;
  const double s2 = d.q2.frequency + d.c.frequency;
  const double inv = checked_inverse(det.delta1, "delta1 = 0") + checked_inverse(det.delta2, "delta2 = 0") -
                     1.0 / s1 - 1.0 / s2;
  return d.g12 + 0.5 * d.g1c * d.g2c * inv;
}

ZZBreakdown zz_perturbative(const DeviceSpec& spec, const ZZOptions& options) {
  const auto d = three_mode(spec);
  const auto det = detunings(spec);
  const double a1 = d.q1.anharmonicity;
  const double a2 = d.q2.anharmonicity;
  const double ac = d.c.anharmonicity;
  const double mediated = d.g1c * d.g2c;

  const double inv1 = checked_inverse(det.delta1, "delta1 = 0 (Q1-coupler resonance)");
  const double inv2 = checked_inverse(det.delta2, "delta2 = 0 (Q2-coupler resonance)");
  const double inv_bar = 0.5 * (inv1 + inv2);

  ZZBreakdown z;
  z.j020 = std::sqrt(2.0) * mediated * inv_bar;
  if (options.couplings == EffectiveCouplings::averaged) {
    const double j = d.g12 + mediated * inv_bar;
    z.j200 = z.j002 = std::sqrt(2.0) * j;
  } else {
    // |101> -> |011> -> |002> and |101> -> |110> -> |200>.
    z.j200 = std::sqrt(2.0) *
             (d.g12 + 0.5 * mediated * (inv1 + checked_inverse(det.delta2 + a2, "delta2 + alpha2 = 0")));
    z.j002 = std::sqrt(2.0) *
             (d.g12 + 0.5 * mediated * (inv2 + checked_inverse(det.delta1 + a1, "delta1 + alpha1 = 0")));
  }

  const double den020 = det.delta1 + det.delta2 - ac;
  const double den200 = det.delta12 - a2;
  const double den002 = det.delta12 + a1;
  const double den1 = det.delta1 * det.delta2;

  z.zeta_020 = z.j020 * z.j020 * checked_inverse(den020, "delta1 + delta2 = alpha_c (|101>-|020> resonance)");
  z.zeta_200 = z.j200 * z.j200 * checked_inverse(den200, "delta12 = alpha2: straddling boundary");
  z.zeta_002 = -z.j002 * z.j002 * checked_inverse(den002, "delta12 = -alpha1: straddling boundary");
  z.zeta_1 = 4.0 * d.g12 * mediated / den1;
  z.total = z.zeta_020 + z.zeta_200 + z.zeta_002 + z.zeta_1;

  const double smallest = std::min({std::abs(den020), std::abs(den200), std::abs(den002), std::abs(det.delta1),
                                    std::abs(det.delta2)});
  z.near_singular = smallest < options.guard_band;
  return z;
}

RegimeReport regime_check(const DeviceSpec& spec, const RegimeThresholds& thresholds) {
  const auto d = three_mode(spec);
  const auto det = detunings(spec);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  RegimeReport r;
  r.ratio1 = det.delta1 == 0.0 ? (d.g1c == 0.0 ? 0.0 : kInf) : std::abs(d.g1c / det.delta1);
  r.ratio2 = det.delta2 == 0.0 ? (d.g2c == 0.0 ? 0.0 : kInf) : std::abs(d.g2c / det.delta2);
  const double worst = std::max(r.ratio1, r.ratio2);
  r.dispersive = worst < thresholds.dispersive;
  r.quasi_dispersive = !r.dispersive && worst < thresholds.quasi_dispersive;
  r.straddling = std::abs(det.delta12) < std::min(std::abs(d.q1.anharmonicity), std::abs(d.q2.anharmonicity));
  return r;
}

}  // namespace zzlab
