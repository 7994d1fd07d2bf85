#pragma once

#include <optional>

#include "zzlab/model.hpp"

// Closed-form estimates for the three-mode device (Q1, coupler, Q2) in the
// rotating-wave approximation. All inputs and outputs are linear GHz.
namespace zzlab {

struct DetuningSet {
  double delta1 = 0.0;   // f1 - fc
  double delta2 = 0.0;   // f2 - fc
  double delta12 = 0.0;  // f1 - f2
  /// 1/delta_bar = (1/delta1 + 1/delta2) / 2; absent when singular.
  std::optional<double> delta_bar;
};

DetuningSet detunings(const DeviceSpec& spec);

/// J = g12 + g1c g2c / delta_bar. Throws SingularParameter at zero detuning.
double xy_perturbative(const DeviceSpec& spec);

/// J including the counter-rotating (sum-frequency) virtual transitions:
/// g12 + g1c g2c (1/D1 + 1/D2 - 1/S1 - 1/S2) / 2 with S_j = f_j + fc.
double xy_perturbative_counter_rotating(const DeviceSpec& spec);

enum class EffectiveCouplings {
  /// Second-order couplings through the single intermediate state of each
  /// transition; J for the doubly excited qubit states carries the qubit
  /// anharmonicity in one energy denominator.
  schrieffer_wolff,
  /// sqrt(2) J for both doubly excited qubit states.
  averaged,
};

struct ZZOptions {
  EffectiveCouplings couplings = EffectiveCouplings::schrieffer_wolff;
  /// Denominators smaller than this (GHz) mark the result near-singular.
  double guard_band = 1e-3;
};

/// Fourth-order ZZ decomposition. total is the plain sum of the four terms.
struct ZZBreakdown {
  double zeta_020 = 0.0;
  double zeta_200 = 0.0;  // |101> <-> Q2 doubly excited, denominator delta12 - alpha2
  double zeta_002 = 0.0;  // |101> <-> Q1 doubly excited, denominator delta12 + alpha1
  double zeta_1 = 0.0;
  double total = 0.0;
  double j020 = 0.0;
  double j200 = 0.0;
  double j002 = 0.0;
  bool near_singular = false;
};

/// Throws SingularParameter naming the resonance when a denominator is zero.
ZZBreakdown zz_perturbative(const DeviceSpec& spec, const ZZOptions& options = {});

struct RegimeThresholds {
  double dispersive = 0.1;
  double quasi_dispersive = 0.3;
};

struct RegimeReport {
  double ratio1 = 0.0;  // g1c / |delta1|
  double ratio2 = 0.0;
  bool dispersive = false;
  bool quasi_dispersive = false;  // dispersive threshold <= max ratio < quasi threshold
  bool straddling = false;        // |delta12| < min(|alpha1|, |alpha2|)
};

RegimeReport regime_check(const DeviceSpec& spec, const RegimeThresholds& thresholds = {});

}  // namespace zzlab
