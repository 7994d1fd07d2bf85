#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zzlab/dynamics.hpp"
#include "zzlab/model.hpp"

// Parameter-plane scans over (coupler frequency, direct coupling) for the
// three-mode device. Coupler frequencies are GHz, g12 values MHz.
namespace zzlab {

/// Inclusive arithmetic axis start, start + step, ... <= stop.
struct Axis {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  void validate(const std::string& name) const;
  std::vector<double> values() const;
};

enum class Quantity { zeta_exact, zeta_perturbative, j_perturbative, j_resonant };

std::string to_string(Quantity q);
Quantity quantity_from_string(const std::string& name);

struct GridSpec {
  Axis wc;   // GHz
  Axis g12;  // MHz
  Quantity quantity = Quantity::zeta_exact;
  double mask_threshold = 0.020;  // MHz
};

struct LandscapeCell {
  double wc = 0.0;
  double g12 = 0.0;
  std::optional<double> value;  // MHz; absent where the quantity is ill-defined
  bool masked = false;          // ZZ quantities only: |value| < mask_threshold
};

struct Landscape {
  std::vector<double> wc;
  std::vector<double> g12;
  std::vector<LandscapeCell> cells;  // wc-major

  const LandscapeCell& at(std::size_t i_wc, std::size_t i_g12) const { return cells[i_wc * g12.size() + i_g12]; }
};

/// The device with the coupler (middle mode) at `wc` GHz and the direct
/// qubit-qubit coupling at `g12_mhz` MHz.
DeviceSpec device_at(const DeviceSpec& base, double wc, double g12_mhz);

/// One landscape value in MHz; nullopt when ill-defined or singular.
std::optional<double> evaluate(const DeviceSpec& spec, Quantity quantity);

Landscape landscape(const DeviceSpec& base, const GridSpec& grid, unsigned threads = 1);

struct RootOptions {
  double coarse_step = 0.25;     // MHz
  double zeta_tolerance = 1e-4;  // MHz (0.1 kHz)
  double g12_tolerance = 1e-3;   // MHz
};

/// Sign changes of exact zeta(g12) in `bracket` (MHz), each bisected.
/// Throws IllDefined when zeta vanishes identically on the scan.
std::vector<double> zero_zz_roots(const DeviceSpec& base, double wc, std::pair<double, double> bracket,
                                  const RootOptions& options = {});

/// g12 (MHz) where the perturbative J vanishes; the counter-rotating form is
/// used unless the device is in the rotating-wave approximation.
double zero_xy_g12(const DeviceSpec& base, double wc);

/// Perturbative J in GHz matching the device's coupling form.
double xy_perturbative_matched(const DeviceSpec& spec);

enum class BranchId { lower, upper };
std::string to_string(BranchId id);

enum class MaintainedJ { perturbative, resonant, cross_resonance };
MaintainedJ maintained_j_from_string(const std::string& name);

struct BranchOptions {
  RootOptions roots;
  double jump_threshold = 1.0;  // MHz between neighboring columns
  MaintainedJ maintained = MaintainedJ::perturbative;
  double cr_amplitude = 0.004;  // GHz
  double cr_duration = 200000.0;  // ns
  CrOptions cr;
};

struct BranchPoint {
  double wc = 0.0;
  double g12_root = 0.0;       // MHz
  double zeta_residual = 0.0;  // kHz
  double maintained_j = 0.0;   // MHz, magnitude; NaN when unresolved
  BranchId branch_id = BranchId::lower;
  bool discontinuity = false;  // jump from the previous point of this branch
};

/// Roots for every wc in `wc_axis`, assigned to branches by nearest-root
/// continuation in axis order. Two roots in a column are lower and upper by
/// g12; a lone root joins the branch it lies nearest to.
std::vector<BranchPoint> trace_branches(const DeviceSpec& base, const Axis& wc_axis,
                                        std::pair<double, double> g12_bracket, const BranchOptions& options = {},
                                        unsigned threads = 1);

}  // namespace zzlab
