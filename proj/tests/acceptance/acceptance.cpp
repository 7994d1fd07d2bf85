// Acceptance suite. Usage: zzlab_acceptance <criterion>... (1-6, default all).
// Prints one PASS/FAIL line per criterion followed by indented detail lines;
// exits non-zero when any requested criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zzlab/cli.hpp"
#include "zzlab/config.hpp"
#include "zzlab/dynamics.hpp"
#include "zzlab/perturbation.hpp"
#include "zzlab/spectrum.hpp"
#include "zzlab/sweep.hpp"

using namespace zzlab;

namespace {

class Report {
 public:
  explicit Report(int criterion) : criterion_(criterion) {}

  void check(bool ok, const std::string& what) {
    passed_ = passed_ && ok;
    lines_.push_back(std::string("  [") + (ok ? "pass" : "FAIL") + "] " + what);
  }
  void note(const std::string& what) { lines_.push_back("  [info] " + what); }

  bool finish(const std::string& title) const {
    std::printf("criterion %d %s: %s\n", criterion_, passed_ ? "PASS" : "FAIL", title.c_str());
    for (const auto& l : lines_) std::printf("%s\n", l.c_str());
    std::fflush(stdout);
    return passed_;
  }

 private:
  int criterion_;
  bool passed_ = true;
  std::vector<std::string> lines_;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

bool within(double value, double target, double relative) {
  return std::abs(value - target) <= relative * std::abs(target);
}

// {a, b} matches {x, y} in either pairing.
bool set_match(double a, double b, double x, double y, double relative) {
  return (within(a, x, relative) && within(b, y, relative)) || (within(a, y, relative) && within(b, x, relative));
}

DeviceSpec fixed_frequency_device(double alpha_c) {
  DeviceSpec d;
  d.modes = {{"q1", 5.114, -0.330, 5}, {"c", 6.0, alpha_c, 5}, {"q2", 4.914, -0.330, 5}};
  d.couplings = {{"q1", "c", 0.098}, {"q2", "c", 0.083}, {"q1", "q2", 0.0}};
  return d;
}

RunConfig shipped(const std::string& name, const std::string& command) {
  return load_config_file(std::string(ZZLAB_CONFIG_DIR) + "/" + name, command);
}

double cr_j_mhz(const DeviceSpec& spec) {
  const auto r = cr_period(spec, cross_resonance_drive(spec, 0.004), 200000.0);
  return r.resolved ? r.j_estimate * 1e3 : std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------------------

bool criterion1() {
  Report rep(1);
  const auto base = fixed_frequency_device(0.0);
  const double wc = 6.0;
  const double g_xy = zero_xy_g12(base, wc);
  const auto roots = zero_zz_roots(base, wc, {-5.0, 15.0});
  rep.check(roots.size() == 2, fmt("two zero-ZZ roots at wc = 6.0 GHz (found %zu)", roots.size()));
  if (roots.empty()) return rep.finish("off-resonant operating points");
  const double g_zz = roots.front();

  const auto at_xy = device_at(base, wc, g_xy);
  const auto at_zz = device_at(base, wc, g_zz);
  const double z_xy = std::abs(zz_strength(at_xy)) * 1e6;
  const double z_zz = std::abs(zz_strength(at_zz)) * 1e6;
  const double j_xy = cr_j_mhz(at_xy);
  const double j_zz = cr_j_mhz(at_zz);
  rep.note(fmt("located zero-XY g12 = %.4f MHz, lower zero-ZZ g12 = %.4f MHz", g_xy, g_zz));
  rep.check(set_match(z_xy, z_zz, 3.9, 3.3, 0.30),
            fmt("|zeta| at located points {%.3f, %.3f} kHz vs {3.9, 3.3} kHz +-30%%", z_xy, z_zz));
  rep.check(set_match(j_xy, j_zz, 1.75, 0.63, 0.20),
            fmt("CR J at located points {%.3f, %.3f} MHz vs {1.75, 0.63} MHz +-20%%", j_xy, j_zz));

  // The reference parameter sets themselves.
  const auto q1 = device_at(base, wc, 6.5);
  const auto q2 = device_at(base, wc, 8.8);
  const double zq1 = std::abs(zz_strength(q1)) * 1e6;
  const double zq2 = std::abs(zz_strength(q2)) * 1e6;
  const double jq1 = cr_j_mhz(q1);
  const double jq2 = cr_j_mhz(q2);
  rep.note(fmt("reference sets (6.0, 6.5) and (6.0, 8.8): |zeta| = {%.3f, %.3f} kHz (%s), CR J = {%.3f, %.3f} MHz (%s)",
               zq1, zq2, set_match(zq1, zq2, 3.9, 3.3, 0.30) ? "in band" : "out of band", jq1, jq2,
               set_match(jq1, jq2, 1.75, 0.63, 0.20) ? "in band" : "out of band"));
  if (roots.size() == 2)
    rep.note(fmt("zero-ZZ roots {%.4f, %.4f} MHz lie %.3f and %.3f MHz from the reference g12 values", roots[0], roots[1],
                 std::abs(roots[0] - 6.5), std::abs(roots[1] - 8.8)));
  return rep.finish("off-resonant operating points");
}

// ---------------------------------------------------------------------------

bool criterion2() {
  Report rep(2);
  const Axis wc_axis{6.0, 9.2, 0.2};
  const auto wcs = wc_axis.values();
  for (const double alpha_c : {0.0, -0.2, -0.4, -0.6}) {
    const auto base = fixed_frequency_device(alpha_c);
    const auto points = trace_branches(base, wc_axis, {-5.0, 15.0});
    const double a_mhz = alpha_c * 1e3;

    auto column = [&](double wc) {
      std::vector<BranchPoint> out;
      for (const auto& p : points)
        if (p.wc == wc) out.push_back(p);
      return out;
    };

    const auto high = column(wcs.back());
    const double g_xy = zero_xy_g12(base, wcs.back());
    bool near = !high.empty();
    double worst = 0.0;
    for (const auto& p : high) {
      worst = std::max(worst, std::abs(p.g12_root - g_xy));
      near = near && std::abs(p.g12_root - g_xy) < 0.3;
    }
    rep.check(near, fmt("alpha_c = %.0f MHz, wc = %.1f GHz: %zu root(s), max distance to zero-XY %.3f MHz", a_mhz,
                        wcs.back(), high.size(), worst));

    const auto low = column(wcs.front());
    const double gap = low.size() == 2 ? std::abs(low[1].g12_root - low[0].g12_root) : 0.0;
    rep.check(low.size() == 2 && gap > 1.0,
              fmt("alpha_c = %.0f MHz, wc = %.1f GHz: %zu roots, separation %.3f MHz", a_mhz, wcs.front(), low.size(),
                  gap));

    int paired = 0;
    int ordered = 0;
    double max_lower = 0.0;
    double max_upper = 0.0;
    double split_wc = std::numeric_limits<double>::quiet_NaN();
    for (const double wc : wcs) {
      const auto c = column(wc);
      const BranchPoint* lo = nullptr;
      const BranchPoint* up = nullptr;
      for (const auto& p : c) (p.branch_id == BranchId::lower ? lo : up) = &p;
      if (lo) max_lower = std::max(max_lower, lo->maintained_j);
      if (up) max_upper = std::max(max_upper, up->maintained_j);
      if (lo && up && std::abs(up->g12_root - lo->g12_root) > 1.0) {
        split_wc = std::isnan(split_wc) ? wc : std::max(split_wc, wc);
        ++paired;
        if (lo->maintained_j > up->maintained_j) ++ordered;
      }
    }
    rep.check(paired > 0 && ordered == paired,
              fmt("alpha_c = %.0f MHz: lower J > upper J in %d of %d split columns (split up to wc = %.1f GHz)",
                  a_mhz, ordered, paired, split_wc));
    if (alpha_c <= -0.2)
      rep.check(max_lower > 2.0, fmt("alpha_c = %.0f MHz: max lower-branch J = %.3f MHz > 2 MHz", a_mhz, max_lower));
    else
      rep.note(fmt("alpha_c = %.0f MHz: max lower-branch J = %.3f MHz, upper %.3f MHz", a_mhz, max_lower, max_upper));
  }
  return rep.finish("zero-ZZ branch splitting and maintained XY coupling");
}

// ---------------------------------------------------------------------------

struct GateRun {
  GateMetrics metrics;
  IswapPlan plan;
};

GateRun calibrated_gate(const DeviceSpec& idle, IswapPlan plan, std::pair<double, double> bracket) {
  const auto best = optimize_hold(idle, plan, bracket, 0.05);
  plan.hold_time = best.hold_time;
  return {best, plan};
}

std::string metric_line(const GateMetrics& m) {
  return fmt("hold %.2f ns: F = %.6f, swap error %.2e, L1 = %.2e, dtheta = %.4f rad", m.hold_time, m.fidelity,
             m.swap_error, m.leakage_l1, m.conditional_phase_error);
}

bool criterion3() {
  Report rep(3);
  auto cfg = shipped("iswap_dispersive.json", "iswap");
  const IswapPlan shipped_plan = cli::iswap_plan(cfg);
  const double wc = shipped_plan.targets.front().second;

  // g12 scan at four levels per mode: hold-optimized gate per g12, keep the
  // g12 with the smallest conditional phase.
  double best_g12 = 0.0;
  double best_phase = std::numeric_limits<double>::infinity();
  for (const double g12 : {11.4, 11.6, 11.7, 11.8, 11.9, 12.0, 12.2}) {
    const auto idle = cfg.device.with_levels(4).with_coupling("q1", "q2", g12 * 1e-3);
    IswapPlan plan = shipped_plan;
    plan.targets[1].second = dressed_resonance_target(idle, "c", wc, "q2");
    const auto run = calibrated_gate(idle, plan, {50.0, 64.0});
    rep.note(fmt("scan g12 = %.1f MHz, 4 levels: ", g12) + metric_line(run.metrics));
    if (run.metrics.conditional_phase_error < best_phase) {
      best_phase = run.metrics.conditional_phase_error;
      best_g12 = g12;
    }
  }
  rep.note(fmt("synchronized g12 = %.1f MHz", best_g12));

  const auto idle = cfg.device.with_coupling("q1", "q2", best_g12 * 1e-3);
  IswapPlan plan = shipped_plan;
  plan.targets[1].second = dressed_resonance_target(idle, "c", wc, "q2");
  const auto run = calibrated_gate(idle, plan, {52.0, 62.0});
  const auto& m = run.metrics;
  rep.note("5 levels, " + metric_line(m));
  rep.check(m.fidelity >= 0.9999, fmt("F = %.6f >= 0.9999", m.fidelity));
  rep.check(std::abs(m.hold_time - 57.0) <= 5.0, fmt("hold %.2f ns within 57 +- 5 ns", m.hold_time));
  rep.check(m.leakage_l1 <= 2e-4, fmt("L1 = %.2e <= 2e-4", m.leakage_l1));
  rep.check(m.conditional_phase_error <= 0.005, fmt("dtheta = %.4f rad <= 0.005", m.conditional_phase_error));
  return rep.finish("dispersive iSWAP");
}

// ---------------------------------------------------------------------------

bool criterion4() {
  Report rep(4);
  const auto cfg = shipped("iswap_quasi_dispersive.json", "iswap");
  const IswapPlan plan = cli::iswap_plan(cfg);
  const double wc = plan.targets.front().second;
  const auto at = cfg.device.with_mode_frequency("c", wc);
  const auto regime = regime_check(at);
  rep.note(fmt("interaction wc = %.3f GHz, Q2 target %.6f GHz, g/delta = %.3f / %.3f", wc, plan.targets[1].second,
               regime.ratio1, regime.ratio2));
  rep.check(std::abs(wc - 7.04) <= 0.05 && std::abs(regime.ratio1 - 0.25) <= 0.03,
            fmt("operating point near wc = 7.04 GHz with g/delta near 1/4 (%.3f)", regime.ratio1));

  const auto run = calibrated_gate(cfg.device, plan, {11.3, 17.3});
  const auto& m = run.metrics;
  rep.note("5 levels, " + metric_line(m));
  rep.check(m.fidelity >= 0.9997, fmt("F = %.6f >= 0.9997", m.fidelity));
  rep.check(std::abs(m.hold_time - 14.3) <= 3.0, fmt("hold %.2f ns within 14.3 +- 3 ns", m.hold_time));
  rep.check(m.leakage_l1 <= 3e-4, fmt("L1 = %.2e <= 3e-4", m.leakage_l1));
  rep.check(m.conditional_phase_error <= 0.01, fmt("dtheta = %.4f rad <= 0.01", m.conditional_phase_error));
  return rep.finish("quasi-dispersive iSWAP");
}

// ---------------------------------------------------------------------------

bool criterion5() {
  Report rep(5);
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int samples = 0;
  int unmasked = 0;
  int sign_agree = 0;
  int large = 0;
  int large_agree = 0;
  double worst = 0.0;
  std::string worst_point;
  while (samples < 100) {
    DeviceSpec d;
    const double f1 = 4.8 + 0.6 * u(rng);
    const double a1 = -0.20 - 0.15 * u(rng);
    const double a2 = -0.20 - 0.15 * u(rng);
    const double f2 = f1 - (0.02 + 0.9 * std::min(-a1, -a2)) * u(rng) * (u(rng) < 0.5 ? -1.0 : 1.0);
    const double g1c = 0.04 + 0.08 * u(rng);
    const double g2c = 0.04 + 0.08 * u(rng);
    const double floor = std::max(f1 + g1c / 0.1, f2 + g2c / 0.1);
    const double wc = floor + 1.5 * u(rng);
    const double ac = -0.6 * u(rng);
    const double g12 = -0.005 + 0.010 * u(rng);
    d.modes = {{"q1", f1, a1, 5}, {"c", wc, ac, 5}, {"q2", f2, a2, 5}};
    d.couplings = {{"q1", "c", g1c}, {"q2", "c", g2c}, {"q1", "q2", g12}};
    d.rwa = true;
    const auto regime = regime_check(d);
    if (!regime.dispersive || !regime.straddling) continue;
    ++samples;
    const double exact = zz_strength(d) * 1e3;
    const double approx = zz_perturbative(d).total * 1e3;
    if (std::abs(exact) < 0.020) continue;
    ++unmasked;
    if ((exact > 0.0) == (approx > 0.0)) ++sign_agree;
    if (std::abs(exact) > 0.050) {
      ++large;
      const double rel = std::abs(approx - exact) / std::abs(exact);
      if (rel <= 0.15) ++large_agree;
      if (rel > worst) {
        worst = rel;
        worst_point = fmt("f1 %.3f f2 %.3f wc %.3f a_c %.0f MHz g12 %.2f MHz: exact %.4f MHz, fourth-order %.4f MHz",
                          f1, f2, wc, ac * 1e3, g12 * 1e3, exact, approx);
      }
    }
  }
  rep.note(fmt("%d dispersive straddling samples, %d unmasked, %d with |zeta| > 50 kHz", samples, unmasked, large));
  rep.check(large_agree == large, fmt("within 15%% at %d of %d points with |zeta| > 50 kHz (worst %.1f%%)",
                                       large_agree, large, 100.0 * worst));
  if (!worst_point.empty()) rep.note("worst: " + worst_point);
  const double fraction = unmasked > 0 ? static_cast<double>(sign_agree) / unmasked : 0.0;
  rep.check(fraction >= 0.95, fmt("sign agreement %.1f%% of unmasked points >= 95%%", 100.0 * fraction));
  return rep.finish("fourth-order ZZ against diagonalization");
}

// ---------------------------------------------------------------------------

Eigen::Matrix4cd local_z(double a, double b) {
  Eigen::Matrix4cd z = Eigen::Matrix4cd::Zero();
  z(0, 0) = 1.0;
  z(1, 1) = std::polar(1.0, b);
  z(2, 2) = std::polar(1.0, a);
  z(3, 3) = std::polar(1.0, a + b);
  return z;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

bool criterion6() {
  Report rep(6);

  // Hermiticity over random devices and along a pulse.
  {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      DeviceSpec d;
      d.modes = {{"q1", 4.0 + 3.0 * u(rng), -0.4 * u(rng), 3 + trial % 3},
                 {"c", 5.0 + 4.0 * u(rng), -0.6 * u(rng), 3 + (trial / 3) % 3},
                 {"q2", 4.0 + 3.0 * u(rng), -0.4 * u(rng), 3 + (trial / 9) % 3}};
      d.couplings = {{"q1", "c", 0.2 * u(rng)}, {"q2", "c", 0.2 * u(rng)}, {"q1", "q2", 0.03 * (u(rng) - 0.5)}};
      d.rwa = trial % 2 == 1;
      const RealMatrix h = build_hamiltonian(d).matrix();
      worst = std::max(worst, (h - h.transpose()).cwiseAbs().maxCoeff() / h.cwiseAbs().maxCoeff());
    }
    const auto cfg = shipped("iswap_dispersive.json", "iswap");
    const auto schedule = cli::iswap_plan(cfg).schedule(cfg.device);
    HamiltonianAssembler assembler(cfg.device);
    for (double t = 0.0; t <= schedule.duration(); t += schedule.duration() / 40.0) {
      const RealMatrix h = assembler.assemble(schedule.device_at(cfg.device, t));
      worst = std::max(worst, (h - h.transpose()).cwiseAbs().maxCoeff() / h.cwiseAbs().maxCoeff());
    }
    rep.check(worst < 1e-12, fmt("Hermiticity: max |H - H^dag| / max |H| = %.1e over 50 devices and a pulse", worst));
  }

  // Unitarity of the full propagator of the quasi-dispersive gate.
  const auto quasi = shipped("iswap_quasi_dispersive.json", "iswap");
  const IswapPlan quasi_plan = cli::iswap_plan(quasi);
  {
    const auto dim = static_cast<Eigen::Index>(quasi.device.dimension());
    const auto r =
        evolve(quasi.device, quasi_plan.schedule(quasi.device), {}, ComplexMatrix::Identity(dim, dim));
    const double err = (r.states.adjoint() * r.states - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    rep.check(err < 1e-8, fmt("unitarity: max |U^dag U - I| = %.1e over %lld basis states", err,
                              static_cast<long long>(dim)));
  }

  // Step halving.
  const auto gate = iswap_unitary(quasi.device, quasi_plan.schedule(quasi.device), kDefaultFluxDt);
  const auto m0 = gate_metrics(gate, quasi_plan.hold_time);
  {
    const auto half = gate_metrics(iswap_unitary(quasi.device, quasi_plan.schedule(quasi.device), kDefaultFluxDt / 2),
                                   quasi_plan.hold_time);
    const double diff = std::max({std::abs(half.fidelity - m0.fidelity), std::abs(half.swap_error - m0.swap_error),
                                  std::abs(half.leakage_l1 - m0.leakage_l1),
                                  std::abs(half.conditional_phase_error - m0.conditional_phase_error)});
    rep.check(diff < 1e-6, fmt("dt halving 0.02 -> 0.01 ns: max metric change %.1e", diff));
  }

  // Truncation.
  {
    struct Point {
      const char* name;
      DeviceSpec spec;
    };
    const auto fixed = fixed_frequency_device(0.0);
    const auto dispersive = shipped("iswap_dispersive.json", "iswap");
    const auto plan = cli::iswap_plan(dispersive);
    DeviceSpec on_resonance = dispersive.device;
    for (const auto& [mode, f] : plan.targets) on_resonance = on_resonance.with_mode_frequency(mode, f);
    DeviceSpec quasi_on = quasi.device;
    for (const auto& [mode, f] : quasi_plan.targets) quasi_on = quasi_on.with_mode_frequency(mode, f);
    const std::vector<Point> points = {{"(6.0, 6.5)", device_at(fixed, 6.0, 6.5)},
                                       {"(6.0, 8.8)", device_at(fixed, 6.0, 8.8)},
                                       {"alpha_c -400, (7.0, 4.0)", device_at(fixed_frequency_device(-0.4), 7.0, 4.0)},
                                       {"dispersive idle", dispersive.device},
                                       {"dispersive interaction", on_resonance},
                                       {"quasi-dispersive interaction", quasi_on}};
    bool ok = true;
    std::string detail;
    for (const auto& p : points) {
      const double z5 = zz_strength(p.spec.with_levels(5)) * 1e6;
      const double z6 = zz_strength(p.spec.with_levels(6)) * 1e6;
      const double tol = std::max(0.01 * std::abs(z5), 0.1);
      ok = ok && std::abs(z6 - z5) <= tol;
      detail += fmt(" %s %.3f->%.3f kHz;", p.name, z5, z6);
    }
    rep.check(ok, "n_levels 5 -> 6 zeta within max(1%, 0.1 kHz):" + detail);
  }

  // Local Z dressing of a simulated gate.
  {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    double d_theta = 0.0;
    double d_f = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::Matrix4cd dressed =
          local_z(phase(rng), phase(rng)) * gate.matrix * local_z(phase(rng), phase(rng));
      d_theta = std::max(d_theta, std::abs(conditional_phase_error(dressed) - m0.conditional_phase_error));
      d_f = std::max(d_f, std::abs(iswap_fidelity(dressed) - m0.fidelity));
    }
    rep.check(d_theta < 1e-8 && d_f < 1e-8,
              fmt("random local Z dressing: |d dtheta| = %.1e, |d F| = %.1e", d_theta, d_f));
  }

  // Global energy offset.
  {
    DeviceSpec shifted = quasi.device;
    shifted.energy_offset = 3.0;
    const auto m1 = gate_metrics(iswap_unitary(shifted, quasi_plan.schedule(shifted), kDefaultFluxDt),
                                 quasi_plan.hold_time);
    const double diff = std::max({std::abs(m1.fidelity - m0.fidelity), std::abs(m1.swap_error - m0.swap_error),
                                  std::abs(m1.leakage_l1 - m0.leakage_l1),
                                  std::abs(m1.conditional_phase_error - m0.conditional_phase_error)});
    const auto fixed = device_at(fixed_frequency_device(0.0), 6.0, 6.5);
    DeviceSpec fixed_shifted = fixed;
    fixed_shifted.energy_offset = 3.0;
    const double dz = std::abs(zz_strength(fixed_shifted) - zz_strength(fixed)) * 1e9;
    rep.check(diff <= 1e-8 && dz < 1.0,
              fmt("energy offset 3 GHz: max gate metric change %.1e, zeta change %.2e Hz", diff, dz));
  }

  // CLI determinism.
  {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "zzlab_acceptance";
    fs::create_directories(dir);
    const std::string configs = ZZLAB_CONFIG_DIR;
    struct Job {
      std::vector<std::string> args;
      std::string file;
    };
    const std::vector<Job> jobs = {
        {{"spectrum", configs + "/fixed_coupler_spectrum.json"}, "spectrum"},
        {{"sweep", configs + "/zz_landscape.json", "--levels", "3"}, "sweep"},
        {{"branch", configs + "/zz_branches.json", "--levels", "3"}, "branch"},
        {{"cr", configs + "/cross_resonance.json", "--levels", "3"}, "cr"},
        {{"scan", configs + "/iswap_quasi_dispersive.json", "--levels", "3"}, "scan"}};
    bool identical = true;
    std::string detail;
    for (const auto& job : jobs) {
      std::string outputs[2];
      int codes[2];
      for (int k = 0; k < 2; ++k) {
        const auto path = (dir / (job.file + std::to_string(k))).string();
        auto args = job.args;
        args.insert(args.end(), {"--out", path, "--threads", k == 0 ? "1" : "2"});
        std::ostringstream out;
        std::ostringstream err;
        codes[k] = cli::run(args, out, err);
        outputs[k] = read_file(path);
      }
      const bool same = codes[0] == 0 && codes[1] == 0 && !outputs[0].empty() && outputs[0] == outputs[1];
      identical = identical && same;
      detail += " " + job.file + (same ? " ok" : " differs") + ";";
    }
    rep.check(identical, "byte-identical CLI reruns (1 vs 2 threads):" + detail);
  }
  return rep.finish("property suites");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<bool()>> criteria = {criterion1, criterion2, criterion3,
                                                       criterion4, criterion5, criterion6};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int c = std::atoi(argv[i]);
    if (c < 1 || c > 6) {
      std::fprintf(stderr, "usage: zzlab_acceptance [1-6]...\n");
      return 2;
    }
    selected.push_back(c);
  }
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6};
  bool all = true;
  for (const int c : selected) {
    try {
      all = criteria[static_cast<std::size_t>(c - 1)]() && all;
    } catch (const std::exception& e) {
      std::printf("criterion %d FAIL: %s\n", c, e.what());
      all = false;
    }
  }
  return all ? 0 : 1;
}
