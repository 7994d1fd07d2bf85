#include "zzlab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zzlab/errors.hpp"
#include "zzlab/parallel.hpp"
#include "zzlab/perturbation.hpp"
#include "zzlab/spectrum.hpp"

namespace zzlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_three_modes(const DeviceSpec& spec) {
  if (spec.modes.size() != 3) throw InvalidArgument("sweeps need exactly three modes (Q1, coupler, Q2)");
}

bool is_zz(Quantity q) { return q == Quantity::zeta_exact || q == Quantity::zeta_perturbative; }

std::optional<double> zeta_mhz(const DeviceSpec& spec) {
  try {
    return zz_strength(spec) * 1e3;
  } catch (const IllDefined&) {
    return std::nullopt;
  }
}

double bisect_root(const DeviceSpec& base, double wc, double a, double fa, double b, const RootOptions& options) {
  double best = std::abs(fa) <= options.zeta_tolerance ? a : b;
  while (b - a > options.g12_tolerance) {
    const double mid = 0.5 * (a + b);
    const auto fm = zeta_mhz(device_at(base, wc, mid));
    if (!fm) throw IllDefined("zeta became ill-defined inside a root bracket at g12 = " + std::to_string(mid) + " MHz");
    best = mid;
    if (std::abs(*fm) < options.zeta_tolerance) break;
    if ((*fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = *fm;
    } else {
      b = mid;
    }
  }
  return best;
}

double maintained_j(const DeviceSpec& spec, const BranchOptions& options) {
  try {
    switch (options.maintained) {
      case MaintainedJ::perturbative:
        return std::abs(xy_perturbative_matched(spec)) * 1e3;
      case MaintainedJ::resonant:
        return xy_strength_resonant(spec) * 1e3;
      case MaintainedJ::cross_resonance: {
        const auto result =
            cr_period(spec, cross_resonance_drive(spec, options.cr_amplitude), options.cr_duration, options.cr);
        return result.resolved ? result.j_estimate * 1e3 : kNaN;
      }
    }
  } catch (const IllDefined&) {
  } catch (const SingularParameter&) {
  }
  return kNaN;
}

}  // namespace

void Axis::validate(const std::string& name) const {
  if (!std::isfinite(start) || !std::isfinite(stop)) throw InvalidArgument(name + ": start and stop must be finite");
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument(name + ": step must be > 0");
}

std::vector<double> Axis::values() const {
  std::vector<double> out;
  if (stop < start) return out;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::zeta_exact:
      return "zeta_exact";
    case Quantity::zeta_perturbative:
      return "zeta_perturbative";
    case Quantity::j_perturbative:
      return "j_perturbative";
    case Quantity::j_resonant:
      return "j_resonant";
  }
  return "";
}

Quantity quantity_from_string(const std::string& name) {
  for (const auto q : {Quantity::zeta_exact, Quantity::zeta_perturbative, Quantity::j_perturbative,
                       Quantity::j_resonant})
    if (to_string(q) == name) return q;
  throw InvalidArgument("unknown quantity '" + name + "'");
}

std::string to_string(BranchId id) { return id == BranchId::lower ? "lower" : "upper"; }

MaintainedJ maintained_j_from_string(const std::string& name) {
  if (name == "perturbative") return MaintainedJ::perturbative;
  if (name == "resonant") return MaintainedJ::resonant;
  if (name == "cross_resonance") return MaintainedJ::cross_resonance;
  throw InvalidArgument("unknown maintained-J method '" + name + "'");
}

DeviceSpec device_at(const DeviceSpec& base, double wc, double g12_mhz) {
  require_three_modes(base);
  return base.with_mode_frequency(base.modes[1].label, wc)
      .with_coupling(base.modes.front().label, base.modes.back().label, g12_mhz * 1e-3);
}

double xy_perturbative_matched(const DeviceSpec& spec) {
  return spec.rwa ? xy_perturbative(spec) : xy_perturbative_counter_rotating(spec);
}

std::optional<double> evaluate(const DeviceSpec& spec, Quantity quantity) {
  try {
    switch (quantity) {
      case Quantity::zeta_exact:
        return zz_strength(spec) * 1e3;
      case Quantity::zeta_perturbative:
        return zz_perturbative(spec).total * 1e3;
      case Quantity::j_perturbative:
        return xy_perturbative_matched(spec) * 1e3;
      case Quantity::j_resonant:
        return xy_strength_resonant(spec) * 1e3;
    }
  } catch (const IllDefined&) {
  } catch (const SingularParameter&) {
  }
  return std::nullopt;
}

Landscape landscape(const DeviceSpec& base, const GridSpec& grid, unsigned threads) {
  base.validate();
  require_three_modes(base);
  grid.wc.validate("wc axis");
  grid.g12.validate("g12 axis");
  Landscape out;
  out.wc = grid.wc.values();
  out.g12 = grid.g12.values();
  out.cells.resize(out.wc.size() * out.g12.size());
  parallel_for(out.cells.size(), threads, [&](std::size_t k) {
    auto& cell = out.cells[k];
    cell.wc = out.wc[k / out.g12.size()];
    cell.g12 = out.g12[k % out.g12.size()];
    cell.value = evaluate(device_at(base, cell.wc, cell.g12), grid.quantity);
    cell.masked = is_zz(grid.quantity) && cell.value && std::abs(*cell.value) < grid.mask_threshold;
  });
  return out;
}

std::vector<double> zero_zz_roots(const DeviceSpec& base, double wc, std::pair<double, double> bracket,
                                  const RootOptions& options) {
  base.validate();
  require_three_modes(base);
  if (!(bracket.first < bracket.second)) throw InvalidArgument("g12 bracket must satisfy lo < hi");
  if (!(options.coarse_step > 0.0)) throw InvalidArgument("coarse_step must be > 0");

  std::vector<double> g;
  for (double x = bracket.first; x < bracket.second - 1e-12; x += options.coarse_step) g.push_back(x);
  g.push_back(bracket.second);
  std::vector<std::optional<double>> z;
  z.reserve(g.size());
  for (const double x : g) z.push_back(zeta_mhz(device_at(base, wc, x)));
  if (!z.front() || !z.back()) throw IllDefined("zeta is ill-defined at a bracket endpoint");
  if (std::all_of(z.begin(), z.end(), [](const auto& v) { return v && std::abs(*v) < 1e-9; }))
    throw IllDefined("zeta vanishes identically over the bracket");

  std::vector<double> roots;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!z[i]) continue;
    if (*z[i] == 0.0) {
      roots.push_back(g[i]);
      continue;
    }
    if (i + 1 < g.size() && z[i + 1] && *z[i + 1] != 0.0 && ((*z[i] < 0.0) != (*z[i + 1] < 0.0)))
      roots.push_back(bisect_root(base, wc, g[i], *z[i], g[i + 1], options));
  }
  return roots;
}

double zero_xy_g12(const DeviceSpec& base, double wc) {
  // J is affine in g12 with unit slope.
  const DeviceSpec spec = device_at(base, wc, 0.0);
  return -xy_perturbative_matched(spec) * 1e3;
}

std::vector<BranchPoint> trace_branches(const DeviceSpec& base, const Axis& wc_axis,
                                        std::pair<double, double> g12_bracket, const BranchOptions& options,
                                        unsigned threads) {
  wc_axis.validate("wc axis");
  const auto wcs = wc_axis.values();
  std::vector<std::vector<double>> columns(wcs.size());
  parallel_for(wcs.size(), threads,
               [&](std::size_t i) { columns[i] = zero_zz_roots(base, wcs[i], g12_bracket, options.roots); });

  std::vector<BranchPoint> points;
  std::optional<double> last[2];
  for (std::size_t i = 0; i < wcs.size(); ++i) {
    const auto& roots = columns[i];
    if (roots.empty()) continue;
    std::vector<std::pair<BranchId, double>> assigned;
    if (roots.size() == 1) {
      BranchId id = BranchId::lower;
      if (last[0] && last[1])
        id = std::abs(roots[0] - *last[1]) < std::abs(roots[0] - *last[0]) ? BranchId::upper : BranchId::lower;
      else if (last[1])
        id = BranchId::upper;
      assigned.emplace_back(id, roots[0]);
    } else {
      assigned.emplace_back(BranchId::lower, roots.front());
      assigned.emplace_back(BranchId::upper, roots.back());
    }
    for (const auto& [id, g12] : assigned) {
      auto& previous = last[id == BranchId::lower ? 0 : 1];
      BranchPoint p;
      p.wc = wcs[i];
      p.g12_root = g12;
      p.branch_id = id;
      p.discontinuity = previous && std::abs(g12 - *previous) > options.jump_threshold;
      previous = g12;
      points.push_back(p);
    }
  }

  parallel_for(points.size(), threads, [&](std::size_t k) {
    auto& p = points[k];
    const DeviceSpec spec = device_at(base, p.wc, p.g12_root);
    p.zeta_residual = zeta_mhz(spec).value_or(kNaN) * 1e3;
    p.maintained_j = maintained_j(spec, options);
  });
  return points;
}

}  // namespace zzlab
