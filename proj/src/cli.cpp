#include "zzlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "zzlab/format.hpp"
#include "zzlab/spectrum.hpp"
#include "zzlab/sweep.hpp"

namespace zzlab::cli {

namespace {

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json envelope(const RunConfig& config, const std::string& command) {
  return {{"command", command}, {"config_hash", config.hash}, {"config", config.resolved}};
}

std::string csv_preamble(const RunConfig& config, const std::string& command) {
  return "# zzlab " + command + " config_hash=" + config.hash + "\n# config=" + config.resolved.dump() + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path + ": cannot open for writing");
  f << content;
}

Json metrics_json(const GateMetrics& m) {
  return {{"swap_error", m.swap_error},
          {"leakage_l1", m.leakage_l1},
          {"conditional_phase_error_rad", number_or_null(m.conditional_phase_error)},
          {"fidelity", m.fidelity},
          {"hold_time_ns", number_or_null(m.hold_time)}};
}

}  // namespace

IswapPlan iswap_plan(const RunConfig& config) {
  const DeviceSpec& idle = config.device;
  const std::string& coupler = idle.modes.size() == 3 ? idle.modes[1].label : std::string();
  double coupler_frequency = coupler.empty() ? 0.0 : idle.modes[1].frequency;
  for (const auto& t : config.iswap_targets)
    if (t.mode == coupler && t.frequency) coupler_frequency = *t.frequency;

  IswapPlan plan;
  plan.rise_time = config.rise_time;
  plan.hold_time = config.hold_time;
  plan.dt = config.dt.value_or(kDefaultFluxDt);
  for (const auto& t : config.iswap_targets) {
    if (t.frequency) {
      plan.targets.emplace_back(t.mode, *t.frequency);
      continue;
    }
    if (coupler.empty()) throw ConfigError("$.iswap.targets: dressed_resonance needs a three-mode device");
    if (t.mode != idle.modes.front().label && t.mode != idle.modes.back().label)
      throw ConfigError("$.iswap.targets: dressed_resonance applies to a qubit, not '" + t.mode + "'");
    plan.targets.emplace_back(
        t.mode, dressed_resonance_target(idle, coupler, coupler_frequency, t.mode, config.resonance_half_width) +
            t.detuning);
  }
  return plan;
}

std::string cmd_spectrum(const RunConfig& config) {
  const auto report = coupling_report(config.device, config.hybridization);
  Json doc = envelope(config, "spectrum");
  doc["report"] = {{"zeta_MHz", report.zeta * 1e3},
                   {"j_MHz", report.j_resonant ? Json(*report.j_resonant * 1e3) : Json(nullptr)},
                   {"omega1_GHz", number_or_null(report.omega1)},
                   {"omega2_GHz", number_or_null(report.omega2)},
                   {"mixed", report.mixed},
                   {"overlaps",
                    {{"000", report.overlaps[0]},
                     {"001", report.overlaps[1]},
                     {"100", report.overlaps[2]},
                     {"101", report.overlaps[3]}}}};
  return doc.dump(2) + "\n";
}

std::string cmd_sweep(const RunConfig& config) {
  const auto grid = landscape(config.device, config.grid, config.threads);
  if (config.svg) write_file(*config.svg, landscape_svg(grid));
  std::string csv = csv_preamble(config, "sweep");
  csv += csv_row({"wc_GHz", "g12_MHz", "value", "masked"});
  for (const auto& cell : grid.cells)
    csv += csv_row({format_double(cell.wc), format_double(cell.g12), cell.value ? format_double(*cell.value) : "",
                    cell.masked ? "1" : "0"});
  return csv;
}

std::string cmd_branch(const RunConfig& config) {
  const auto points =
      trace_branches(config.device, config.branch_wc, config.branch_bracket, config.branch, config.threads);
  std::string csv = csv_preamble(config, "branch");
  csv += csv_row({"wc_GHz", "g12_MHz", "zeta_kHz", "J_MHz", "branch", "break"});
  for (const auto& p : points)
    csv += csv_row({format_double(p.wc), format_double(p.g12_root), format_double(p.zeta_residual),
                    format_double(p.maintained_j), to_string(p.branch_id), p.discontinuity ? "1" : "0"});
  return csv;
}

std::string cmd_cr(const RunConfig& config, std::string& trace_csv) {
  DriveSpec drive = config.drive;
  if (drive.frequency == 0.0) drive.frequency = cross_resonance_drive(config.device, drive.amplitude).frequency;
  const auto result = cr_period(config.device, drive, config.cr_duration, config.cr);
  Json doc = envelope(config, "cr");
  doc["result"] = {{"resolved", result.resolved},
                   {"below_resolution", !result.resolved},
                   {"period_ns", number_or_null(result.period)},
                   {"j_MHz", number_or_null(result.j_estimate * 1e3)},
                   {"contrast", result.contrast},
                   {"delta12_MHz", result.delta12 * 1e3},
                   {"drive_frequency_GHz", drive.frequency}};
  trace_csv = csv_preamble(config, "cr");
  trace_csv += csv_row({"t_ns", "P_q2"});
  for (std::size_t i = 0; i < result.times.size(); ++i)
    trace_csv += csv_row({format_double(result.times[i]), format_double(result.target_population[i])});
  return doc.dump(2) + "\n";
}

std::string cmd_iswap(const RunConfig& config) {
  const IswapPlan plan = iswap_plan(config);
  const auto gate = iswap_unitary(config.device, plan.schedule(config.device), plan.dt);
  const auto metrics = gate_metrics(gate, plan.hold_time);
  Json doc = envelope(config, "iswap");
  Json targets = Json::array();
  for (const auto& [mode, f] : plan.targets) targets.push_back({{"mode", mode}, {"frequency_ghz", f}});
  Json re = Json::array();
  Json im = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row_re = Json::array();
    Json row_im = Json::array();
    for (int j = 0; j < 4; ++j) {
      row_re.push_back(gate.matrix(i, j).real());
      row_im.push_back(gate.matrix(i, j).imag());
    }
    re.push_back(row_re);
    im.push_back(row_im);
  }
  doc["interaction_targets"] = targets;
  doc["duration_ns"] = gate.duration;
  doc["metrics"] = metrics_json(metrics);
  doc["leakage_per_input"] = gate.leakage;
  doc["matrix"] = {{"basis", {"000", "001", "100", "101"}}, {"real", re}, {"imag", im}};
  return doc.dump(2) + "\n";
}

std::string cmd_scan(const RunConfig& config) {
  const IswapPlan plan = iswap_plan(config);
  const auto holds = config.holds.values();
  const auto metrics = hold_scan(config.device, plan, holds, config.threads);
  std::string csv = csv_preamble(config, "scan");
  csv += csv_row({"hold_ns", "swap_error", "leakage_l1", "conditional_phase_error", "fidelity"});
  for (const auto& m : metrics)
    csv += csv_row({format_double(m.hold_time), format_double(m.swap_error), format_double(m.leakage_l1),
                    format_double(m.conditional_phase_error), format_double(m.fidelity)});
  return csv;
}

std::string landscape_svg(const Landscape& landscape) {
  constexpr int kCell = 6;
  const auto nx = landscape.wc.size();
  const auto ny = landscape.g12.size();
  double lo = 0.0;
  double hi = 0.0;
  bool any = false;
  for (const auto& c : landscape.cells) {
    if (!c.value || c.masked) continue;
    lo = any ? std::min(lo, *c.value) : *c.value;
    hi = any ? std::max(hi, *c.value) : *c.value;
    any = true;
  }
  const double span = hi > lo ? hi - lo : 1.0;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << nx * kCell << "\" height=\"" << ny * kCell
      << "\">\n";
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const auto& c = landscape.at(i, j);
      if (!c.value || c.masked) continue;
      const double u = (*c.value - lo) / span;
      const int r = static_cast<int>(std::lround(255 * u));
      const int b = 255 - r;
      svg << "<rect x=\"" << i * kCell << "\" y=\"" << (ny - 1 - j) * kCell << "\" width=\"" << kCell
          << "\" height=\"" << kCell << "\" fill=\"rgb(" << r << ",0," << b << ")\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transmon-coupler-transmon ZZ/XY analysis"};
  app.require_subcommand(1);
  std::string config_path;
  Overrides overrides;
  std::optional<int> levels;
  std::optional<double> dt;
  std::optional<std::string> out_path;
  std::optional<unsigned> threads;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"spectrum", "zeta, dressed frequencies and resonant J as JSON"},
      {"sweep", "landscape over (wc, g12) as CSV"},
      {"branch", "zero-ZZ branches with maintained J as CSV"},
      {"cr", "cross-resonance J estimate as JSON"},
      {"iswap", "iSWAP gate metrics as JSON"},
      {"scan", "iSWAP hold-time scan as CSV"}};
  for (const auto& [name, description] : commands) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("config", config_path, "JSON run configuration")->required();
    sub->add_option("--levels", levels, "Levels per mode");
    sub->add_option("--dt", dt, "Time step in ns");
    sub->add_option("--out", out_path, "Output file (default: stdout)");
    sub->add_option("--threads", threads, "Worker threads for sweep, branch and scan");
    sub->add_flag("--rwa", overrides.rwa, "Rotating-wave coupling");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  overrides.levels = levels;
  overrides.dt = dt;
  overrides.out = out_path;
  overrides.threads = threads;

  try {
    const RunConfig config = load_config_file(config_path, command, overrides);
    std::string result;
    std::string trace;
    if (command == "spectrum") result = cmd_spectrum(config);
    if (command == "sweep") result = cmd_sweep(config);
    if (command == "branch") result = cmd_branch(config);
    if (command == "cr") result = cmd_cr(config, trace);
    if (command == "iswap") result = cmd_iswap(config);
    if (command == "scan") result = cmd_scan(config);
    if (config.trace && !trace.empty()) write_file(*config.trace, trace);
    if (config.out)
      write_file(*config.out, result);
    else
      out << result;
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kConfigError;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kConfigError;
  } catch (const IllDefined& e) {
    err << "ill-defined: " << e.what();
    if (!e.overlaps().empty()) {
      err << " (overlaps:";
      for (const double o : e.overlaps()) err << ' ' << format_double(o);
      err << ')';
    }
    err << "\n";
    return kIllDefined;
  } catch (const SingularParameter& e) {
    err << "ill-defined: " << e.what() << "\n";
    return kIllDefined;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace zzlab::cli
