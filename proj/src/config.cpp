#include "zzlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "zzlab/format.hpp"

namespace zzlab {

namespace {

using Check = std::function<std::optional<std::string>(double)>;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

std::string child(const std::string& path, std::string_view key) { return path + "." + std::string(key); }

std::optional<std::string> any(double) { return std::nullopt; }

Check positive() {
  return [](double x) -> std::optional<std::string> {
    if (x > 0.0) return std::nullopt;
    return "must be > 0";
  };
}

Check non_negative() {
  return [](double x) -> std::optional<std::string> {
    if (x >= 0.0) return std::nullopt;
    return "must be >= 0";
  };
}

Check within(double lo, double hi) {
  return [lo, hi](double x) -> std::optional<std::string> {
    if (x > lo && x <= hi) return std::nullopt;
    return "must lie in (" + format_double(lo) + ", " + format_double(hi) + "]";
  };
}

/// Strict reader for one JSON object: rejects unknown keys and records every
/// value it hands out (defaults included) in out().
class Reader {
 public:
  Reader(const Json* in, std::string path, std::vector<std::string> allowed)
      : in_(in), path_(std::move(path)), out_(Json::object()) {
    if (in_ && !in_->is_object()) fail(path_, "must be an object");
    if (in_)
      for (const auto& [key, value] : in_->items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(child(path_, key), "unknown key");
  }

  const Json* get(const std::string& key) const {
    if (!in_) return nullptr;
    const auto it = in_->find(key);
    if (it == in_->end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string path(const std::string& key) const { return child(path_, key); }

  double real(const std::string& key, std::optional<double> fallback, const Check& check = any) {
    const auto v = optional_real(key, check);
    if (v) return *v;
    if (!fallback) fail(path(key), "is required");
    if (auto message = check(*fallback)) fail(path(key), *message);
    out_[key] = *fallback;
    return *fallback;
  }

  std::optional<double> optional_real(const std::string& key, const Check& check = any) {
    const Json* v = get(key);
    if (!v) {
      out_[key] = nullptr;
      return std::nullopt;
    }
    if (!v->is_number()) fail(path(key), "must be a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) fail(path(key), "must be finite");
    if (auto message = check(x)) fail(path(key), *message);
    out_[key] = x;
    return x;
  }

  std::optional<long long> optional_integer(const std::string& key, long long minimum) {
    const Json* v = get(key);
    if (!v) {
      out_[key] = nullptr;
      return std::nullopt;
    }
    if (!v->is_number_integer()) fail(path(key), "must be an integer");
    const auto x = v->get<long long>();
    if (x < minimum) fail(path(key), "must be >= " + std::to_string(minimum));
    out_[key] = x;
    return x;
  }

  long long integer(const std::string& key, long long fallback, long long minimum) {
    const auto v = optional_integer(key, minimum);
    if (v) return *v;
    out_[key] = fallback;
    return fallback;
  }

  bool boolean(const std::string& key, bool fallback) {
    const Json* v = get(key);
    bool x = fallback;
    if (v) {
      if (!v->is_boolean()) fail(path(key), "must be true or false");
      x = v->get<bool>();
    }
    out_[key] = x;
    return x;
  }

  std::optional<std::string> optional_text(const std::string& key, const std::vector<std::string>& choices = {}) {
    const Json* v = get(key);
    if (!v) {
      out_[key] = nullptr;
      return std::nullopt;
    }
    if (!v->is_string()) fail(path(key), "must be a string");
    auto x = v->get<std::string>();
    if (!choices.empty() && std::find(choices.begin(), choices.end(), x) == choices.end()) {
      std::string options;
      for (const auto& c : choices) options += (options.empty() ? "" : ", ") + c;
      fail(path(key), "must be one of " + options);
    }
    out_[key] = x;
    return x;
  }

  std::string text(const std::string& key, std::optional<std::string> fallback,
                   const std::vector<std::string>& choices = {}) {
    const auto v = optional_text(key, choices);
    if (v) return *v;
    if (!fallback) fail(path(key), "is required");
    out_[key] = *fallback;
    return *fallback;
  }

  Axis axis(const std::string& key) {
    Reader r(require_object(key), path(key), {"start", "stop", "step"});
    Axis a;
    a.start = r.real("start", std::nullopt);
    a.stop = r.real("stop", std::nullopt);
    a.step = r.real("step", std::nullopt, positive());
    out_[key] = r.out();
    return a;
  }

  const Json* require_object(const std::string& key) const {
    const Json* v = get(key);
    if (!v) fail(path(key), "is required");
    return v;
  }

  void set(const std::string& key, Json value) { out_[key] = std::move(value); }
  const Json& out() const { return out_; }

 private:
  const Json* in_;
  std::string path_;
  Json out_;
};

std::string scaling_name(CouplingScaling s) { return s == CouplingScaling::constant ? "constant" : "sqrt_frequency"; }

DeviceSpec read_device(const Json& device, Json* echo = nullptr) {
  Reader r(&device, "$.device", {"modes", "couplings", "rwa", "energy_offset_ghz"});
  DeviceSpec spec;
  Json modes_out = Json::array();
  Json couplings_out = Json::array();
  const Json* modes = r.require_object("modes");
  if (!modes->is_array() || modes->empty()) fail(r.path("modes"), "must be a non-empty array");
  for (std::size_t i = 0; i < modes->size(); ++i) {
    Reader m(&(*modes)[i], r.path("modes") + "[" + std::to_string(i) + "]",
             {"label", "frequency_ghz", "anharmonicity_mhz", "n_levels"});
    ModeSpec mode;
    mode.label = m.text("label", std::nullopt);
    mode.frequency = m.real("frequency_ghz", std::nullopt, positive());
    mode.anharmonicity = m.real("anharmonicity_mhz", 0.0) * 1e-3;
    mode.n_levels = static_cast<int>(m.integer("n_levels", 5, 2));
    spec.modes.push_back(mode);
    modes_out.push_back(m.out());
  }
  if (const Json* couplings = r.get("couplings")) {
    if (!couplings->is_array()) fail(r.path("couplings"), "must be an array");
    for (std::size_t i = 0; i < couplings->size(); ++i) {
      const std::string path = r.path("couplings") + "[" + std::to_string(i) + "]";
      Reader c(&(*couplings)[i], path, {"modes", "strength_mhz", "scaling"});
      const Json* pair = c.require_object("modes");
      if (!pair->is_array() || pair->size() != 2 || !(*pair)[0].is_string() || !(*pair)[1].is_string())
        fail(c.path("modes"), "must be a pair of mode labels");
      CouplingSpec coupling;
      coupling.mode_a = (*pair)[0].get<std::string>();
      coupling.mode_b = (*pair)[1].get<std::string>();
      coupling.strength = c.real("strength_mhz", std::nullopt) * 1e-3;
      coupling.scaling = c.text("scaling", "constant", {"constant", "sqrt_frequency"}) == "constant"
                             ? CouplingScaling::constant
                             : CouplingScaling::sqrt_frequency;
      spec.couplings.push_back(coupling);
      c.set("modes", *pair);
      couplings_out.push_back(c.out());
    }
  }
  spec.rwa = r.boolean("rwa", false);
  spec.energy_offset = r.real("energy_offset_ghz", 0.0);
  if (echo)
    *echo = {{"modes", modes_out},
             {"couplings", couplings_out},
             {"rwa", spec.rwa},
             {"energy_offset_ghz", spec.energy_offset}};
  return spec;
}

}  // namespace

DeviceSpec device_from_json(const Json& device) {
  DeviceSpec spec = read_device(device);
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    fail("$.device", e.what());
  }
  return spec;
}

Json device_to_json(const DeviceSpec& spec) {
  Json modes = Json::array();
  for (const auto& m : spec.modes)
    modes.push_back({{"label", m.label},
                     {"frequency_ghz", m.frequency},
                     {"anharmonicity_mhz", m.anharmonicity * 1e3},
                     {"n_levels", m.n_levels}});
  Json couplings = Json::array();
  for (const auto& c : spec.couplings)
    couplings.push_back(
        {{"modes", {c.mode_a, c.mode_b}}, {"strength_mhz", c.strength * 1e3}, {"scaling", scaling_name(c.scaling)}});
  return {{"modes", modes}, {"couplings", couplings}, {"rwa", spec.rwa}, {"energy_offset_ghz", spec.energy_offset}};
}

RunConfig load_config(const Json& raw, const std::string& command, const Overrides& overrides) {
  static const std::vector<std::string> kCommands = {"spectrum", "sweep", "branch", "cr", "iswap", "scan"};
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
    throw ConfigError("unknown command '" + command + "'");
  Reader top(&raw, "$", {"device", "numerics", "output", "spectrum", "sweep", "branch", "cr", "iswap", "scan"});
  RunConfig cfg;
  Json resolved = Json::object();

  // Execution settings: not part of the echoed physics configuration.
  {
    Reader out(top.get("output"), "$.output", {"path", "svg", "trace"});
    cfg.out = out.optional_text("path");
    cfg.svg = out.optional_text("svg");
    cfg.trace = out.optional_text("trace");
    if (overrides.out) cfg.out = overrides.out;
  }

  Reader numerics(top.get("numerics"), "$.numerics", {"n_levels", "dt_ns", "threads", "max_dimension"});
  auto levels = numerics.optional_integer("n_levels", 2);
  cfg.dt = numerics.optional_real("dt_ns", positive());
  cfg.threads = static_cast<unsigned>(numerics.integer("threads", 1, 1));
  cfg.max_dimension = static_cast<std::size_t>(numerics.integer("max_dimension", kDefaultMaxDimension, 8));
  if (overrides.levels) {
    if (*overrides.levels < 2) fail("--levels", "must be >= 2");
    levels = *overrides.levels;
  }
  if (overrides.dt) {
    if (!(*overrides.dt > 0.0)) fail("--dt", "must be > 0");
    cfg.dt = overrides.dt;
  }
  if (overrides.threads) {
    if (*overrides.threads < 1) fail("--threads", "must be >= 1");
    cfg.threads = *overrides.threads;
  }
  Json numerics_out = numerics.out();
  numerics_out.erase("threads");
  numerics_out["n_levels"] = levels ? Json(*levels) : Json(nullptr);
  numerics_out["dt_ns"] = cfg.dt ? Json(*cfg.dt) : Json(nullptr);
  resolved["numerics"] = numerics_out;

  const Json* device = top.get("device");
  if (!device) fail("$.device", "is required");
  Json device_echo;
  cfg.device = read_device(*device, &device_echo);
  if (levels) {
    cfg.device = cfg.device.with_levels(static_cast<int>(*levels));
    for (auto& m : device_echo["modes"]) m["n_levels"] = *levels;
  }
  if (overrides.rwa) cfg.device.rwa = device_echo["rwa"] = true;
  try {
    cfg.device.validate();
  } catch (const InvalidArgument& e) {
    fail("$.device", e.what());
  }
  if (cfg.device.dimension() > cfg.max_dimension)
    fail("$.device", "Hilbert dimension " + std::to_string(cfg.device.dimension()) + " exceeds max_dimension " +
                         std::to_string(cfg.max_dimension));
  resolved["device"] = device_echo;

  auto needs = [&](const std::string& block) {
    return command == block || (command == "scan" && block == "iswap");
  };
  auto block = [&](const std::string& name, bool required) -> const Json* {
    const Json* b = top.get(name);
    if (!b && required) fail("$." + name, "is required for '" + command + "'");
    return b;
  };

  if (const Json* b = block("spectrum", false); b || needs("spectrum")) {
    Reader r(b, "$.spectrum", {"hybridization"});
    cfg.hybridization = r.real("hybridization", 0.25, within(0.0, 0.5));
    resolved["spectrum"] = r.out();
  }
  if (const Json* b = block("sweep", needs("sweep")); b) {
    Reader r(b, "$.sweep", {"wc_ghz", "g12_mhz", "quantity", "mask_threshold_khz"});
    cfg.grid.wc = r.axis("wc_ghz");
    cfg.grid.g12 = r.axis("g12_mhz");
    if (!(cfg.grid.wc.start < cfg.grid.wc.stop)) fail(r.path("wc_ghz"), "start must be < stop");
    if (!(cfg.grid.g12.start < cfg.grid.g12.stop)) fail(r.path("g12_mhz"), "start must be < stop");
    cfg.grid.quantity = quantity_from_string(
        r.text("quantity", "zeta_exact", {"zeta_exact", "zeta_perturbative", "j_perturbative", "j_resonant"}));
    cfg.grid.mask_threshold = r.real("mask_threshold_khz", 20.0, non_negative()) * 1e-3;
    resolved["sweep"] = r.out();
  }
  if (const Json* b = block("branch", needs("branch")); b) {
    Reader r(b, "$.branch",
             {"wc_ghz", "g12_bracket_mhz", "coarse_step_mhz", "zeta_tolerance_khz", "g12_tolerance_mhz",
              "jump_threshold_mhz", "maintained", "cr_amplitude_mhz", "cr_duration_ns"});
    cfg.branch_wc = r.axis("wc_ghz");
    if (const Json* br = r.get("g12_bracket_mhz")) {
      if (!br->is_array() || br->size() != 2 || !(*br)[0].is_number() || !(*br)[1].is_number())
        fail(r.path("g12_bracket_mhz"), "must be [lo, hi]");
      cfg.branch_bracket = {(*br)[0].get<double>(), (*br)[1].get<double>()};
      if (!(cfg.branch_bracket.first < cfg.branch_bracket.second)) fail(r.path("g12_bracket_mhz"), "needs lo < hi");
    }
    r.set("g12_bracket_mhz", {cfg.branch_bracket.first, cfg.branch_bracket.second});
    cfg.branch.roots.coarse_step = r.real("coarse_step_mhz", 0.25, positive());
    cfg.branch.roots.zeta_tolerance = r.real("zeta_tolerance_khz", 0.1, positive()) * 1e-3;
    cfg.branch.roots.g12_tolerance = r.real("g12_tolerance_mhz", 1e-3, positive());
    cfg.branch.jump_threshold = r.real("jump_threshold_mhz", 1.0, positive());
    cfg.branch.maintained = maintained_j_from_string(
        r.text("maintained", "perturbative", {"perturbative", "resonant", "cross_resonance"}));
    cfg.branch.cr_amplitude = r.real("cr_amplitude_mhz", 4.0, non_negative()) * 1e-3;
    cfg.branch.cr_duration = r.real("cr_duration_ns", 200000.0, positive());
    if (cfg.dt) cfg.branch.cr.dt = *cfg.dt;
    resolved["branch"] = r.out();
  }
  if (const Json* b = block("cr", false); b || needs("cr")) {
    Reader r(b, "$.cr", {"amplitude_mhz", "frequency_ghz", "phase_rad", "duration_ns", "samples", "min_contrast"});
    cfg.drive.target_mode = cfg.device.modes.front().label;
    cfg.drive.amplitude = r.real("amplitude_mhz", 4.0, non_negative()) * 1e-3;
    cfg.drive.frequency = r.optional_real("frequency_ghz", positive()).value_or(0.0);
    cfg.drive.phase = r.real("phase_rad", 0.0);
    cfg.cr_duration = r.real("duration_ns", 200000.0, positive());
    cfg.cr.samples = static_cast<std::size_t>(r.integer("samples", 2000, 8));
    cfg.cr.min_contrast = r.real("min_contrast", 1e-4, positive());
    if (cfg.dt) cfg.cr.dt = *cfg.dt;
    resolved["cr"] = r.out();
  }
  if (const Json* b = block("iswap", needs("iswap")); b) {
    Reader r(b, "$.iswap", {"targets", "rise_time_ns", "hold_time_ns", "resonance_half_width_ghz"});
    const Json* targets = r.require_object("targets");
    if (!targets->is_array()) fail(r.path("targets"), "must be an array");
    Json targets_out = Json::array();
    for (std::size_t i = 0; i < targets->size(); ++i) {
      const std::string path = r.path("targets") + "[" + std::to_string(i) + "]";
      Reader t(&(*targets)[i], path, {"mode", "frequency_ghz", "dressed_resonance", "detuning_mhz"});
      IswapTarget target;
      target.mode = t.text("mode", std::nullopt);
      try {
        cfg.device.mode_index(target.mode);
      } catch (const InvalidArgument&) {
        fail(t.path("mode"), "unknown mode '" + target.mode + "'");
      }
      target.frequency = t.optional_real("frequency_ghz", positive());
      target.dressed_resonance = t.boolean("dressed_resonance", false);
      if (target.frequency.has_value() == target.dressed_resonance)
        fail(path, "give exactly one of frequency_ghz or dressed_resonance");
      target.detuning = t.real("detuning_mhz", 0.0) * 1e-3;
      if (target.detuning != 0.0 && !target.dressed_resonance)
        fail(t.path("detuning_mhz"), "only applies to a dressed_resonance target");
      cfg.iswap_targets.push_back(target);
      targets_out.push_back(t.out());
    }
    r.set("targets", targets_out);
    cfg.rise_time = r.real("rise_time_ns", 5.66, positive());
    cfg.hold_time = r.real("hold_time_ns", 0.0, non_negative());
    cfg.resonance_half_width = r.real("resonance_half_width_ghz", 0.05, positive());
    resolved["iswap"] = r.out();
  }
  if (const Json* b = block("scan", needs("scan")); b) {
    Reader r(b, "$.scan", {"holds_ns"});
    cfg.holds = r.axis("holds_ns");
    if (cfg.holds.start < 0.0) fail(r.path("holds_ns") + ".start", "must be >= 0");
    resolved["scan"] = r.out();
  }

  cfg.resolved = std::move(resolved);
  cfg.hash = hex64(fnv1a64(cfg.resolved.dump()));
  return cfg;
}

RunConfig load_config_file(const std::string& path, const std::string& command, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json raw;
  try {
    raw = Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  return load_config(raw, command, overrides);
}

}  // namespace zzlab
