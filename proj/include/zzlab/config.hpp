#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zzlab/dynamics.hpp"
#include "zzlab/errors.hpp"
#include "zzlab/model.hpp"
#include "zzlab/sweep.hpp"

// Run configuration: one JSON document per run, validated strictly and
// resolved with every default filled in.
namespace zzlab {

using Json = nlohmann::json;

/// Malformed or out-of-range configuration; the message starts with the
/// JSON path of the offending value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Scalar command-line overrides.
struct Overrides {
  std::optional<int> levels;
  std::optional<double> dt;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  bool rwa = false;
};

struct IswapTarget {
  std::string mode;
  std::optional<double> frequency;  // GHz
  bool dressed_resonance = false;
  double detuning = 0.0;  // GHz, added to the dressed-resonance frequency
};

struct RunConfig {
  /// Physics configuration with defaults applied; echoed into outputs.
  Json resolved;
  std::string hash;
  DeviceSpec device;

  unsigned threads = 1;
  std::optional<std::string> out;
  std::optional<std::string> svg;
  std::optional<std::string> trace;
  std::optional<double> dt;
  std::size_t max_dimension = kDefaultMaxDimension;

  double hybridization = 0.25;
  GridSpec grid;

  Axis branch_wc;
  std::pair<double, double> branch_bracket{-5.0, 15.0};
  BranchOptions branch;

  DriveSpec drive;  // frequency 0 means the dressed Q2 frequency
  double cr_duration = 200000.0;
  CrOptions cr;

  std::vector<IswapTarget> iswap_targets;
  double rise_time = 5.66;
  double hold_time = 0.0;
  double resonance_half_width = 0.05;
  Axis holds;
};

/// `command` selects which experiment block is required.
RunConfig load_config(const Json& raw, const std::string& command, const Overrides& overrides = {});
RunConfig load_config_file(const std::string& path, const std::string& command, const Overrides& overrides = {});

DeviceSpec device_from_json(const Json& device);
Json device_to_json(const DeviceSpec& spec);

}  // namespace zzlab
