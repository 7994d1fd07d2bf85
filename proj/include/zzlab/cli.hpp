#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zzlab/config.hpp"
#include "zzlab/dynamics.hpp"

namespace zzlab::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kIllDefined = 2, kNumericalFailure = 3 };

/// Entry point behind the `zzlab` executable. Results go to the configured
/// output path or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Interaction plan for the configured iSWAP, with dressed-resonance targets
/// resolved to bare frequencies.
IswapPlan iswap_plan(const RunConfig& config);

std::string cmd_spectrum(const RunConfig& config);
std::string cmd_sweep(const RunConfig& config);
std::string cmd_branch(const RunConfig& config);
/// Returns the JSON report; the oscillation trace goes to `trace_csv`.
std::string cmd_cr(const RunConfig& config, std::string& trace_csv);
std::string cmd_iswap(const RunConfig& config);
std::string cmd_scan(const RunConfig& config);

std::string landscape_svg(const Landscape& landscape);

}  // namespace zzlab::cli
