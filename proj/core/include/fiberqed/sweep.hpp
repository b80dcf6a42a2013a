#pragma once

#include <string>
#include <vector>

#include "fiberqed/protocols.hpp"

namespace fiberqed {

inline constexpr const char* kVersion = "0.1.0";

// One swept parameter. Valid names: r, delta, N, kappa, gamma, beta, k, and
// kappa_gamma (sets kappa and gamma jointly, for equal-rate loss scans).
struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct SweepSpec {
    std::string name = "run";
    Scenario base;
    std::vector<SweepAxis> axes;  // zero, one, or two
};

// Parses the key = value configuration format (see format_config for the
// canonical form; '#' starts a comment). Unknown keys and invalid
// combinations are rejected with the offending key named.
SweepSpec parse_config(const std::string& text);

// Canonical document that parses back to an identical spec.
std::string format_config(const SweepSpec& spec);

struct CombinationResult {
    std::vector<std::pair<std::string, double>> params;  // axis name -> value
    std::string csv_file;  // file name within the output directory
    bool ok = false;
    std::string error;
    double peak_tau = 0.0;
    double peak_value = 0.0;
    double duration_seconds = 0.0;
};

struct RunManifest {
    std::string version = kVersion;
    SweepSpec spec;
    std::vector<CombinationResult> results;
    bool all_ok = false;
};

// Runs every combination (optionally in a thread pool) and writes one CSV
// per combination plus summary.csv into out_dir. Data sections and '#'
// metadata lines are deterministic for a given spec; volatile fields
// (durations) are confined to '#!' lines. A failing combination is recorded
// in the summary and does not abort the sweep.
RunManifest run_sweep(const SweepSpec& spec, const std::string& out_dir, int threads = 1);

struct Preset {
    std::string name;
    std::string description;
    std::string config_text;
};

// Stable registry of ready-made sweep configurations.
const std::vector<Preset>& preset_registry();
const Preset& find_preset(const std::string& name);  // throws with the valid names listed

}  // namespace fiberqed
