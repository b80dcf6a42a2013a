#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fiberqed/sweep.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Replaces (or appends) `key = value` entries in a config document; an
// override of `sweep` drops every existing sweep line first.
std::string apply_overrides(const std::string& text, const std::vector<std::string>& overrides) {
    std::vector<std::pair<std::string, std::string>> extra;
    bool replace_sweeps = false;
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("override must look like key=value: " + ov);
        std::string key = ov.substr(0, eq);
        std::string value = ov.substr(eq + 1);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        if (key == "sweep") replace_sweeps = true;
        extra.emplace_back(key, value);
    }

    std::ostringstream out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        bool drop = false;
        if (eq != std::string::npos) {
            std::string key = line.substr(0, eq);
            key.erase(0, key.find_first_not_of(" \t"));
            key.erase(key.find_last_not_of(" \t") + 1);
            if (key == "sweep" && replace_sweeps) drop = true;
            for (const auto& [k, v] : extra)
                if (k == key && k != "sweep") drop = true;
        }
        if (!drop) out << line << '\n';
    }
    for (const auto& [k, v] : extra) out << k << " = " << v << '\n';
    return out.str();
}

int execute(const std::string& config_text, const std::string& out_dir, int threads,
            double grid_step) {
    fiberqed::SweepSpec spec = fiberqed::parse_config(config_text);
    if (grid_step > 0.0) spec.base.tau_step = grid_step;

    const fiberqed::RunManifest manifest = fiberqed::run_sweep(spec, out_dir, threads);
    for (const auto& res : manifest.results) {
        std::string params;
        for (const auto& [key, value] : res.params) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), " %s=%g", key.c_str(), value);
            params += buf;
        }
        if (res.ok)
            std::printf("%-40s%s  peak F = %.6f at tau = %.4f\n", res.csv_file.c_str(),
                        params.c_str(), res.peak_value, res.peak_tau);
        else
            std::printf("%-40s%s  FAILED: %s\n", res.csv_file.c_str(), params.c_str(),
                        res.error.c_str());
    }
    std::printf("wrote %zu series + summary.csv to %s\n", manifest.results.size(),
                out_dir.c_str());
    return manifest.all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fidelity simulations of state transfer and two-qubit gates between "
                 "atomic ensembles in fiber-coupled cavities"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    int threads = 1;
    double grid_step = 0.0;
    app.add_option("--out", out_dir, "Output directory for CSV artifacts");
    app.add_option("--threads", threads, "Worker threads for sweep combinations")
        ->check(CLI::PositiveNumber);
    app.add_option("--grid-step", grid_step, "Override the tau grid step")
        ->check(CLI::PositiveNumber);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run a sweep described by a config file");
    run->fallthrough();
    run->add_option("config", config_path, "Path to the config file")->required();

    std::string preset_name;
    std::vector<std::string> overrides;
    auto* preset = app.add_subcommand("preset", "Run a named preset sweep");
    preset->fallthrough();
    preset->add_option("name", preset_name, "Preset name (see list-presets)")->required();
    preset->add_option("--set", overrides, "Override a config key, e.g. --set N=100");

    auto* list = app.add_subcommand("list-presets", "List the available presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& p : fiberqed::preset_registry())
                std::printf("%-8s %s\n", p.name.c_str(), p.description.c_str());
            return 0;
        }
        if (run->parsed()) return execute(read_file(config_path), out_dir, threads, grid_step);
        const fiberqed::Preset& p = fiberqed::find_preset(preset_name);
        return execute(apply_overrides(p.config_text, overrides), out_dir, threads, grid_step);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
