#include "fiberqed/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fiberqed {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

double parse_double(const std::string& key, const std::string& value) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' has non-numeric value '" +
                                    value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("config: key '" + key + "' has trailing junk in '" +
                                    value + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    const int i = static_cast<int>(std::lround(v));
    if (std::abs(v - i) > 1e-12)
        throw std::invalid_argument("config: key '" + key + "' must be an integer, got '" +
                                    value + "'");
    return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw std::invalid_argument("config: key '" + key + "' must be true or false, got '" +
                                value + "'");
}

Protocol parse_protocol(const std::string& value) {
    for (Protocol p : {Protocol::Transfer, Protocol::Swap, Protocol::EntangleE1,
                       Protocol::EntangleE2, Protocol::ControlledZ})
        if (value == protocol_name(p)) return p;
    throw std::invalid_argument(
        "config: unknown protocol '" + value +
        "' (valid: transfer, swap, entangle-e1, entangle-e2, cz)");
}

const std::vector<std::string>& axis_names() {
    static const std::vector<std::string> names{"r",    "delta", "N",          "kappa",
                                                "gamma", "beta",  "kappa_gamma", "k"};
    return names;
}

void apply_axis(Scenario& sc, const std::string& name, double value) {
    if (name == "r") {
        sc.r = value;
        sc.transfer_k = 0;
    } else if (name == "delta") {
        sc.delta = value;
    } else if (name == "N") {
        const int n = static_cast<int>(std::lround(value));
        if (std::abs(value - n) > 1e-12 || n < 1)
            throw std::invalid_argument("sweep: N value must be a positive integer");
        sc.n_atoms = n;
    } else if (name == "kappa") {
        sc.kappa = value;
    } else if (name == "gamma") {
        sc.gamma = value;
    } else if (name == "beta") {
        sc.beta = value;
    } else if (name == "kappa_gamma") {
        sc.kappa = sc.gamma = value;
    } else if (name == "k") {
        const int k = static_cast<int>(std::lround(value));
        if (std::abs(value - k) > 1e-12 || k < 1)
            throw std::invalid_argument("sweep: k value must be a positive integer");
        sc.transfer_k = k;
    } else {
        throw std::invalid_argument("sweep: unknown parameter '" + name + "'");
    }
}

SweepAxis parse_axis(const std::string& value) {
    const auto colon = value.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("config: sweep must look like 'sweep = name: v1 v2 ...'");
    SweepAxis axis;
    axis.name = trim(value.substr(0, colon));
    if (std::find(axis_names().begin(), axis_names().end(), axis.name) == axis_names().end())
        throw std::invalid_argument("config: sweep parameter '" + axis.name +
                                    "' is not one of r, delta, N, kappa, gamma, beta, "
                                    "kappa_gamma, k");
    std::string rest = value.substr(colon + 1);
    std::replace(rest.begin(), rest.end(), ',', ' ');
    std::istringstream in(rest);
    std::string tok;
    while (in >> tok) axis.values.push_back(parse_double("sweep " + axis.name, tok));
    if (axis.values.empty())
        throw std::invalid_argument("config: sweep '" + axis.name + "' has an empty value list");
    return axis;
}

}  // namespace

SweepSpec parse_config(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }

    std::string protocol_value;
    for (const auto& [key, value] : entries)
        if (key == "protocol") {
            if (!protocol_value.empty())
                throw std::invalid_argument("config: duplicate key 'protocol'");
            protocol_value = value;
        }
    if (protocol_value.empty())
        throw std::invalid_argument("config: required key 'protocol' is missing");

    SweepSpec spec;
    spec.base = Scenario::defaults(parse_protocol(protocol_value));

    std::map<std::string, int> seen;
    for (const auto& [key, value] : entries) {
        if (key != "sweep" && ++seen[key] > 1)
            throw std::invalid_argument("config: duplicate key '" + key + "'");
        if (key == "protocol") {
            continue;
        } else if (key == "name") {
            if (value.empty() || value.find_first_of("/\\ \t") != std::string::npos)
                throw std::invalid_argument("config: 'name' must be a non-empty token "
                                            "without spaces or path separators");
            spec.name = value;
        } else if (key == "model") {
            if (value == "full") spec.base.model = Model::Full;
            else if (value == "reduced") spec.base.model = Model::Reduced;
            else
                throw std::invalid_argument("config: model must be full or reduced, got '" +
                                            value + "'");
        } else if (key == "N") {
            spec.base.n_atoms = parse_int(key, value);
            if (spec.base.n_atoms < 1)
                throw std::invalid_argument("config: N must be >= 1");
        } else if (key == "r") {
            spec.base.r = parse_double(key, value);
            spec.base.transfer_k = 0;
        } else if (key == "k") {
            spec.base.transfer_k = parse_int(key, value);
            if (spec.base.transfer_k < 1)
                throw std::invalid_argument("config: k must be >= 1");
        } else if (key == "delta") {
            spec.base.delta = parse_double(key, value);
        } else if (key == "kappa") {
            spec.base.kappa = parse_double(key, value);
            if (spec.base.kappa < 0) throw std::invalid_argument("config: kappa must be >= 0");
        } else if (key == "gamma") {
            spec.base.gamma = parse_double(key, value);
            if (spec.base.gamma < 0) throw std::invalid_argument("config: gamma must be >= 0");
        } else if (key == "beta") {
            spec.base.beta = parse_double(key, value);
            if (spec.base.beta < 0) throw std::invalid_argument("config: beta must be >= 0");
        } else if (key == "blockade") {
            spec.base.blockade = parse_bool(key, value);
        } else if (key == "dissipative") {
            spec.base.dissipative = parse_bool(key, value);
        } else if (key == "tau_max") {
            spec.base.tau_max = parse_double(key, value);
            if (spec.base.tau_max <= 0) throw std::invalid_argument("config: tau_max must be > 0");
        } else if (key == "tau_step") {
            spec.base.tau_step = parse_double(key, value);
            if (spec.base.tau_step <= 0)
                throw std::invalid_argument("config: tau_step must be > 0");
        } else if (key == "qubit_alpha") {
            spec.base.qubit_alpha = parse_double(key, value);
        } else if (key == "qubit_beta") {
            spec.base.qubit_beta = parse_double(key, value);
        } else if (key == "quadrature_order") {
            spec.base.quadrature_order = parse_int(key, value);
            if (spec.base.quadrature_order < 2)
                throw std::invalid_argument("config: quadrature_order must be >= 2");
        } else if (key == "sweep") {
            if (spec.axes.size() >= 2)
                throw std::invalid_argument("config: at most two sweep axes are supported");
            spec.axes.push_back(parse_axis(value));
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }

    for (const auto& axis : spec.axes)
        if (axis.name == "k" && spec.base.protocol != Protocol::Transfer)
            throw std::invalid_argument(
                "config: sweep parameter 'k' only applies to the transfer protocol");
    for (size_t a = 1; a < spec.axes.size(); ++a)
        if (spec.axes[a].name == spec.axes[0].name)
            throw std::invalid_argument("config: sweep parameter '" + spec.axes[a].name +
                                        "' appears twice");

    // Surface invalid physical combinations at parse time.
    spec.base.config();
    return spec;
}

std::string format_config(const SweepSpec& spec) {
    std::ostringstream out;
    out << "name = " << spec.name << '\n';
    out << "protocol = " << protocol_name(spec.base.protocol) << '\n';
    out << "model = " << (spec.base.model == Model::Full ? "full" : "reduced") << '\n';
    out << "N = " << spec.base.n_atoms << '\n';
    if (spec.base.protocol == Protocol::Transfer && spec.base.transfer_k > 0)
        out << "k = " << spec.base.transfer_k << '\n';
    else
        out << "r = " << fmt(spec.base.r) << '\n';
    out << "delta = " << fmt(spec.base.delta) << '\n';
    out << "kappa = " << fmt(spec.base.kappa) << '\n';
    out << "gamma = " << fmt(spec.base.gamma) << '\n';
    out << "beta = " << fmt(spec.base.beta) << '\n';
    out << "blockade = " << (spec.base.blockade ? "true" : "false") << '\n';
    out << "dissipative = " << (spec.base.dissipative ? "true" : "false") << '\n';
    out << "tau_max = " << fmt(spec.base.resolved_tau_max()) << '\n';
    out << "tau_step = " << fmt(spec.base.tau_step) << '\n';
    out << "qubit_alpha = " << fmt(spec.base.qubit_alpha) << '\n';
    out << "qubit_beta = " << fmt(spec.base.qubit_beta) << '\n';
    out << "quadrature_order = " << spec.base.quadrature_order << '\n';
    for (const auto& axis : spec.axes) {
        out << "sweep = " << axis.name << ":";
        for (double v : axis.values) out << ' ' << fmt(v);
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::vector<std::pair<std::string, double>>> combinations(const SweepSpec& spec) {
    std::vector<std::vector<std::pair<std::string, double>>> out;
    if (spec.axes.empty()) {
        out.push_back({});
    } else if (spec.axes.size() == 1) {
        for (double v : spec.axes[0].values) out.push_back({{spec.axes[0].name, v}});
    } else {
        for (double v0 : spec.axes[0].values)
            for (double v1 : spec.axes[1].values)
                out.push_back({{spec.axes[0].name, v0}, {spec.axes[1].name, v1}});
    }
    return out;
}

std::string combo_file_name(const SweepSpec& spec,
                            const std::vector<std::pair<std::string, double>>& params) {
    std::string name = spec.name;
    for (const auto& [key, value] : params) name += "_" + key + "-" + fmt(value, "%g");
    return name + ".csv";
}

void write_config_block(std::ofstream& out, const SweepSpec& spec) {
    out << "# config:\n";
    std::istringstream cfg(format_config(spec));
    std::string line;
    while (std::getline(cfg, line)) out << "#   " << line << '\n';
}

}  // namespace

RunManifest run_sweep(const SweepSpec& spec, const std::string& out_dir, int threads) {
    const auto combos = combinations(spec);
    const int n = static_cast<int>(combos.size());

    RunManifest manifest;
    manifest.spec = spec;
    manifest.results.resize(n);
    std::vector<FidelitySeries> series(n);

    auto run_one = [&](int i) {
        CombinationResult& res = manifest.results[i];
        res.params = combos[i];
        res.csv_file = combo_file_name(spec, combos[i]);
        const auto start = std::chrono::steady_clock::now();
        try {
            Scenario sc = spec.base;
            for (const auto& [key, value] : combos[i]) apply_axis(sc, key, value);
            series[i] = run_scenario(sc);
            res.peak_tau = series[i].peak_tau;
            res.peak_value = series[i].peak_value;
            res.ok = true;
        } catch (const std::exception& e) {
            res.ok = false;
            res.error = e.what();
        }
        res.duration_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    threads = std::max(1, threads);
    if (threads == 1 || n <= 1) {
        for (int i = 0; i < n; ++i) run_one(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        const int workers = std::min(threads, n);
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&]() {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) run_one(i);
            });
        for (auto& th : pool) th.join();
    }
    manifest.all_ok = std::all_of(manifest.results.begin(), manifest.results.end(),
                                  [](const CombinationResult& r) { return r.ok; });

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    for (int i = 0; i < n; ++i) {
        const CombinationResult& res = manifest.results[i];
        if (!res.ok) continue;
        std::ofstream out(fs::path(out_dir) / res.csv_file, std::ios::trunc);
        if (!out) throw std::runtime_error("run_sweep: cannot write " + res.csv_file);
        out << "# fiberqed " << manifest.version << '\n';
        write_config_block(out, spec);
        out << "# combination:";
        if (res.params.empty()) out << " (base)";
        for (const auto& [key, value] : res.params) out << ' ' << key << '=' << fmt(value, "%g");
        out << '\n';
        out << "# peak_tau = " << fmt(res.peak_tau, "%.12g") << '\n';
        out << "# peak_value = " << fmt(res.peak_value, "%.12g") << '\n';
        out << "#! duration_seconds = " << fmt(res.duration_seconds, "%.3f") << '\n';
        out << "tau,fidelity\n";
        for (size_t k = 0; k < series[i].tau.size(); ++k)
            out << fmt(series[i].tau[k], "%.12g") << ',' << fmt(series[i].fidelity[k], "%.12g")
                << '\n';
    }

    std::ofstream out(fs::path(out_dir) / "summary.csv", std::ios::trunc);
    if (!out) throw std::runtime_error("run_sweep: cannot write summary.csv");
    out << "# fiberqed " << manifest.version << '\n';
    write_config_block(out, spec);
    double total = 0.0;
    for (const auto& res : manifest.results) total += res.duration_seconds;
    out << "#! total_duration_seconds = " << fmt(total, "%.3f") << '\n';
    out << "file";
    for (const auto& axis : spec.axes) out << ',' << axis.name;
    out << ",status,peak_tau,peak_value,error\n";
    for (const auto& res : manifest.results) {
        out << res.csv_file;
        for (const auto& [key, value] : res.params) out << ',' << fmt(value, "%g");
        std::string error = res.error;
        std::replace(error.begin(), error.end(), ',', ';');
        std::replace(error.begin(), error.end(), '\n', ' ');
        if (res.ok)
            out << ",ok," << fmt(res.peak_tau, "%.12g") << ',' << fmt(res.peak_value, "%.12g")
                << ",";
        else
            out << ",failed,,," << error;
        out << '\n';
    }
    return manifest;
}

}  // namespace fiberqed
