// faao_cli.cpp - command-line front end: optimize, sweep-power, baseline,
// validate-config.

#include "faao/ao_driver.hpp"
#include "faao/baselines.hpp"
#include "faao/io.hpp"
#include "faao/scenario.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace faao;

namespace {

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scenario load_with_seed(const std::string& config_text, const std::optional<std::uint64_t>& seed) {
    Scenario s = load_scenario(config_text);
    if (seed) {
        s.seed = *seed;
        s.finalize();
    }
    return s;
}

/// Verifies the output directory is writable before emitting anything, so
/// a failure leaves no partial files.
void ensure_writable(const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const fs::path probe = fs::path(out_dir) / ".faao_probe";
    {
        std::ofstream test(probe);
        if (!test) throw std::runtime_error("output directory not writable: " + out_dir);
    }
    fs::remove(probe, ec);
}

void emit(std::map<std::string, std::string>& files, RunManifest& manifest,
          const std::string& name, std::string content) {
    files[name] = std::move(content);
    manifest.files.push_back(name);
}

int cmd_optimize(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed, bool verbose) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string config_text = read_text(config_path);
    const Scenario s = load_with_seed(config_text, seed);
    ensure_writable(out_dir);

    const FaaoResult result = run_faao(s);
    if (verbose) {
        for (const auto& it : result.trace.iterations)
            std::cerr << "iter " << it.iter << " R_avg=" << it.rate_avg << " tau=" << it.tau << "\n";
    }

    RunManifest manifest;
    manifest.scenario_hash = fnv1a_hash(save_scenario(s));
    manifest.command = "optimize";
    manifest.seed = s.seed;
    manifest.out_dir = out_dir;

    std::map<std::string, std::string> files;
    emit(files, manifest, "trajectory.csv", trajectory_csv(result.trajectory, s.slot_dt));
    emit(files, manifest, "rates.csv", rates_csv(result.final_rates));
    emit(files, manifest, "convergence.csv", convergence_csv(result.trace));
    emit(files, manifest, "trajectory.svg", trajectory_svg(result.trajectory, s));
    emit(files, manifest, "convergence.svg", convergence_svg(result.trace));
    manifest.files.push_back("manifest.json");
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& [name, content] : files) write_file(out_dir, name, content);
    write_file(out_dir, "manifest.json", manifest_json(manifest));

    std::cout << "R_avg = " << result.final_rates.avg << " bits/s/Hz ("
              << (result.trace.converged ? "converged" : "iteration budget exhausted") << ")\n";
    return result.trace.converged ? 0 : 2;
}

int cmd_sweep_power(const std::string& config_path, const std::string& out_dir,
                    std::optional<std::uint64_t> seed, const std::vector<double>& powers,
                    const std::vector<std::string>& schemes, bool verbose) {
    if (powers.empty() || schemes.empty())
        throw std::runtime_error("sweep-power needs at least one power and one scheme");
    const auto t0 = std::chrono::steady_clock::now();
    const std::string config_text = read_text(config_path);
    ensure_writable(out_dir);

    std::vector<SweepRow> rows;
    int ok_cells = 0;
    for (double p : powers) {
        Scenario s = load_with_seed(config_text, seed);
        s.power_bs_dbm = p;
        s.power_uav_dbm = p;
        s.finalize();
        // One FAAO run per power; its trajectory is shared by the baselines.
        FaaoResult faao;
        bool have_faao = false;
        try {
            faao = run_faao(s);
            have_faao = true;
        } catch (const std::exception& e) {
            std::cerr << "warning: FAAO failed at " << p << " dBm: " << e.what() << "\n";
        }
        for (const auto& scheme : schemes) {
            SweepRow row{p, scheme, std::nan("")};
            try {
                if (!have_faao) throw std::runtime_error("no FAAO trajectory available");
                if (scheme == "faao") {
                    row.rate_avg = faao.final_rates.avg;
                } else {
                    row.rate_avg =
                        run_baseline(s, baseline_from_name(scheme), faao.trajectory, faao.small_scale)
                            .rates.avg;
                }
                ++ok_cells;
            } catch (const std::exception& e) {
                std::cerr << "warning: cell (" << p << " dBm, " << scheme << ") failed: " << e.what()
                          << "\n";
            }
            if (verbose) std::cerr << p << " dBm " << scheme << " -> " << row.rate_avg << "\n";
            rows.push_back(row);
        }
    }

    RunManifest manifest;
    manifest.scenario_hash = fnv1a_hash(config_text);
    manifest.command = "sweep-power";
    manifest.seed = seed.value_or(load_scenario(config_text).seed);
    manifest.out_dir = out_dir;
    manifest.files = {"sweep.csv", "sweep.svg", "manifest.json"};
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file(out_dir, "sweep.csv", sweep_csv(rows));
    write_file(out_dir, "sweep.svg", sweep_svg(rows));
    write_file(out_dir, "manifest.json", manifest_json(manifest));
    return ok_cells > 0 ? 0 : 1;
}

int cmd_baseline(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed, const std::string& scheme) {
    const std::string config_text = read_text(config_path);
    const Scenario s = load_with_seed(config_text, seed);
    ensure_writable(out_dir);

    const FaaoResult faao = run_faao(s);
    const BaselineRun run = run_baseline(s, baseline_from_name(scheme), faao.trajectory,
                                         faao.small_scale);
    write_file(out_dir, "trajectory.csv", trajectory_csv(faao.trajectory, s.slot_dt));
    write_file(out_dir, "rates_" + scheme + ".csv", rates_csv(run.rates));
    std::cout << scheme << " R_avg = " << run.rates.avg << " bits/s/Hz\n";
    return 0;
}

int cmd_validate(const std::string& config_path) {
    const Scenario s = load_scenario(read_text(config_path));
    std::cout << "config ok: n_slots=" << s.n_slots << " modulation=" << s.modulation
              << " seed=" << s.seed << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint UAV relay trajectory and MIMO precoder optimizer for "
                 "finite-alphabet inputs"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    bool verbose = false;
    app.add_option("--config", config_path, "scenario config file (JSON)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "override the scenario seed");
    app.add_flag("--verbose", verbose, "per-iteration progress on stderr");

    auto* opt = app.add_subcommand("optimize", "run the full alternating optimization");
    std::vector<double> powers = {0.0, 10.0, 20.0, 30.0};
    std::vector<std::string> schemes = {"faao", "mmse", "zf", "mrt"};
    auto* sweep = app.add_subcommand("sweep-power", "rate-vs-power sweep across schemes");
    sweep->add_option("--powers", powers, "transmit powers in dBm");
    sweep->add_option("--schemes", schemes, "schemes: faao, mmse, zf, mrt");
    std::string scheme = "mmse";
    auto* base = app.add_subcommand("baseline", "one baseline on the optimized trajectory");
    base->add_option("--scheme", scheme, "mmse, zf or mrt");
    app.add_subcommand("validate-config", "parse and validate a config file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (config_path.empty()) throw ConfigError("--config is required");
        if (opt->parsed()) return cmd_optimize(config_path, out_dir, seed, verbose);
        if (sweep->parsed()) return cmd_sweep_power(config_path, out_dir, seed, powers, schemes, verbose);
        if (base->parsed()) return cmd_baseline(config_path, out_dir, seed, scheme);
        return cmd_validate(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
