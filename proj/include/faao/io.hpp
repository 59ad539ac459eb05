// io.hpp - CSV traces, self-contained SVG plots and the run manifest.
//
// CSV contract: header row, UTF-8, '.' decimal separator, LF line endings,
// shortest round-trip double formatting -- byte-identical across reruns.

#pragma once

#include "faao/ao_driver.hpp"
#include "faao/kinematics.hpp"
#include "faao/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace faao {

/// Shortest decimal form that round-trips the double ('.' separator).
std::string format_double(double v);

/// FNV-1a over the raw config text; stable across platforms.
std::uint64_t fnv1a_hash(const std::string& text);

std::string trajectory_csv(const Trajectory& traj, double dt);
std::string rates_csv(const Rates& rates);
std::string convergence_csv(const ConvergenceTrace& trace);

struct SweepRow {
    double power_dbm = 0.0;
    std::string scheme;
    double rate_avg = 0.0;  // NaN marks a failed cell
};
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Per-slot distances and channel Frobenius norms for debugging.
std::string channel_debug_csv(const ChannelRealization& realization);

/// Trajectory map with BS/GU markers, fixed 800x600 viewBox, no external
/// references.
std::string trajectory_svg(const Trajectory& traj, const Scenario& s);
std::string convergence_svg(const ConvergenceTrace& trace);
std::string sweep_svg(const std::vector<SweepRow>& rows);

struct RunManifest {
    std::uint64_t scenario_hash = 0;
    std::string command;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::vector<std::string> files;
    double wall_seconds = 0.0;
    std::string version = "faao 1.0.0";
};
std::string manifest_json(const RunManifest& m);

/// Writes content to dir/name; throws std::runtime_error on failure.
void write_file(const std::string& dir, const std::string& name, const std::string& content);

}  // namespace faao
