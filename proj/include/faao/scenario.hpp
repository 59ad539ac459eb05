// scenario.hpp - experiment description and validation
//
// All dB/dBm quantities are converted to linear scale (watts) once at load;
// everything downstream works in linear SI units.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace faao {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inner-solver and SCA knobs. The paper delegates subproblem solving to a
/// convex toolbox; these control our own kernel.
struct SolverParams {
    int inner_max_iters = 400;
    double inner_grad_tol = 1e-7;
    int sca_max_iters = 30;
    double sca_tol = 1e-4;       // relative objective change
    double penalty_init = 10.0;
    double penalty_growth = 2.0;
    double feas_tol_equality = 1e-6;  // meters
    int mc_samples = 2000;

    void validate() const;
    bool operator==(const SolverParams&) const = default;
};

/// How the LoS component of the Rician channel is built.
enum class LosMode { Ones, Ula };

struct Scenario {
    double horizon_T = 50.0;     // seconds
    double slot_dt = 0.2;        // seconds
    double altitude_H = 100.0;   // meters
    Eigen::Vector2d bs_pos{0.0, 0.0};
    Eigen::Vector2d gu_pos{300.0, 300.0};
    Eigen::Vector2d uav_start{0.0, 350.0};
    Eigen::Vector2d uav_end{350.0, 0.0};
    double v_max = 100.0;        // m/s
    double a_max = 5.0;          // m/s^2
    double rho0_db = -50.0;      // reference channel power, dB
    double rician_K = 3.0;
    double noise_power_dbm_hop1 = -120.0;
    double noise_power_dbm_hop2 = -120.0;
    double power_bs_dbm = 20.0;
    double power_uav_dbm = 20.0;
    int n_tx = 2;                // BS antennas
    int n_relay = 2;             // UAV antennas
    int n_rx = 2;                // GU antennas
    std::string modulation = "bpsk";
    std::uint64_t seed = 1;
    double outer_tol = 1e-3;     // bits/s/Hz
    LosMode los_mode = LosMode::Ones;
    SolverParams solver_params;

    // Derived at validation time.
    int n_slots = 0;             // round(T / dt), the paper's N+2
    double rho0_lin = 0.0;
    double noise1_w = 0.0;
    double noise2_w = 0.0;
    double power_bs_w = 0.0;
    double power_uav_w = 0.0;

    /// Recomputes derived quantities and checks every invariant.
    /// Throws ConfigError naming the violated invariant.
    void finalize();
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// The paper's simulation setup (Sec. IV): 2x2x2 antennas, BPSK, K=3,
/// -120 dBm noise, 20 dBm transmit power, T=50 s with 0.2 s slots.
Scenario default_scenario();

/// Parses a JSON scenario. Unknown keys are rejected; every invariant is
/// checked. Throws ConfigError with key context on failure.
Scenario load_scenario(const std::string& config_text);
Scenario load_scenario_file(const std::string& path);

/// Serializes to JSON; load_scenario(save_scenario(s)) == s.
std::string save_scenario(const Scenario& s);

bool operator==(const Scenario& a, const Scenario& b);

}  // namespace faao
