// kinematics.hpp - discretized UAV trajectory: positions, velocities and
// accelerations under the second-order update equations and flight limits.

#pragma once

#include "faao/scenario.hpp"

#include <Eigen/Dense>
#include <vector>

namespace faao {

struct Trajectory {
    std::vector<Eigen::Vector2d> w;  // position, meters
    std::vector<Eigen::Vector2d> v;  // velocity, m/s
    std::vector<Eigen::Vector2d> a;  // acceleration, m/s^2

    int n_slots() const { return static_cast<int>(w.size()); }
};

/// Forward-integrates w(n+1) = w(n) + v(n) dt + a(n) dt^2 / 2 and
/// v(n+1) = v(n) + a(n) dt. accel.size() steps produce accel.size()+1 slots;
/// the final slot keeps a zero acceleration entry.
Trajectory propagate(const Eigen::Vector2d& w0, const Eigen::Vector2d& v0,
                     const std::vector<Eigen::Vector2d>& accel, double dt);

/// Linear interpolation uav_start -> uav_end at constant velocity, zero
/// acceleration. Throws std::runtime_error if the required constant speed
/// exceeds v_max.
Trajectory straight_line_init(const Scenario& s);

struct FeasibilityReport {
    double max_update_residual = 0.0;   // meters / (m/s), worst of eqs 11-12
    double max_speed_excess = 0.0;      // m/s above v_max (0 if within)
    double max_accel_excess = 0.0;      // m/s^2 above a_max
    double start_residual = 0.0;        // meters
    double end_residual = 0.0;          // meters
    bool feasible = false;
};

/// Residuals against the update equations, flight limits (applied to every
/// slot) and the boundary conditions, judged at feas_tol_equality and a
/// 1e-9 excess allowance on the norm limits.
FeasibilityReport check_feasibility(const Trajectory& traj, const Scenario& s);

/// Accelerations of the first n_slots-1 slots plus the initial velocity:
/// the optimization parametrization. propagate() of the result reproduces a
/// trajectory that satisfies the update equations exactly.
struct TrajectoryVars {
    Eigen::Vector2d w0;
    Eigen::Vector2d v0;
    std::vector<Eigen::Vector2d> accel;  // n_slots - 1 entries
};

TrajectoryVars extract_vars(const Trajectory& traj);

}  // namespace faao
