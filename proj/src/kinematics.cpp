#include "faao/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace faao {

Trajectory propagate(const Eigen::Vector2d& w0, const Eigen::Vector2d& v0,
                     const std::vector<Eigen::Vector2d>& accel, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const int steps = static_cast<int>(accel.size());
    Trajectory t;
    t.w.resize(steps + 1);
    t.v.resize(steps + 1);
    t.a.resize(steps + 1, Eigen::Vector2d::Zero());
    t.w[0] = w0;
    t.v[0] = v0;
    for (int n = 0; n < steps; ++n) {
        t.a[n] = accel[n];
        t.w[n + 1] = t.w[n] + t.v[n] * dt + 0.5 * accel[n] * dt * dt;
        t.v[n + 1] = t.v[n] + accel[n] * dt;
    }
    return t;
}

Trajectory straight_line_init(const Scenario& s) {
    const Eigen::Vector2d span = s.uav_end - s.uav_start;
    const Eigen::Vector2d vel = span / s.horizon_T;
    if (vel.norm() > s.v_max)
        throw std::runtime_error("straight-line initialization infeasible: required speed exceeds v_max");
    // Constant velocity covers the span in (n_slots-1) steps of dt when
    // T = n_slots * dt; use the step form so the endpoint lands exactly.
    const int steps = s.n_slots - 1;
    const Eigen::Vector2d step_vel = steps > 0 ? (span / (steps * s.slot_dt)).eval() : Eigen::Vector2d::Zero().eval();
    if (step_vel.norm() > s.v_max)
        throw std::runtime_error("straight-line initialization infeasible: required speed exceeds v_max");
    std::vector<Eigen::Vector2d> accel(steps, Eigen::Vector2d::Zero());
    return propagate(s.uav_start, step_vel, accel, s.slot_dt);
}

FeasibilityReport check_feasibility(const Trajectory& traj, const Scenario& s) {
    FeasibilityReport r;
    const double dt = s.slot_dt;
    const int n = traj.n_slots();
    for (int i = 0; i + 1 < n; ++i) {
        const Eigen::Vector2d wres =
            traj.w[i + 1] - (traj.w[i] + traj.v[i] * dt + 0.5 * traj.a[i] * dt * dt);
        const Eigen::Vector2d vres = traj.v[i + 1] - (traj.v[i] + traj.a[i] * dt);
        r.max_update_residual = std::max({r.max_update_residual, wres.norm(), vres.norm()});
    }
    for (int i = 0; i < n; ++i) {
        r.max_speed_excess = std::max(r.max_speed_excess, traj.v[i].norm() - s.v_max);
        r.max_accel_excess = std::max(r.max_accel_excess, traj.a[i].norm() - s.a_max);
    }
    r.max_speed_excess = std::max(0.0, r.max_speed_excess);
    r.max_accel_excess = std::max(0.0, r.max_accel_excess);
    if (n > 0) {
        r.start_residual = (traj.w.front() - s.uav_start).norm();
        r.end_residual = (traj.w.back() - s.uav_end).norm();
    }
    const double tol = s.solver_params.feas_tol_equality;
    r.feasible = n == s.n_slots && r.max_update_residual <= tol && r.start_residual <= tol &&
                 r.end_residual <= tol && r.max_speed_excess <= 1e-9 && r.max_accel_excess <= 1e-9;
    return r;
}

TrajectoryVars extract_vars(const Trajectory& traj) {
    TrajectoryVars v;
    v.w0 = traj.w.front();
    v.v0 = traj.v.front();
    v.accel.assign(traj.a.begin(), traj.a.end() - 1);
    return v;
}

}  // namespace faao
