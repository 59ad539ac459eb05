// sca_trajectory.hpp - trajectory subproblem with fixed precoders.
//
// Builds the tangent lower bound on the path-loss exponents around the
// previous trajectory, then minimizes the resulting convex surrogate over
// acceleration-parametrized trajectories, iterating to convergence.
//
// All exponential sums are handled in log domain: at realistic noise powers
// the raw exponentials underflow, but log-sum-exp keeps both values and
// gradients meaningful, and the log is a monotone transform of each hop's
// sum, so minimizers are unchanged.

#pragma once

#include "faao/channel.hpp"
#include "faao/constellation.hpp"
#include "faao/kinematics.hpp"
#include "faao/scenario.hpp"
#include "faao/solver.hpp"

#include <vector>

namespace faao {

/// Precoder-dependent exponent coefficients, frozen for the trajectory step:
/// A_jmk(n) = ||H_r(n) P(n) u_mk||^2 / (4 sigma^2), independent of the
/// candidate trajectory. Hop j = 1 is BS->UAV, j = 2 is UAV->GU.
struct TrajectorySurrogate {
    std::vector<Eigen::Vector2d> expansion_w;
    std::vector<std::vector<double>> coeff_hop1;  // [slot][pair]
    std::vector<std::vector<double>> coeff_hop2;
    double offset_hop1 = 0.0;  // O_B
    double offset_hop2 = 0.0;  // O_U
};

TrajectorySurrogate build_surrogate(const Scenario& s, const SmallScaleFactor& small_scale,
                                    const std::vector<Eigen::MatrixXcd>& precoders_hop1,
                                    const std::vector<Eigen::MatrixXcd>& precoders_hop2,
                                    const Trajectory& traj_prev, const DifferenceSet& diffs_hop1,
                                    const DifferenceSet& diffs_hop2);

/// Tangent lower bound on D_jmk(n) = rho0 A / (||w(n)-p_j||^2 + H^2),
/// linearized in y = ||w(n)-p_j||^2 around the expansion trajectory.
double surrogate_exponent_lb(const TrajectorySurrogate& sur, const Scenario& s,
                             const Eigen::Vector2d& w_candidate, int slot, int hop, int pair);

/// True exponent at a candidate position (no linearization).
double exact_trajectory_exponent(const TrajectorySurrogate& sur, const Scenario& s,
                                 const Eigen::Vector2d& w_candidate, int slot, int hop, int pair);

struct ScaTraceRow {
    int sca_iter = 0;
    double log_sum_hop1 = 0.0;   // log of off-diagonal exponential sum, hop 1
    double log_sum_hop2 = 0.0;
    double objective = 0.0;      // max of the two
};

struct TrajectoryStepResult {
    Trajectory trajectory;
    SolveReport report;          // last inner solve
    std::vector<ScaTraceRow> trace;
};

/// Per-hop log-domain link objective of a trajectory under fixed precoders:
/// log of the off-diagonal sum-of-exponentials (the slack constraint sums
/// minus their constant diagonal contribution).
std::pair<double, double> trajectory_true_log_sums(const TrajectorySurrogate& sur,
                                                   const Scenario& s, const Trajectory& traj);

/// One full SCA pass of the trajectory subproblem.
TrajectoryStepResult solve_trajectory_step(const Scenario& s, const SmallScaleFactor& small_scale,
                                           const std::vector<Eigen::MatrixXcd>& precoders_hop1,
                                           const std::vector<Eigen::MatrixXcd>& precoders_hop2,
                                           const Trajectory& traj_prev,
                                           const DifferenceSet& diffs_hop1,
                                           const DifferenceSet& diffs_hop2);

}  // namespace faao
