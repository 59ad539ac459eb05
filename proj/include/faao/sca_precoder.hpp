// sca_precoder.hpp - precoder subproblem with a fixed trajectory.
//
// Each (slot, hop) pair yields an independent convex subproblem after the
// linearization: minimize the sum of exponentials of the affine surrogate
// exponents subject to a trace power ball, solved in log domain.

#pragma once

#include "faao/channel.hpp"
#include "faao/constellation.hpp"
#include "faao/kinematics.hpp"
#include "faao/scenario.hpp"
#include "faao/solver.hpp"

#include <vector>

namespace faao {

struct PrecoderSchedule {
    std::vector<Eigen::MatrixXcd> p_bs;   // n_tx x n_tx per slot
    std::vector<Eigen::MatrixXcd> p_uav;  // n_relay x n_relay per slot

    int n_slots() const { return static_cast<int>(p_bs.size()); }
};

/// Full-power scaled-identity schedule, the optimizer's starting point.
PrecoderSchedule identity_schedule(const Scenario& s);

/// ||H P u||^2 / (4 sigma^2) evaluated through the trace form
/// Tr(u u^H P^H H^H H P) / (4 sigma^2).
double exact_exponent(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& precoder,
                      const Eigen::VectorXcd& u_pair, double noise_var);

/// Affine-in-P surrogate exponent C_ap / (4 sigma^2), tangent to the exact
/// exponent at the expansion precoder.
double linearized_exponent(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& expansion,
                           const Eigen::MatrixXcd& precoder, const Eigen::VectorXcd& u_pair,
                           double noise_var);

/// Scales P onto the trace power ball: P * min(1, sqrt(W / tr(P^H P))).
void project_power(Eigen::MatrixXcd& precoder, double power_w);

struct PrecoderStepResult {
    PrecoderSchedule schedule;
    // Per-hop log off-diagonal exponential sums before/after (log domain).
    double log_sum_hop1_before = 0.0, log_sum_hop1_after = 0.0;
    double log_sum_hop2_before = 0.0, log_sum_hop2_after = 0.0;
};

/// log of the off-diagonal sum-of-exponentials for one hop over all slots.
double precoder_log_sum(const std::vector<Eigen::MatrixXcd>& channels,
                        const std::vector<Eigen::MatrixXcd>& precoders,
                        const DifferenceSet& diffs, double noise_var);

/// SCA over every (slot, hop) subproblem independently. The returned
/// schedule is power-feasible and does not worsen either hop's objective.
PrecoderStepResult solve_precoder_step(const Scenario& s, const ChannelRealization& realization,
                                       const PrecoderSchedule& prev, const DifferenceSet& diffs_hop1,
                                       const DifferenceSet& diffs_hop2);

}  // namespace faao
