// ao_driver.hpp - the outer alternating-optimization loop: trajectory step,
// precoder step, rate evaluation, tolerance test.

#pragma once

#include "faao/channel.hpp"
#include "faao/constellation.hpp"
#include "faao/kinematics.hpp"
#include "faao/sca_precoder.hpp"
#include "faao/scenario.hpp"

#include <vector>

namespace faao {

struct OuterIteration {
    int iter = 0;
    double rate_hop1 = 0.0;  // R_U
    double rate_hop2 = 0.0;  // R_G
    double rate_avg = 0.0;   // min of the two
    double tau = 0.0;        // |R^{i+1} - R^i|
    double seconds = 0.0;
};

struct ConvergenceTrace {
    std::vector<OuterIteration> iterations;
    bool converged = false;
};

struct Rates {
    double hop1 = 0.0;
    double hop2 = 0.0;
    double avg = 0.0;
    std::vector<double> per_slot_hop1;
    std::vector<double> per_slot_hop2;
};

/// (dt/T) * sum of per-slot closed-form rates for each hop; avg = min.
Rates evaluate_rates(const Scenario& s, const ChannelRealization& realization,
                     const PrecoderSchedule& precoders, const DifferenceSet& diffs_hop1,
                     const DifferenceSet& diffs_hop2);

struct FaaoResult {
    Trajectory trajectory;
    PrecoderSchedule precoders;
    ConvergenceTrace trace;
    SmallScaleFactor small_scale;
    Rates final_rates;
};

/// The full alternating loop: straight-line + full-power-identity start,
/// trajectory step, precoder step, rate evaluation, until the rate change
/// drops below outer_tol or 30 outer iterations. Steps that would lower
/// the end-to-end rate are discarded, so the rate sequence never decreases.
FaaoResult run_faao(const Scenario& s);

/// Same loop with the trajectory frozen at `fixed_traj` (precoder-only
/// ablation and baseline support).
FaaoResult run_faao_fixed_trajectory(const Scenario& s, const Trajectory& fixed_traj);

}  // namespace faao
