#include "faao/ao_driver.hpp"

#include "faao/fa_info.hpp"
#include "faao/sca_trajectory.hpp"

#include <chrono>
#include <cmath>

namespace faao {

Rates evaluate_rates(const Scenario& s, const ChannelRealization& realization,
                     const PrecoderSchedule& precoders, const DifferenceSet& diffs_hop1,
                     const DifferenceSet& diffs_hop2) {
    if (realization.n_slots() != s.n_slots || precoders.n_slots() != s.n_slots)
        throw std::invalid_argument("evaluate_rates: slot count mismatch");
    Rates r;
    const double weight = s.slot_dt / s.horizon_T;
    for (int n = 0; n < s.n_slots; ++n) {
        const double i1 =
            mi_closed_form(realization.full_channel(n, 1), precoders.p_bs[n], diffs_hop1, s.noise1_w);
        const double i2 =
            mi_closed_form(realization.full_channel(n, 2), precoders.p_uav[n], diffs_hop2, s.noise2_w);
        r.per_slot_hop1.push_back(i1);
        r.per_slot_hop2.push_back(i2);
        r.hop1 += weight * i1;
        r.hop2 += weight * i2;
    }
    r.avg = std::min(r.hop1, r.hop2);
    return r;
}

namespace {

FaaoResult run_loop(const Scenario& s, const Trajectory* fixed_traj) {
    using clock = std::chrono::steady_clock;
    const auto t_start = clock::now();
    auto seconds_since_start = [&] {
        return std::chrono::duration<double>(clock::now() - t_start).count();
    };

    const Constellation constellation = make_constellation(s.modulation);
    const DifferenceSet diffs1 = enumerate_differences(constellation, s.n_tx);
    const DifferenceSet diffs2 = enumerate_differences(constellation, s.n_relay);

    FaaoResult result;
    result.small_scale = draw_small_scale(s);

    Trajectory traj = fixed_traj ? *fixed_traj : straight_line_init(s);
    PrecoderSchedule precoders = identity_schedule(s);

    auto rates_of = [&](const Trajectory& t, const PrecoderSchedule& p) {
        return evaluate_rates(s, make_realization(s, result.small_scale, t.w), p, diffs1, diffs2);
    };

    Rates rates = rates_of(traj, precoders);
    result.trace.iterations.push_back({0, rates.hop1, rates.hop2, rates.avg, 0.0,
                                       seconds_since_start()});

    const int max_outer = 30;
    for (int i = 1; i <= max_outer; ++i) {
        // Trajectory step with fixed precoders. Keep the previous trajectory
        // if the step does not improve the end-to-end rate.
        if (!fixed_traj) {
            TrajectoryStepResult ts = solve_trajectory_step(
                s, result.small_scale, precoders.p_bs, precoders.p_uav, traj, diffs1, diffs2);
            const Rates cand = rates_of(ts.trajectory, precoders);
            if (cand.avg >= rates.avg - 1e-12) {
                traj = std::move(ts.trajectory);
                rates = cand;
            }
        }

        // Precoder step with the fixed trajectory.
        {
            const ChannelRealization realization = make_realization(s, result.small_scale, traj.w);
            PrecoderStepResult ps = solve_precoder_step(s, realization, precoders, diffs1, diffs2);
            const Rates cand = rates_of(traj, ps.schedule);
            if (cand.avg >= rates.avg - 1e-12) {
                precoders = std::move(ps.schedule);
                rates = cand;
            }
        }

        const double prev_avg = result.trace.iterations.back().rate_avg;
        const double tau = std::abs(rates.avg - prev_avg);
        result.trace.iterations.push_back({i, rates.hop1, rates.hop2, rates.avg, tau,
                                           seconds_since_start()});
        if (tau < s.outer_tol) {
            result.trace.converged = true;
            break;
        }
    }

    result.trajectory = std::move(traj);
    result.precoders = std::move(precoders);
    result.final_rates = rates;
    return result;
}

}  // namespace

FaaoResult run_faao(const Scenario& s) { return run_loop(s, nullptr); }

FaaoResult run_faao_fixed_trajectory(const Scenario& s, const Trajectory& fixed_traj) {
    return run_loop(s, &fixed_traj);
}

}  // namespace faao
