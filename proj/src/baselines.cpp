#include "faao/baselines.hpp"

#include "faao/constellation.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace faao {

BaselineKind baseline_from_name(const std::string& name) {
    if (name == "mmse") return BaselineKind::Mmse;
    if (name == "zf") return BaselineKind::Zf;
    if (name == "mrt") return BaselineKind::Mrt;
    throw std::invalid_argument("unknown baseline: " + name);
}

std::string baseline_name(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::Mmse: return "mmse";
        case BaselineKind::Zf: return "zf";
        case BaselineKind::Mrt: return "mrt";
    }
    return "?";
}

Eigen::MatrixXcd baseline_precoder(BaselineKind kind, const Eigen::MatrixXcd& channel,
                                   double noise_var, double power_w) {
    if (channel.squaredNorm() == 0.0) throw std::invalid_argument("baseline_precoder: zero channel");
    const int dim = static_cast<int>(channel.cols());
    if (power_w <= 0.0) return Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd p;
    switch (kind) {
        case BaselineKind::Mrt:
            p = channel.adjoint();
            break;
        case BaselineKind::Zf: {
            const Eigen::MatrixXcd hh = channel * channel.adjoint();
            const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hh);
            const double smin = svd.singularValues().minCoeff();
            const double smax = svd.singularValues().maxCoeff();
            if (smin <= 0.0 || smax / smin > 1e12)
                throw SingularChannelError("zero-forcing: channel Gram is singular");
            p = channel.adjoint() * hh.inverse();
            break;
        }
        case BaselineKind::Mmse: {
            const Eigen::MatrixXcd reg =
                channel.adjoint() * channel +
                (dim * noise_var / power_w) * Eigen::MatrixXcd::Identity(dim, dim);
            p = reg.inverse() * channel.adjoint();
            break;
        }
    }
    const double tr = p.squaredNorm();
    if (!(tr > 0.0)) throw SingularChannelError("baseline precoder collapsed to zero");
    return p * std::sqrt(power_w / tr);
}

BaselineRun run_baseline(const Scenario& s, BaselineKind kind, const Trajectory& trajectory,
                         const SmallScaleFactor& small_scale) {
    const FeasibilityReport feas = check_feasibility(trajectory, s);
    if (!feas.feasible) throw std::invalid_argument("run_baseline: infeasible trajectory");

    const ChannelRealization realization = make_realization(s, small_scale, trajectory.w);
    BaselineRun run;
    run.schedule.p_bs.resize(s.n_slots);
    run.schedule.p_uav.resize(s.n_slots);
    for (int n = 0; n < s.n_slots; ++n) {
        try {
            run.schedule.p_bs[n] =
                baseline_precoder(kind, realization.full_channel(n, 1), s.noise1_w, s.power_bs_w);
            run.schedule.p_uav[n] =
                baseline_precoder(kind, realization.full_channel(n, 2), s.noise2_w, s.power_uav_w);
        } catch (const SingularChannelError& e) {
            throw SingularChannelError(std::string(e.what()) + " at slot " + std::to_string(n));
        }
    }

    const Constellation constellation = make_constellation(s.modulation);
    const DifferenceSet diffs1 = enumerate_differences(constellation, s.n_tx);
    const DifferenceSet diffs2 = enumerate_differences(constellation, s.n_relay);
    run.rates = evaluate_rates(s, realization, run.schedule, diffs1, diffs2);
    return run;
}

}  // namespace faao
