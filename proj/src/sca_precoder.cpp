#include "faao/sca_precoder.hpp"

#include "faao/fa_info.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace faao {

namespace {

Eigen::MatrixXcd scaled_identity(int dim, double power_w) {
    return std::sqrt(power_w / dim) * Eigen::MatrixXcd::Identity(dim, dim);
}

Eigen::MatrixXcd unpack(const Eigen::VectorXd& x, int d) {
    Eigen::MatrixXcd p(d, d);
    const int dv = d * d;
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
            p(i, j) = std::complex<double>(x(j * d + i), x(dv + j * d + i));
    return p;
}

Eigen::VectorXd pack(const Eigen::MatrixXcd& p) {
    const int d = static_cast<int>(p.rows());
    const int dv = d * d;
    Eigen::VectorXd x(2 * dv);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
            x(j * d + i) = p(i, j).real();
            x(dv + j * d + i) = p(i, j).imag();
        }
    return x;
}

/// log of the off-diagonal exponential sum for one slot's exact exponents.
double slot_log_sum(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& precoder,
                    const DifferenceSet& diffs, double noise_var) {
    std::vector<double> e;
    const Eigen::MatrixXcd hp = channel * precoder;
    for (int pair = 0; pair < diffs.n_pairs(); ++pair) {
        if (diffs.is_diagonal(pair)) continue;
        e.push_back(-(hp * diffs.differences[pair]).squaredNorm() / (4.0 * noise_var));
    }
    return log_sum_exp(e);
}

/// SCA on one (slot, hop) subproblem.
Eigen::MatrixXcd optimize_single(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& start,
                                 const DifferenceSet& diffs, double noise_var, double power_w,
                                 const SolverParams& params) {
    const int d = static_cast<int>(start.cols());
    if (power_w <= 0.0) return Eigen::MatrixXcd::Zero(d, d);

    const Eigen::MatrixXcd gram = channel.adjoint() * channel;
    Eigen::MatrixXcd current = start;
    project_power(current, power_w);
    double best = slot_log_sum(channel, current, diffs, noise_var);

    // Off-diagonal pair outer products u u^H, fixed across iterations.
    std::vector<Eigen::MatrixXcd> uu;
    for (int pair = 0; pair < diffs.n_pairs(); ++pair) {
        if (diffs.is_diagonal(pair)) continue;
        const auto& u = diffs.differences[pair];
        uu.push_back(u * u.adjoint());
    }

    for (int iter = 0; iter < params.sca_max_iters; ++iter) {
        Eigen::MatrixXcd expansion = current;
        // A zero expansion point makes the whole surrogate flat; escape to
        // the full-power scaled identity.
        if (expansion.squaredNorm() < 1e-18 * power_w) expansion = scaled_identity(d, power_w);

        // C_ap(P) = 2 Re tr(M P) - c with M = u u^H Pe^H G.
        std::vector<Eigen::MatrixXcd> m_mats(uu.size());
        std::vector<double> consts(uu.size());
        for (size_t i = 0; i < uu.size(); ++i) {
            m_mats[i] = uu[i] * expansion.adjoint() * gram;
            consts[i] = (m_mats[i] * expansion).trace().real();
        }

        ConvexProblem problem;
        problem.dim = 2 * d * d;
        problem.objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
            const Eigen::MatrixXcd p = unpack(x, d);
            double emax = -std::numeric_limits<double>::infinity();
            std::vector<double> eps(uu.size());
            for (size_t i = 0; i < uu.size(); ++i) {
                const double c_ap = 2.0 * (m_mats[i] * p).trace().real() - consts[i];
                eps[i] = -c_ap / (4.0 * noise_var);
                emax = std::max(emax, eps[i]);
            }
            double total = 0.0;
            Eigen::MatrixXcd msum = Eigen::MatrixXcd::Zero(d, d);
            for (size_t i = 0; i < uu.size(); ++i) {
                const double w = std::exp(eps[i] - emax);
                total += w;
                if (grad) msum += w * m_mats[i];
            }
            if (grad) {
                const Eigen::MatrixXcd gt = msum.transpose() / total;
                const double k = -1.0 / (4.0 * noise_var);
                const int dv = d * d;
                for (int j = 0; j < d; ++j)
                    for (int i2 = 0; i2 < d; ++i2) {
                        (*grad)(j * d + i2) += k * 2.0 * gt(i2, j).real();
                        (*grad)(dv + j * d + i2) += k * -2.0 * gt(i2, j).imag();
                    }
            }
            return emax + std::log(total);
        };
        problem.project = [&](Eigen::VectorXd& x) {
            const double nrm2 = x.squaredNorm();
            if (nrm2 > power_w) x *= std::sqrt(power_w / nrm2);
        };

        const SolveReport rep = solve(problem, pack(current), params);
        Eigen::MatrixXcd candidate = unpack(rep.x, d);
        project_power(candidate, power_w);

        const double cand = slot_log_sum(channel, candidate, diffs, noise_var);
        if (cand > best + 1e-12) break;  // surrogate step worsened the exact sum
        const double rel = std::abs(best - cand) / std::max(1.0, std::abs(best));
        current = candidate;
        best = cand;
        if (rel < params.sca_tol) break;
    }
    return current;
}

}  // namespace

PrecoderSchedule identity_schedule(const Scenario& s) {
    PrecoderSchedule sched;
    sched.p_bs.assign(s.n_slots, scaled_identity(s.n_tx, s.power_bs_w));
    sched.p_uav.assign(s.n_slots, scaled_identity(s.n_relay, s.power_uav_w));
    return sched;
}

double exact_exponent(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& precoder,
                      const Eigen::VectorXcd& u_pair, double noise_var) {
    if (channel.cols() != precoder.rows() || precoder.cols() != u_pair.size())
        throw std::invalid_argument("exact_exponent: dimension mismatch");
    const Eigen::MatrixXcd gram = channel.adjoint() * channel;
    const Eigen::MatrixXcd uu = u_pair * u_pair.adjoint();
    return (uu * precoder.adjoint() * gram * precoder).trace().real() / (4.0 * noise_var);
}

double linearized_exponent(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& expansion,
                           const Eigen::MatrixXcd& precoder, const Eigen::VectorXcd& u_pair,
                           double noise_var) {
    const Eigen::MatrixXcd gram = channel.adjoint() * channel;
    const Eigen::MatrixXcd uu = u_pair * u_pair.adjoint();
    const Eigen::MatrixXcd m = uu * expansion.adjoint() * gram;
    const double c_ap =
        2.0 * (m * precoder).trace().real() - (m * expansion).trace().real();
    return c_ap / (4.0 * noise_var);
}

void project_power(Eigen::MatrixXcd& precoder, double power_w) {
    const double tr = precoder.squaredNorm();
    if (tr > power_w) precoder *= std::sqrt(std::max(power_w, 0.0) / tr);
}

double precoder_log_sum(const std::vector<Eigen::MatrixXcd>& channels,
                        const std::vector<Eigen::MatrixXcd>& precoders,
                        const DifferenceSet& diffs, double noise_var) {
    std::vector<double> e;
    for (size_t n = 0; n < channels.size(); ++n) {
        const Eigen::MatrixXcd hp = channels[n] * precoders[n];
        for (int pair = 0; pair < diffs.n_pairs(); ++pair) {
            if (diffs.is_diagonal(pair)) continue;
            e.push_back(-(hp * diffs.differences[pair]).squaredNorm() / (4.0 * noise_var));
        }
    }
    return log_sum_exp(e);
}

PrecoderStepResult solve_precoder_step(const Scenario& s, const ChannelRealization& realization,
                                       const PrecoderSchedule& prev, const DifferenceSet& diffs_hop1,
                                       const DifferenceSet& diffs_hop2) {
    if (prev.n_slots() != s.n_slots || realization.n_slots() != s.n_slots)
        throw std::invalid_argument("solve_precoder_step: slot count mismatch");

    PrecoderStepResult result;
    result.schedule.p_bs.resize(s.n_slots);
    result.schedule.p_uav.resize(s.n_slots);

    std::vector<Eigen::MatrixXcd> ch1(s.n_slots), ch2(s.n_slots);
    for (int n = 0; n < s.n_slots; ++n) {
        ch1[n] = realization.full_channel(n, 1);
        ch2[n] = realization.full_channel(n, 2);
    }
    result.log_sum_hop1_before = precoder_log_sum(ch1, prev.p_bs, diffs_hop1, s.noise1_w);
    result.log_sum_hop2_before = precoder_log_sum(ch2, prev.p_uav, diffs_hop2, s.noise2_w);

    for (int n = 0; n < s.n_slots; ++n) {
        result.schedule.p_bs[n] = optimize_single(ch1[n], prev.p_bs[n], diffs_hop1, s.noise1_w,
                                                  s.power_bs_w, s.solver_params);
        result.schedule.p_uav[n] = optimize_single(ch2[n], prev.p_uav[n], diffs_hop2, s.noise2_w,
                                                   s.power_uav_w, s.solver_params);
    }

    result.log_sum_hop1_after = precoder_log_sum(ch1, result.schedule.p_bs, diffs_hop1, s.noise1_w);
    result.log_sum_hop2_after = precoder_log_sum(ch2, result.schedule.p_uav, diffs_hop2, s.noise2_w);
    return result;
}

}  // namespace faao
