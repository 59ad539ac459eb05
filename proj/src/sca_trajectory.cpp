#include "faao/sca_trajectory.hpp"

#include "faao/fa_info.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace faao {

namespace {

std::vector<std::vector<double>> exponent_coeffs(const std::vector<Eigen::MatrixXcd>& small_scale,
                                                 const std::vector<Eigen::MatrixXcd>& precoders,
                                                 const DifferenceSet& diffs, double noise_var) {
    const int n_slots = static_cast<int>(small_scale.size());
    std::vector<std::vector<double>> coeffs(n_slots);
    for (int n = 0; n < n_slots; ++n) {
        const Eigen::MatrixXcd hp = small_scale[n] * precoders[n];
        coeffs[n].reserve(diffs.n_pairs());
        for (const auto& u : diffs.differences)
            coeffs[n].push_back((hp * u).squaredNorm() / (4.0 * noise_var));
    }
    return coeffs;
}

double denom(const Scenario& s, const Eigen::Vector2d& w, const Eigen::Vector2d& ground) {
    return (w - ground).squaredNorm() + s.altitude_H * s.altitude_H;
}

const Eigen::Vector2d& ground_pos(const Scenario& s, int hop) {
    return hop == 1 ? s.bs_pos : s.gu_pos;
}

// Per-slot linearization cache for one expansion trajectory.
struct LinCache {
    // inv1 = rho0 / (y_i + H^2), inv2 = rho0 / (y_i + H^2)^2, y_i per slot.
    std::vector<double> y1, inv1_1, inv2_1;
    std::vector<double> y2, inv1_2, inv2_2;
};

LinCache make_lin_cache(const Scenario& s, const std::vector<Eigen::Vector2d>& expansion) {
    LinCache c;
    const int n = static_cast<int>(expansion.size());
    c.y1.resize(n); c.inv1_1.resize(n); c.inv2_1.resize(n);
    c.y2.resize(n); c.inv1_2.resize(n); c.inv2_2.resize(n);
    const double h2 = s.altitude_H * s.altitude_H;
    for (int i = 0; i < n; ++i) {
        const double yb = (expansion[i] - s.bs_pos).squaredNorm();
        const double yu = (expansion[i] - s.gu_pos).squaredNorm();
        c.y1[i] = yb;
        c.inv1_1[i] = s.rho0_lin / (yb + h2);
        c.inv2_1[i] = c.inv1_1[i] / (yb + h2);
        c.y2[i] = yu;
        c.inv1_2[i] = s.rho0_lin / (yu + h2);
        c.inv2_2[i] = c.inv1_2[i] / (yu + h2);
    }
    return c;
}

// Adjoint of the double-integrator recurrence: per-slot gradients wrt w(n)
// and v(n) mapped back onto [v0; a_0..a_{S-1}].
Eigen::VectorXd adjoint_to_vars(const std::vector<Eigen::Vector2d>& gw,
                                const std::vector<Eigen::Vector2d>& gv, double dt) {
    const int n_slots = static_cast<int>(gw.size());
    const int steps = n_slots - 1;
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 + 2 * steps);
    Eigen::Vector2d lw = gw[n_slots - 1];
    Eigen::Vector2d lv = gv[n_slots - 1];
    for (int n = steps - 1; n >= 0; --n) {
        grad.segment<2>(2 + 2 * n) = 0.5 * dt * dt * lw + dt * lv;
        lv += dt * lw + gv[n];
        lw += gw[n];
    }
    grad.segment<2>(0) = lv;
    return grad;
}

struct TrajWorkspace {
    const Scenario* s;
    const TrajectorySurrogate* sur;
    const LinCache* lin;
    double tau = 1.0;
    double v_soft = 0.0;  // soft speed limit with safety margin

    int dim() const { return 2 + 2 * (s->n_slots - 1); }

    Trajectory build(const Eigen::VectorXd& x) const {
        const int steps = s->n_slots - 1;
        std::vector<Eigen::Vector2d> accel(steps);
        for (int i = 0; i < steps; ++i) accel[i] = x.segment<2>(2 + 2 * i);
        return propagate(s->uav_start, x.segment<2>(0), accel, s->slot_dt);
    }

    // tau * log sum over hops, slots and off-diagonal pairs of
    // exp(-D_lb / tau); gradient via softmax weights and the adjoint.
    double objective(const Eigen::VectorXd& x, Eigen::VectorXd* grad,
                     const DifferenceSet& diffs1, const DifferenceSet& diffs2) const {
        const Trajectory traj = build(x);
        const int n_slots = s->n_slots;
        const double h2 = s->altitude_H * s->altitude_H;

        // Pass 1: exponents and their max.
        // e[hop][slot] holds the per-slot tempered exponent list implicitly;
        // we only need per-term values, so compute them twice (cheap) with a
        // recorded max.
        double emax = -std::numeric_limits<double>::infinity();
        auto for_each_term = [&](auto&& fn) {
            for (int hop = 1; hop <= 2; ++hop) {
                const auto& coeffs = hop == 1 ? sur->coeff_hop1 : sur->coeff_hop2;
                const auto& diffs = hop == 1 ? diffs1 : diffs2;
                const auto& inv1 = hop == 1 ? lin->inv1_1 : lin->inv1_2;
                const auto& inv2 = hop == 1 ? lin->inv2_1 : lin->inv2_2;
                const auto& yi = hop == 1 ? lin->y1 : lin->y2;
                const Eigen::Vector2d& p = ground_pos(*s, hop);
                for (int n = 0; n < n_slots; ++n) {
                    const double y = (traj.w[n] - p).squaredNorm();
                    for (int pair = 0; pair < diffs.n_pairs(); ++pair) {
                        if (diffs.is_diagonal(pair)) continue;
                        const double a = coeffs[n][pair];
                        const double d_lb = a * (inv1[n] - inv2[n] * (y - yi[n]));
                        fn(hop, n, pair, a, -d_lb / tau);
                    }
                }
            }
        };
        for_each_term([&](int, int, int, double, double e) { emax = std::max(emax, e); });
        if (!std::isfinite(emax)) return emax;  // all-empty cannot happen (pairs >= 2)

        double total = 0.0;
        std::vector<Eigen::Vector2d> gw(n_slots, Eigen::Vector2d::Zero());
        // Weighted coefficient accumulators per slot/hop for the gradient.
        std::vector<double> wsum1(n_slots, 0.0), wsum2(n_slots, 0.0);
        for_each_term([&](int hop, int n, int, double a, double e) {
            const double wgt = std::exp(e - emax);
            total += wgt;
            (hop == 1 ? wsum1[n] : wsum2[n]) += wgt * a;
        });
        const double value = tau * (emax + std::log(total));
        if (grad) {
            const auto& inv2_1 = lin->inv2_1;
            const auto& inv2_2 = lin->inv2_2;
            for (int n = 0; n < n_slots; ++n) {
                // d(-D_lb)/dw = 2 a inv2 (w - p); softmax weights sum to 1.
                gw[n] = 2.0 * inv2_1[n] * (wsum1[n] / total) * (traj.w[n] - s->bs_pos) +
                        2.0 * inv2_2[n] * (wsum2[n] / total) * (traj.w[n] - s->gu_pos);
            }
            std::vector<Eigen::Vector2d> gv(n_slots, Eigen::Vector2d::Zero());
            *grad += adjoint_to_vars(gw, gv, s->slot_dt);
        }
        (void)h2;
        return value;
    }

    // Terminal-position equality plus soft speed-limit hinges.
    double penalty(const Eigen::VectorXd& x, double weight, double* sq_sum,
                   Eigen::VectorXd* grad) const {
        const Trajectory traj = build(x);
        const int n_slots = s->n_slots;
        const Eigen::Vector2d end_res = traj.w.back() - s->uav_end;
        double max_res = end_res.norm();
        double sq = end_res.squaredNorm();

        std::vector<Eigen::Vector2d> gw(n_slots, Eigen::Vector2d::Zero());
        std::vector<Eigen::Vector2d> gv(n_slots, Eigen::Vector2d::Zero());
        gw[n_slots - 1] = 2.0 * end_res;

        for (int n = 1; n < n_slots; ++n) {
            const double speed = traj.v[n].norm();
            const double h = speed - v_soft;
            if (h > 0.0) {
                max_res = std::max(max_res, h);
                sq += h * h;
                if (speed > 0.0) gv[n] = 2.0 * h * traj.v[n] / speed;
            }
        }
        if (sq_sum) *sq_sum += sq;
        if (grad && weight != 0.0) *grad += weight * adjoint_to_vars(gw, gv, s->slot_dt);
        return max_res;
    }

    void project(Eigen::VectorXd& x) const {
        auto clip_ball = [](Eigen::Ref<Eigen::Vector2d> v, double radius) {
            const double n = v.norm();
            if (n > radius) v *= radius / n;
        };
        clip_ball(x.segment<2>(0), s->v_max);
        for (int i = 0; i < s->n_slots - 1; ++i) clip_ball(x.segment<2>(2 + 2 * i), s->a_max);
    }
};

}  // namespace

TrajectorySurrogate build_surrogate(const Scenario& s, const SmallScaleFactor& small_scale,
                                    const std::vector<Eigen::MatrixXcd>& precoders_hop1,
                                    const std::vector<Eigen::MatrixXcd>& precoders_hop2,
                                    const Trajectory& traj_prev, const DifferenceSet& diffs_hop1,
                                    const DifferenceSet& diffs_hop2) {
    if (static_cast<int>(precoders_hop1.size()) != s.n_slots ||
        static_cast<int>(precoders_hop2.size()) != s.n_slots || traj_prev.n_slots() != s.n_slots)
        throw std::invalid_argument("build_surrogate: slot count mismatch");
    TrajectorySurrogate sur;
    sur.expansion_w = traj_prev.w;
    sur.coeff_hop1 = exponent_coeffs(small_scale.h_r_hop1, precoders_hop1, diffs_hop1, s.noise1_w);
    sur.coeff_hop2 = exponent_coeffs(small_scale.h_r_hop2, precoders_hop2, diffs_hop2, s.noise2_w);
    sur.offset_hop1 = link_offset(s.n_slots, diffs_hop1.dim, diffs_hop1.order);
    sur.offset_hop2 = link_offset(s.n_slots, diffs_hop2.dim, diffs_hop2.order);
    return sur;
}

double exact_trajectory_exponent(const TrajectorySurrogate& sur, const Scenario& s,
                                 const Eigen::Vector2d& w_candidate, int slot, int hop, int pair) {
    const auto& coeffs = hop == 1 ? sur.coeff_hop1 : sur.coeff_hop2;
    const double a = coeffs.at(slot).at(pair);
    return s.rho0_lin * a / denom(s, w_candidate, ground_pos(s, hop));
}

double surrogate_exponent_lb(const TrajectorySurrogate& sur, const Scenario& s,
                             const Eigen::Vector2d& w_candidate, int slot, int hop, int pair) {
    const auto& coeffs = hop == 1 ? sur.coeff_hop1 : sur.coeff_hop2;
    const double a = coeffs.at(slot).at(pair);
    const Eigen::Vector2d& p = ground_pos(s, hop);
    const double den_i = denom(s, sur.expansion_w.at(slot), p);
    const double y_i = (sur.expansion_w[slot] - p).squaredNorm();
    const double y = (w_candidate - p).squaredNorm();
    return s.rho0_lin * a / den_i - s.rho0_lin * a / (den_i * den_i) * (y - y_i);
}

std::pair<double, double> trajectory_true_log_sums(const TrajectorySurrogate& sur,
                                                   const Scenario& s, const Trajectory& traj) {
    std::vector<double> e1, e2;
    for (int hop = 1; hop <= 2; ++hop) {
        const auto& coeffs = hop == 1 ? sur.coeff_hop1 : sur.coeff_hop2;
        auto& out = hop == 1 ? e1 : e2;
        const Eigen::Vector2d& p = ground_pos(s, hop);
        for (int n = 0; n < traj.n_slots(); ++n) {
            const double den = denom(s, traj.w[n], p);
            const auto& cn = coeffs[n];
            for (size_t pair = 0; pair < cn.size(); ++pair) {
                // Diagonal pairs carry zero coefficients; they contribute a
                // trajectory-independent constant and are left out here.
                if (cn[pair] == 0.0) continue;
                out.push_back(-s.rho0_lin * cn[pair] / den);
            }
        }
    }
    const double inf = -std::numeric_limits<double>::infinity();
    return {e1.empty() ? inf : log_sum_exp(e1), e2.empty() ? inf : log_sum_exp(e2)};
}

TrajectoryStepResult solve_trajectory_step(const Scenario& s, const SmallScaleFactor& small_scale,
                                           const std::vector<Eigen::MatrixXcd>& precoders_hop1,
                                           const std::vector<Eigen::MatrixXcd>& precoders_hop2,
                                           const Trajectory& traj_prev,
                                           const DifferenceSet& diffs_hop1,
                                           const DifferenceSet& diffs_hop2) {
    if (!check_feasibility(traj_prev, s).feasible)
        throw std::invalid_argument("solve_trajectory_step: infeasible input trajectory");
    TrajectoryStepResult result;
    TrajectorySurrogate sur = build_surrogate(s, small_scale, precoders_hop1, precoders_hop2,
                                              traj_prev, diffs_hop1, diffs_hop2);

    Trajectory current = traj_prev;
    auto true_obj = [&](const Trajectory& t) {
        auto [l1, l2] = trajectory_true_log_sums(sur, s, t);
        return std::max(l1, l2);
    };
    double best = true_obj(current);

    // Initial smoothing temperature scales with the link constants, so longer
    // horizons start with broader gradient weight across slots; halved each
    // iteration, floored at the untempered objective (tau = 1).
    double tau = std::max(1.0, (std::abs(sur.offset_hop1) + std::abs(sur.offset_hop2)) / 100.0);

    TrajWorkspace ws;
    ws.s = &s;
    ws.sur = &sur;
    ws.v_soft = s.v_max * (1.0 - 1e-6);

    for (int iter = 0; iter < s.solver_params.sca_max_iters; ++iter) {
        sur.expansion_w = current.w;
        LinCache lin = make_lin_cache(s, sur.expansion_w);
        ws.lin = &lin;
        ws.tau = tau;

        ConvexProblem problem;
        problem.dim = ws.dim();
        problem.objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
            return ws.objective(x, g, diffs_hop1, diffs_hop2);
        };
        problem.project = [&](Eigen::VectorXd& x) { ws.project(x); };
        problem.penalty = [&](const Eigen::VectorXd& x, double weight, double* sq,
                              Eigen::VectorXd* g) { return ws.penalty(x, weight, sq, g); };

        const TrajectoryVars vars = extract_vars(current);
        Eigen::VectorXd x0(problem.dim);
        x0.segment<2>(0) = vars.v0;
        for (size_t i = 0; i < vars.accel.size(); ++i) x0.segment<2>(2 + 2 * i) = vars.accel[i];

        result.report = solve(problem, x0, s.solver_params);
        Trajectory candidate = ws.build(result.report.x);

        const double cand_obj = true_obj(candidate);
        const bool accepted =
            cand_obj <= best + 1e-12 && check_feasibility(candidate, s).feasible;
        if (accepted) {
            const double prev = best;
            current = candidate;
            best = cand_obj;
            auto [l1, l2] = trajectory_true_log_sums(sur, s, current);
            result.trace.push_back({iter, l1, l2, best});
            const double rel_change = std::abs(prev - best) / std::max(1.0, std::abs(prev));
            if (rel_change < s.solver_params.sca_tol && tau <= 1.0) break;
        }
        if (tau <= 1.0 && !accepted) break;
        tau = std::max(1.0, tau / 2.0);
    }

    result.trajectory = current;
    return result;
}

}  // namespace faao
