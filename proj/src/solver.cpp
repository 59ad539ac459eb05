#include "faao/solver.hpp"

#include <cmath>

namespace faao {

namespace {

struct Eval {
    double value = 0.0;       // scaled objective + penalty
    double raw_objective = 0.0;
    bool finite = true;
};

}  // namespace

SolveReport solve(const ConvexProblem& problem, const Eigen::VectorXd& start,
                  const SolverParams& params) {
    SolveReport rep;
    Eigen::VectorXd x = start;
    if (problem.project) problem.project(x);

    double mu = params.penalty_init;

    auto evaluate = [&](const Eigen::VectorXd& p, double weight, Eigen::VectorXd* grad) -> Eval {
        Eval e;
        if (grad) grad->setZero(problem.dim);
        e.raw_objective = problem.objective(p, grad);
        double sq = 0.0;
        if (problem.penalty) problem.penalty(p, weight, &sq, grad);
        e.value = e.raw_objective + weight * sq;
        e.finite = std::isfinite(e.value) && (!grad || grad->allFinite());
        return e;
    };

    // Scale so the absolute gradient tolerance is meaningful across problems
    // whose natural gradient magnitudes differ by many orders.
    Eigen::VectorXd g(problem.dim);
    Eval e0 = evaluate(x, mu, &g);
    if (!e0.finite) {
        rep.x = x;
        rep.error = "non-finite objective or gradient at start";
        return rep;
    }
    const double scale = std::max(1.0, g.norm());
    double f = e0.value / scale;
    g /= scale;

    auto residual_at = [&](const Eigen::VectorXd& p) {
        if (!problem.penalty) return 0.0;
        double sq = 0.0;
        return problem.penalty(p, 0.0, &sq, nullptr);
    };

    auto pg_norm_at = [&](const Eigen::VectorXd& p, const Eigen::VectorXd& grad) {
        Eigen::VectorXd trial = p - grad;
        if (problem.project) problem.project(trial);
        return (trial - p).norm();
    };

    const int max_stages = 30;
    Eigen::VectorXd x_prev, g_prev;
    bool have_prev = false;
    int total_iters = 0;

    double pg = pg_norm_at(x, g);
    for (int stage = 0; stage < max_stages; ++stage) {
        double stall_residual = residual_at(x);
        for (int it = 0; it < params.inner_max_iters && pg > params.inner_grad_tol; ++it) {
            ++total_iters;
            // Barzilai-Borwein step estimate, falling back to 1/|g|.
            double t = 1.0 / std::max(g.norm(), 1e-12);
            if (have_prev) {
                const Eigen::VectorXd s = x - x_prev;
                const Eigen::VectorXd y = g - g_prev;
                const double sy = s.dot(y);
                if (sy > 1e-30) t = s.squaredNorm() / sy;
            }
            t = std::clamp(t, 1e-16, 1e12);

            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt) {
                Eigen::VectorXd trial = x - t * g;
                if (problem.project) problem.project(trial);
                const Eigen::VectorXd d = trial - x;
                if (d.squaredNorm() == 0.0) break;
                Eval et = evaluate(trial, mu, nullptr);
                if (!et.finite) {
                    t *= 0.5;
                    continue;
                }
                if (et.value / scale <= f + 1e-4 * g.dot(d)) {
                    x_prev = x;
                    g_prev = g;
                    have_prev = true;
                    x = trial;
                    Eigen::VectorXd gn(problem.dim);
                    Eval en = evaluate(x, mu, &gn);
                    if (!en.finite) {
                        rep.x = x;
                        rep.error = "non-finite gradient during descent";
                        rep.iterations = total_iters;
                        return rep;
                    }
                    f = en.value / scale;
                    g = gn / scale;
                    rep.objective = en.raw_objective;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if (!accepted) break;  // no descent direction left at this penalty
            pg = pg_norm_at(x, g);
        }

        const double res = residual_at(x);
        if (!problem.penalty || res <= params.feas_tol_equality) break;
        // Residual above tolerance: escalate the penalty unless it is still
        // improving markedly at the current weight.
        if (res > 0.5 * stall_residual) mu *= params.penalty_growth;
        // Re-evaluate with the new weight.
        Eval er = evaluate(x, mu, &g);
        f = er.value / scale;
        g /= scale;
        have_prev = false;
        pg = pg_norm_at(x, g);
    }

    rep.x = x;
    rep.objective = problem.objective(x, nullptr);
    rep.pg_norm = pg;
    rep.max_residual = residual_at(x);
    rep.iterations = total_iters;
    rep.converged = pg <= params.inner_grad_tol && rep.max_residual <= params.feas_tol_equality;
    return rep;
}

}  // namespace faao
