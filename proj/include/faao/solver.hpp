// solver.hpp - first-order convex subproblem kernel: projected gradient
// descent with Barzilai-Borwein step estimates, Armijo backtracking and an
// increasing quadratic penalty for affine equality constraints.

#pragma once

#include "faao/scenario.hpp"

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace faao {

struct ConvexProblem {
    int dim = 0;

    /// Smooth convex objective; writes the gradient when grad != nullptr.
    std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)> objective;

    /// Exact projection onto the projectable constraint set (idempotent).
    /// May be empty when the problem is unconstrained.
    std::function<void(Eigen::VectorXd& x)> project;

    /// Optional penalized constraints (equalities and soft norm limits).
    /// Returns the maximum constraint residual and adds `weight` times the
    /// gradient of the squared-residual sum into grad (when non-null);
    /// the squared sum itself is added to *sq_sum.
    std::function<double(const Eigen::VectorXd& x, double weight, double* sq_sum,
                         Eigen::VectorXd* grad)>
        penalty;
};

struct SolveReport {
    Eigen::VectorXd x;
    double objective = 0.0;        // objective value (without penalty)
    double pg_norm = 0.0;          // projected-gradient norm, scaled units
    double max_residual = 0.0;     // worst penalized-constraint residual
    int iterations = 0;
    bool converged = false;
    std::string error;             // non-empty on non-finite values
};

/// Minimizes objective + penalty over the projectable set. The start point
/// is projected first; accepted steps are non-increasing at fixed penalty
/// weight. The penalty weight grows by penalty_growth whenever the
/// residual stalls above feas_tol_equality.
SolveReport solve(const ConvexProblem& problem, const Eigen::VectorXd& start,
                  const SolverParams& params);

}  // namespace faao
