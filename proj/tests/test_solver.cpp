#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "faao/solver.hpp"

#include <cmath>
#include <random>

using namespace faao;

namespace {

SolverParams quick_params() {
    SolverParams p;
    p.inner_max_iters = 2000;
    p.inner_grad_tol = 1e-9;
    return p;
}

void clip_unit_ball(Eigen::VectorXd& x) {
    const double n = x.norm();
    if (n > 1.0) x /= n;
}

}  // namespace

TEST_CASE("projection problem: nearest point on the unit ball") {
    ConvexProblem p;
    p.dim = 3;
    const Eigen::Vector3d c(2.0, -1.0, 0.5);
    p.objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
        if (g) *g += 2.0 * (x - c);
        return (x - c).squaredNorm();
    };
    p.project = clip_unit_ball;

    const SolveReport r = solve(p, Eigen::Vector3d::Zero(), quick_params());
    CHECK(r.converged);
    CHECK((r.x - c / c.norm()).norm() < 1e-6);
}

TEST_CASE("linear objective lands on the boundary opposite the gradient") {
    ConvexProblem p;
    p.dim = 2;
    const Eigen::Vector2d g0(1.0, 2.0);
    p.objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
        if (g) *g += g0;
        return g0.dot(x);
    };
    p.project = clip_unit_ball;

    const SolveReport r = solve(p, Eigen::Vector2d(0.3, 0.1), quick_params());
    CHECK(r.converged);
    CHECK((r.x + g0 / g0.norm()).norm() < 1e-6);
}

TEST_CASE("sum-of-exponentials matches a fine grid search") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double radius = 1.5;

    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Eigen::Vector2d> gs(5);
        for (auto& g : gs) g = Eigen::Vector2d(u(rng), u(rng));
        auto f = [&](const Eigen::Vector2d& x) {
            double v = 0.0;
            for (const auto& g : gs) v += std::exp(-g.dot(x));
            return v;
        };

        ConvexProblem p;
        p.dim = 2;
        p.objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
            double v = 0.0;
            for (const auto& g : gs) {
                const double e = std::exp(-g.dot(x));
                v += e;
                if (grad) *grad += -e * g;
            }
            return v;
        };
        p.project = [&](Eigen::VectorXd& x) {
            const double n = x.norm();
            if (n > radius) x *= radius / n;
        };

        const SolveReport r = solve(p, Eigen::Vector2d::Zero(), quick_params());
        REQUIRE(r.converged);

        double best = std::numeric_limits<double>::infinity();
        const int grid = 600;
        for (int i = 0; i <= grid; ++i)
            for (int j = 0; j <= grid; ++j) {
                Eigen::Vector2d x(-radius + 2 * radius * i / grid,
                                  -radius + 2 * radius * j / grid);
                if (x.norm() > radius) continue;
                best = std::min(best, f(x));
            }
        CHECK(r.objective <= best + 1e-4);
        // the grid itself is only accurate to its spacing
        CHECK(r.objective >= best - 1e-3);
    }
}

TEST_CASE("objective never increases from the start point") {
    ConvexProblem p;
    p.dim = 4;
    p.objective = [](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
        double v = 0.0;
        for (int i = 0; i < x.size(); ++i) {
            v += std::exp(x(i)) + 0.5 * x(i) * x(i);
            if (g) (*g)(i) += std::exp(x(i)) + x(i);
        }
        return v;
    };
    const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(4, 2.0);
    Eigen::VectorXd unused;
    const double f0 = p.objective(x0, nullptr);
    const SolveReport r = solve(p, x0, quick_params());
    CHECK(r.objective <= f0);
    CHECK(r.converged);
}

TEST_CASE("quadratic penalty drives the equality residual down") {
    // minimize ||x||^2 subject to x0 + x1 = 1 -> x = [0.5, 0.5]
    ConvexProblem p;
    p.dim = 2;
    p.objective = [](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
        if (g) *g += 2.0 * x;
        return x.squaredNorm();
    };
    p.penalty = [](const Eigen::VectorXd& x, double weight, double* sq, Eigen::VectorXd* g) {
        const double res = x(0) + x(1) - 1.0;
        if (sq) *sq += res * res;
        if (g && weight != 0.0) {
            (*g)(0) += weight * 2.0 * res;
            (*g)(1) += weight * 2.0 * res;
        }
        return std::abs(res);
    };

    const SolveReport r = solve(p, Eigen::Vector2d(3.0, -1.0), quick_params());
    CHECK(r.converged);
    CHECK(r.max_residual <= 1e-6);
    CHECK(std::abs(r.x(0) - 0.5) < 1e-4);
    CHECK(std::abs(r.x(1) - 0.5) < 1e-4);
}

TEST_CASE("iteration budget exhaustion is reported, not hidden") {
    SolverParams tight = quick_params();
    tight.inner_max_iters = 2;
    tight.inner_grad_tol = 1e-16;

    ConvexProblem p;
    p.dim = 2;
    // narrow valley; two iterations cannot reach tolerance 1e-16
    p.objective = [](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
        if (g) {
            (*g)(0) += 2.0 * x(0);
            (*g)(1) += 200.0 * x(1);
        }
        return x(0) * x(0) + 100.0 * x(1) * x(1);
    };
    const SolveReport r = solve(p, Eigen::Vector2d(5.0, 5.0), tight);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations <= 2);
    CHECK(std::isfinite(r.objective));
}

TEST_CASE("non-finite objectives surface as an error") {
    ConvexProblem p;
    p.dim = 1;
    p.objective = [](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
        if (g) (*g)(0) += 1.0;
        return std::numeric_limits<double>::quiet_NaN() * x(0);
    };
    const SolveReport r = solve(p, Eigen::VectorXd::Constant(1, 1.0), quick_params());
    CHECK_FALSE(r.converged);
    CHECK_FALSE(r.error.empty());
}
