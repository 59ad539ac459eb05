#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "faao/kinematics.hpp"

#include <cmath>
#include <random>

using namespace faao;

TEST_CASE("propagate follows the update equations") {
    SUBCASE("one step by hand") {
        const Trajectory t = propagate({0, 0}, {10, 0}, {Eigen::Vector2d(0, 5)}, 0.2);
        REQUIRE(t.n_slots() == 2);
        CHECK(t.w[1].isApprox(Eigen::Vector2d(2.0, 0.1), 1e-15));
        CHECK(t.v[1].isApprox(Eigen::Vector2d(10.0, 1.0), 1e-15));
    }

    SUBCASE("zero acceleration is uniform motion") {
        const std::vector<Eigen::Vector2d> a(9, Eigen::Vector2d::Zero());
        const Trajectory t = propagate({1, 2}, {3, -4}, a, 0.5);
        for (int n = 0; n < t.n_slots(); ++n) {
            CHECK(t.w[n].isApprox(Eigen::Vector2d(1 + 1.5 * n, 2 - 2.0 * n), 1e-13));
            CHECK(t.v[n] == Eigen::Vector2d(3, -4));
        }
    }

    SUBCASE("constant acceleration from rest integrates exactly") {
        const double c = 2.0, dt = 0.2;
        const std::vector<Eigen::Vector2d> a(20, Eigen::Vector2d(c, 0));
        const Trajectory t = propagate({0, 0}, {0, 0}, a, dt);
        for (int n = 0; n <= 20; ++n)
            CHECK(t.w[n].x() == doctest::Approx(0.5 * c * (n * dt) * (n * dt)).epsilon(1e-12));
    }
}

TEST_CASE("straight-line initialization") {
    SUBCASE("default horizon") {
        const Scenario s = default_scenario();
        const Trajectory t = straight_line_init(s);
        REQUIRE(t.n_slots() == 250);
        CHECK((t.w.front() - s.uav_start).norm() < 1e-12);
        CHECK((t.w.back() - s.uav_end).norm() < 1e-9);
        // span/T = 9.8995; the per-step speed covers the span in n_slots-1
        // steps so it is higher by T/(T-dt)
        CHECK(t.v[0].norm() == doctest::Approx(9.8995).epsilon(0.01));
        const FeasibilityReport rep = check_feasibility(t, s);
        CHECK(rep.feasible);
        CHECK(rep.max_update_residual <= 1e-9);
        CHECK(rep.max_speed_excess <= 1e-9);
        CHECK(rep.max_accel_excess <= 1e-9);
    }

    SUBCASE("short horizon speed") {
        Scenario s = default_scenario();
        s.horizon_T = 10.0;
        s.finalize();
        const Trajectory t = straight_line_init(s);
        CHECK(t.v[0].norm() == doctest::Approx(49.497).epsilon(0.025));
        CHECK(check_feasibility(t, s).feasible);
    }

    SUBCASE("degenerate start == end") {
        Scenario s = default_scenario();
        s.uav_end = s.uav_start;
        s.finalize();
        const Trajectory t = straight_line_init(s);
        for (const auto& v : t.v) CHECK(v.norm() == 0.0);
        for (const auto& w : t.w) CHECK((w - s.uav_start).norm() == 0.0);
    }

    SUBCASE("required speed just over the limit") {
        Scenario s = default_scenario();
        s.horizon_T = 10.0;
        // reachable by span/T but not by the per-step speed span/(T-dt)
        s.v_max = 494.97474683 / 10.0 * 1.001;
        s.finalize();
        CHECK_THROWS_AS((void)straight_line_init(s), std::runtime_error);
    }
}

TEST_CASE("feasibility reporting") {
    const Scenario s = default_scenario();
    Trajectory t = straight_line_init(s);

    SUBCASE("position tamper shows up as an update residual") {
        t.w[100] += Eigen::Vector2d(1.0, 0.0);
        const FeasibilityReport rep = check_feasibility(t, s);
        CHECK_FALSE(rep.feasible);
        CHECK(rep.max_update_residual == doctest::Approx(1.0).epsilon(0.01));
    }

    SUBCASE("boundary tamper") {
        t.w.back() += Eigen::Vector2d(0.0, 2.0);
        const FeasibilityReport rep = check_feasibility(t, s);
        CHECK_FALSE(rep.feasible);
        CHECK(rep.end_residual == doctest::Approx(2.0).epsilon(1e-9));
    }

    SUBCASE("speed excess magnitude") {
        for (auto& v : t.v) v *= 20.0;
        const FeasibilityReport rep = check_feasibility(t, s);
        CHECK_FALSE(rep.feasible);
        // 20 * 9.9 - 100, up to the step-speed correction
        CHECK(rep.max_speed_excess == doctest::Approx(98.0).epsilon(0.01));
    }
}

TEST_CASE("extract_vars / propagate round trip") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Scenario s = default_scenario();
    s.horizon_T = 6.0;
    s.uav_end = s.uav_start;  // endpoints irrelevant here
    s.finalize();

    std::vector<Eigen::Vector2d> accel(s.n_slots - 1);
    for (auto& a : accel) a = s.a_max * 0.3 * Eigen::Vector2d(u(rng), u(rng));
    const Trajectory t = propagate(s.uav_start, {2.0, -1.0}, accel, s.slot_dt);

    const TrajectoryVars vars = extract_vars(t);
    REQUIRE(int(vars.accel.size()) == s.n_slots - 1);
    const Trajectory back = propagate(vars.w0, vars.v0, vars.accel, s.slot_dt);
    for (int n = 0; n < t.n_slots(); ++n) {
        CHECK((back.w[n] - t.w[n]).norm() < 1e-10);
        CHECK((back.v[n] - t.v[n]).norm() < 1e-10);
    }
}
