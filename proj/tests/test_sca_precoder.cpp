#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "faao/fa_info.hpp"
#include "faao/sca_precoder.hpp"

#include <cmath>
#include <random>

using namespace faao;

namespace {

Eigen::MatrixXcd random_complex(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
    return m;
}

const Eigen::MatrixXcd kOne = Eigen::MatrixXcd::Ones(1, 1);

// Identity-channel realization: distances 1, rho0 1, unit small scale.
struct FlatChannel {
    SmallScaleFactor ss;
    ChannelRealization real;

    FlatChannel(const Scenario& s, const Eigen::MatrixXcd& h1, const Eigen::MatrixXcd& h2) {
        ss.h_r_hop1.assign(s.n_slots, h1);
        ss.h_r_hop2.assign(s.n_slots, h2);
        real.small_scale = &ss;
        real.distances_hop1.assign(s.n_slots, 1.0);
        real.distances_hop2.assign(s.n_slots, 1.0);
        real.rho0_lin = 1.0;
    }
};

}  // namespace

TEST_CASE("trace-form exponent") {
    SUBCASE("hand values") {
        Eigen::VectorXcd u(1);
        u << 2.0;
        CHECK(exact_exponent(kOne, 2.0 * kOne, u, 1.0) == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(exact_exponent(kOne, kOne, u, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
        Eigen::VectorXcd u2(2);
        u2 << 2.0, 0.0;
        CHECK(exact_exponent(Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(2, 2),
                             u2, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(exact_exponent(Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(2, 2),
                             0.0 * u2, 1.0) == 0.0);
    }

    SUBCASE("equals the norm form on random instances") {
        std::mt19937_64 rng(31);
        for (int t = 0; t < 20; ++t) {
            const Eigen::MatrixXcd h = random_complex(2, 2, rng);
            const Eigen::MatrixXcd p = random_complex(2, 2, rng);
            Eigen::VectorXcd u = random_complex(2, 1, rng).col(0);
            const double norm_form = (h * p * u).squaredNorm() / (4.0 * 0.7);
            CHECK(exact_exponent(h, p, u, 0.7) ==
                  doctest::Approx(norm_form).epsilon(1e-12));
        }
    }
}

TEST_CASE("linearized exponent") {
    Eigen::VectorXcd u(1);
    u << 2.0;

    SUBCASE("hand case: C = 16, C_ap = 12") {
        // returned values are divided by 4 sigma^2 = 4
        CHECK(exact_exponent(kOne, 2.0 * kOne, u, 1.0) * 4.0 == doctest::Approx(16.0));
        CHECK(linearized_exponent(kOne, kOne, 2.0 * kOne, u, 1.0) * 4.0 ==
              doctest::Approx(12.0).epsilon(1e-12));
    }

    SUBCASE("tangency at the expansion point") {
        std::mt19937_64 rng(37);
        for (int t = 0; t < 20; ++t) {
            const Eigen::MatrixXcd h = random_complex(2, 2, rng);
            const Eigen::MatrixXcd pe = random_complex(2, 2, rng);
            Eigen::VectorXcd u2 = random_complex(2, 1, rng).col(0);
            CHECK(linearized_exponent(h, pe, pe, u2, 1.0) ==
                  doctest::Approx(exact_exponent(h, pe, u2, 1.0)).epsilon(1e-12));
        }
    }

    SUBCASE("zero expansion flattens the surrogate") {
        std::mt19937_64 rng(41);
        const Eigen::MatrixXcd h = random_complex(2, 2, rng);
        const Eigen::MatrixXcd p = random_complex(2, 2, rng);
        Eigen::VectorXcd u2 = random_complex(2, 1, rng).col(0);
        CHECK(linearized_exponent(h, Eigen::MatrixXcd::Zero(2, 2), p, u2, 1.0) == 0.0);
    }

    SUBCASE("tangent minorization on random perturbations") {
        std::mt19937_64 rng(43);
        for (int t = 0; t < 100; ++t) {
            const Eigen::MatrixXcd h = random_complex(2, 2, rng);
            const Eigen::MatrixXcd pe = random_complex(2, 2, rng);
            const Eigen::MatrixXcd p = pe + 0.5 * random_complex(2, 2, rng);
            Eigen::VectorXcd u2 = random_complex(2, 1, rng).col(0);
            const double c = exact_exponent(h, p, u2, 1.0);
            CHECK(linearized_exponent(h, pe, p, u2, 1.0) <= c + 1e-9 * std::max(1.0, c));
        }
    }

    SUBCASE("gradient match at the expansion point (finite differences)") {
        std::mt19937_64 rng(47);
        const Eigen::MatrixXcd h = random_complex(2, 2, rng);
        const Eigen::MatrixXcd pe = random_complex(2, 2, rng);
        Eigen::VectorXcd u2 = random_complex(2, 1, rng).col(0);
        const double step = 1e-5;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int part = 0; part < 2; ++part) {
                    Eigen::MatrixXcd dp = Eigen::MatrixXcd::Zero(2, 2);
                    dp(i, j) = part == 0 ? std::complex<double>(step, 0)
                                         : std::complex<double>(0, step);
                    const double ge = (exact_exponent(h, pe + dp, u2, 1.0) -
                                       exact_exponent(h, pe - dp, u2, 1.0)) /
                                      (2 * step);
                    const double gl = (linearized_exponent(h, pe, pe + dp, u2, 1.0) -
                                       linearized_exponent(h, pe, pe - dp, u2, 1.0)) /
                                      (2 * step);
                    if (std::abs(ge) > 1e-9)
                        CHECK(std::abs(gl - ge) / std::abs(ge) < 1e-4);
                }
    }
}

TEST_CASE("power projection") {
    std::mt19937_64 rng(53);
    Eigen::MatrixXcd p = 10.0 * random_complex(2, 2, rng);
    project_power(p, 0.5);
    CHECK(p.squaredNorm() == doctest::Approx(0.5).epsilon(1e-12));

    Eigen::MatrixXcd inside = 0.01 * Eigen::MatrixXcd::Identity(2, 2);
    const Eigen::MatrixXcd before = inside;
    project_power(inside, 0.5);
    CHECK(inside == before);  // already feasible: untouched
}

TEST_CASE("precoder step") {
    const DifferenceSet d1 = enumerate_differences(make_constellation("bpsk"), 1);
    const DifferenceSet d2 = enumerate_differences(make_constellation("bpsk"), 2);

    SUBCASE("SISO positive channel: full power is optimal") {
        Scenario s = default_scenario();
        s.horizon_T = 0.4;  // 2 slots
        s.uav_end = s.uav_start + Eigen::Vector2d(0.8, 0.0);
        s.n_tx = s.n_relay = s.n_rx = 1;
        s.noise_power_dbm_hop1 = s.noise_power_dbm_hop2 = 30.0;  // 1 W
        s.power_bs_dbm = s.power_uav_dbm = 30.0;                 // W = 1
        s.finalize();
        FlatChannel fc(s, kOne, kOne);
        PrecoderSchedule init;
        init.p_bs.assign(s.n_slots, 0.1 * kOne);
        init.p_uav.assign(s.n_slots, 0.1 * kOne);
        const PrecoderStepResult r = solve_precoder_step(s, fc.real, init, d1, d1);
        for (int n = 0; n < s.n_slots; ++n) {
            CHECK(std::abs(r.schedule.p_bs[n](0, 0)) == doctest::Approx(1.0).epsilon(1e-3));
            CHECK(std::abs(r.schedule.p_uav[n](0, 0)) == doctest::Approx(1.0).epsilon(1e-3));
        }
    }

    SUBCASE("vanishing power budget collapses the precoders and the rate") {
        Scenario s = default_scenario();
        s.horizon_T = 0.4;
        s.uav_end = s.uav_start + Eigen::Vector2d(0.8, 0.0);
        s.power_bs_dbm = s.power_uav_dbm = -300.0;
        s.noise_power_dbm_hop1 = s.noise_power_dbm_hop2 = 0.0;
        s.finalize();
        FlatChannel fc(s, Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(2, 2));
        const PrecoderStepResult r =
            solve_precoder_step(s, fc.real, identity_schedule(s), d2, d2);
        for (int n = 0; n < s.n_slots; ++n) {
            CHECK(r.schedule.p_bs[n].squaredNorm() <= s.power_bs_w * (1.0 + 1e-9));
            CHECK(mi_closed_form(fc.real.full_channel(n, 1), r.schedule.p_bs[n], d2,
                                 s.noise1_w) < 1e-6);
        }
    }

    SUBCASE("identity channel: optimized beats the scaled identity") {
        Scenario s = default_scenario();
        s.horizon_T = 0.4;
        s.uav_end = s.uav_start + Eigen::Vector2d(0.8, 0.0);
        s.noise_power_dbm_hop1 = s.noise_power_dbm_hop2 = 30.0;
        s.power_bs_dbm = s.power_uav_dbm = 33.0;  // W ~ 2
        s.finalize();
        FlatChannel fc(s, Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(2, 2));
        const PrecoderSchedule init = identity_schedule(s);
        const PrecoderStepResult r = solve_precoder_step(s, fc.real, init, d2, d2);
        const double base = mi_closed_form(fc.real.full_channel(0, 1), init.p_bs[0], d2, 1.0);
        const double opt =
            mi_closed_form(fc.real.full_channel(0, 1), r.schedule.p_bs[0], d2, 1.0);
        CHECK(opt >= base - 1e-9);
    }

    SUBCASE("realistic scenario: non-worsening, power-feasible") {
        Scenario s = default_scenario();
        s.horizon_T = 1.0;  // 5 slots
        s.uav_end = s.uav_start + Eigen::Vector2d(2.0, 0.0);
        s.seed = 9;
        s.finalize();
        const SmallScaleFactor ss = draw_small_scale(s);
        const Trajectory traj = straight_line_init(s);
        const ChannelRealization real = make_realization(s, ss, traj.w);
        const PrecoderStepResult r =
            solve_precoder_step(s, real, identity_schedule(s), d2, d2);
        CHECK(r.log_sum_hop1_after <= r.log_sum_hop1_before + 1e-9);
        CHECK(r.log_sum_hop2_after <= r.log_sum_hop2_before + 1e-9);
        for (int n = 0; n < s.n_slots; ++n) {
            CHECK(r.schedule.p_bs[n].squaredNorm() <= s.power_bs_w * (1.0 + 1e-9));
            CHECK(r.schedule.p_uav[n].squaredNorm() <= s.power_uav_w * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("per-slot decomposition of the link objective") {
    Scenario s = default_scenario();
    s.horizon_T = 1.0;
    s.uav_end = s.uav_start + Eigen::Vector2d(2.0, 0.0);
    s.seed = 15;
    s.finalize();
    const DifferenceSet d2 = enumerate_differences(make_constellation("bpsk"), 2);
    const SmallScaleFactor ss = draw_small_scale(s);
    const ChannelRealization real = make_realization(s, ss, straight_line_init(s).w);
    const PrecoderSchedule prec = identity_schedule(s);

    std::vector<Eigen::MatrixXcd> channels;
    for (int n = 0; n < s.n_slots; ++n) channels.push_back(real.full_channel(n, 1));

    const double joint = precoder_log_sum(channels, prec.p_bs, d2, s.noise1_w);
    std::vector<double> per_slot;
    for (int n = 0; n < s.n_slots; ++n)
        per_slot.push_back(precoder_log_sum({channels[n]}, {prec.p_bs[n]}, d2, s.noise1_w));
    CHECK(joint == doctest::Approx(log_sum_exp(per_slot)).epsilon(1e-9));
}
