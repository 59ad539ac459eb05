#include "faao/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace faao {

namespace {

using cd = std::complex<double>;

Eigen::VectorXcd ula_steering(int n, double cos_theta) {
    // half-wavelength spacing
    Eigen::VectorXcd a(n);
    for (int i = 0; i < n; ++i) {
        const double phase = std::numbers::pi * i * cos_theta;
        a(i) = cd(std::cos(phase), std::sin(phase));
    }
    return a;
}

Eigen::MatrixXcd los_matrix(LosMode mode, int rows, int cols, const Eigen::Vector2d& uav_pos,
                            const Eigen::Vector2d& ground_pos, double altitude) {
    if (mode == LosMode::Ones) return Eigen::MatrixXcd::Ones(rows, cols);
    // ULA mode: rank-1 outer product of steering vectors, elevation angle
    // taken from the slot geometry.
    const double horiz = (uav_pos - ground_pos).norm();
    const double cos_theta = horiz / std::sqrt(horiz * horiz + altitude * altitude);
    return ula_steering(rows, cos_theta) * ula_steering(cols, cos_theta).adjoint();
}

}  // namespace

SmallScaleFactor draw_small_scale(const Scenario& s) {
    std::mt19937_64 rng(s.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    // CN(0,1): independent real/imag parts with variance 1/2 each.
    auto draw_nlos = [&](int rows, int cols) {
        Eigen::MatrixXcd m(rows, cols);
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                m(r, c) = cd(gauss(rng) * inv_sqrt2, gauss(rng) * inv_sqrt2);
        return m;
    };

    const double K = s.rician_K;
    const double w_los = std::isinf(K) ? 1.0 : std::sqrt(K / (K + 1.0));
    const double w_nlos = std::isinf(K) ? 0.0 : std::sqrt(1.0 / (K + 1.0));

    SmallScaleFactor out;
    out.h_r_hop1.reserve(s.n_slots);
    out.h_r_hop2.reserve(s.n_slots);
    for (int n = 0; n < s.n_slots; ++n) {
        // Geometry for the ULA mode comes from the straight-line path; the
        // small-scale factor is drawn once, before optimization.
        const double frac = s.n_slots > 1 ? static_cast<double>(n) / (s.n_slots - 1) : 0.0;
        const Eigen::Vector2d pos = s.uav_start + frac * (s.uav_end - s.uav_start);
        Eigen::MatrixXcd los1 = los_matrix(s.los_mode, s.n_relay, s.n_tx, pos, s.bs_pos, s.altitude_H);
        Eigen::MatrixXcd los2 = los_matrix(s.los_mode, s.n_rx, s.n_relay, pos, s.gu_pos, s.altitude_H);
        out.h_r_hop1.push_back(w_los * los1 + w_nlos * draw_nlos(s.n_relay, s.n_tx));
        out.h_r_hop2.push_back(w_los * los2 + w_nlos * draw_nlos(s.n_rx, s.n_relay));
    }
    return out;
}

double slant_distance(const Eigen::Vector2d& pos_uav, const Eigen::Vector2d& pos_ground,
                      double altitude) {
    return std::sqrt((pos_uav - pos_ground).squaredNorm() + altitude * altitude);
}

Eigen::MatrixXcd ChannelRealization::full_channel(int slot, int hop) const {
    if (slot < 0 || slot >= n_slots()) throw std::out_of_range("channel slot index out of range");
    return gain(slot, hop) * small_scale->hop(hop, slot);
}

ChannelRealization make_realization(const Scenario& s, const SmallScaleFactor& small_scale,
                                    const std::vector<Eigen::Vector2d>& positions) {
    if (static_cast<int>(positions.size()) != s.n_slots)
        throw std::invalid_argument("position count does not match n_slots");
    ChannelRealization r;
    r.small_scale = &small_scale;
    r.rho0_lin = s.rho0_lin;
    r.distances_hop1.reserve(positions.size());
    r.distances_hop2.reserve(positions.size());
    for (const auto& w : positions) {
        r.distances_hop1.push_back(slant_distance(w, s.bs_pos, s.altitude_H));
        r.distances_hop2.push_back(slant_distance(w, s.gu_pos, s.altitude_H));
    }
    return r;
}

}  // namespace faao
