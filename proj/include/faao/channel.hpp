// channel.hpp - per-slot Rician block-fading MIMO channels, split into a
// trajectory-dependent large-scale gain sqrt(rho0/d^2) and a fixed
// small-scale factor. The trajectory optimizer needs exactly this split.

#pragma once

#include "faao/scenario.hpp"

#include <Eigen/Dense>
#include <vector>

namespace faao {

/// Small-scale Rician factors for both hops, drawn once per run from the
/// scenario seed and immutable afterwards.
struct SmallScaleFactor {
    std::vector<Eigen::MatrixXcd> h_r_hop1;  // n_relay x n_tx, per slot
    std::vector<Eigen::MatrixXcd> h_r_hop2;  // n_rx x n_relay, per slot

    const Eigen::MatrixXcd& hop(int which, int slot) const {
        return which == 1 ? h_r_hop1[slot] : h_r_hop2[slot];
    }
};

/// sqrt(K/(K+1)) * H_los + sqrt(1/(K+1)) * H_nlos per slot, with NLoS
/// entries i.i.d. CN(0,1). Deterministic in scenario.seed.
SmallScaleFactor draw_small_scale(const Scenario& s);

/// sqrt(||uav - ground||^2 + H^2).
double slant_distance(const Eigen::Vector2d& pos_uav, const Eigen::Vector2d& pos_ground,
                      double altitude);

/// Small-scale factor composed with per-slot distances for one trajectory.
struct ChannelRealization {
    const SmallScaleFactor* small_scale = nullptr;
    std::vector<double> distances_hop1;  // d_B(n)
    std::vector<double> distances_hop2;  // d_U(n)
    double rho0_lin = 0.0;

    int n_slots() const { return static_cast<int>(distances_hop1.size()); }

    /// sqrt(rho0) / d * h_r for the given slot and hop (1 or 2).
    /// Throws std::out_of_range on a bad slot index.
    Eigen::MatrixXcd full_channel(int slot, int hop) const;

    double gain(int slot, int hop) const {
        const double d = hop == 1 ? distances_hop1[slot] : distances_hop2[slot];
        return std::sqrt(rho0_lin) / d;
    }
};

/// Distances computed from per-slot UAV positions; small_scale must outlive
/// the realization.
ChannelRealization make_realization(const Scenario& s, const SmallScaleFactor& small_scale,
                                    const std::vector<Eigen::Vector2d>& positions);

}  // namespace faao
