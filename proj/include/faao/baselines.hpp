// baselines.hpp - Gaussian-input-inspired precoders (MMSE, ZF, MRT)
// evaluated under the finite-alphabet rate on a given trajectory.

#pragma once

#include "faao/ao_driver.hpp"
#include "faao/channel.hpp"
#include "faao/kinematics.hpp"
#include "faao/scenario.hpp"

#include <stdexcept>
#include <string>

namespace faao {

enum class BaselineKind { Mmse, Zf, Mrt };

BaselineKind baseline_from_name(const std::string& name);
std::string baseline_name(BaselineKind kind);

struct SingularChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Textbook precoder for one channel matrix, scaled so tr(P^H P) = power_W
/// exactly. ZF throws SingularChannelError when the channel Gram has
/// condition number above 1e12.
Eigen::MatrixXcd baseline_precoder(BaselineKind kind, const Eigen::MatrixXcd& channel,
                                   double noise_var, double power_w);

/// Per-slot baseline precoders at both hops on the given trajectory, with
/// finite-alphabet rates.
struct BaselineRun {
    PrecoderSchedule schedule;
    Rates rates;
};

BaselineRun run_baseline(const Scenario& s, BaselineKind kind, const Trajectory& trajectory,
                         const SmallScaleFactor& small_scale);

}  // namespace faao
