// fa_info.hpp - finite-alphabet mutual information.
//
// Closed form used throughout the optimization, plus a Monte-Carlo
// estimator of the exact noise-expectation expression as a verification
// oracle.

#pragma once

#include "faao/constellation.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace faao {

/// 2*dim*log2(rho) - log2( sum_mk exp(-||H P u_mk||^2 / (4 sigma^2)) ),
/// in bits/s/Hz. The diagonal pairs keep the sum >= rho^dim, so the plain
/// sum never underflows as a whole.
double mi_closed_form(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& precoder,
                      const DifferenceSet& diffs, double noise_var);

/// Monte-Carlo estimate of the exact rate (with noise expectation);
/// returns {estimate, standard error of the mean}.
std::pair<double, double> mi_monte_carlo(const Eigen::MatrixXcd& channel,
                                         const Eigen::MatrixXcd& precoder,
                                         const Constellation& constellation, int dim,
                                         double noise_var, int samples, std::uint64_t seed);

/// sum over slots and ordered pairs of exp(-||H P u||^2 / (4 sigma^2)) for
/// one hop -- the quantity the SCA subproblems bound.
double link_sum_exp(const std::vector<Eigen::MatrixXcd>& channels,
                    const std::vector<Eigen::MatrixXcd>& precoders, const DifferenceSet& diffs,
                    double noise_var);

/// Slack offset O = 2 * n_slots * dim * log2(rho).
double link_offset(int n_slots, int dim, int order);

/// log( sum_i exp(x_i) ) with max-shift; -inf input vector yields -inf.
double log_sum_exp(const std::vector<double>& x);

}  // namespace faao
