#include "faao/fa_info.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace faao {

namespace {

void check_dims(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& precoder, int dim) {
    if (channel.cols() != precoder.rows() || precoder.cols() != dim)
        throw std::invalid_argument("channel/precoder/difference dimensions inconsistent");
}

}  // namespace

double log_sum_exp(const std::vector<double>& x) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : x) mx = std::max(mx, v);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double v : x) s += std::exp(v - mx);
    return mx + std::log(s);
}

double mi_closed_form(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& precoder,
                      const DifferenceSet& diffs, double noise_var) {
    if (!(noise_var > 0.0)) throw std::invalid_argument("noise_var must be positive");
    check_dims(channel, precoder, diffs.dim);
    const Eigen::MatrixXcd hp = channel * precoder;
    double sum = 0.0;
    for (const auto& u : diffs.differences)
        sum += std::exp(-(hp * u).squaredNorm() / (4.0 * noise_var));
    return 2.0 * diffs.dim * std::log2(static_cast<double>(diffs.order)) - std::log2(sum);
}

std::pair<double, double> mi_monte_carlo(const Eigen::MatrixXcd& channel,
                                         const Eigen::MatrixXcd& precoder,
                                         const Constellation& constellation, int dim,
                                         double noise_var, int samples, std::uint64_t seed) {
    if (samples < 100) throw std::invalid_argument("mi_monte_carlo needs >= 100 samples");
    check_dims(channel, precoder, dim);
    const auto symbols = enumerate_symbols(constellation, dim);
    const int nsym = static_cast<int>(symbols.size());
    const int nrx = static_cast<int>(channel.rows());
    const Eigen::MatrixXcd hp = channel * precoder;

    // Precompute H*P*u_mk for every ordered pair.
    std::vector<Eigen::VectorXcd> hpu(static_cast<size_t>(nsym) * nsym);
    for (int m = 0; m < nsym; ++m)
        for (int k = 0; k < nsym; ++k)
            hpu[m * nsym + k] = hp * (symbols[m] - symbols[k]);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sigma_part = std::sqrt(noise_var / 2.0);

    const double log2rho = std::log2(static_cast<double>(constellation.order()));
    double mean = 0.0, m2 = 0.0;
    std::vector<double> exps(nsym);
    Eigen::VectorXcd noise(nrx);
    for (int s = 0; s < samples; ++s) {
        for (int r = 0; r < nrx; ++r)
            noise(r) = std::complex<double>(gauss(rng) * sigma_part, gauss(rng) * sigma_part);
        const double noise_sq = noise.squaredNorm();
        double stat = 0.0;
        for (int m = 0; m < nsym; ++m) {
            for (int k = 0; k < nsym; ++k) {
                const double z = ((hpu[m * nsym + k] + noise).squaredNorm() - noise_sq) / noise_var;
                exps[k] = -z;
            }
            stat += log_sum_exp(exps) / std::numbers::ln2;
        }
        stat /= nsym;
        // Welford accumulation of the per-sample statistic.
        const double delta = stat - mean;
        mean += delta / (s + 1);
        m2 += delta * (stat - mean);
    }
    const double estimate = dim * log2rho - mean;
    const double std_error = samples > 1 ? std::sqrt(m2 / (samples - 1) / samples) : 0.0;
    return {estimate, std_error};
}

double link_sum_exp(const std::vector<Eigen::MatrixXcd>& channels,
                    const std::vector<Eigen::MatrixXcd>& precoders, const DifferenceSet& diffs,
                    double noise_var) {
    if (channels.size() != precoders.size())
        throw std::invalid_argument("slot count mismatch between channels and precoders");
    double total = 0.0;
    for (size_t n = 0; n < channels.size(); ++n) {
        const Eigen::MatrixXcd hp = channels[n] * precoders[n];
        for (const auto& u : diffs.differences)
            total += std::exp(-(hp * u).squaredNorm() / (4.0 * noise_var));
    }
    return total;
}

double link_offset(int n_slots, int dim, int order) {
    return 2.0 * n_slots * dim * std::log2(static_cast<double>(order));
}

}  // namespace faao
