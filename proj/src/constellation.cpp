#include "faao/constellation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace faao {

namespace {

std::vector<std::complex<double>> psk(int order) {
    std::vector<std::complex<double>> pts(order);
    for (int i = 0; i < order; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / order;
        pts[i] = {std::cos(phi), std::sin(phi)};
    }
    return pts;
}

std::vector<std::complex<double>> qam16() {
    // Gray-agnostic square 16-QAM, scaled to unit average energy (E = 10).
    std::vector<std::complex<double>> pts;
    const double scale = 1.0 / std::sqrt(10.0);
    for (int re : {-3, -1, 1, 3})
        for (int im : {-3, -1, 1, 3})
            pts.emplace_back(re * scale, im * scale);
    return pts;
}

}  // namespace

Constellation make_constellation(const std::string& name) {
    std::string low = name;
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
    if (low == "bpsk") return {"bpsk", {{1.0, 0.0}, {-1.0, 0.0}}};
    if (low == "qpsk") return {"qpsk", psk(4)};
    if (low == "8psk") return {"8psk", psk(8)};
    if (low == "16qam") return {"16qam", qam16()};
    throw std::invalid_argument("unknown modulation: " + name);
}

std::vector<Eigen::VectorXcd> enumerate_symbols(const Constellation& c, int dim) {
    const int rho = c.order();
    long n = 1;
    for (int d = 0; d < dim; ++d) n *= rho;
    std::vector<Eigen::VectorXcd> symbols(n, Eigen::VectorXcd(dim));
    for (long i = 0; i < n; ++i) {
        long idx = i;
        for (int d = 0; d < dim; ++d) {
            symbols[i](d) = c.points[idx % rho];
            idx /= rho;
        }
    }
    return symbols;
}

DifferenceSet enumerate_differences(const Constellation& c, int dim) {
    if (dim < 1) throw std::invalid_argument("difference set dimension must be >= 1");
    const int rho = c.order();
    double pairs = std::pow(static_cast<double>(rho), 2.0 * dim);
    if (pairs > static_cast<double>(1 << 20))
        throw std::invalid_argument("difference set too large: > 2^20 ordered pairs");

    auto symbols = enumerate_symbols(c, dim);
    DifferenceSet ds;
    ds.dim = dim;
    ds.order = rho;
    ds.n_vectors = static_cast<int>(symbols.size());
    ds.differences.reserve(static_cast<size_t>(ds.n_vectors) * ds.n_vectors);
    for (int m = 0; m < ds.n_vectors; ++m)
        for (int k = 0; k < ds.n_vectors; ++k)
            ds.differences.push_back(symbols[m] - symbols[k]);
    return ds;
}

}  // namespace faao
