// constellation.hpp - discrete unit-variance constellations and their
// pairwise symbol-vector differences.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace faao {

/// Equiprobable discrete constellation, normalized to zero mean and unit
/// average symbol energy per stream.
struct Constellation {
    std::string name;
    std::vector<std::complex<double>> points;

    int order() const { return static_cast<int>(points.size()); }
};

/// BPSK {+1,-1}, QPSK, 8-PSK or 16-QAM by name (case-insensitive).
/// Throws std::invalid_argument on anything else.
Constellation make_constellation(const std::string& name);

/// All ordered pairs (m,k) of dim-dimensional symbol vectors together with
/// their differences u_mk = x_m - x_k. Contains exactly order^dim zero
/// vectors (the diagonal) and is closed under negation.
struct DifferenceSet {
    int dim = 0;
    int order = 0;          // constellation size rho
    int n_vectors = 0;      // rho^dim
    // differences[m * n_vectors + k] = x_m - x_k
    std::vector<Eigen::VectorXcd> differences;

    int n_pairs() const { return n_vectors * n_vectors; }
    const Eigen::VectorXcd& diff(int m, int k) const { return differences[m * n_vectors + k]; }
    bool is_diagonal(int pair) const { return pair / n_vectors == pair % n_vectors; }
};

/// Enumerates the full difference set. Guarded at 2^20 ordered pairs;
/// throws std::invalid_argument beyond that.
DifferenceSet enumerate_differences(const Constellation& c, int dim);

/// All rho^dim symbol vectors in the enumeration order used by
/// enumerate_differences (first coordinate fastest).
std::vector<Eigen::VectorXcd> enumerate_symbols(const Constellation& c, int dim);

}  // namespace faao
