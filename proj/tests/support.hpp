#pragma once

#include "cavstat/algebra.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace testing_support {

using cavstat::cplx;

// Truncated annihilator on Fock levels 0..cutoff.
inline Eigen::MatrixXcd annihilator(int cutoff) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    for (int k = 1; k <= cutoff; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

// Matrix of a polynomial on qubit x field, qubit index slow, R_z = diag(-1, 1).
inline Eigen::MatrixXcd matrix_of(const cavstat::OperatorPoly& p, int cutoff) {
    const int d = cutoff + 1;
    const Eigen::MatrixXcd a = annihilator(cutoff);
    const Eigen::MatrixXcd ad = a.adjoint();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    for (const auto& [mono, c] : p.terms()) {
        Eigen::MatrixXcd field = Eigen::MatrixXcd::Identity(d, d);
        for (int k = 0; k < mono.m; ++k) field = field * ad;
        for (int k = 0; k < mono.n; ++k) field = field * a;
        const double lower = mono.rz ? -1.0 : 1.0;
        out.topLeftCorner(d, d) += c * lower * field;
        out.bottomRightCorner(d, d) += c * field;
    }
    return out;
}

// Random polynomial with field order <= max_order.
inline cavstat::OperatorPoly random_poly(std::mt19937& rng, int max_order, int terms) {
    std::uniform_int_distribution<int> s(0, 1), order(0, max_order);
    std::normal_distribution<double> c;
    cavstat::OperatorPoly p;
    for (int t = 0; t < terms; ++t) {
        const int k = order(rng);
        std::uniform_int_distribution<int> split(0, k);
        const int m = split(rng);
        p += cavstat::OperatorPoly(cavstat::Monomial{s(rng), m, k - m}, cplx(c(rng), c(rng)));
    }
    return p;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing_support
