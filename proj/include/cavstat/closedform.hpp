#pragma once

// Closed-form steady-state results for the resonant dressed model. These are
// evaluated independently of the moment solver and serve as its oracle.

#include "cavstat/params.hpp"

#include <cstdint>

namespace cavstat {

struct Rational {
    std::int64_t num;
    std::int64_t den;
    [[nodiscard]] constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// kappa -> 0 limits of the correlation functions, and the thermal values.
struct LimitConstants {
    static constexpr Rational g2_beta_nonzero{95, 12};
    static constexpr Rational g2_beta_zero{3, 1};
    static constexpr Rational g3_beta_nonzero{33203, 180};
    static constexpr Rational g3_beta_zero{15, 1};
    static constexpr Rational g2_incoherent{2, 1};
    static constexpr Rational g3_incoherent{6, 1};
};

// Polynomial coefficients of the g2 rational function. Each family X holds
// the n_bar^0, n_bar^1, n_bar^2 weights; the "t" families are the
// denominator (tilde) coefficients.
struct G2Coefficients {
    double A[3], At[3];
    double B[3], Bt[3];
    double C[3], Ct[3];
};

G2Coefficients g2_coefficients(const ModelParams& p);

// Evaluates g2 from a (possibly modified) coefficient set. Used by the
// mutation test as well as by g2_cf.
double g2_from_coefficients(const G2Coefficients& c, const ModelParams& p);

// Throws DivergentLimit for kappa == 0.
double mean_photon_cf(const ModelParams& p);

// Throws DivergentLimit for kappa == 0, DegenerateIntensity for
// g0 == beta == n_bar == 0.
double g2_cf(const ModelParams& p);

// beta = 0 special cases (beta in `p` is ignored). DegenerateIntensity when
// g0 == n_bar == 0.
double g2_beta0_cf(const ModelParams& p);
double g3_beta0_cf(const ModelParams& p);

}  // namespace cavstat
