#pragma once

#include "cavstat/eom.hpp"
#include "cavstat/params.hpp"

#include <map>
#include <optional>

namespace cavstat {

// Steady-state expectation values keyed by moment. <1> = 1 is implicit.
class MomentVector {
public:
    MomentVector() = default;
    explicit MomentVector(std::map<MomentIndex, cplx> values) : values_(std::move(values)) {}

    // <1> yields 1; a moment that was never stored throws std::out_of_range.
    [[nodiscard]] cplx at(const MomentIndex& q) const;
    [[nodiscard]] bool contains(const MomentIndex& q) const { return q.is_identity() || values_.count(q) > 0; }
    [[nodiscard]] const std::map<MomentIndex, cplx>& values() const { return values_; }
    [[nodiscard]] int max_order() const;
    void set(const MomentIndex& q, cplx v) { values_[q] = v; }

    // max |x(s,n,m) - conj x(s,m,n)| relative to the largest |x|.
    [[nodiscard]] double symmetry_defect() const;

private:
    std::map<MomentIndex, cplx> values_;
};

struct SolveDiagnostics {
    double residual_norm = 0.0;       // ||A x + b|| / ||b||
    // ||A x + b|| / (||A|| ||x|| + ||b||). Unlike residual_norm this stays at
    // rounding level when the moments are large (small kappa).
    double backward_error = 0.0;
    double symmetry_defect = 0.0;
    double condition_estimate = 0.0;  // largest / smallest LU pivot magnitude
    bool ill_conditioned = false;     // condition_estimate > kIllConditioned
};

inline constexpr double kIllConditioned = 1e12;

struct SteadySolution {
    MomentVector moments;
    SolveDiagnostics diagnostics;
};

// Solves the order-K system with partial-pivot LU plus iterative refinement.
// Throws SingularSystem when kappa == 0 or a pivot vanishes.
SteadySolution solve_system(const MomentSystem& system);
SteadySolution solve_steady(int max_order, const ModelParams& p);

struct SteadyStateResult {
    double n = 0.0;
    std::optional<double> g2;
    std::optional<double> g3;
    MomentVector moments;
    double residual_norm = 0.0;
    double backward_error = 0.0;
    double symmetry_defect = 0.0;
    double condition_estimate = 0.0;
    bool ill_conditioned = false;
    // Largest |Im| of <a^dag^k a^k> relative to its real part, k <= 3.
    double imaginary_residue = 0.0;
};

// Intensity below this is treated as exactly zero.
inline constexpr double kMinIntensity = 1e-300;

// g^(k)(0) = Re<a^dag^k a^k> / n^k. Needs moments up to order 2k.
// Throws DegenerateIntensity for n < kMinIntensity.
double correlation(const MomentVector& x, int k);

// g2 and g3 are filled when the vector reaches order 4 and 6 respectively.
SteadyStateResult observables(const MomentVector& x);
SteadyStateResult observables(const SteadySolution& sol);

}  // namespace cavstat
