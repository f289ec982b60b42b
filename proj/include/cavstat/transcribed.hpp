#pragma once

// Independent hand transcription of the published steady-state moment
// equations, kept apart from the generator in eom.cpp. Each line is the
// published "0 = ..." form, i.e. minus the time derivative. Only one member
// of every conjugate pair is printed; the partner is obtained by
// conjugating coefficients and swapping m and n.

#include "cavstat/steady.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cavstat {

// Accumulates sum_i c_i <q_i> + constant over a moment vector, tracking the
// magnitude of the individual terms for a relative residual.
class LineSum {
public:
    LineSum(const MomentVector& x, bool conjugate_partner) : x_(x), partner_(conjugate_partner) {}

    // Adds c <R_z^s a^dag^m a^n>.
    void add(cplx c, int s, int m, int n);
    void constant(cplx c);

    [[nodiscard]] cplx value() const { return partner_ ? std::conj(value_) : value_; }
    [[nodiscard]] double scale() const { return scale_; }
    [[nodiscard]] double relative() const;

private:
    const MomentVector& x_;
    bool partner_;
    cplx value_{0.0, 0.0};
    double scale_ = 0.0;
};

struct TranscribedLine {
    std::string label;
    std::function<void(const ModelParams&, LineSum&)> terms;
};

// Mean-photon block (6 lines), the order-4 block (10) and the order-6
// block (14).
const std::vector<TranscribedLine>& transcribed_order2();
const std::vector<TranscribedLine>& transcribed_order4();
const std::vector<TranscribedLine>& transcribed_order6();

struct LineCheck {
    std::string label;
    bool partner = false;  // true: the conjugate ("H.c.") equation
    double relative = 0.0;
};

// Evaluates every line and its conjugate partner on `x`.
std::vector<LineCheck> check_lines(const std::vector<TranscribedLine>& lines, const ModelParams& p,
                                   const MomentVector& x);

}  // namespace cavstat
