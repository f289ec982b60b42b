#include "cavstat/closedform.hpp"

#include "cavstat/errors.hpp"

#include <cmath>

namespace cavstat {

namespace {

void require_damping(const ModelParams& p) {
    p.validate();
    if (p.kappa == 0.0) throw DivergentLimit("kappa = 0: closed form diverges");
}

void require_intensity(const ModelParams& p, bool with_beta) {
    if (p.g0 == 0.0 && p.n_bar == 0.0 && (!with_beta || p.beta == 0.0))
        throw DegenerateIntensity("g0 = n_bar = 0" + std::string(with_beta ? " and beta = 0" : "") +
                                  ": the cavity is empty and g(k) is undefined");
}

}  // namespace

double mean_photon_cf(const ModelParams& p) {
    require_damping(p);
    const double g2 = p.g0 * p.g0;
    const double k = p.kappa;
    const double G = p.Gamma;
    return p.n_bar + g2 / (k * (k + 4 * G)) +
           p.beta * p.beta * (8 * g2 + k * (k + 4 * G) * (1 + 2 * p.n_bar)) /
               (2 * k * k * (k + 2 * G) * (k + 4 * G));
}

G2Coefficients g2_coefficients(const ModelParams& p) {
    const double g = p.g0;
    const double g2 = g * g;
    const double g4 = g2 * g2;
    const double k = p.kappa;
    const double k2 = k * k;
    const double k3 = k2 * k;
    const double k4 = k3 * k;
    const double G = p.Gamma;
    const double G2 = G * G;

    const double gk = G + k;           // (Gamma + kappa)
    const double g2k = 2 * G + k;      // (2 Gamma + kappa)
    const double g4k = 4 * G + k;      // (4 Gamma + kappa)
    const double g43k = 4 * G + 3 * k; // (4 Gamma + 3 kappa)

    G2Coefficients c{};
    c.A[0] = 36 * g4 * k2 * gk * gk * g2k * g43k;
    c.A[1] = 48 * g2 * k3 * gk * gk * g2k * g43k * g43k;
    c.A[2] = 24 * k4 * gk * gk * g2k * g4k * g43k * g43k;
    c.At[0] = 4 * g4 * k2 * g2k * g2k;
    c.At[1] = 8 * g2 * k3 * g2k * g2k * g4k;
    c.At[2] = 4 * k4 * g2k * g2k * g4k * g4k;

    c.B[0] = k * gk *
             (3 * k2 * gk * g4k * g43k * g43k + 32 * g4 * (50 * G2 + 74 * G * k + 27 * k2) +
              4 * g2 * k * g43k * (100 * G2 + 139 * G * k + 45 * k2));
    c.B[1] = 4 * k2 * gk * g43k * (g2 * (392 * G2 + 614 * G * k + 234 * k2) + 9 * k * gk * g4k * g43k);
    c.B[2] = 60 * k3 * gk * gk * g4k * g43k * g43k;
    c.Bt[0] = 4 * k * g2 * g2k * (8 * g2 + k * g4k);
    c.Bt[1] = 4 * k2 * g2k * g4k * (10 * g2 + k * g4k);
    c.Bt[2] = 8 * k3 * g2k * g4k * g4k;

    c.C[0] = 9 * k2 * gk * g4k * g43k * g43k + 16 * g4 * (190 * G2 + 289 * G * k + 108 * k2) +
             4 * g2 * k * g43k * (220 * G2 + 319 * G * k + 108 * k2);
    c.C[1] = 4 * k * g43k * (9 * k * gk * g4k * g43k + g2 * (440 * G2 + 638 * G * k + 216 * k2));
    c.C[2] = 36 * k2 * gk * g4k * g43k * g43k;
    c.Ct[0] = (8 * g2 + k * g4k) * (8 * g2 + k * g4k);
    c.Ct[1] = 4 * k * g4k * (8 * g2 + k * g4k);
    c.Ct[2] = 4 * k2 * g4k * g4k;
    return c;
}

double g2_from_coefficients(const G2Coefficients& c, const ModelParams& p) {
    const double nb = p.n_bar;
    auto quad = [nb](const double (&x)[3]) { return x[0] + nb * (x[1] + nb * x[2]); };
    const double b2 = p.beta * p.beta;
    const double b4 = b2 * b2;
    const double k = p.kappa;
    const double G = p.Gamma;
    const double prefactor = (k + 2 * G) * (k + 4 * G) / (3 * (k + G) * (k + G) * (3 * k + 4 * G) * (3 * k + 4 * G));
    const double num = quad(c.A) + quad(c.B) * b2 + quad(c.C) * b4;
    const double den = quad(c.At) + quad(c.Bt) * b2 + quad(c.Ct) * b4;
    return prefactor * num / den;
}

double g2_cf(const ModelParams& p) {
    require_damping(p);
    require_intensity(p, true);
    return g2_from_coefficients(g2_coefficients(p), p);
}

double g2_beta0_cf(const ModelParams& p) {
    require_damping(p);
    require_intensity(p, false);
    const double k = p.kappa;
    const double G = p.Gamma;
    const double g2 = p.g0 * p.g0;
    const double s = g2 + k * (k + 4 * G) * p.n_bar;
    return 2.0 + g2 * g2 * (4 * G - 3 * k) / ((4 * G + 3 * k) * s * s);
}

double g3_beta0_cf(const ModelParams& p) {
    require_damping(p);
    require_intensity(p, false);
    const double k = p.kappa;
    const double G = p.Gamma;
    const double g2 = p.g0 * p.g0;
    const double s = g2 + k * (k + 4 * G) * p.n_bar;
    const double cubic = 12 * g2 * g2 * g2 * k * (5 * k - 12 * G) / (5 * k + 4 * G) / ((3 * k + 4 * G) * s * s * s);
    const double quadratic = 9 * g2 * g2 * (4 * G - 3 * k) / ((3 * k + 4 * G) * s * s);
    return 6.0 + cubic + quadratic;
}

}  // namespace cavstat
