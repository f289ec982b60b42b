#include "cavstat/closedform.hpp"
#include "cavstat/errors.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cavstat;
using std::pow;
using testing_support::rel;

namespace {

// Second transcription of the g2 coefficient set, written term by term with
// pow() and no shared subexpressions.
G2Coefficients coefficients_by_hand(double g0, double G, double k) {
    G2Coefficients c{};
    c.A[0] = 36 * pow(g0, 4) * pow(k, 2) * pow(G + k, 2) * (2 * G + k) * (4 * G + 3 * k);
    c.A[1] = 48 * pow(g0, 2) * pow(k, 3) * pow(G + k, 2) * (2 * G + k) * pow(4 * G + 3 * k, 2);
    c.A[2] = 24 * pow(k, 4) * pow(G + k, 2) * (2 * G + k) * (4 * G + k) * pow(4 * G + 3 * k, 2);
    c.At[0] = 4 * pow(g0, 4) * pow(k, 2) * pow(2 * G + k, 2);
    c.At[1] = 8 * pow(g0, 2) * pow(k, 3) * pow(2 * G + k, 2) * (4 * G + k);
    c.At[2] = 4 * pow(k, 4) * pow(2 * G + k, 2) * pow(4 * G + k, 2);
    c.B[0] = k * (G + k) *
             (3 * pow(k, 2) * (G + k) * (4 * G + k) * pow(4 * G + 3 * k, 2) +
              32 * pow(g0, 4) * (50 * G * G + 74 * G * k + 27 * k * k) +
              4 * pow(g0, 2) * k * (4 * G + 3 * k) * (100 * G * G + 139 * G * k + 45 * k * k));
    c.B[1] = 4 * pow(k, 2) * (G + k) * (4 * G + 3 * k) *
             (pow(g0, 2) * (392 * G * G + 614 * G * k + 234 * k * k) + 9 * k * (G + k) * (4 * G + k) * (4 * G + 3 * k));
    c.B[2] = 60 * pow(k, 3) * pow(G + k, 2) * (4 * G + k) * pow(4 * G + 3 * k, 2);
    c.Bt[0] = 4 * k * pow(g0, 2) * (2 * G + k) * (8 * pow(g0, 2) + k * (4 * G + k));
    c.Bt[1] = 4 * pow(k, 2) * (2 * G + k) * (4 * G + k) * (10 * pow(g0, 2) + k * (4 * G + k));
    c.Bt[2] = 8 * pow(k, 3) * (2 * G + k) * pow(4 * G + k, 2);
    c.C[0] = 9 * pow(k, 2) * (G + k) * (4 * G + k) * pow(4 * G + 3 * k, 2) +
             16 * pow(g0, 4) * (190 * G * G + 289 * G * k + 108 * k * k) +
             4 * pow(g0, 2) * k * (4 * G + 3 * k) * (220 * G * G + 319 * G * k + 108 * k * k);
    c.C[1] = 4 * k * (4 * G + 3 * k) *
             (9 * k * (G + k) * (4 * G + k) * (4 * G + 3 * k) + pow(g0, 2) * (440 * G * G + 638 * G * k + 216 * k * k));
    c.C[2] = 36 * pow(k, 2) * (G + k) * (4 * G + k) * pow(4 * G + 3 * k, 2);
    c.Ct[0] = pow(8 * pow(g0, 2) + k * (4 * G + k), 2);
    c.Ct[1] = 4 * k * (4 * G + k) * (8 * pow(g0, 2) + k * (4 * G + k));
    c.Ct[2] = 4 * pow(k, 2) * pow(4 * G + k, 2);
    return c;
}

// g2 from the prefactor and the six polynomials, written out again.
double g2_by_hand(const G2Coefficients& c, double G, double k, double beta, double n) {
    auto poly = [n](const double (&x)[3]) { return x[0] + x[1] * n + x[2] * n * n; };
    const double num = poly(c.A) + poly(c.B) * pow(beta, 2) + poly(c.C) * pow(beta, 4);
    const double den = poly(c.At) + poly(c.Bt) * pow(beta, 2) + poly(c.Ct) * pow(beta, 4);
    return (k + 2 * G) * (k + 4 * G) / (3 * pow(k + G, 2) * pow(3 * k + 4 * G, 2)) * num / den;
}

ModelParams make(double g0, double beta, double kappa, double n_bar, double Gamma = 1.0) {
    ModelParams p;
    p.g0 = g0;
    p.beta = beta;
    p.kappa = kappa;
    p.n_bar = n_bar;
    p.Gamma = Gamma;
    return p;
}

}  // namespace

TEST_SUITE("closedform") {

TEST_CASE("coefficient set matches an independent transcription") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> g0(0.5, 8), beta(0, 0.2), kappa(0.05, 3), nbar(0, 10), gamma(0.5, 2);
    for (int i = 0; i < 5; ++i) {
        const ModelParams p = make(g0(rng), beta(rng), kappa(rng), nbar(rng), gamma(rng));
        const G2Coefficients a = g2_coefficients(p);
        const G2Coefficients b = coefficients_by_hand(p.g0, p.Gamma, p.kappa);
        for (int j = 0; j < 3; ++j) {
            CHECK(rel(a.A[j], b.A[j]) < 1e-13);
            CHECK(rel(a.At[j], b.At[j]) < 1e-13);
            CHECK(rel(a.B[j], b.B[j]) < 1e-13);
            CHECK(rel(a.Bt[j], b.Bt[j]) < 1e-13);
            CHECK(rel(a.C[j], b.C[j]) < 1e-13);
            CHECK(rel(a.Ct[j], b.Ct[j]) < 1e-13);
        }
        CHECK(rel(g2_cf(p), g2_by_hand(b, p.Gamma, p.kappa, p.beta, p.n_bar)) < 1e-13);
    }
}

TEST_CASE("mean photon examples") {
    CHECK(rel(mean_photon_cf(make(5, 0, 1, 0)), 5.0) < 1e-15);
    CHECK(rel(mean_photon_cf(make(5, 0.1, 1, 0)), 5.0 + 2.05 / 30.0) < 1e-14);
    CHECK(rel(mean_photon_cf(make(0, 0, 1, 3)), 3.0) < 1e-15);
}

TEST_CASE("beta = 0 reduction of the general g2") {
    for (double kappa : {0.01, 0.2, 1.0, 2.9})
        for (double nbar : {0.0, 1.0, 7.5})
            for (double g0 : {0.7, 5.0}) {
                const ModelParams p = make(g0, 0.0, kappa, nbar);
                CHECK(rel(g2_cf(p), g2_beta0_cf(p)) < 1e-12);
            }
}

TEST_CASE("beta = 0 closed forms at g0 = kappa = Gamma") {
    CHECK(rel(g2_beta0_cf(make(1, 0, 1, 0)), 15.0 / 7.0) < 1e-14);
    CHECK(rel(g3_beta0_cf(make(1, 0, 1, 0)), 125.0 / 21.0) < 1e-14);
}

TEST_CASE("incoherent values") {
    for (double nbar : {0.5, 3.0}) {
        CHECK(std::abs(g2_cf(make(0, 0, 1, nbar)) - 2.0) < 1e-12);
        CHECK(std::abs(g2_beta0_cf(make(0, 0, 1, nbar)) - 2.0) < 1e-12);
        CHECK(std::abs(g3_beta0_cf(make(0, 0, 1, nbar)) - 6.0) < 1e-12);
    }
}

TEST_CASE("small-kappa limits") {
    CHECK(rel(g2_cf(make(5, 0.1, 1e-6, 0)), 95.0 / 12.0) < 1e-3);
    CHECK(rel(g2_beta0_cf(make(5, 0, 1e-6, 0)), 3.0) < 1e-3);
    CHECK(rel(g3_beta0_cf(make(5, 0, 1e-6, 0)), 15.0) < 1e-3);
    CHECK(LimitConstants::g3_beta_nonzero.value() == doctest::Approx(184.461).epsilon(1e-5));
}

TEST_CASE("the 95/12 limit does not depend on g0") {
    for (double g0 : {1.0, 5.0, 20.0}) {
        INFO("g0 = " << g0);
        CHECK(rel(g2_cf(make(g0, 0.1, 1e-7, 0)), 95.0 / 12.0) < 1e-3);
        CHECK(rel(g2_cf(make(g0, 0.03, 1e-7, 0)), 95.0 / 12.0) < 1e-3);
    }
}

TEST_CASE("a tampered coefficient changes g2") {
    const ModelParams p = make(5, 0.1, 0.5, 1.0);
    G2Coefficients c = g2_coefficients(p);
    CHECK(g2_from_coefficients(c, p) == g2_cf(p));
    c.B[0] *= 1.01;
    CHECK(rel(g2_from_coefficients(c, p), g2_cf(p)) > 1e-6);
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(mean_photon_cf(make(5, 0.1, 0, 0)), DivergentLimit);
    CHECK_THROWS_AS(g2_cf(make(5, 0.1, 0, 0)), DivergentLimit);
    CHECK_THROWS_AS(g2_cf(make(0, 0, 1, 0)), DegenerateIntensity);
    CHECK_THROWS_AS(g3_beta0_cf(make(0, 0, 1, 0)), DegenerateIntensity);
    CHECK_THROWS_AS(mean_photon_cf(make(-1, 0, 1, 0)), ConfigError);
}

}  // TEST_SUITE
