#include "cavstat/closedform.hpp"
#include "cavstat/errors.hpp"
#include "cavstat/lindblad.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cavstat;
using testing_support::rel;

namespace {

ModelParams make(double g0, double beta, double kappa, double n_bar) {
    ModelParams p;
    p.g0 = g0;
    p.beta = beta;
    p.kappa = kappa;
    p.n_bar = n_bar;
    return p;
}

Eigen::Matrix2cd maximally_mixed() { return Eigen::Matrix2cd::Identity() / 2.0; }

Eigen::MatrixXcd fock(int cutoff, int k) {
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    f(k, k) = 1.0;
    return f;
}

// Random density matrix supported on Fock levels <= support.
DensityMatrix random_state(FockSpace space, int support, std::mt19937& rng) {
    std::normal_distribution<double> nd;
    const int d = space.dim();
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i % space.levels() <= support && j % space.levels() <= support) x(i, j) = cplx(nd(rng), nd(rng));
    Eigen::MatrixXcd rho = x * x.adjoint();
    rho /= rho.trace();
    return DensityMatrix(space, rho);
}

}  // namespace

TEST_SUITE("lindblad") {

TEST_CASE("generator matches the moment equations on random states") {
    const ModelParams p = [] {
        ModelParams q = make(1.3, 0.07, 0.9, 0.4);
        q.Gamma = 1.1;
        q.Gamma0 = 0.3;
        return q;
    }();
    const FockSpace space{22};
    const FockLiouvillian L = build_liouvillian(p, space.cutoff);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = random_state(space, 8, rng);
        const MomentVector x = moments_from_density(rho, 8).moments;
        const DensityMatrix drho = DensityMatrix::from_vector(space, L.generator * rho.vectorized());
        const MomentVector dx = moments_from_density(drho, 6).moments;
        for (const auto& q : moment_unknowns(6)) {
            const MomentRow row = moment_eom(q, p);
            cplx v = row.constant;
            for (const auto& [j, c] : row.coeffs) v += c * x.at(j);
            CHECK(std::abs(v - dx.at(q)) < 1e-9 * std::max(1.0, std::abs(v)));
        }
    }
}

TEST_CASE("trace is preserved") {
    const FockLiouvillian L = build_liouvillian(make(1, 0.05, 1, 0.5), 10);
    const int d = L.space.dim();
    Eigen::VectorXcd left = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d) * d);
    for (int i = 0; i < d; ++i) left(i + d * i) = 1.0;
    const Eigen::VectorXcd row = L.generator.adjoint() * left;
    CHECK(row.norm() < 1e-12);
}

TEST_CASE("pure cavity decay") {
    const ModelParams p = make(0, 0, 0.7, 0);
    const FockSpace space{6};
    const FockLiouvillian L = build_liouvillian(p, space.cutoff);
    const DensityMatrix rho0 = DensityMatrix::product(space, fock(space.cutoff, 1), maximally_mixed());
    for (double t : {0.5, 2.0}) {
        const DensityMatrix rho = evolve(L, rho0, t);
        const double n = moments_from_density(rho, 2).moments.at({0, 1, 1}).real();
        CHECK(rel(n, std::exp(-2 * p.kappa * t)) < 1e-9);
    }
}

TEST_CASE("thermal steady state") {
    const double n_bar = 0.8;
    const SteadyDensityResult r = steady_density(build_liouvillian(make(0, 0, 1, n_bar), 40));
    const Eigen::VectorXd pn = r.rho.photon_distribution();
    for (int k = 0; k < 12; ++k) CHECK(std::abs(pn(k) - std::pow(n_bar, k) / std::pow(1 + n_bar, k + 1)) < 1e-10);
    CHECK(r.rho.invariants().ok());
    CHECK(r.method_used == SteadyMethod::NullSpace);
}

TEST_CASE("coherent and thermal moments") {
    const int cutoff = 40;
    const FockSpace space{cutoff};
    const cplx alpha(0.9, -0.5);
    Eigen::VectorXcd psi(cutoff + 1);
    double fact = 1.0;
    for (int k = 0; k <= cutoff; ++k) {
        if (k > 0) fact *= k;
        psi(k) = std::exp(-std::norm(alpha) / 2) * std::pow(alpha, k) / std::sqrt(fact);
    }
    Eigen::Matrix2cd qubit = Eigen::Matrix2cd::Zero();
    qubit(0, 0) = 0.3;
    qubit(1, 1) = 0.7;
    const DensityMatrix rho = DensityMatrix::product(space, psi * psi.adjoint(), qubit);
    const MomentVector x = moments_from_density(rho, 6).moments;
    CHECK(std::abs(x.at({1, 0, 0}) - cplx(0.4)) < 1e-12);
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) {
            if (m + n == 0) continue;
            const cplx expected = std::pow(std::conj(alpha), m) * std::pow(alpha, n);
            CHECK(std::abs(x.at({0, m, n}) - expected) < 1e-10);
            CHECK(std::abs(x.at({1, m, n}) - 0.4 * expected) < 1e-10);
        }

    const double n_bar = 1.5;
    Eigen::MatrixXcd thermal = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    for (int k = 0; k <= cutoff; ++k) thermal(k, k) = std::pow(n_bar, k) / std::pow(1 + n_bar, k + 1);
    const MomentVector t = moments_from_density(DensityMatrix::product(space, thermal, qubit), 6).moments;
    CHECK(rel(t.at({0, 1, 1}).real(), n_bar) < 1e-6);
    CHECK(rel(t.at({0, 2, 2}).real(), 2 * n_bar * n_bar) < 1e-5);
    CHECK(rel(t.at({0, 3, 3}).real(), 6 * n_bar * n_bar * n_bar) < 1e-4);
}

TEST_CASE("steady state matches the moment solver") {
    const ModelParams p = make(1, 0.05, 1, 0);
    const SteadyDensityResult r = steady_density(build_liouvillian(p, 20));
    CHECK(r.rho.invariants().ok());
    CHECK(r.generator_residual < 1e-12);
    const MomentExtraction ex = moments_from_density(r.rho, 6);
    CHECK_FALSE(ex.truncation_suspect);
    const MomentVector x = solve_steady(6, p).moments;
    for (const auto& [q, v] : x.values()) {
        INFO(q.label());
        CHECK(std::abs(ex.moments.at(q) - v) <= 1e-6 * std::max(std::abs(v), 1e-10));
    }
}

TEST_CASE("doubling the cutoff converges the oracle") {
    const ModelParams p = make(1, 0.05, 1, 0.5);
    const MomentVector x = solve_steady(6, p).moments;
    auto worst_error = [&](int cutoff) {
        const MomentVector y = moments_from_density(steady_density(build_liouvillian(p, cutoff)).rho, 6).moments;
        double worst = 0.0;
        for (const auto& [q, v] : x.values())
            worst = std::max(worst, std::abs(y.at(q) - v) / std::max(std::abs(v), 1e-8));
        return worst;
    };
    const double e20 = worst_error(20), e40 = worst_error(40);
    CHECK(e40 < 1e-6);
    CHECK(e40 < 1e-3 * e20);
    CHECK(suggested_cutoff(mean_photon_cf(p)) >= 20);
}

TEST_CASE("large spaces fall back to integration") {
    const ModelParams p = make(0.5, 0.0, 1.5, 0);
    const FockLiouvillian L = build_liouvillian(p, 50);
    REQUIRE(static_cast<long>(L.generator.rows()) > kNullSpaceMaxRows);
    const SteadyDensityResult r = steady_density(L);
    CHECK(r.method_used == SteadyMethod::Integrate);
    CHECK(r.rho.invariants().ok());
    const double n = moments_from_density(r.rho, 2).moments.at({0, 1, 1}).real();
    CHECK(rel(n, mean_photon_cf(p)) < 1e-6);
}

TEST_CASE("an undamped cavity has no unique steady state") {
    CHECK_THROWS_AS(steady_density(build_liouvillian(make(0, 0, 0, 0), 6), SteadyMethod::NullSpace),
                    DegenerateNullSpace);
}

TEST_CASE("time-dependent run without coupling stays empty") {
    const DressedSimulation sim = simulate_dressed_time_dependent(make(0, 0, 1, 0), 40.0, 6, 5.0);
    CHECK(std::abs(sim.mean_photon) < 1e-14);
    CHECK(sim.dt <= (2 * std::numbers::pi / 40.0) / 40.0 + 1e-15);
    CHECK_FALSE(sim.stiffness_warning);
}

TEST_CASE("time-dependent run approaches the effective model") {
    ModelParams p = make(1, 0, 1, 0);
    const double omega = 50.0;
    p.beta = p.g0 * p.g0 / omega;
    const DressedSimulation sim = simulate_dressed_time_dependent(p, omega, 10, 20.0);
    CHECK(rel(sim.mean_photon, mean_photon_cf(p)) < 0.01);
    CHECK_THROWS_AS(simulate_dressed_time_dependent(make(1, 0.3, 1, 0), omega, 10, 20.0), ConfigError);
}

TEST_CASE("input checks") {
    CHECK_THROWS_AS(build_liouvillian(make(1, 0, 1, 0), 1), ConfigError);
    CHECK(suggested_cutoff(0.0) == 15);
    CHECK(suggested_cutoff(2.05) == 36);
}

}  // TEST_SUITE
