#include "cavstat/eom.hpp"
#include "cavstat/errors.hpp"
#include "cavstat/steady.hpp"
#include "cavstat/transcribed.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cavstat;

namespace {

const cplx I{0.0, 1.0};

ModelParams sample() {
    ModelParams p;
    p.g0 = 2.7;
    p.beta = 0.11;
    p.Gamma = 1.3;
    p.Gamma0 = 0.4;
    p.kappa = 0.6;
    p.n_bar = 1.9;
    return p;
}

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_SUITE("eom") {

TEST_CASE("<R_z a^dag> row") {
    const ModelParams p = sample();
    const MomentRow row = moment_eom({1, 1, 0}, p);
    CHECK(row.coeffs.size() == 3);
    CHECK(close(row.coeffs.at({1, 1, 0}), -(p.kappa + 4 * p.Gamma)));
    CHECK(close(row.coeffs.at({0, 1, 0}), I * p.beta));
    CHECK(close(row.coeffs.at({0, 0, 1}), -I * p.beta));
    CHECK(close(row.constant, I * p.g0));
}

TEST_CASE("identity is conserved") {
    const MomentRow row = moment_eom({0, 0, 0}, sample());
    CHECK(row.coeffs.empty());
    CHECK(row.constant == cplx(0.0));
}

TEST_CASE("<R_z> relaxes at 4 Gamma") {
    const ModelParams p = sample();
    const MomentRow row = moment_eom({1, 0, 0}, p);
    REQUIRE(row.coeffs.size() == 1);
    CHECK(close(row.coeffs.at({1, 0, 0}), -4.0 * p.Gamma));
    CHECK(row.constant == cplx(0.0));
}

TEST_CASE("unknown counts and ordering") {
    // (0|1, m, n) with m+n in {1, 2} gives 10 moments, plus <R_z>.
    CHECK(moment_unknowns(2).size() == 11);
    CHECK(moment_unknowns(4).size() == 29);
    CHECK(moment_unknowns(6).size() == 55);
    const auto u = moment_unknowns(6);
    CHECK(std::is_sorted(u.begin(), u.end(), solver_order_less));
    CHECK(u.front() == MomentIndex{1, 0, 0});
}

TEST_CASE("dephasing drops out of every row") {
    ModelParams p = sample(), q = sample();
    p.Gamma0 = 0.0;
    q.Gamma0 = 3.1;
    for (const auto& idx : moment_unknowns(6)) {
        const MomentRow a = moment_eom(idx, p), b = moment_eom(idx, q);
        CHECK(a.coeffs.size() == b.coeffs.size());
        for (const auto& [k, c] : a.coeffs) CHECK(close(b.coeffs.at(k), c));
        CHECK(close(a.constant, b.constant));
    }
}

TEST_CASE("conjugate rows are conjugates") {
    const ModelParams p = sample();
    for (const auto& idx : moment_unknowns(6)) {
        const MomentRow a = moment_eom(idx, p), b = moment_eom(idx.conjugate(), p);
        REQUIRE(a.coeffs.size() == b.coeffs.size());
        for (const auto& [k, c] : a.coeffs) CHECK(close(b.coeffs.at(k.conjugate()), std::conj(c)));
        CHECK(close(b.constant, std::conj(a.constant)));
    }
}

TEST_CASE("hierarchy closes at every even order") {
    for (int k : {2, 4, 6, 8}) {
        const MomentSystem sys = assemble_system(k, sample());
        CHECK(sys.size() == static_cast<Eigen::Index>(moment_unknowns(k).size()));
        CHECK(sys.max_order() == k);
        for (const auto& idx : sys.unknowns())
            for (const auto& [j, c] : moment_eom(idx, sample()).coeffs) CHECK(j.order() <= k);
    }
}

TEST_CASE("matrix holds minus the generator") {
    const ModelParams p = sample();
    const MomentSystem sys = assemble_system(4, p);
    for (Eigen::Index i = 0; i < sys.size(); ++i) {
        const MomentRow row = moment_eom(sys.unknowns()[static_cast<std::size_t>(i)], p);
        CHECK(close(sys.rhs()(i), -row.constant));
        for (const auto& [j, c] : row.coeffs) CHECK(close(sys.matrix()(i, sys.position(j)), -c));
    }
}

TEST_CASE("published equations hold on the solved moments") {
    const ModelParams p = sample();
    const MomentVector x = solve_steady(6, p).moments;
    for (const auto* block : {&transcribed_order2(), &transcribed_order4(), &transcribed_order6()})
        for (const LineCheck& c : check_lines(*block, p, x)) {
            INFO(c.label << (c.partner ? " H.c." : ""));
            CHECK(c.relative < 1e-12);
        }
    CHECK(transcribed_order2().size() == 6);
    CHECK(transcribed_order4().size() == 10);
    CHECK(transcribed_order6().size() == 14);
}

TEST_CASE("a flipped published coefficient is detected") {
    const ModelParams p = sample();
    const MomentVector x = solve_steady(2, p).moments;
    TranscribedLine wrong{"<Rz ad>", [](const ModelParams& q, LineSum& e) {
                              e.add(q.kappa + 4 * q.Gamma, 1, 1, 0);
                              e.add(I * q.beta, 0, 1, 0);  // sign flipped
                              e.add(I * q.beta, 0, 0, 1);
                              e.constant(-I * q.g0);
                          }};
    CHECK(check_lines({wrong}, p, x).front().relative > 1e-6);
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(assemble_system(3, sample()), std::invalid_argument);
    CHECK_THROWS_AS(assemble_system(0, sample()), std::invalid_argument);
    ModelParams p = sample();
    p.kappa = 0.0;
    CHECK_THROWS_AS(assemble_system(2, p), SingularSystem);
    p = sample();
    p.Gamma = 0.0;
    CHECK_THROWS_AS(assemble_system(2, p), ConfigError);
}

}  // TEST_SUITE
