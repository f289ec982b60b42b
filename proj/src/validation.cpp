#include "cavstat/validation.hpp"

#include "cavstat/errors.hpp"
#include "cavstat/lindblad.hpp"
#include "cavstat/steady.hpp"
#include "cavstat/sweep.hpp"
#include "cavstat/transcribed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace cavstat {

namespace {

// Pinned tolerances.
constexpr double kLineTol = 1e-10;
constexpr double kMeanPhotonTol = 1e-9;
constexpr double kG2Tol = 1e-8;
constexpr double kG2Beta0Tol = 1e-12;
constexpr double kLimitTol = 1e-3;
constexpr double kLimitKappa = 1e-6;
constexpr double kG3LimitFraction = 0.10;
constexpr double kBaselineTol = 1e-10;
constexpr double kG0IndependenceTol = 1e-10;
constexpr double kOracleTol = 1e-4;
constexpr double kOracleFloor = 1e-10;  // absolute scale for vanishing moments
constexpr int kOracleCutoff = 20;
constexpr double kDressedTol = 0.02;
constexpr int kDressedCutoff = 12;
constexpr double kDressedHorizon = 30.0;
constexpr double kVanishingSlope = 0.5;  // min d log|d g| / d log kappa over the lowest decade
constexpr unsigned kRandomSeed = 20240917u;

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

std::string fix(double v, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<ModelParams> random_points() {
    std::mt19937 rng(kRandomSeed);
    std::uniform_real_distribution<double> g0(0.5, 8.0), beta(0.0, 0.2), kappa(0.05, 3.0), nbar(0.0, 10.0);
    std::vector<ModelParams> out;
    for (int i = 0; i < 5; ++i) {
        ModelParams p;
        p.g0 = g0(rng);
        p.beta = beta(rng);
        p.kappa = kappa(rng);
        p.n_bar = nbar(rng);
        out.push_back(p);
    }
    return out;
}

std::vector<ModelParams> figure_points() {
    std::vector<ModelParams> out;
    const Grid grid{0.01, 3.0, 60, Spacing::Log};
    for (double beta : {0.0, 0.1})
        for (double nbar : {0.0, 1.0, 5.0, 10.0})
            for (double kappa : grid.values()) {
                ModelParams p;
                p.g0 = 5.0;
                p.beta = beta;
                p.kappa = kappa;
                p.n_bar = nbar;
                out.push_back(p);
            }
    return out;
}

std::vector<ModelParams> comparison_grid() {
    std::vector<ModelParams> out = random_points();
    const auto fig = figure_points();
    out.insert(out.end(), fig.begin(), fig.end());
    return out;
}

double g2_closed(const ModelParams& p, const ValidationOptions& opt) {
    G2Coefficients c = g2_coefficients(p);
    if (opt.g2_mutation) opt.g2_mutation(c);
    return g2_from_coefficients(c, p);
}

CriterionResult coefficient_lines() {
    CriterionResult r{1, "published equations reproduced by assembled systems (K=2,4,6)", true, ""};
    double worst = 0.0;
    std::string where;
    const std::vector<std::pair<int, const std::vector<TranscribedLine>*>> blocks{
        {2, &transcribed_order2()}, {4, &transcribed_order4()}, {6, &transcribed_order6()}};
    int lines = 0;
    for (const ModelParams& p : random_points()) {
        for (const auto& [k, block] : blocks) {
            const MomentVector x = solve_steady(k, p).moments;
            for (const LineCheck& c : check_lines(*block, p, x)) {
                ++lines;
                if (c.relative > worst) {
                    worst = c.relative;
                    where = c.label + (c.partner ? " (H.c.)" : "");
                }
            }
        }
    }
    r.passed = worst < kLineTol;
    r.measured = std::to_string(lines) + " line evaluations, max relative residual " + sci(worst) + " at " + where +
                 " (tol " + sci(kLineTol) + ")";
    return r;
}

CriterionResult mean_photon() {
    CriterionResult r{2, "mean photon number: solver K=2 vs closed form", true, ""};
    double worst = 0.0;
    for (const ModelParams& p : comparison_grid()) {
        const double n = solve_steady(2, p).moments.at({0, 1, 1}).real();
        worst = std::max(worst, rel(n, mean_photon_cf(p)));
    }
    r.passed = worst < kMeanPhotonTol;
    r.measured = "max relative error " + sci(worst) + " (tol " + sci(kMeanPhotonTol) + ")";
    return r;
}

CriterionResult second_order(const ValidationOptions& opt) {
    CriterionResult r{3, "g2: solver K=4 vs closed form; beta=0 reduction", true, ""};
    double worst = 0.0;
    double worst_beta0 = 0.0;
    for (const ModelParams& p : comparison_grid()) {
        const double g2 = correlation(solve_steady(4, p).moments, 2);
        worst = std::max(worst, rel(g2, g2_closed(p, opt)));
        ModelParams q = p;
        q.beta = 0.0;
        worst_beta0 = std::max(worst_beta0, rel(g2_closed(q, opt), g2_beta0_cf(q)));
    }
    r.passed = worst < kG2Tol && worst_beta0 < kG2Beta0Tol;
    r.measured = "max relative error " + sci(worst) + " (tol " + sci(kG2Tol) + "); beta=0 reduction " +
                 sci(worst_beta0) + " (tol " + sci(kG2Beta0Tol) + ")";
    return r;
}

CriterionResult limits(const ValidationOptions& opt) {
    CriterionResult r{4, "kappa -> 0 limit constants", true, ""};
    ModelParams p;
    p.g0 = 5.0;
    p.beta = 0.1;
    p.kappa = kLimitKappa;
    const double g2_lim = LimitConstants::g2_beta_nonzero.value();
    const double e1 = rel(g2_closed(p, opt), g2_lim);
    ModelParams q = p;
    q.beta = 0.0;
    const double e2 = rel(g2_beta0_cf(q), LimitConstants::g2_beta_zero.value());
    const double e3 = rel(g3_beta0_cf(q), LimitConstants::g3_beta_zero.value());

    const double g3_lim = LimitConstants::g3_beta_nonzero.value();
    std::vector<double> dist;
    std::ostringstream g3s;
    for (double kappa : {0.3, 0.1, 0.03, 0.01}) {
        ModelParams s = p;
        s.kappa = kappa;
        const double g3 = correlation(solve_steady(6, s).moments, 3);
        dist.push_back(std::abs(g3 - g3_lim));
        g3s << (dist.size() > 1 ? ", " : "") << fix(g3, 5);
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < dist.size(); ++i) decreasing = decreasing && dist[i] < dist[i - 1];
    const double last = dist.back() / g3_lim;

    const bool ok1 = e1 < kLimitTol, ok2 = e2 < kLimitTol, ok3 = e3 < kLimitTol;
    const bool ok4 = last < kG3LimitFraction;
    r.passed = ok1 && ok2 && ok3 && decreasing && ok4;
    r.measured = "g2 vs 95/12 " + sci(e1) + (ok1 ? "" : " [out of tol]") + "; beta=0 g2 vs 3 " + sci(e2) +
                 (ok2 ? "" : " [out of tol]") + "; beta=0 g3 vs 15 " + sci(e3) + (ok3 ? "" : " [out of tol]") + " (tol " +
                 sci(kLimitTol) + "); solver g3 at kappa {0.3,0.1,0.03,0.01} = {" + g3s.str() + "}, " +
                 (decreasing ? "approaching" : "NOT approaching") + " 33203/180, off by " + fix(100.0 * last, 4) +
                 "% at 0.01 (tol " + fix(100.0 * kG3LimitFraction) + "%)" + (ok4 ? "" : " [out of tol]");
    return r;
}

CriterionResult incoherent(const ValidationOptions& opt) {
    CriterionResult r{5, "incoherent baselines g2 = 2, g3 = 6 at g0 = 0", true, ""};
    double worst = 0.0;
    for (double nbar : {0.5, 2.0, 7.0})
        for (double kappa : {0.1, 1.0}) {
            ModelParams p;
            p.g0 = 0.0;
            p.beta = 0.0;
            p.kappa = kappa;
            p.n_bar = nbar;
            const MomentVector x = solve_steady(6, p).moments;
            worst = std::max({worst, std::abs(correlation(x, 2) - 2.0), std::abs(correlation(x, 3) - 6.0),
                              std::abs(g2_closed(p, opt) - 2.0), std::abs(g2_beta0_cf(p) - 2.0),
                              std::abs(g3_beta0_cf(p) - 6.0)});
        }
    r.passed = worst <= kBaselineTol;
    r.measured = "max |deviation| " + sci(worst) + " (tol " + sci(kBaselineTol) + ")";
    return r;
}

CriterionResult g0_independence() {
    CriterionResult r{6, "g0-independence of g2, g3 at beta = n_bar = 0", true, ""};
    double worst = 0.0;
    for (double kappa : {0.1, 1.0, 3.0}) {
        std::vector<double> g2s, g3s;
        for (double g0 : {1.0, 5.0, 20.0}) {
            ModelParams p;
            p.g0 = g0;
            p.kappa = kappa;
            const MomentVector x = solve_steady(6, p).moments;
            g2s.push_back(correlation(x, 2));
            g3s.push_back(correlation(x, 3));
        }
        for (std::size_t i = 1; i < g2s.size(); ++i)
            worst = std::max({worst, rel(g2s[i], g2s[0]), rel(g3s[i], g3s[0])});
    }
    r.passed = worst < kG0IndependenceTol;
    r.measured = "max relative spread " + sci(worst) + " (tol " + sci(kG0IndependenceTol) + ")";
    return r;
}

CriterionResult oracle() {
    CriterionResult r{7, "density-matrix oracle vs moment solver (N=20, m+n <= 6)", true, ""};
    std::ostringstream os;
    for (double nbar : {0.0, 0.5}) {
        ModelParams p;
        p.g0 = 1.0;
        p.beta = 0.05;
        p.kappa = 1.0;
        p.n_bar = nbar;
        const SteadyDensityResult sd = steady_density(build_liouvillian(p, kOracleCutoff));
        const DensityInvariants inv = sd.rho.invariants();
        const MomentExtraction ex = moments_from_density(sd.rho, 6);
        const MomentVector x = solve_steady(6, p).moments;
        double worst = 0.0;
        std::string where;
        for (const auto& [q, v] : x.values()) {
            const double e = std::abs(ex.moments.at(q) - v) / std::max(std::abs(v), kOracleFloor);
            if (e > worst) {
                worst = e;
                where = q.label();
            }
        }
        const bool ok = worst < kOracleTol && inv.ok();
        r.passed = r.passed && ok;
        os << (nbar > 0.0 ? "; " : "") << "n_bar=" << nbar << ": max relative " << sci(worst) << " at " << where
           << ", trace " << sci(inv.trace_error) << ", herm " << sci(inv.hermiticity_error) << ", min eig "
           << sci(inv.min_eigenvalue) << ", top population " << sci(ex.top_population) << (ok ? "" : " [out of tol]");
    }
    os << " (tol " << sci(kOracleTol) << ")";
    r.measured = os.str();
    return r;
}

CriterionResult dressed() {
    CriterionResult r{8, "time-dependent dressed run vs effective model", true, ""};
    std::vector<double> errs;
    std::ostringstream os;
    for (double ratio : {25.0, 50.0, 100.0}) {
        ModelParams p;
        p.g0 = 1.0;
        p.kappa = 1.0;
        const double omega = ratio * p.g0;
        p.beta = p.g0 * p.g0 / omega;
        const DressedSimulation sim = simulate_dressed_time_dependent(p, omega, kDressedCutoff, kDressedHorizon);
        const double n_eff = solve_steady(2, p).moments.at({0, 1, 1}).real();
        errs.push_back(rel(sim.mean_photon, n_eff));
        os << (errs.size() > 1 ? ", " : "") << "Omega=" << omega << ": " << sci(errs.back());
    }
    const bool decreasing = errs[1] < errs[0] && errs[2] < errs[1];
    r.passed = decreasing && errs.back() < kDressedTol;
    r.measured = "relative error of <ad a>: " + os.str() + (decreasing ? " (decreasing)" : " (NOT decreasing)") +
                 " (tol " + fix(100.0 * kDressedTol) + "% at Omega=100)";
    return r;
}

std::vector<std::vector<ResultRow>> curves(const std::vector<ResultRow>& rows, std::size_t per_curve) {
    std::vector<std::vector<ResultRow>> out;
    for (std::size_t i = 0; i < rows.size(); i += per_curve)
        out.emplace_back(rows.begin() + static_cast<long>(i), rows.begin() + static_cast<long>(i + per_curve));
    return out;
}

CriterionResult figures(const ValidationOptions& opt) {
    CriterionResult r{9, "figure properties (fig2 shape and ordering, fig3/fig5 vanishing)", true, ""};
    std::ostringstream os;

    SweepConfig fig2 = preset("fig2");
    fig2.workers = opt.workers;
    const auto points = static_cast<std::size_t>(fig2.grid.points);
    const auto c2 = curves(run_sweep(fig2), points);
    bool shape = true;
    for (const auto& curve : c2) {
        for (std::size_t i = 1; i < curve.size(); ++i)
            shape = shape && curve[i].g2 && curve[i - 1].g2 && *curve[i].g2 < *curve[i - 1].g2;
        shape = shape && curve.back().g2 && curve.front().g2 &&
                std::abs(*curve.back().g2 - 2.0) < std::abs(*curve.front().g2 - 2.0);
    }
    if (!shape) {
        r.passed = false;
        r.measured = "fig2 curve not decreasing toward 2 (or a point failed)";
        return r;
    }
    // series order 0, 0.05, 0.1
    const bool ordering = *c2[2].front().g2 > *c2[1].front().g2 && *c2[1].front().g2 > *c2[0].front().g2;
    os << "fig2 decreasing toward 2: " << (shape ? "yes" : "NO") << "; g2 at kappa=0.01 for beta {0,0.05,0.1} = {"
       << fix(*c2[0].front().g2) << ", " << fix(*c2[1].front().g2) << ", " << fix(*c2[2].front().g2) << "}"
       << (ordering ? "" : " NOT ordered");
    r.passed = shape && ordering;

    for (const char* name : {"fig3", "fig5"}) {
        SweepConfig cfg = preset(name);
        cfg.workers = opt.workers;
        const bool second = std::string(name) == "fig3";
        double slope = std::numeric_limits<double>::infinity();
        bool monotone = true;
        for (const auto& curve : curves(run_sweep(cfg), points)) {
            // Lowest decade of the grid: |d g| must shrink steadily towards
            // kappa_min with a clearly positive log-log slope.
            std::size_t top = 0;
            while (top + 1 < curve.size() && curve[top + 1].value <= 10.0 * curve.front().value) ++top;
            std::vector<double> mag;
            for (std::size_t j = 0; j <= top; ++j) {
                const auto d = second ? curve[j].dg2 : curve[j].dg3;
                mag.push_back(d ? std::abs(*d) : std::numeric_limits<double>::quiet_NaN());
            }
            for (std::size_t j = 1; j < mag.size(); ++j) monotone = monotone && mag[j - 1] < mag[j];
            const double s = std::log(mag.back() / mag.front()) / std::log(curve[top].value / curve.front().value);
            slope = std::min(slope, std::isfinite(s) ? s : -1.0);
        }
        const bool ok = monotone && slope >= kVanishingSlope;
        r.passed = r.passed && ok;
        os << "; " << name << (monotone ? "" : " not shrinking") << " min log-log slope of |d g| over kappa in [0.01, 0.1] = "
           << fix(slope, 3) << (ok ? "" : " [out of tol]");
    }
    os << " (tol " << kVanishingSlope << ")";
    r.measured = os.str();
    return r;
}

CriterionResult determinism(const ValidationOptions& opt) {
    CriterionResult r{10, "byte-identical CSV across runs and worker counts", true, ""};
    std::size_t bytes = 0;
    for (const auto& name : preset_names()) {
        SweepConfig cfg = preset(name);
        cfg.workers = opt.workers;
        std::ostringstream a, b, c;
        write_csv(a, run_sweep(cfg));
        write_csv(b, run_sweep(cfg));
        cfg.workers = 1;
        write_csv(c, run_sweep(cfg));
        const bool same = a.str() == b.str() && a.str() == c.str();
        r.passed = r.passed && same;
        bytes += a.str().size();
        if (!same) r.measured += name + " differs; ";
    }
    r.measured += "5 presets x 3 runs, " + std::to_string(bytes) + " bytes per pass";
    return r;
}

}  // namespace

std::vector<int> criteria_for(ValidationLevel level) {
    if (level == ValidationLevel::Full) return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    return {1, 2, 3, 4, 5, 6, 9, 10};
}

CriterionResult run_criterion(int id, const ValidationOptions& options) {
    try {
        switch (id) {
            case 1: return coefficient_lines();
            case 2: return mean_photon();
            case 3: return second_order(options);
            case 4: return limits(options);
            case 5: return incoherent(options);
            case 6: return g0_independence();
            case 7: return oracle();
            case 8: return dressed();
            case 9: return figures(options);
            case 10: return determinism(options);
            default: break;
        }
    } catch (const Error& e) {
        return {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
    }
    throw std::out_of_range("no acceptance criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_validation(const ValidationOptions& options) {
    std::vector<CriterionResult> out;
    for (int id : criteria_for(options.level)) out.push_back(run_criterion(id, options));
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.title << ": "
       << r.measured;
    return os.str();
}

}  // namespace cavstat
