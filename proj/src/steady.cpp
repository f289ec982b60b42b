#include "cavstat/steady.hpp"

#include "cavstat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cavstat {

namespace {

constexpr int kRefinementSteps = 3;

// Residual b - A x accumulated in extended precision.
Eigen::VectorXcd refined_residual(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& x, const Eigen::VectorXcd& b) {
    using lcplx = std::complex<long double>;
    Eigen::VectorXcd r(b.size());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        lcplx acc(b(i).real(), b(i).imag());
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const lcplx aij(a(i, j).real(), a(i, j).imag());
            const lcplx xj(x(j).real(), x(j).imag());
            acc -= aij * xj;
        }
        r(i) = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
    return r;
}

// Moments of order k grow like n^(k/2). Rescaling the unknowns by that
// estimate and equilibrating the rows keeps small-kappa systems, where n is
// in the thousands, within reach of a double-precision LU.
Eigen::VectorXd column_scales(const MomentSystem& system) {
    const auto& unknowns = system.unknowns();
    const auto low = static_cast<Eigen::Index>(
        std::count_if(unknowns.begin(), unknowns.end(), [](const MomentIndex& q) { return q.order() <= 2; }));
    // The order <= 2 block is closed under the dynamics and leads the list.
    const Eigen::MatrixXcd block = system.matrix().topLeftCorner(low, low);
    const Eigen::VectorXcd x = block.partialPivLu().solve(-system.rhs().head(low));
    double n = 1.0;
    const Eigen::Index pos = system.position({0, 1, 1});
    if (pos >= 0 && pos < low && std::isfinite(x(pos).real())) n = std::max(1.0, std::abs(x(pos).real()));

    Eigen::VectorXd scales(system.size());
    for (Eigen::Index j = 0; j < system.size(); ++j) scales(j) = std::pow(n, 0.5 * unknowns[static_cast<std::size_t>(j)].order());
    return scales;
}

}  // namespace

cplx MomentVector::at(const MomentIndex& q) const {
    if (q.is_identity()) return 1.0;
    auto it = values_.find(q);
    if (it == values_.end()) throw std::out_of_range("moment " + q.label() + " not available");
    return it->second;
}

int MomentVector::max_order() const {
    int k = 0;
    for (const auto& [q, v] : values_) k = std::max(k, q.order());
    return k;
}

double MomentVector::symmetry_defect() const {
    double scale = 0.0;
    for (const auto& [q, v] : values_) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (const auto& [q, v] : values_) {
        auto it = values_.find(q.conjugate());
        if (it == values_.end()) continue;
        worst = std::max(worst, std::abs(it->second - std::conj(v)));
    }
    return worst / scale;
}

SteadySolution solve_system(const MomentSystem& system) {
    const Eigen::MatrixXcd& a = system.matrix();
    const Eigen::VectorXcd b = -system.rhs();

    const Eigen::VectorXd cols = column_scales(system);
    Eigen::MatrixXcd scaled = a * cols.asDiagonal();
    Eigen::VectorXd rows(scaled.rows());
    for (Eigen::Index i = 0; i < scaled.rows(); ++i) {
        const double mx = scaled.row(i).cwiseAbs().maxCoeff();
        rows(i) = mx > 0.0 ? 1.0 / mx : 1.0;
    }
    scaled = rows.asDiagonal() * scaled;
    const Eigen::VectorXcd scaled_b = rows.asDiagonal() * b;

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(scaled);
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double max_pivot = pivots.maxCoeff();
    const double min_pivot = pivots.minCoeff();
    if (!(min_pivot > 0.0) || !std::isfinite(max_pivot))
        throw SingularSystem("LU pivot breakdown in the moment system (min pivot " + std::to_string(min_pivot) + ")");

    Eigen::VectorXcd y = lu.solve(scaled_b);
    for (int step = 0; step < kRefinementSteps; ++step) y += lu.solve(refined_residual(scaled, y, scaled_b));
    const Eigen::VectorXcd x = cols.asDiagonal() * y;

    SteadySolution sol;
    const double bnorm = b.norm();
    const double rnorm = refined_residual(a, x, b).norm();
    sol.diagnostics.residual_norm = bnorm > 0.0 ? rnorm / bnorm : rnorm;
    sol.diagnostics.backward_error = rnorm / (a.norm() * x.norm() + bnorm + kMinIntensity);
    sol.diagnostics.condition_estimate = max_pivot / min_pivot;
    sol.diagnostics.ill_conditioned = sol.diagnostics.condition_estimate > kIllConditioned;

    std::map<MomentIndex, cplx> values;
    for (std::size_t i = 0; i < system.unknowns().size(); ++i) values[system.unknowns()[i]] = x(static_cast<Eigen::Index>(i));
    sol.moments = MomentVector(std::move(values));
    sol.diagnostics.symmetry_defect = sol.moments.symmetry_defect();
    return sol;
}

SteadySolution solve_steady(int max_order, const ModelParams& p) { return solve_system(assemble_system(max_order, p)); }

double correlation(const MomentVector& x, int k) {
    const double n = x.at({0, 1, 1}).real();
    if (!(n >= kMinIntensity))
        throw DegenerateIntensity("mean photon number is zero; g(" + std::to_string(k) + ") undefined");
    return x.at({0, k, k}).real() / std::pow(n, k);
}

SteadyStateResult observables(const MomentVector& x) {
    SteadyStateResult r;
    r.moments = x;
    const cplx n = x.at({0, 1, 1});
    r.n = n.real();
    if (!(r.n >= kMinIntensity)) throw DegenerateIntensity("mean photon number is zero; g(k) undefined");

    auto residue = [&](int k) {
        const cplx v = x.at({0, k, k});
        return std::abs(v.imag()) / std::max(std::abs(v.real()), kMinIntensity);
    };
    r.imaginary_residue = residue(1);
    const int order = x.max_order();
    if (order >= 4) {
        r.g2 = correlation(x, 2);
        r.imaginary_residue = std::max(r.imaginary_residue, residue(2));
    }
    if (order >= 6) {
        r.g3 = correlation(x, 3);
        r.imaginary_residue = std::max(r.imaginary_residue, residue(3));
    }
    r.symmetry_defect = x.symmetry_defect();
    return r;
}

SteadyStateResult observables(const SteadySolution& sol) {
    SteadyStateResult r = observables(sol.moments);
    r.residual_norm = sol.diagnostics.residual_norm;
    r.backward_error = sol.diagnostics.backward_error;
    r.condition_estimate = sol.diagnostics.condition_estimate;
    r.ill_conditioned = sol.diagnostics.ill_conditioned;
    return r;
}

}  // namespace cavstat
