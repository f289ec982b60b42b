#include "cavstat/lindblad.hpp"

#include "cavstat/errors.hpp"

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <sstream>

namespace cavstat {

namespace {

namespace odeint = boost::numeric::odeint;

const cplx I{0.0, 1.0};

SparseMatrixC sparse_identity(int n) {
    SparseMatrixC id(n, n);
    id.setIdentity();
    return id;
}

SparseMatrixC to_sparse(const Eigen::Matrix2cd& m) { return m.sparseView(); }

SparseMatrixC kron(const SparseMatrixC& a, const SparseMatrixC& b) {
    SparseMatrixC out = Eigen::kroneckerProduct(a, b);
    out.makeCompressed();
    return out;
}

SparseMatrixC field_annihilation(int levels) {
    std::vector<Eigen::Triplet<cplx>> t;
    for (int k = 1; k < levels; ++k) t.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
    SparseMatrixC a(levels, levels);
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

// Index of rho(i, i) in the column-stacked vector.
long diagonal_slot(int d, int i) { return static_cast<long>(i) + static_cast<long>(d) * i; }

// Replaces row `slot` of the generator by the trace functional.
SparseMatrixC with_trace_row(const SparseMatrixC& generator, int d, long slot) {
    std::vector<Eigen::Triplet<cplx>> t;
    t.reserve(static_cast<std::size_t>(generator.nonZeros() + d));
    for (int col = 0; col < generator.outerSize(); ++col)
        for (SparseMatrixC::InnerIterator it(generator, col); it; ++it)
            if (it.row() != slot) t.emplace_back(it.row(), it.col(), it.value());
    for (int i = 0; i < d; ++i) t.emplace_back(slot, diagonal_slot(d, i), 1.0);
    SparseMatrixC m(generator.rows(), generator.cols());
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();
    return m;
}

Eigen::VectorXcd solve_with_trace_row(const SparseMatrixC& generator, int d, long slot) {
    const SparseMatrixC m = with_trace_row(generator, d, slot);
    Eigen::SparseLU<SparseMatrixC> lu;
    lu.analyzePattern(m);
    lu.factorize(m);
    if (lu.info() != Eigen::Success)
        throw DegenerateNullSpace("Liouvillian kernel is not one-dimensional (LU failed: " + lu.lastErrorMessage() + ")");
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(m.rows());
    rhs(slot) = 1.0;
    Eigen::VectorXcd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite())
        throw DegenerateNullSpace("Liouvillian kernel is not one-dimensional (solve failed)");
    return x;
}

using State = Eigen::VectorXcd;
// The adaptive stepper needs a real-valued state for its error norm; the
// complex vector is viewed as interleaved (re, im) pairs.
using RealState = Eigen::VectorXd;
using Dopri5 = odeint::runge_kutta_dopri5<RealState, double, RealState, double, odeint::vector_space_algebra>;

Eigen::Map<const State> as_complex(const RealState& x) {
    return {reinterpret_cast<const cplx*>(x.data()), x.size() / 2};
}
Eigen::Map<State> as_complex(RealState& x) { return {reinterpret_cast<cplx*>(x.data()), x.size() / 2}; }

RealState as_real(const State& x) {
    RealState out(2 * x.size());
    as_complex(out) = x;
    return out;
}

struct LinearFlow {
    const SparseMatrixC& generator;
    void operator()(const RealState& x, RealState& dxdt, double /*t*/) const {
        dxdt.resize(x.size());
        as_complex(dxdt) = generator * as_complex(x);
    }
};

// Steady state by integrating from the maximally mixed state until
// ||L rho|| < tol.
Eigen::VectorXcd integrate_to_steady(const FockLiouvillian& L) {
    const int d = L.space.dim();
    RealState x = as_real(DensityMatrix(L.space, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d)).vectorized());
    constexpr double kTolerance = 1e-12;
    constexpr double kChunk = 5.0;
    constexpr double kMaxTime = 1e5;
    auto stepper = odeint::make_controlled(1e-15, 1e-13, Dopri5());
    double t = 0.0;
    double dt = 1e-3;
    while (t < kMaxTime) {
        odeint::integrate_adaptive(stepper, LinearFlow{L.generator}, x, t, t + kChunk, dt);
        t += kChunk;
        if (!x.allFinite()) throw NonConvergence("time integration produced non-finite values");
        if ((L.generator * as_complex(x)).norm() < kTolerance) return as_complex(x);
    }
    throw NonConvergence("steady state not reached by t = " + std::to_string(kMaxTime));
}

}  // namespace

Eigen::Matrix2cd QubitOperatorBasis::rz() { return Eigen::Vector2cd(-1.0, 1.0).asDiagonal(); }

Eigen::Matrix2cd QubitOperatorBasis::raise() {
    Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
    r(1, 0) = 1.0;
    return r;
}

Eigen::Matrix2cd QubitOperatorBasis::lower() { return raise().adjoint(); }

FullOperators::FullOperators(FockSpace s) : space(s) {
    const SparseMatrixC field_id = sparse_identity(s.levels());
    const SparseMatrixC qubit_id = sparse_identity(2);
    const SparseMatrixC af = field_annihilation(s.levels());
    a = kron(qubit_id, af);
    ad = kron(qubit_id, SparseMatrixC(af.adjoint()));
    rz = kron(to_sparse(QubitOperatorBasis::rz()), field_id);
    raise = kron(to_sparse(QubitOperatorBasis::raise()), field_id);
    lower = kron(to_sparse(QubitOperatorBasis::lower()), field_id);
    identity = sparse_identity(s.dim());
}

SparseMatrixC hamiltonian_superoperator(const SparseMatrixC& h) {
    const SparseMatrixC id = sparse_identity(static_cast<int>(h.rows()));
    const SparseMatrixC ht = h.transpose();
    SparseMatrixC out = (kron(id, h) - kron(ht, id)) * (-I);
    out.makeCompressed();
    return out;
}

SparseMatrixC dissipator_superoperator(const SparseMatrixC& c, double rate) {
    const SparseMatrixC id = sparse_identity(static_cast<int>(c.rows()));
    const SparseMatrixC cdc = SparseMatrixC(c.adjoint()) * c;
    const SparseMatrixC cdc_t = cdc.transpose();
    const SparseMatrixC c_conj = c.conjugate();
    SparseMatrixC out = (kron(c_conj, c) - 0.5 * kron(id, cdc) - 0.5 * kron(cdc_t, id)) * cplx(rate);
    out.makeCompressed();
    return out;
}

FockLiouvillian build_liouvillian(const ModelParams& p, int cutoff) {
    if (cutoff < 2) throw ConfigError("Fock cutoff must be >= 2");
    p.validate();
    FockLiouvillian L;
    L.space = FockSpace{cutoff};
    const FullOperators ops(L.space);

    const SparseMatrixC x = ops.ad + ops.a;
    const SparseMatrixC n = ops.ad * ops.a;
    const SparseMatrixC squeeze = ops.ad * ops.ad + ops.a * ops.a;
    L.hamiltonian = ops.rz * (p.g0 * x + p.beta * n - (p.beta / 2.0) * squeeze);
    L.hamiltonian.makeCompressed();

    L.channels = {
        {"a", ops.a, 2.0 * p.kappa * (1.0 + p.n_bar)},
        {"a_dag", ops.ad, 2.0 * p.kappa * p.n_bar},
        {"R_minus", ops.lower, 2.0 * p.Gamma},
        {"R_plus", ops.raise, 2.0 * p.Gamma},
        {"R_z", ops.rz, 2.0 * p.Gamma0},
    };

    L.generator = hamiltonian_superoperator(L.hamiltonian);
    for (const auto& ch : L.channels)
        if (ch.rate != 0.0) L.generator += dissipator_superoperator(ch.op, ch.rate);
    L.generator.makeCompressed();
    return L;
}

DensityMatrix::DensityMatrix(FockSpace space, Eigen::MatrixXcd rho) : space_(space), rho_(std::move(rho)) {
    if (rho_.rows() != space_.dim() || rho_.cols() != space_.dim())
        throw std::invalid_argument("density matrix shape does not match the Fock space");
}

DensityMatrix DensityMatrix::from_vector(FockSpace space, const Eigen::VectorXcd& v) {
    const int d = space.dim();
    if (v.size() != static_cast<Eigen::Index>(d) * d) throw std::invalid_argument("vectorized rho has wrong length");
    return DensityMatrix(space, Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d));
}

DensityMatrix DensityMatrix::product(FockSpace space, const Eigen::MatrixXcd& field, const Eigen::Matrix2cd& qubit) {
    return DensityMatrix(space, Eigen::kroneckerProduct(qubit, field).eval());
}

Eigen::VectorXcd DensityMatrix::vectorized() const {
    return Eigen::Map<const Eigen::VectorXcd>(rho_.data(), rho_.size());
}

DensityInvariants DensityMatrix::invariants() const {
    DensityInvariants inv;
    inv.trace_error = std::abs(rho_.trace() - cplx(1.0));
    inv.hermiticity_error = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd herm = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    inv.min_eigenvalue = es.eigenvalues().minCoeff();
    return inv;
}

Eigen::VectorXd DensityMatrix::photon_distribution() const {
    const int levels = space_.levels();
    Eigen::VectorXd pk(levels);
    for (int k = 0; k < levels; ++k) pk(k) = rho_(k, k).real() + rho_(levels + k, levels + k).real();
    return pk;
}

SteadyDensityResult steady_density(const FockLiouvillian& L, SteadyMethod method) {
    const int d = L.space.dim();
    const long rows = static_cast<long>(d) * d;
    if (method == SteadyMethod::Automatic) method = rows <= kNullSpaceMaxRows ? SteadyMethod::NullSpace : SteadyMethod::Integrate;

    Eigen::VectorXcd x;
    if (method == SteadyMethod::NullSpace) {
        x = solve_with_trace_row(L.generator, d, diagonal_slot(d, 0));
        // A second normalization row must give the same state; a kernel of
        // dimension > 1 makes the two answers disagree.
        const Eigen::VectorXcd y = solve_with_trace_row(L.generator, d, diagonal_slot(d, d - 1));
        const double spread = (x - y).norm() / std::max(x.norm(), 1e-300);
        if (!(spread < 1e-6)) {
            std::ostringstream os;
            os << "steady state depends on the normalization row (relative spread " << spread
               << "); the Liouvillian kernel is not one-dimensional";
            throw DegenerateNullSpace(os.str());
        }
    } else {
        x = integrate_to_steady(L);
    }
    SteadyDensityResult out{DensityMatrix::from_vector(L.space, x), method, (L.generator * x).norm()};
    return out;
}

DensityMatrix evolve(const FockLiouvillian& L, const DensityMatrix& rho0, double t) {
    RealState x = as_real(rho0.vectorized());
    auto stepper = odeint::make_controlled(1e-13, 1e-11, Dopri5());
    odeint::integrate_adaptive(stepper, LinearFlow{L.generator}, x, 0.0, t, 1e-3);
    if (!x.allFinite()) throw NonConvergence("time integration produced non-finite values");
    return DensityMatrix::from_vector(L.space, as_complex(x));
}

MomentExtraction moments_from_density(const DensityMatrix& rho, int max_order) {
    const FockSpace space = rho.space();
    const FullOperators ops(space);
    const Eigen::MatrixXcd r = rho.matrix();
    const Eigen::MatrixXcd rz_rho = Eigen::MatrixXcd(ops.rz) * r;

    // ad^m a^n rho for all m, n via repeated left multiplication.
    const Eigen::MatrixXcd ad = Eigen::MatrixXcd(ops.ad);
    const Eigen::MatrixXcd a = Eigen::MatrixXcd(ops.a);
    std::vector<Eigen::MatrixXcd> a_pow{Eigen::MatrixXcd::Identity(space.dim(), space.dim())};
    std::vector<Eigen::MatrixXcd> ad_pow{a_pow.front()};
    for (int k = 1; k <= max_order; ++k) {
        a_pow.push_back(a * a_pow.back());
        ad_pow.push_back(ad * ad_pow.back());
    }

    MomentExtraction out;
    out.moments.set({1, 0, 0}, rz_rho.trace());
    for (int k = 1; k <= max_order; ++k) {
        for (int m = 0; m <= k; ++m) {
            const Eigen::MatrixXcd op = ad_pow[m] * a_pow[k - m];
            out.moments.set({0, m, k - m}, (op * r).trace());
            out.moments.set({1, m, k - m}, (op * rz_rho).trace());
        }
    }
    const Eigen::VectorXd pk = rho.photon_distribution();
    const int top = std::min<int>(3, static_cast<int>(pk.size()));
    out.top_population = pk.tail(top).sum();
    out.truncation_suspect = out.top_population > 1e-8;
    return out;
}

int suggested_cutoff(double n_estimate) { return static_cast<int>(std::ceil(10.0 * n_estimate + 15.0)); }

DressedSimulation simulate_dressed_time_dependent(const ModelParams& p, double omega, int cutoff, double horizon,
                                                  const DressedSimulationOptions& options) {
    p.validate();
    if (!(omega > 0.0)) throw ConfigError("Omega must be > 0");
    if (!(horizon > 0.0)) throw ConfigError("horizon must be > 0");
    const double expected_beta = p.g0 * p.g0 / omega;
    if (std::abs(p.beta - expected_beta) > 1e-9 * std::max(1.0, expected_beta))
        throw ConfigError("beta must equal g0^2/Omega for the dressed simulation");

    const FockSpace space{cutoff};
    const FullOperators ops(space);
    const SparseMatrixC quadrature = ops.ad - ops.a;

    // Static part: g0 R_z (a + a^dag) and the dissipators. The beta terms of
    // the effective model are generated by the fast terms themselves.
    ModelParams bare = p;
    bare.beta = 0.0;
    const FockLiouvillian base = build_liouvillian(bare, cutoff);
    const SparseMatrixC h_plus = p.g0 * (ops.raise * quadrature);    // multiplies e^{+2 i Omega t}
    const SparseMatrixC h_minus = -p.g0 * (ops.lower * quadrature);  // multiplies e^{-2 i Omega t}
    const SparseMatrixC l_plus = hamiltonian_superoperator(h_plus);
    const SparseMatrixC l_minus = hamiltonian_superoperator(h_minus);

    const double dt = (2.0 * std::numbers::pi / omega) / options.steps_per_rabi_period;
    const long steps = static_cast<long>(std::ceil(horizon / dt));
    const int steps_per_fast_period = std::max(1, options.steps_per_rabi_period / 2);
    long window_steps = static_cast<long>(options.average_fraction * steps);
    window_steps = std::max<long>(steps_per_fast_period, window_steps / steps_per_fast_period * steps_per_fast_period);
    window_steps = std::min(window_steps, steps);

    DressedSimulation out;
    out.dt = dt;
    out.steps = steps;
    out.window = window_steps * dt;
    out.stiffness_warning = steps > 10'000'000;

    auto rhs = [&](const State& x, State& dxdt, double t) {
        const cplx phase = std::exp(cplx(0.0, 2.0 * omega * t));
        dxdt = base.generator * x;
        dxdt += phase * (l_plus * x);
        dxdt += std::conj(phase) * (l_minus * x);
    };

    Eigen::Matrix2cd mixed = Eigen::Matrix2cd::Identity() / 2.0;
    Eigen::MatrixXcd vacuum = Eigen::MatrixXcd::Zero(space.levels(), space.levels());
    vacuum(0, 0) = 1.0;
    State x = DensityMatrix::product(space, vacuum, mixed).vectorized();

    odeint::runge_kutta4<State, double, State, double, odeint::vector_space_algebra> rk4;
    const long window_start = steps - window_steps;
    State accumulated = State::Zero(x.size());
    for (long k = 0; k < steps; ++k) {
        if (k >= window_start) accumulated += (k == window_start ? 0.5 : 1.0) * x;
        rk4.do_step(rhs, x, k * dt, dt);
        if (!x.allFinite()) throw NonConvergence("dressed time-dependent integration diverged");
    }
    accumulated += 0.5 * x;  // trapezoid end point
    accumulated /= static_cast<double>(window_steps);

    const DensityMatrix averaged = DensityMatrix::from_vector(space, accumulated);
    out.averaged = moments_from_density(averaged, options.max_order).moments;
    out.mean_photon = out.averaged.at({0, 1, 1}).real();
    return out;
}

}  // namespace cavstat
