#pragma once

// Brute-force density-matrix oracle on (dressed qubit) x (Fock space
// truncated at N photons).
//
// Channel rates. The Heisenberg-picture bracket pair used by the moment
// generator for a jump operator c,
//
//     -r ( <c^dag [c, Q]> + <[Q, c^dag] c> )
//       = r < 2 c^dag Q c - c^dag c Q - Q c^dag c >,
//
// is 2r times the adjoint of the standard dissipator
// D[c] rho = c rho c^dag - (1/2){c^dag c, rho}. With r read off the bracket
// prefactors this gives
//
//     a      at 2 kappa (1 + n_bar)     (bracket a^dag [a, Q])
//     a^dag  at 2 kappa n_bar           (bracket a [a^dag, Q])
//     R^-    at 2 Gamma                 (bracket R^+ [R^-, Q])
//     R^+    at 2 Gamma                 (bracket R^- [R^+, Q])
//     R_z    at 2 Gamma0                (bracket R_z [R_z, Q])
//
// and the Hamiltonian part -i [H0, rho]. The test suite checks the match by
// comparing tr(Q L[rho]) with the moment equations for random rho.

#include "cavstat/params.hpp"
#include "cavstat/steady.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace cavstat {

using SparseMatrixC = Eigen::SparseMatrix<cplx>;

struct FockSpace {
    int cutoff = 0;  // highest Fock level kept

    [[nodiscard]] int levels() const { return cutoff + 1; }
    [[nodiscard]] int dim() const { return 2 * (cutoff + 1); }
};

// 2x2 matrices in the dressed basis {|1bar>, |2bar>}.
struct QubitOperatorBasis {
    static Eigen::Matrix2cd rz();
    static Eigen::Matrix2cd raise();
    static Eigen::Matrix2cd lower();
};

// Operators on the full qubit x field space (qubit index is the slow one).
struct FullOperators {
    explicit FullOperators(FockSpace space);

    FockSpace space;
    SparseMatrixC a, ad, rz, raise, lower, identity;
};

struct Channel {
    std::string name;
    SparseMatrixC op;
    double rate = 0.0;
};

// Column-stacked vectorization: vec(rho)[i + d j] = rho(i, j).
struct FockLiouvillian {
    FockSpace space;
    SparseMatrixC hamiltonian;
    std::vector<Channel> channels;
    SparseMatrixC generator;  // d^2 x d^2
};

FockLiouvillian build_liouvillian(const ModelParams& p, int cutoff);

// Superoperator of -i [H, .].
SparseMatrixC hamiltonian_superoperator(const SparseMatrixC& h);
// Superoperator of rate * D[c].
SparseMatrixC dissipator_superoperator(const SparseMatrixC& c, double rate);

struct DensityInvariants {
    double trace_error = 0.0;        // |tr rho - 1|
    double hermiticity_error = 0.0;  // max |rho - rho^dag|
    double min_eigenvalue = 0.0;     // of the Hermitian part

    [[nodiscard]] bool ok() const {
        return trace_error < 1e-10 && hermiticity_error < 1e-12 && min_eigenvalue >= -1e-8;
    }
};

class DensityMatrix {
public:
    DensityMatrix(FockSpace space, Eigen::MatrixXcd rho);

    static DensityMatrix from_vector(FockSpace space, const Eigen::VectorXcd& v);
    // |n> x qubit state; `qubit` is a 2x2 density matrix.
    static DensityMatrix product(FockSpace space, const Eigen::MatrixXcd& field, const Eigen::Matrix2cd& qubit);

    [[nodiscard]] const Eigen::MatrixXcd& matrix() const { return rho_; }
    [[nodiscard]] const FockSpace& space() const { return space_; }
    [[nodiscard]] Eigen::VectorXcd vectorized() const;
    [[nodiscard]] DensityInvariants invariants() const;
    // Photon-number distribution with the qubit traced out.
    [[nodiscard]] Eigen::VectorXd photon_distribution() const;

private:
    FockSpace space_;
    Eigen::MatrixXcd rho_;
};

enum class SteadyMethod { Automatic, NullSpace, Integrate };

// Kernel extraction is used up to this many Liouvillian rows.
inline constexpr long kNullSpaceMaxRows = 10000;

struct SteadyDensityResult {
    DensityMatrix rho;
    SteadyMethod method_used;
    double generator_residual = 0.0;  // ||L vec(rho)||
};

// Throws DegenerateNullSpace, NonConvergence.
SteadyDensityResult steady_density(const FockLiouvillian& L, SteadyMethod method = SteadyMethod::Automatic);

// Adaptive Dormand-Prince integration of d rho/dt = L rho over [0, t].
DensityMatrix evolve(const FockLiouvillian& L, const DensityMatrix& rho0, double t);

struct MomentExtraction {
    MomentVector moments;
    double top_population = 0.0;  // weight of the highest three Fock levels
    bool truncation_suspect = false;
};

// tr(R_z^s a^dag^m a^n rho) for every s and 0 < m+n <= K, plus <R_z>.
MomentExtraction moments_from_density(const DensityMatrix& rho, int max_order);

// Cutoff heuristic: ceil(10 n_estimate + 15).
int suggested_cutoff(double n_estimate);

struct DressedSimulation {
    MomentVector averaged;   // moments of the time-averaged rho
    double mean_photon = 0.0;
    long steps = 0;
    double dt = 0.0;
    double window = 0.0;     // averaging window length
    bool stiffness_warning = false;
};

struct DressedSimulationOptions {
    // dt = (2 pi / Omega) / steps_per_rabi_period.
    int steps_per_rabi_period = 40;
    int max_order = 2;
    double average_fraction = 0.2;
};

// Integrates the master equation with the time-dependent dressed Hamiltonian
//   g0 R_z (a + a^dag) + g0 (R^+ e^{2 i Omega t} - R^- e^{-2 i Omega t})(a^dag - a)
// from vacuum x maximally mixed qubit with fixed-step RK4, and averages rho
// over the last `average_fraction` of the horizon (rounded to whole periods
// of the fast terms). `p.beta` must equal g0^2 / Omega.
DressedSimulation simulate_dressed_time_dependent(const ModelParams& p, double omega, int cutoff, double horizon,
                                                  const DressedSimulationOptions& options = {});

}  // namespace cavstat
