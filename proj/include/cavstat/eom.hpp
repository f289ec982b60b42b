#pragma once

// Heisenberg equations of motion for moments <R_z^s a^dag^m a^n> of the
// dressed master equation, and the closed steady-state linear system built
// from them.

#include "cavstat/algebra.hpp"
#include "cavstat/params.hpp"

#include <Eigen/Dense>

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace cavstat {

struct MomentIndex {
    int s = 0;  // R_z power, 0 or 1
    int m = 0;  // a^dag power
    int n = 0;  // a power

    auto operator<=>(const MomentIndex&) const = default;

    [[nodiscard]] int order() const { return m + n; }
    [[nodiscard]] MomentIndex conjugate() const { return {s, n, m}; }
    [[nodiscard]] bool is_identity() const { return s == 0 && m == 0 && n == 0; }
    [[nodiscard]] Monomial monomial() const { return {s, m, n}; }
    [[nodiscard]] std::string label() const;
};

// Ordering used for the unknowns of an assembled system: (m+n, s, m).
bool solver_order_less(const MomentIndex& a, const MomentIndex& b);

// d<Q>/dt = sum_j coeffs[j] <j> + constant.
struct MomentRow {
    std::map<MomentIndex, cplx> coeffs;
    cplx constant{};
};

// Effective dressed-frame Hamiltonian H0 / hbar as an operator polynomial.
OperatorPoly effective_hamiltonian(const ModelParams& p);

// d Q / dt in the Heisenberg picture, as an operator polynomial.
OperatorPoly heisenberg_derivative(const MomentIndex& q, const ModelParams& p);

MomentRow moment_eom(const MomentIndex& q, const ModelParams& p);

// Unknowns of the order-K system: every (s, m, n) with 1 <= m+n <= K plus
// <R_z>, in solver order. <1> is not an unknown.
std::vector<MomentIndex> moment_unknowns(int max_order);

// matrix * x + rhs = 0, where row i is the negated equation of motion of
// unknowns[i] (so it reads like "0 = decay * moment - drive").
class MomentSystem {
public:
    MomentSystem(std::vector<MomentIndex> unknowns, Eigen::MatrixXcd matrix, Eigen::VectorXcd rhs);

    [[nodiscard]] const std::vector<MomentIndex>& unknowns() const { return unknowns_; }
    [[nodiscard]] const Eigen::MatrixXcd& matrix() const { return matrix_; }
    [[nodiscard]] const Eigen::VectorXcd& rhs() const { return rhs_; }
    [[nodiscard]] Eigen::Index size() const { return rhs_.size(); }
    [[nodiscard]] int max_order() const { return max_order_; }
    // Position of `q` in the unknown list; -1 if absent.
    [[nodiscard]] Eigen::Index position(const MomentIndex& q) const;

private:
    std::vector<MomentIndex> unknowns_;
    std::map<MomentIndex, Eigen::Index> position_;
    Eigen::MatrixXcd matrix_;
    Eigen::VectorXcd rhs_;
    int max_order_ = 0;
};

// Throws std::invalid_argument for odd or < 2 `max_order`, SingularSystem
// for kappa == 0, ConfigError for invalid parameters.
MomentSystem assemble_system(int max_order, const ModelParams& p);

}  // namespace cavstat
