#include "cavstat/eom.hpp"

#include "cavstat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cavstat {

namespace {

const cplx I{0.0, 1.0};

// Dressed-qubit operators in the basis {|1bar>, |2bar>}.
Eigen::Matrix2cd qubit_rz() { return Eigen::Vector2cd(-1.0, 1.0).asDiagonal(); }
Eigen::Matrix2cd qubit_raise() {
    Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
    r(1, 0) = 1.0;
    return r;
}
Eigen::Matrix2cd qubit_lower() { return qubit_raise().adjoint(); }

Eigen::Matrix2cd qubit_power(int s) { return s ? qubit_rz() : Eigen::Matrix2cd::Identity(); }

// Splits a 2x2 qubit operator into identity and R_z parts. A nonzero R^+ or
// R^- component would mean the hierarchy is not closed; that never happens
// for the channels of this model.
std::pair<cplx, cplx> split_diagonal(const Eigen::Matrix2cd& q) {
    const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
    if (std::abs(q(0, 1)) > 1e-14 * scale || std::abs(q(1, 0)) > 1e-14 * scale)
        throw std::logic_error("qubit bracket produced an R+/R- component");
    return {(q(0, 0) + q(1, 1)) / 2.0, (q(1, 1) - q(0, 0)) / 2.0};
}

struct QubitChannel {
    Eigen::Matrix2cd outer;  // A in <A [B, Q]>
    Eigen::Matrix2cd inner;  // B
    double rate;
};

struct FieldChannel {
    OperatorPoly outer;
    OperatorPoly inner;
    double rate;
};

// -rate * ( A [B, Q] + [Q, B^dag] A^dag ), the bracket together with its
// "H.c." partner taken without conjugating Q.
Eigen::Matrix2cd qubit_bracket(const QubitChannel& ch, const Eigen::Matrix2cd& q) {
    const Eigen::Matrix2cd& a = ch.outer;
    const Eigen::Matrix2cd& b = ch.inner;
    const Eigen::Matrix2cd lhs = a * (b * q - q * b);
    const Eigen::Matrix2cd rhs = (q * b.adjoint() - b.adjoint() * q) * a.adjoint();
    return -ch.rate * (lhs + rhs);
}

OperatorPoly field_bracket(const FieldChannel& ch, const OperatorPoly& f) {
    const OperatorPoly lhs = ch.outer * commutator(ch.inner, f);
    const OperatorPoly rhs = commutator(f, adjoint(ch.inner)) * adjoint(ch.outer);
    return (lhs + rhs) * cplx(-ch.rate);
}

OperatorPoly qubit_dissipation(const std::vector<QubitChannel>& channels, int s, const OperatorPoly& field) {
    Eigen::Matrix2cd total = Eigen::Matrix2cd::Zero();
    for (const auto& ch : channels) total += qubit_bracket(ch, qubit_power(s));
    const auto [c0, cz] = split_diagonal(total);
    return field * c0 + OperatorPoly::rz() * field * cz;
}

}  // namespace

std::string MomentIndex::label() const {
    std::ostringstream os;
    os << "<";
    if (s) os << "Rz";
    if (m) os << (s ? " " : "") << "ad^" << m;
    if (n) os << ((s || m) ? " " : "") << "a^" << n;
    if (!s && !m && !n) os << "1";
    os << ">";
    return os.str();
}

bool solver_order_less(const MomentIndex& a, const MomentIndex& b) {
    return std::tuple(a.order(), a.s, a.m) < std::tuple(b.order(), b.s, b.m);
}

OperatorPoly effective_hamiltonian(const ModelParams& p) {
    const OperatorPoly ad = OperatorPoly::create();
    const OperatorPoly a = OperatorPoly::annihilate();
    const OperatorPoly field = (ad + a) * cplx(p.g0) + (ad * a) * cplx(p.beta) -
                               (ad * ad + a * a) * cplx(p.beta / 2.0);
    return OperatorPoly::rz() * field;
}

OperatorPoly heisenberg_derivative(const MomentIndex& q, const ModelParams& p) {
    if (q.s < 0 || q.s > 1 || q.m < 0 || q.n < 0) throw std::invalid_argument("invalid moment index " + q.label());
    const OperatorPoly field = OperatorPoly::monomial(0, q.m, q.n);
    const OperatorPoly full = OperatorPoly::monomial(q.s, q.m, q.n);

    OperatorPoly out = commutator(effective_hamiltonian(p), full) * I;

    const std::vector<QubitChannel> dephasing{{qubit_rz(), qubit_rz(), p.Gamma0}};
    const OperatorPoly dephasing_part = qubit_dissipation(dephasing, q.s, field);
    // R_z commutes with every retained monomial, so dephasing drops out.
    if (!dephasing_part.empty()) throw std::logic_error("dephasing contributed to " + q.label());

    const std::vector<QubitChannel> flips{{qubit_raise(), qubit_lower(), p.Gamma},
                                          {qubit_lower(), qubit_raise(), p.Gamma}};
    out += qubit_dissipation(flips, q.s, field);

    const OperatorPoly ad = OperatorPoly::create();
    const OperatorPoly a = OperatorPoly::annihilate();
    const FieldChannel cavity_loss{ad, a, p.kappa * (1.0 + p.n_bar)};
    const FieldChannel cavity_gain{a, ad, p.kappa * p.n_bar};
    const OperatorPoly rz_power = q.s ? OperatorPoly::rz() : OperatorPoly::identity();
    out += rz_power * (field_bracket(cavity_loss, field) + field_bracket(cavity_gain, field));
    return out;
}

MomentRow moment_eom(const MomentIndex& q, const ModelParams& p) {
    MomentRow row;
    const OperatorPoly derivative = heisenberg_derivative(q, p);
    for (const auto& [mono, c] : derivative.terms()) {
        const MomentIndex idx{mono.rz, mono.m, mono.n};
        if (idx.is_identity())
            row.constant += c;
        else
            row.coeffs[idx] += c;
    }
    return row;
}

std::vector<MomentIndex> moment_unknowns(int max_order) {
    std::vector<MomentIndex> out{{1, 0, 0}};
    for (int k = 1; k <= max_order; ++k)
        for (int s = 0; s <= 1; ++s)
            for (int m = 0; m <= k; ++m) out.push_back({s, m, k - m});
    std::sort(out.begin(), out.end(), solver_order_less);
    return out;
}

MomentSystem::MomentSystem(std::vector<MomentIndex> unknowns, Eigen::MatrixXcd matrix, Eigen::VectorXcd rhs)
    : unknowns_(std::move(unknowns)), matrix_(std::move(matrix)), rhs_(std::move(rhs)) {
    for (std::size_t i = 0; i < unknowns_.size(); ++i) {
        position_[unknowns_[i]] = static_cast<Eigen::Index>(i);
        max_order_ = std::max(max_order_, unknowns_[i].order());
    }
}

Eigen::Index MomentSystem::position(const MomentIndex& q) const {
    auto it = position_.find(q);
    return it == position_.end() ? -1 : it->second;
}

MomentSystem assemble_system(int max_order, const ModelParams& p) {
    if (max_order < 2 || max_order % 2 != 0)
        throw std::invalid_argument("moment order K must be even and >= 2, got " + std::to_string(max_order));
    p.validate();
    if (p.kappa == 0.0)
        throw SingularSystem("kappa = 0: without cavity damping the moment system has no unique steady state");

    auto unknowns = moment_unknowns(max_order);
    const auto dim = static_cast<Eigen::Index>(unknowns.size());
    std::map<MomentIndex, Eigen::Index> pos;
    for (Eigen::Index i = 0; i < dim; ++i) pos[unknowns[i]] = i;

    Eigen::MatrixXcd matrix = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const MomentRow row = moment_eom(unknowns[i], p);
        for (const auto& [idx, c] : row.coeffs) {
            auto it = pos.find(idx);
            if (it == pos.end())
                throw std::logic_error("hierarchy not closed: " + unknowns[i].label() + " couples to " + idx.label());
            matrix(i, it->second) = -c;
        }
        rhs(i) = -row.constant;
    }
    return MomentSystem(std::move(unknowns), std::move(matrix), std::move(rhs));
}

}  // namespace cavstat
