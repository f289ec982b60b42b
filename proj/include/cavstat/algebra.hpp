#pragma once

// Normally ordered polynomials in the dressed inversion R_z and the cavity
// mode operators a^dag, a.
//
// Every monomial is stored as R_z^s a^dag^m a^n with s in {0, 1}. R_z is
// Hermitian, squares to the identity, and commutes with a and a^dag, so the
// set of such monomials is closed under products once [a, a^dag] = 1 is used
// to move annihilators to the right.

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <string>

namespace cavstat {

using cplx = std::complex<double>;

struct Monomial {
    int rz = 0;  // power of R_z, 0 or 1
    int m = 0;   // power of a^dag
    int n = 0;   // power of a

    auto operator<=>(const Monomial&) const = default;

    [[nodiscard]] int field_order() const { return m + n; }
    [[nodiscard]] Monomial adjoint() const { return {rz, n, m}; }
};

class OperatorPoly {
public:
    using TermMap = std::map<Monomial, cplx>;

    // Coefficients below this fraction of the largest one are dropped.
    static constexpr double kDropTolerance = 1e-14;

    OperatorPoly() = default;
    OperatorPoly(Monomial mono, cplx coeff = 1.0);

    static OperatorPoly identity(cplx c = 1.0) { return {Monomial{0, 0, 0}, c}; }
    static OperatorPoly rz() { return {Monomial{1, 0, 0}}; }
    static OperatorPoly create() { return {Monomial{0, 1, 0}}; }
    static OperatorPoly annihilate() { return {Monomial{0, 0, 1}}; }
    // R_z^s a^dag^m a^n with unit coefficient.
    static OperatorPoly monomial(int s, int m, int n) { return {Monomial{s, m, n}}; }

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] cplx coeff(const Monomial& mono) const;
    [[nodiscard]] int max_field_order() const;
    [[nodiscard]] double max_abs_coeff() const;

    OperatorPoly& operator+=(const OperatorPoly& other);
    OperatorPoly& operator-=(const OperatorPoly& other);
    OperatorPoly& operator*=(cplx scale);

    friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
    friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }
    friend OperatorPoly operator*(OperatorPoly a, cplx s) { return a *= s; }
    friend OperatorPoly operator*(cplx s, OperatorPoly a) { return a *= s; }
    friend OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b);
    friend bool operator==(const OperatorPoly&, const OperatorPoly&) = default;

    [[nodiscard]] std::string to_string() const;

private:
    void add_term(const Monomial& mono, cplx c);
    void prune();

    TermMap terms_;
};

OperatorPoly multiply(const OperatorPoly& p, const OperatorPoly& q);
OperatorPoly commutator(const OperatorPoly& p, const OperatorPoly& q);
OperatorPoly adjoint(const OperatorPoly& p);

// Normal-ordered expansion of a^k a^dag^j:
//   a^k a^dag^j = sum_r C(k,r) C(j,r) r! a^dag^(j-r) a^(k-r).
// Returned as a map from r to the integer weight.
std::map<int, double> reorder_weights(int k, int j);

}  // namespace cavstat
