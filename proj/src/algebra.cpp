#include "cavstat/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cavstat {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

std::map<int, double> reorder_weights(int k, int j) {
    std::map<int, double> out;
    for (int r = 0; r <= std::min(k, j); ++r) out[r] = binomial(k, r) * binomial(j, r) * factorial(r);
    return out;
}

OperatorPoly::OperatorPoly(Monomial mono, cplx coeff) {
    if (coeff != cplx{0.0, 0.0}) terms_.emplace(mono, coeff);
}

cplx OperatorPoly::coeff(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? cplx{} : it->second;
}

int OperatorPoly::max_field_order() const {
    int k = -1;
    for (const auto& [mono, c] : terms_) k = std::max(k, mono.field_order());
    return k;
}

double OperatorPoly::max_abs_coeff() const {
    double mx = 0.0;
    for (const auto& [mono, c] : terms_) mx = std::max(mx, std::abs(c));
    return mx;
}

void OperatorPoly::add_term(const Monomial& mono, cplx c) {
    if (c == cplx{0.0, 0.0}) return;
    terms_[mono] += c;
}

void OperatorPoly::prune() {
    const double cut = kDropTolerance * max_abs_coeff();
    std::erase_if(terms_, [cut](const auto& kv) { return std::abs(kv.second) <= cut; });
}

OperatorPoly& OperatorPoly::operator+=(const OperatorPoly& other) {
    for (const auto& [mono, c] : other.terms_) add_term(mono, c);
    prune();
    return *this;
}

OperatorPoly& OperatorPoly::operator-=(const OperatorPoly& other) {
    for (const auto& [mono, c] : other.terms_) add_term(mono, -c);
    prune();
    return *this;
}

OperatorPoly& OperatorPoly::operator*=(cplx scale) {
    for (auto& [mono, c] : terms_) c *= scale;
    prune();
    return *this;
}

OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b) {
    OperatorPoly out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            // R^sa a+^ma a^na * R^sb a+^mb a^nb: move a^na past a+^mb.
            const int rz = (ma.rz + mb.rz) % 2;
            for (const auto& [r, w] : reorder_weights(ma.n, mb.m)) {
                out.add_term(Monomial{rz, ma.m + mb.m - r, ma.n + mb.n - r}, ca * cb * w);
            }
        }
    }
    out.prune();
    return out;
}

std::string OperatorPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        if (mono.rz) os << "*Rz";
        if (mono.m) os << "*ad^" << mono.m;
        if (mono.n) os << "*a^" << mono.n;
    }
    return os.str();
}

OperatorPoly multiply(const OperatorPoly& p, const OperatorPoly& q) { return p * q; }

OperatorPoly commutator(const OperatorPoly& p, const OperatorPoly& q) { return p * q - q * p; }

OperatorPoly adjoint(const OperatorPoly& p) {
    OperatorPoly out;
    for (const auto& [mono, c] : p.terms()) out += OperatorPoly(mono.adjoint(), std::conj(c));
    return out;
}

}  // namespace cavstat
