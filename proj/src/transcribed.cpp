#include "cavstat/transcribed.hpp"

#include <cmath>
#include <tuple>

namespace cavstat {

namespace {

const cplx i{0.0, 1.0};

auto rates(const ModelParams& p) { return std::tuple(p.kappa, p.Gamma, p.g0, p.beta, p.n_bar); }

}  // namespace

void LineSum::add(cplx c, int s, int m, int n) {
    const cplx v = partner_ ? std::conj(x_.at({s, n, m})) : x_.at({s, m, n});
    value_ += c * v;
    scale_ += std::abs(c * v);
}

void LineSum::constant(cplx c) {
    value_ += c;
    scale_ += std::abs(c);
}

double LineSum::relative() const { return scale_ > 0.0 ? std::abs(value_) / scale_ : std::abs(value_); }

const std::vector<TranscribedLine>& transcribed_order2() {
    static const std::vector<TranscribedLine> lines{
        {"<ad a>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(2 * k, 0, 1, 1);
             e.add(i * g, 1, 1, 0);
             e.add(-i * g, 1, 0, 1);
             e.add(-i * b, 1, 2, 0);
             e.add(i * b, 1, 0, 2);
             e.constant(-2 * k * nb);
         }},
        {"<Rz ad>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(k + 4 * G, 1, 1, 0);
             e.add(-i * b, 0, 1, 0);
             e.add(i * b, 0, 0, 1);
             e.constant(-i * g);
         }},
        {"<Rz ad^2>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(2 * k + 4 * G, 1, 2, 0);
             e.add(-2.0 * i * g, 0, 1, 0);
             e.add(-2.0 * i * b, 0, 2, 0);
             e.constant(i * b);
             e.add(2.0 * i * b, 0, 1, 1);
         }},
        {"<ad>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(k, 0, 1, 0);
             e.add(-i * b, 1, 1, 0);
             e.add(i * b, 1, 0, 1);
         }},
        {"<ad^2>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(2 * k, 0, 2, 0);
             e.add(-2.0 * i * g, 1, 1, 0);
             e.add(-2.0 * i * b, 1, 2, 0);
             e.add(2.0 * i * b, 1, 1, 1);
         }},
        {"<Rz ad a>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(2 * k + 4 * G, 1, 1, 1);
             e.add(i * g, 0, 1, 0);
             e.add(-i * g, 0, 0, 1);
             e.add(-i * b, 0, 2, 0);
             e.add(i * b, 0, 0, 2);
         }},
    };
    return lines;
}

const std::vector<TranscribedLine>& transcribed_order4() {
    static const std::vector<TranscribedLine> lines{
        {"<ad^2 a^2>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(4 * k, 0, 2, 2);
             e.add(2.0 * i * g, 1, 2, 1);
             e.add(-2.0 * i * g, 1, 1, 2);
             e.add(-i * b, 1, 2, 0);
             e.add(-2.0 * i * b, 1, 3, 1);
             e.add(i * b, 1, 0, 2);
             e.add(2.0 * i * b, 1, 1, 3);
             e.add(-8 * k * nb, 0, 1, 1);
         }},
        {"<Rz ad^2 a>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(3 * k + 4 * G, 1, 2, 1);
             e.add(i * g, 0, 2, 0);
             e.add(-2.0 * i * g, 0, 1, 1);
             e.add(-i * b, 0, 2, 1);
             e.add(-i * b, 0, 3, 0);
             e.add(i * b, 0, 0, 1);
             e.add(2.0 * i * b, 0, 1, 2);
             e.add(-4 * k * nb, 1, 1, 0);
         }},
        {"<Rz ad^3 a>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(4 * k + 4 * G, 1, 3, 1);
             e.add(i * g, 0, 3, 0);
             e.add(-3.0 * i * g, 0, 2, 1);
             e.add(-2.0 * i * b, 0, 3, 1);
             e.add(-i * b, 0, 4, 0);
             e.add(3.0 * i * b, 0, 2, 2);
             e.add(3.0 * i * b, 0, 1, 1);
             e.add(-6 * k * nb, 1, 2, 0);
         }},
        {"<ad a^2>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(3 * k, 0, 1, 2);
             e.add(2.0 * i * g, 1, 1, 1);
             e.add(-i * g, 1, 0, 2);
             e.add(i * b, 1, 1, 2);
             e.add(-i * b, 1, 1, 0);
             e.add(-2.0 * i * b, 1, 2, 1);
             e.add(i * b, 1, 0, 3);
             e.add(-4 * k * nb, 0, 0, 1);
         }},
        {"<ad^3>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(3 * k, 0, 3, 0);
             e.add(-3.0 * i * g, 1, 2, 0);
             e.add(3.0 * i * b, 1, 2, 1);
             e.add(3.0 * i * b, 1, 1, 0);
             e.add(-3.0 * i * b, 1, 3, 0);
         }},
        {"<ad^4>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(4 * k, 0, 4, 0);
             e.add(-4.0 * i * g, 1, 3, 0);
             e.add(4.0 * i * b, 1, 3, 1);
             e.add(6.0 * i * b, 1, 2, 0);
             e.add(-4.0 * i * b, 1, 4, 0);
         }},
        {"<ad^3 a>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(4 * k, 0, 3, 1);
             e.add(i * g, 1, 3, 0);
             e.add(-3.0 * i * g, 1, 2, 1);
             e.add(-2.0 * i * b, 1, 3, 1);
             e.add(-i * b, 1, 4, 0);
             e.add(3.0 * i * b, 1, 2, 2);
             e.add(3.0 * i * b, 1, 1, 1);
             e.add(-6 * k * nb, 0, 2, 0);
         }},
        {"<Rz ad^3>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(3 * k + 4 * G, 1, 3, 0);
             e.add(-3.0 * i * g, 0, 2, 0);
             e.add(3.0 * i * b, 0, 2, 1);
             e.add(3.0 * i * b, 0, 1, 0);
             e.add(-3.0 * i * b, 0, 3, 0);
         }},
        {"<Rz ad^4>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(4 * k + 4 * G, 1, 4, 0);
             e.add(-4.0 * i * g, 0, 3, 0);
             e.add(4.0 * i * b, 0, 3, 1);
             e.add(6.0 * i * b, 0, 2, 0);
             e.add(-4.0 * i * b, 0, 4, 0);
         }},
        {"<Rz ad^2 a^2>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(4 * k + 4 * G, 1, 2, 2);
             e.add(2.0 * i * g, 0, 2, 1);
             e.add(-2.0 * i * g, 0, 1, 2);
             e.add(-i * b, 0, 2, 0);
             e.add(-2.0 * i * b, 0, 3, 1);
             e.add(i * b, 0, 0, 2);
             e.add(2.0 * i * b, 0, 1, 3);
             e.add(-8 * k * nb, 1, 1, 1);
         }},
    };
    return lines;
}

const std::vector<TranscribedLine>& transcribed_order6() {
    static const std::vector<TranscribedLine> lines{
        {"<ad^3 a^3>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(6 * k, 0, 3, 3);
             e.add(3.0 * i * g, 1, 3, 2);
             e.add(-3.0 * i * g, 1, 2, 3);
             e.add(-3.0 * i * b, 1, 4, 2);
             e.add(-3.0 * i * b, 1, 3, 1);
             e.add(3.0 * i * b, 1, 2, 4);
             e.add(3.0 * i * b, 1, 1, 3);
             e.add(-18 * k * nb, 0, 2, 2);
         }},
        {"<Rz ad^3 a^3>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(6 * k + 4 * G, 1, 3, 3);
             e.add(3.0 * i * g, 0, 3, 2);
             e.add(-3.0 * i * g, 0, 2, 3);
             e.add(-3.0 * i * b, 0, 4, 2);
             e.add(-3.0 * i * b, 0, 3, 1);
             e.add(3.0 * i * b, 0, 2, 4);
             e.add(3.0 * i * b, 0, 1, 3);
             e.add(-18 * k * nb, 1, 2, 2);
         }},
        {"<Rz ad^3 a^2>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(5 * k + 4 * G, 1, 3, 2);
             e.add(2.0 * i * g, 0, 3, 1);
             e.add(-3.0 * i * g, 0, 2, 2);
             e.add(-i * b, 0, 3, 2);
             e.add(-i * b, 0, 3, 0);
             e.add(-2.0 * i * b, 0, 4, 1);
             e.add(3.0 * i * b, 0, 2, 3);
             e.add(3.0 * i * b, 0, 1, 2);
             e.add(-12 * k * nb, 1, 2, 1);
         }},
        {"<ad^3 a^2>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(5 * k, 0, 3, 2);
             e.add(2.0 * i * g, 1, 3, 1);
             e.add(-3.0 * i * g, 1, 2, 2);
             e.add(-i * b, 1, 3, 2);
             e.add(-i * b, 1, 3, 0);
             e.add(-2.0 * i * b, 1, 4, 1);
             e.add(3.0 * i * b, 1, 2, 3);
             e.add(3.0 * i * b, 1, 1, 2);
             e.add(-12 * k * nb, 0, 2, 1);
         }},
        {"<Rz ad^4 a^2>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(6 * k + 4 * G, 1, 4, 2);
             e.add(2.0 * i * g, 0, 4, 1);
             e.add(-4.0 * i * g, 0, 3, 2);
             e.add(-2.0 * i * b, 0, 4, 2);
             e.add(-i * b, 0, 4, 0);
             e.add(-2.0 * i * b, 0, 5, 1);
             e.add(4.0 * i * b, 0, 3, 3);
             e.add(6.0 * i * b, 0, 2, 2);
             e.add(-16 * k * nb, 1, 3, 1);
         }},
        {"<ad^4 a^2>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(6 * k, 0, 4, 2);
             e.add(2.0 * i * g, 1, 4, 1);
             e.add(-4.0 * i * g, 1, 3, 2);
             e.add(-2.0 * i * b, 1, 4, 2);
             e.add(-i * b, 1, 4, 0);
             e.add(-2.0 * i * b, 1, 5, 1);
             e.add(4.0 * i * b, 1, 3, 3);
             e.add(6.0 * i * b, 1, 2, 2);
             e.add(-16 * k * nb, 0, 3, 1);
         }},
        {"<Rz ad^4 a>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(5 * k + 4 * G, 1, 4, 1);
             e.add(i * g, 0, 4, 0);
             e.add(-4.0 * i * g, 0, 3, 1);
             e.add(-3.0 * i * b, 0, 4, 1);
             e.add(-i * b, 0, 5, 0);
             e.add(4.0 * i * b, 0, 3, 2);
             e.add(6.0 * i * b, 0, 2, 1);
             e.add(-8 * k * nb, 1, 3, 0);
         }},
        {"<ad^4 a>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(5 * k, 0, 4, 1);
             e.add(i * g, 1, 4, 0);
             e.add(-4.0 * i * g, 1, 3, 1);
             e.add(-3.0 * i * b, 1, 4, 1);
             e.add(-i * b, 1, 5, 0);
             e.add(4.0 * i * b, 1, 3, 2);
             e.add(6.0 * i * b, 1, 2, 1);
             e.add(-8 * k * nb, 0, 3, 0);
         }},
        {"<Rz ad^5 a>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(6 * k + 4 * G, 1, 5, 1);
             e.add(i * g, 0, 5, 0);
             e.add(-5.0 * i * g, 0, 4, 1);
             e.add(-4.0 * i * b, 0, 5, 1);
             e.add(-i * b, 0, 6, 0);
             e.add(5.0 * i * b, 0, 4, 2);
             e.add(10.0 * i * b, 0, 3, 1);
             e.add(-10 * k * nb, 1, 4, 0);
         }},
        {"<ad^5 a>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(6 * k, 0, 5, 1);
             e.add(i * g, 1, 5, 0);
             e.add(-5.0 * i * g, 1, 4, 1);
             e.add(-4.0 * i * b, 1, 5, 1);
             e.add(-i * b, 1, 6, 0);
             e.add(5.0 * i * b, 1, 4, 2);
             e.add(10.0 * i * b, 1, 3, 1);
             e.add(-10 * k * nb, 0, 4, 0);
         }},
        {"<Rz ad^5>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(5 * k + 4 * G, 1, 5, 0);
             e.add(-5.0 * i * g, 0, 4, 0);
             e.add(-5.0 * i * b, 0, 5, 0);
             e.add(5.0 * i * b, 0, 4, 1);
             e.add(10.0 * i * b, 0, 3, 0);
         }},
        {"<ad^5>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(5 * k, 0, 5, 0);
             e.add(-5.0 * i * g, 1, 4, 0);
             e.add(-5.0 * i * b, 1, 5, 0);
             e.add(5.0 * i * b, 1, 4, 1);
             e.add(10.0 * i * b, 1, 3, 0);
         }},
        {"<Rz ad^6>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(6 * k + 4 * G, 1, 6, 0);
             e.add(-6.0 * i * g, 0, 5, 0);
             e.add(-6.0 * i * b, 0, 6, 0);
             e.add(6.0 * i * b, 0, 5, 1);
             e.add(15.0 * i * b, 0, 4, 0);
         }},
        {"<ad^6>", [](const ModelParams& p, LineSum& e) {
             auto [k, G, g, b, nb] = rates(p);
             e.add(6 * k, 0, 6, 0);
             e.add(-6.0 * i * g, 1, 5, 0);
             e.add(-6.0 * i * b, 1, 6, 0);
             e.add(6.0 * i * b, 1, 5, 1);
             e.add(15.0 * i * b, 1, 4, 0);
         }},
    };
    return lines;
}

std::vector<LineCheck> check_lines(const std::vector<TranscribedLine>& lines, const ModelParams& p,
                                   const MomentVector& x) {
    std::vector<LineCheck> out;
    for (const auto& line : lines) {
        for (bool partner : {false, true}) {
            LineSum sum(x, partner);
            line.terms(p, sum);
            out.push_back({line.label, partner, sum.relative()});
        }
    }
    return out;
}

}  // namespace cavstat
