#include "cavstat/params.hpp"

#include "cavstat/errors.hpp"

#include <cmath>
#include <sstream>

namespace cavstat {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

// "Much greater than" for regime checks.
constexpr double kDominance = 10.0;

}  // namespace

void ModelParams::validate() const {
    const double all[] = {g0, beta, Gamma, Gamma0, kappa, n_bar};
    for (double v : all) require(std::isfinite(v), "non-finite model parameter in " + describe(*this));
    require(g0 >= 0.0, "g0 must be >= 0");
    require(beta >= 0.0, "beta must be >= 0");
    require(Gamma > 0.0, "Gamma must be > 0");
    require(Gamma0 >= 0.0, "Gamma0 must be >= 0");
    require(kappa >= 0.0, "kappa must be >= 0");
    require(n_bar >= 0.0, "n_bar must be >= 0");
}

std::vector<std::string> ModelParams::regime_warnings() const {
    std::vector<std::string> out;
    if (beta > 0.2 * g0) {
        std::ostringstream os;
        os << "beta = " << beta << " exceeds 0.2*g0 = " << 0.2 * g0 << " (effective model assumes beta << g0)";
        out.push_back(os.str());
    }
    if (beta > 0.0) {
        const double omega = g0 * g0 / beta;
        if (omega < kDominance * Gamma || omega < kDominance * kappa) {
            std::ostringstream os;
            os << "implied Omega = g0^2/beta = " << omega << " is not >> Gamma = " << Gamma
               << " and kappa = " << kappa;
            out.push_back(os.str());
        }
    }
    return out;
}

ModelParams ModelParams::rescaled(double factor) const {
    ModelParams q = *this;
    q.g0 *= factor;
    q.beta *= factor;
    q.Gamma *= factor;
    q.Gamma0 *= factor;
    q.kappa *= factor;
    return q;
}

ModelParams PhysicalParams::to_model() const {
    require(delta == 0.0, "delta = " + std::to_string(delta) +
                              ": only the resonant case (delta = 0) is supported");
    require(std::isfinite(Omega) && Omega > 0.0, "Omega must be > 0");
    ModelParams p;
    p.g0 = g / 2.0;
    p.beta = p.g0 * p.g0 / Omega;
    p.Gamma = (gamma + gamma_d) / 4.0;
    p.Gamma0 = gamma / 4.0;
    p.kappa = kappa;
    p.n_bar = n_bar;
    p.validate();
    return p;
}

std::string describe(const ModelParams& p) {
    std::ostringstream os;
    os << "g0=" << p.g0 << " beta=" << p.beta << " Gamma=" << p.Gamma << " Gamma0=" << p.Gamma0
       << " kappa=" << p.kappa << " n_bar=" << p.n_bar;
    return os.str();
}

}  // namespace cavstat
