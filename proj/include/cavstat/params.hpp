#pragma once

#include <string>
#include <vector>

namespace cavstat {

// Rates of the effective dressed-frame model. Any unit works as long as all
// rates share it; the CLI always measures them in units of Gamma.
struct ModelParams {
    double g0 = 0.0;      // dressed atom-cavity coupling, g/2
    double beta = 0.0;    // non-secular nonlinearity, g0^2 / Omega
    double Gamma = 1.0;   // dressed damping, (gamma + gamma_d) / 4
    double Gamma0 = 0.0;  // dressed dephasing, gamma / 4
    double kappa = 1.0;   // cavity field decay
    double n_bar = 0.0;   // incoherent cavity occupation

    // Throws ConfigError when a rate is negative, Gamma <= 0, or a value is
    // not finite.
    void validate() const;

    // Soft checks on the regime where the effective Hamiltonian is valid
    // (beta << g0 and Omega = g0^2/beta >> {Gamma, kappa}). Returns one
    // human-readable line per violated condition; empty means fine.
    [[nodiscard]] std::vector<std::string> regime_warnings() const;

    // Multiplies every rate by `factor`; n_bar is dimensionless and kept.
    [[nodiscard]] ModelParams rescaled(double factor) const;
};

// Lab-frame parameters of the driven emitter in a cavity.
struct PhysicalParams {
    double Omega = 0.0;    // Rabi frequency
    double g = 0.0;        // atom-cavity coupling
    double gamma = 0.0;    // half the spontaneous emission rate
    double gamma_d = 0.0;  // qubit dephasing
    double kappa = 0.0;
    double n_bar = 0.0;
    double delta = 0.0;    // cavity detuning omega_c - omega_L

    // Throws ConfigError if delta != 0 (the effective model is resonant
    // only), Omega <= 0, or the resulting Gamma is not positive.
    [[nodiscard]] ModelParams to_model() const;
};

std::string describe(const ModelParams& p);

}  // namespace cavstat
