#pragma once

// Parameter sweeps over the steady-state solver with the closed forms
// emitted alongside. All model-mode rates are in units of Gamma.

#include "cavstat/params.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cavstat {

enum class InputMode { Model, Physical };
enum class Spacing { Linear, Log };
enum class Output { N, G2, G3, DG2, DG3 };
enum class OutputFormat { Csv, Json };

struct Grid {
    double start = 0.01;
    double stop = 3.0;
    int points = 60;
    Spacing spacing = Spacing::Log;

    // Endpoints are hit exactly.
    [[nodiscard]] std::vector<double> values() const;
};

struct SweepConfig {
    InputMode mode = InputMode::Model;
    // Model-mode fixed values (Gamma = 1).
    ModelParams model{5.0, 0.1, 1.0, 0.0, 1.0, 0.0};
    // Physical-mode inputs; converted and normalized to Gamma = 1 before the
    // sweep and series variables are applied.
    PhysicalParams physical;

    std::string sweep_variable = "kappa_over_Gamma";
    Grid grid;
    std::string series_variable;        // empty: a single curve
    std::vector<double> series_values;

    std::vector<Output> outputs{Output::N, Output::G2, Output::G3};
    std::optional<int> order;  // default: smallest K covering the outputs
    unsigned workers = 0;      // 0: hardware concurrency

    // Throws ConfigError.
    void validate() const;
    [[nodiscard]] int effective_order() const;
    [[nodiscard]] bool wants(Output o) const;
    // Fixed parameters in units of Gamma, before any sweep override.
    [[nodiscard]] ModelParams base_params() const;
};

// The variables a sweep or series may range over.
const std::vector<std::string>& sweep_variables();
// Sets one of sweep_variables() on `p`. Throws ConfigError for an unknown name.
void set_variable(ModelParams& p, const std::string& name, double value);
double get_variable(const ModelParams& p, const std::string& name);

// fig1 .. fig5. The kappa axis [0.01, 3] (log, 60 points) is a chosen
// approximation of the published plots. Throws ConfigError for other names.
SweepConfig preset(const std::string& name);
const std::vector<std::string>& preset_names();

// key=value lines, '#' starts a comment. Throws ConfigError on a malformed
// line.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);
// Throws ConfigError for an unknown key or unparsable value.
void apply_setting(SweepConfig& config, const std::string& key, const std::string& value);

struct ResultRow {
    std::string sweep_var;  // sweep variable, with "|series=value" appended
    double value = 0.0;
    std::optional<double> n, n_cf, g2, g2_cf, g3, dg2, dg3, residual;
    std::vector<std::string> flags;
    std::optional<std::string> error;
};

// Solves at the configured K for `p` and fills the requested outputs.
// Solver errors propagate with the parameter point attached.
ResultRow evaluate_point(const SweepConfig& config, const ModelParams& p);
// Single point at the fixed values of `config`.
ResultRow run_point(const SweepConfig& config);
// One row per (series value, grid point), in that order. A failing point
// yields a row with `error` set; the sweep continues.
std::vector<ResultRow> run_sweep(const SweepConfig& config);

// 17 significant digits, '.' separator, independent of locale.
std::string format_number(double v);

extern const char* const kCsvHeader;
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
void write_json(std::ostream& os, const std::vector<ResultRow>& rows);
void write_rows(std::ostream& os, const std::vector<ResultRow>& rows, OutputFormat format);

}  // namespace cavstat
