#include "cavstat/sweep.hpp"

#include "cavstat/closedform.hpp"
#include "cavstat/errors.hpp"
#include "cavstat/steady.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <thread>

namespace cavstat {

namespace {

int required_order(const std::vector<Output>& outputs) {
    int k = 2;
    for (Output o : outputs) {
        if (o == Output::G2 || o == Output::DG2) k = std::max(k, 4);
        if (o == Output::G3 || o == Output::DG3) k = std::max(k, 6);
    }
    return k;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError("invalid number for " + key + ": '" + text + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError("invalid integer for " + key + ": '" + text + "'");
    return v;
}

Output parse_output(const std::string& s) {
    if (s == "n") return Output::N;
    if (s == "g2") return Output::G2;
    if (s == "g3") return Output::G3;
    if (s == "dg2") return Output::DG2;
    if (s == "dg3") return Output::DG3;
    throw ConfigError("unknown output '" + s + "' (expected n, g2, g3, dg2, dg3)");
}

// Shortest round-trip text, used only inside series labels.
std::string short_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <class E>
[[noreturn]] void rethrow_with(const E& e, const std::string& where) {
    throw E(std::string(e.what()) + " [at " + where + "]");
}

// Re-raises a library error with the parameter point in the message while
// keeping its type.
[[noreturn]] void rethrow_in_context(const std::string& where) {
    try {
        throw;
    } catch (const SingularSystem& e) {
        rethrow_with(e, where);
    } catch (const DegenerateIntensity& e) {
        rethrow_with(e, where);
    } catch (const DivergentLimit& e) {
        rethrow_with(e, where);
    } catch (const ConfigError& e) {
        rethrow_with(e, where);
    } catch (const Error& e) {
        rethrow_with(e, where);
    }
}

std::string csv_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '"', '\'');
    return s;
}

}  // namespace

std::vector<double> Grid::values() const {
    std::vector<double> out(static_cast<std::size_t>(std::max(points, 0)));
    if (points == 1) out[0] = start;
    for (int i = 0; i < points && points > 1; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        out[static_cast<std::size_t>(i)] =
            spacing == Spacing::Log ? start * std::pow(stop / start, t) : start + (stop - start) * t;
    }
    if (points > 1) {
        out.front() = start;
        out.back() = stop;
    }
    return out;
}

const std::vector<std::string>& sweep_variables() {
    static const std::vector<std::string> names{"kappa_over_Gamma", "beta_over_Gamma", "n_bar", "g0_over_Gamma"};
    return names;
}

void set_variable(ModelParams& p, const std::string& name, double value) {
    if (name == "kappa_over_Gamma")
        p.kappa = value * p.Gamma;
    else if (name == "beta_over_Gamma")
        p.beta = value * p.Gamma;
    else if (name == "n_bar")
        p.n_bar = value;
    else if (name == "g0_over_Gamma")
        p.g0 = value * p.Gamma;
    else
        throw ConfigError("unknown sweep variable '" + name + "'");
}

double get_variable(const ModelParams& p, const std::string& name) {
    if (name == "kappa_over_Gamma") return p.kappa / p.Gamma;
    if (name == "beta_over_Gamma") return p.beta / p.Gamma;
    if (name == "n_bar") return p.n_bar;
    if (name == "g0_over_Gamma") return p.g0 / p.Gamma;
    throw ConfigError("unknown sweep variable '" + name + "'");
}

int SweepConfig::effective_order() const { return order.value_or(required_order(outputs)); }

bool SweepConfig::wants(Output o) const { return std::find(outputs.begin(), outputs.end(), o) != outputs.end(); }

ModelParams SweepConfig::base_params() const {
    if (mode == InputMode::Model) {
        ModelParams p = model;
        p.Gamma = 1.0;
        return p;
    }
    const ModelParams p = physical.to_model();
    return p.rescaled(1.0 / p.Gamma);
}

void SweepConfig::validate() const {
    const auto& vars = sweep_variables();
    if (std::find(vars.begin(), vars.end(), sweep_variable) == vars.end())
        throw ConfigError("unknown sweep variable '" + sweep_variable + "'");
    if (!(grid.start < grid.stop)) throw ConfigError("grid start must be below stop");
    if (grid.points < 2) throw ConfigError("grid needs at least 2 points");
    if (grid.spacing == Spacing::Log && !(grid.start > 0.0)) throw ConfigError("log spacing needs start > 0");
    if (!series_variable.empty()) {
        if (std::find(vars.begin(), vars.end(), series_variable) == vars.end())
            throw ConfigError("unknown series variable '" + series_variable + "'");
        if (series_variable == sweep_variable) throw ConfigError("series variable equals the sweep variable");
        if (series_values.empty()) throw ConfigError("series '" + series_variable + "' has no values");
    } else if (!series_values.empty()) {
        throw ConfigError("series_values given without a series variable");
    }
    if (outputs.empty()) throw ConfigError("no outputs requested");
    if (order) {
        if (*order < 2 || *order % 2 != 0) throw ConfigError("order K must be even and >= 2");
        if (*order < required_order(outputs))
            throw ConfigError("order K = " + std::to_string(*order) + " is too low for the requested outputs (need " +
                              std::to_string(required_order(outputs)) + ")");
    }
    base_params().validate();
}

SweepConfig preset(const std::string& name) {
    SweepConfig c;
    c.model = ModelParams{5.0, 0.0, 1.0, 0.0, 1.0, 0.0};
    c.sweep_variable = "kappa_over_Gamma";
    c.grid = Grid{0.01, 3.0, 60, Spacing::Log};
    if (name == "fig1") {
        c.series_variable = "beta_over_Gamma";
        c.series_values = {0.0, 0.1};
        c.outputs = {Output::N};
    } else if (name == "fig2") {
        c.series_variable = "beta_over_Gamma";
        c.series_values = {0.0, 0.05, 0.1};
        c.outputs = {Output::G2};
    } else if (name == "fig3") {
        c.model.beta = 0.05;
        c.series_variable = "n_bar";
        c.series_values = {1.0, 5.0, 10.0};
        c.outputs = {Output::DG2};
    } else if (name == "fig4") {
        c.series_variable = "beta_over_Gamma";
        c.series_values = {0.1, 0.05, 0.0};
        c.outputs = {Output::G3};
    } else if (name == "fig5") {
        c.model.beta = 0.05;
        c.series_variable = "n_bar";
        c.series_values = {1.0, 5.0, 10.0};
        c.outputs = {Output::DG3};
    } else {
        throw ConfigError("unknown preset '" + name + "' (expected fig1..fig5)");
    }
    return c;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4", "fig5"};
    return names;
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        out.emplace_back(std::move(key), trim(line.substr(eq + 1)));
    }
    return out;
}

void apply_setting(SweepConfig& c, const std::string& key, const std::string& value) {
    if (key == "mode") {
        if (value == "model")
            c.mode = InputMode::Model;
        else if (value == "physical")
            c.mode = InputMode::Physical;
        else
            throw ConfigError("mode must be model or physical, got '" + value + "'");
    } else if (key == "sweep") {
        c.sweep_variable = value;
    } else if (key == "start") {
        c.grid.start = parse_double(key, value);
    } else if (key == "stop") {
        c.grid.stop = parse_double(key, value);
    } else if (key == "points") {
        c.grid.points = parse_int(key, value);
    } else if (key == "spacing") {
        if (value == "log")
            c.grid.spacing = Spacing::Log;
        else if (value == "linear")
            c.grid.spacing = Spacing::Linear;
        else
            throw ConfigError("spacing must be linear or log, got '" + value + "'");
    } else if (key == "series") {
        c.series_variable = value;
        if (value.empty()) c.series_values.clear();
    } else if (key == "series_values") {
        c.series_values.clear();
        for (const auto& item : split_list(value)) c.series_values.push_back(parse_double(key, item));
    } else if (key == "outputs") {
        c.outputs.clear();
        for (const auto& item : split_list(value)) c.outputs.push_back(parse_output(item));
    } else if (key == "order") {
        c.order = parse_int(key, value);
    } else if (key == "workers") {
        const int w = parse_int(key, value);
        if (w < 0) throw ConfigError("workers must be >= 0");
        c.workers = static_cast<unsigned>(w);
    } else if (key == "g0_over_Gamma") {
        c.model.g0 = parse_double(key, value);
    } else if (key == "beta_over_Gamma") {
        c.model.beta = parse_double(key, value);
    } else if (key == "kappa_over_Gamma") {
        c.model.kappa = parse_double(key, value);
    } else if (key == "Gamma0_over_Gamma") {
        c.model.Gamma0 = parse_double(key, value);
    } else if (key == "n_bar") {
        c.model.n_bar = parse_double(key, value);
    } else if (key == "physical.Omega") {
        c.physical.Omega = parse_double(key, value);
    } else if (key == "physical.g") {
        c.physical.g = parse_double(key, value);
    } else if (key == "physical.gamma") {
        c.physical.gamma = parse_double(key, value);
    } else if (key == "physical.gamma_d") {
        c.physical.gamma_d = parse_double(key, value);
    } else if (key == "physical.kappa") {
        c.physical.kappa = parse_double(key, value);
    } else if (key == "physical.n_bar") {
        c.physical.n_bar = parse_double(key, value);
    } else if (key == "physical.delta") {
        c.physical.delta = parse_double(key, value);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

ResultRow evaluate_point(const SweepConfig& config, const ModelParams& p) {
    ResultRow row;
    try {
        const int k = config.effective_order();
        const SteadySolution sol = solve_steady(k, p);
        const double n = sol.moments.at({0, 1, 1}).real();
        row.n = n;
        row.n_cf = mean_photon_cf(p);
        row.residual = sol.diagnostics.residual_norm;
        if (sol.diagnostics.ill_conditioned) row.flags.emplace_back("ill_conditioned");
        if (!p.regime_warnings().empty()) row.flags.emplace_back("regime");

        const bool need_g2 = config.wants(Output::G2) || config.wants(Output::DG2);
        const bool need_g3 = config.wants(Output::G3) || config.wants(Output::DG3);
        if (!need_g2 && !need_g3) return row;

        const SteadyStateResult obs = observables(sol);
        if (obs.imaginary_residue > 1e-8) row.flags.emplace_back("imaginary_residue");
        if (config.wants(Output::G2)) {
            row.g2 = obs.g2;
            row.g2_cf = g2_cf(p);
        }
        if (config.wants(Output::G3)) row.g3 = obs.g3;

        if (config.wants(Output::DG2) || config.wants(Output::DG3)) {
            ModelParams base = p;
            base.n_bar = 0.0;
            const SteadyStateResult ref = observables(solve_steady(k, base));
            if (config.wants(Output::DG2)) row.dg2 = *obs.g2 - *ref.g2;
            if (config.wants(Output::DG3)) row.dg3 = *obs.g3 - *ref.g3;
        }
    } catch (const Error&) {
        rethrow_in_context(describe(p));
    }
    return row;
}

ResultRow run_point(const SweepConfig& config) {
    config.validate();
    const ModelParams p = config.base_params();
    ResultRow row = evaluate_point(config, p);
    row.sweep_var = config.sweep_variable;
    row.value = get_variable(p, config.sweep_variable);
    return row;
}

std::vector<ResultRow> run_sweep(const SweepConfig& config) {
    config.validate();
    struct Task {
        std::string label;
        double value;
        ModelParams params;
    };
    std::vector<Task> tasks;
    const ModelParams base = config.base_params();
    const std::vector<double> grid = config.grid.values();
    auto add_curve = [&](const std::string& label, const ModelParams& curve) {
        for (double v : grid) {
            ModelParams p = curve;
            set_variable(p, config.sweep_variable, v);
            tasks.push_back({label, v, p});
        }
    };
    if (config.series_variable.empty()) {
        add_curve(config.sweep_variable, base);
    } else {
        for (double s : config.series_values) {
            ModelParams curve = base;
            set_variable(curve, config.series_variable, s);
            add_curve(config.sweep_variable + "|" + config.series_variable + "=" + short_number(s), curve);
        }
    }

    std::vector<ResultRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            ResultRow row;
            try {
                row = evaluate_point(config, tasks[i].params);
            } catch (const Error& e) {
                row = ResultRow{};
                row.error = e.what();
            }
            row.sweep_var = tasks[i].label;
            row.value = tasks[i].value;
            rows[i] = std::move(row);
        }
    };

    unsigned workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, tasks.size()));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return rows;
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

const char* const kCsvHeader = "sweep_var,value,n,n_cf,g2,g2_cf,g3,dg2,dg3,residual,flags";

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << kCsvHeader << '\n';
    for (const auto& r : rows) {
        std::string flags;
        for (const auto& f : r.flags) flags += (flags.empty() ? "" : ";") + f;
        if (r.error) flags += (flags.empty() ? "" : ";") + ("error=" + sanitize(*r.error));
        os << sanitize(r.sweep_var) << ',' << format_number(r.value) << ',' << csv_field(r.n) << ','
           << csv_field(r.n_cf) << ',' << csv_field(r.g2) << ',' << csv_field(r.g2_cf) << ',' << csv_field(r.g3)
           << ',' << csv_field(r.dg2) << ',' << csv_field(r.dg3) << ',' << csv_field(r.residual) << ',' << flags
           << '\n';
    }
}

void write_json(std::ostream& os, const std::vector<ResultRow>& rows) {
    using nlohmann::ordered_json;
    auto field = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    ordered_json out = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["sweep_var"] = r.sweep_var;
        j["value"] = r.value;
        j["n"] = field(r.n);
        j["n_cf"] = field(r.n_cf);
        j["g2"] = field(r.g2);
        j["g2_cf"] = field(r.g2_cf);
        j["g3"] = field(r.g3);
        j["dg2"] = field(r.dg2);
        j["dg3"] = field(r.dg3);
        j["residual"] = field(r.residual);
        j["flags"] = r.flags;
        j["error"] = r.error ? ordered_json(*r.error) : ordered_json(nullptr);
        out.push_back(std::move(j));
    }
    os << out.dump(2) << '\n';
}

void write_rows(std::ostream& os, const std::vector<ResultRow>& rows, OutputFormat format) {
    if (format == OutputFormat::Json)
        write_json(os, rows);
    else
        write_csv(os, rows);
}

}  // namespace cavstat
