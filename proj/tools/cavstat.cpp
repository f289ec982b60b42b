// cavstat: steady-state photon statistics of a driven-qubit microcavity.
//
//   cavstat point    [--preset figN] [--config file] [--set k=v]... [--order K]
//   cavstat sweep    [--preset figN] [--config file] [--set k=v]... [--workers N]
//   cavstat validate [--level fast|full]
//
// Exit status: 0 success, 1 validation failure, 2 configuration or input error.

#include "cavstat/errors.hpp"
#include "cavstat/sweep.hpp"
#include "cavstat/validation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
    std::string config_path;
    std::string preset;
    std::vector<std::string> sets;
    std::string out = "stdout";
    std::string format = "csv";
    int order = 0;
    int workers = -1;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config_path, "key=value config file ('#' comments)");
    cmd->add_option("--preset", o.preset, "built-in figure config")->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5"}));
    cmd->add_option("--set", o.sets, "override one key, e.g. --set kappa_over_Gamma=0.5 (repeatable)");
    cmd->add_option("--out", o.out, "output path or 'stdout'");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--order", o.order, "moment order K (even, >= 2)");
    cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cavstat::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

cavstat::SweepConfig build_config(const CommonOptions& o) {
    cavstat::SweepConfig c = o.preset.empty() ? cavstat::SweepConfig{} : cavstat::preset(o.preset);
    if (!o.config_path.empty())
        for (const auto& [k, v] : cavstat::parse_config_text(read_file(o.config_path))) cavstat::apply_setting(c, k, v);
    for (const auto& s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw cavstat::ConfigError("--set expects key=value, got '" + s + "'");
        cavstat::apply_setting(c, s.substr(0, eq), s.substr(eq + 1));
    }
    if (o.order) c.order = o.order;
    if (o.workers >= 0) c.workers = static_cast<unsigned>(o.workers);
    c.validate();
    return c;
}

void emit(const CommonOptions& o, const std::vector<cavstat::ResultRow>& rows) {
    const auto format = o.format == "json" ? cavstat::OutputFormat::Json : cavstat::OutputFormat::Csv;
    if (o.out == "stdout" || o.out == "-") {
        cavstat::write_rows(std::cout, rows, format);
        return;
    }
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw cavstat::ConfigError("cannot write '" + o.out + "'");
    cavstat::write_rows(out, rows, format);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state photon statistics (n, g2, g3) of a strongly driven qubit in a microcavity"};
    app.require_subcommand(1);
    app.footer(
        "Rates are in units of Gamma. Presets fig1..fig5 sweep kappa/Gamma over [0.01, 3] (60 log-spaced\n"
        "points) with g0/Gamma = 5; the published axis ranges are not recoverable, so these ranges are an\n"
        "approximation.\n"
        "Config keys: mode, sweep, start, stop, points, spacing, series, series_values, outputs, order,\n"
        "workers, g0_over_Gamma, beta_over_Gamma, kappa_over_Gamma, Gamma0_over_Gamma, n_bar,\n"
        "physical.{Omega,g,gamma,gamma_d,kappa,n_bar,delta}.\n"
        "Exit status: 0 success, 1 validation failure, 2 configuration or input error.");

    CommonOptions point_opts, sweep_opts;
    auto* point = app.add_subcommand("point", "solve a single parameter point");
    add_common(point, point_opts);
    auto* sweep = app.add_subcommand("sweep", "sweep one parameter, optionally over a series of curves");
    add_common(sweep, sweep_opts);

    std::string level = "fast";
    int validate_workers = 0;
    auto* validate = app.add_subcommand("validate", "run the acceptance criteria");
    validate->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    validate->add_option("--workers", validate_workers, "worker threads for sweep-based checks (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*point) {
            const cavstat::SweepConfig c = build_config(point_opts);
            for (const auto& w : c.base_params().regime_warnings()) std::cerr << "warning: " << w << '\n';
            emit(point_opts, {cavstat::run_point(c)});
        } else if (*sweep) {
            emit(sweep_opts, cavstat::run_sweep(build_config(sweep_opts)));
        } else if (*validate) {
            cavstat::ValidationOptions opts;
            opts.level = level == "full" ? cavstat::ValidationLevel::Full : cavstat::ValidationLevel::Fast;
            opts.workers = static_cast<unsigned>(std::max(validate_workers, 0));
            bool ok = true;
            for (int id : cavstat::criteria_for(opts.level)) {
                const auto r = cavstat::run_criterion(id, opts);
                std::cout << cavstat::format_result(r) << std::endl;
                ok = ok && r.passed;
            }
            return ok ? 0 : kExitValidation;
        }
    } catch (const cavstat::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
