#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "drude/errors.hpp"
#include "drude/experiments.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::optional<std::string> scheme;
    std::optional<int> dim;
    std::optional<std::string> pair;
    std::optional<double> nu;
    std::optional<double> dt;
    std::optional<int> levels;
    std::optional<double> final_time;
    std::optional<std::string> out;
    std::optional<std::string> format;
    bool allow_unstable = false;
};

void add_common_options(CLI::App* sub, CliOverrides& o) {
    sub->add_option("--config", o.config_path, "JSON config file (flags override its values)");
    sub->add_option("--scheme", o.scheme, "scheme order pair: 22, 24 or 44");
    sub->add_option("--dim", o.dim, "spatial dimension: 1 or 2")->check(CLI::Range(1, 2));
    sub->add_option("--pair", o.pair, "field pair: ek or hj (hj is 1D only)");
    sub->add_option("--nu", o.nu, "Courant number c*dt/dx (stability requires nu < 1)");
    sub->add_option("--dt", o.dt, "coarsest time step dt0");
    sub->add_option("--levels", o.levels, "number of refinement levels for converge");
    sub->add_option("--T", o.final_time, "final time");
    sub->add_option("--out", o.out, "output path (default: stdout)");
    sub->add_option("--format", o.format, "output format: csv or json");
    sub->add_flag("--allow-unstable", o.allow_unstable,
                  "permit nu >= 1 runs for CFL probing");
}

drude::ExperimentConfig build_config(const CliOverrides& o, drude::ExperimentKind kind) {
    drude::ExperimentConfig cfg;
    if (!o.config_path.empty())
        cfg = drude::load_config(o.config_path);
    cfg.kind = kind;
    if (o.scheme) {
        cfg.scheme = drude::scheme_from_label(*o.scheme);
        cfg.schemes = {cfg.scheme}; // a single --scheme restricts the energy table too
    }
    if (o.dim)
        cfg.dim = *o.dim;
    if (o.pair) {
        if (*o.pair == "ek")
            cfg.pair = drude::FieldPair::EK;
        else if (*o.pair == "hj")
            cfg.pair = drude::FieldPair::HJ;
        else
            throw drude::ConfigError("pair must be 'ek' or 'hj', got '" + *o.pair + "'");
    }
    if (o.nu)
        cfg.nu = *o.nu;
    if (o.dt)
        cfg.dt0 = *o.dt;
    if (o.levels)
        cfg.levels = *o.levels;
    if (o.final_time)
        cfg.final_time = *o.final_time;
    if (o.out)
        cfg.out = *o.out;
    if (o.format) {
        if (*o.format == "csv")
            cfg.format = drude::OutputFormat::Csv;
        else if (*o.format == "json")
            cfg.format = drude::OutputFormat::Json;
        else
            throw drude::ConfigError("format must be 'csv' or 'json'");
    }
    if (o.allow_unstable)
        cfg.allow_unstable = true;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maxwell-Drude metamaterial FDTD: energy-conserving (2,2)/(2,4)/(4,4) "
                 "schemes with manufactured-solution diagnostics"};
    app.require_subcommand(1);

    CliOverrides o_sim, o_conv, o_long, o_tab;
    CLI::App* sim = app.add_subcommand("simulate", "single run: energy series and solution errors");
    CLI::App* conv = app.add_subcommand("converge", "refinement study: errors and rates per level");
    CLI::App* lng = app.add_subcommand(
        "longtime", "long-run conservation series (theta and theta - theta_first per record)");
    CLI::App* tab = app.add_subcommand(
        "energy-table",
        "max conservation error over schemes x nu x dt (maximum over all steps)");
    add_common_options(sim, o_sim);
    add_common_options(conv, o_conv);
    add_common_options(lng, o_long);
    add_common_options(tab, o_tab);

    CLI11_PARSE(app, argc, argv);

    try {
        drude::ExperimentConfig cfg;
        if (sim->parsed())
            cfg = build_config(o_sim, drude::ExperimentKind::Simulate);
        else if (conv->parsed())
            cfg = build_config(o_conv, drude::ExperimentKind::Converge);
        else if (lng->parsed())
            cfg = build_config(o_long, drude::ExperimentKind::Longtime);
        else
            cfg = build_config(o_tab, drude::ExperimentKind::EnergyTable);

        const drude::ResultTable table = drude::run_experiment(cfg);
        drude::emit(table, cfg.format, cfg.out);
        return 0;
    } catch (const drude::InstabilityError& e) {
        std::cerr << "instability: " << e.what() << "\n";
        return 3;
    } catch (const drude::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const drude::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const drude::DomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
