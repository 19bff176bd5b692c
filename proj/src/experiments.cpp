#include "drude/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "drude/errors.hpp"

namespace drude {

namespace {
constexpr const char* kToolName = "drude-fdtd";
constexpr const char* kToolVersion = "0.1.0";
constexpr double kDomainLength = 1.0;
} // namespace

std::string experiment_label(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::Simulate:
        return "simulate";
    case ExperimentKind::Converge:
        return "converge";
    case ExperimentKind::Longtime:
        return "longtime";
    default:
        return "energy-table";
    }
}

ExperimentKind experiment_from_label(const std::string& s) {
    if (s == "simulate")
        return ExperimentKind::Simulate;
    if (s == "converge")
        return ExperimentKind::Converge;
    if (s == "longtime")
        return ExperimentKind::Longtime;
    if (s == "energy-table")
        return ExperimentKind::EnergyTable;
    throw ConfigError("unknown experiment '" + s + "'");
}

double ExperimentConfig::resolved_omega_pe() const {
    if (omega_pe)
        return *omega_pe;
    return dim == 1 ? 26.63199 : 10.0;
}

long ExperimentConfig::resolved_energy_stride() const {
    if (energy_stride)
        return *energy_stride;
    return dim == 1 ? 1 : 10;
}

void ExperimentConfig::validate() const {
    if (dim != 1 && dim != 2)
        throw ConfigError("dim must be 1 or 2, got " + std::to_string(dim));
    if (pair == FieldPair::HJ && dim == 2)
        throw ConfigError("pair 'hj' is available in 1D only; the 2D TE reduction evolves (E,K)");
    if (!(eps0 > 0.0))
        throw ConfigError("eps0 must be positive");
    if (!(mu0 > 0.0))
        throw ConfigError("mu0 must be positive");
    if (omega_pe && !(*omega_pe > 0.0))
        throw ConfigError("omega_pe must be positive");
    if (levels < 1)
        throw ConfigError("levels must be at least 1, got " + std::to_string(levels));
    if (!(nu > 0.0))
        throw ConfigError("nu must be positive");
    if (!(dt0 > 0.0))
        throw ConfigError("dt0 must be positive");
    if (!(final_time > 0.0))
        throw ConfigError("T must be positive");
    if (nu >= 1.0 && !allow_unstable)
        throw ConfigError("nu = " + std::to_string(nu) +
                          " violates the stability requirement nu < 1; "
                          "set allow_unstable to probe the unstable regime");
    if (energy_stride && *energy_stride < 1)
        throw ConfigError("energy_stride must be at least 1");
    if (schemes.empty())
        throw ConfigError("schemes must not be empty");
    if (nu_values.empty() || dt_values.empty())
        throw ConfigError("nu_values and dt_values must not be empty");
    for (double v : nu_values)
        if (!(v > 0.0) || (v >= 1.0 && !allow_unstable))
            throw ConfigError("nu_values entries must lie in (0,1) without allow_unstable");
    for (double v : dt_values)
        if (!(v > 0.0))
            throw ConfigError("dt_values entries must be positive");
}

namespace {

using ojson = nlohmann::ordered_json;

template <class T>
T get_as(const ojson& v, const char* key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

std::vector<SchemeOrder> parse_scheme_list(const ojson& v, const char* key) {
    std::vector<SchemeOrder> out;
    if (!v.is_array())
        throw ConfigError(std::string("config key '") + key + "' must be an array");
    for (const auto& e : v)
        out.push_back(scheme_from_label(get_as<std::string>(e, key)));
    return out;
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    ojson j;
    try {
        j = ojson::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config must be a JSON object with flat keys");

    ExperimentConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "experiment")
            cfg.kind = experiment_from_label(get_as<std::string>(value, "experiment"));
        else if (key == "scheme")
            cfg.scheme = scheme_from_label(get_as<std::string>(value, "scheme"));
        else if (key == "schemes")
            cfg.schemes = parse_scheme_list(value, "schemes");
        else if (key == "dim")
            cfg.dim = get_as<int>(value, "dim");
        else if (key == "pair") {
            const std::string p = get_as<std::string>(value, "pair");
            if (p == "ek")
                cfg.pair = FieldPair::EK;
            else if (p == "hj")
                cfg.pair = FieldPair::HJ;
            else
                throw ConfigError("pair must be 'ek' or 'hj', got '" + p + "'");
        } else if (key == "eps0")
            cfg.eps0 = get_as<double>(value, "eps0");
        else if (key == "mu0")
            cfg.mu0 = get_as<double>(value, "mu0");
        else if (key == "omega_pe")
            cfg.omega_pe = get_as<double>(value, "omega_pe");
        else if (key == "k")
            cfg.kx = get_as<int>(value, "k");
        else if (key == "kx")
            cfg.kx = get_as<int>(value, "kx");
        else if (key == "ky")
            cfg.ky = get_as<int>(value, "ky");
        else if (key == "nu")
            cfg.nu = get_as<double>(value, "nu");
        else if (key == "dt0")
            cfg.dt0 = get_as<double>(value, "dt0");
        else if (key == "levels")
            cfg.levels = get_as<int>(value, "levels");
        else if (key == "T")
            cfg.final_time = get_as<double>(value, "T");
        else if (key == "out")
            cfg.out = get_as<std::string>(value, "out");
        else if (key == "format") {
            const std::string f = get_as<std::string>(value, "format");
            if (f == "csv")
                cfg.format = OutputFormat::Csv;
            else if (f == "json")
                cfg.format = OutputFormat::Json;
            else
                throw ConfigError("format must be 'csv' or 'json', got '" + f + "'");
        } else if (key == "energy_stride")
            cfg.energy_stride = get_as<long>(value, "energy_stride");
        else if (key == "allow_unstable")
            cfg.allow_unstable = get_as<bool>(value, "allow_unstable");
        else if (key == "parallel")
            cfg.parallel = get_as<bool>(value, "parallel");
        else if (key == "nu_values") {
            if (!value.is_array())
                throw ConfigError("config key 'nu_values' must be an array");
            cfg.nu_values.clear();
            for (const auto& e : value)
                cfg.nu_values.push_back(get_as<double>(e, "nu_values"));
        } else if (key == "dt_values") {
            if (!value.is_array())
                throw ConfigError("config key 'dt_values' must be an array");
            cfg.dt_values.clear();
            for (const auto& e : value)
                cfg.dt_values.push_back(get_as<double>(e, "dt_values"));
        } else
            throw ConfigError("unknown config key '" + key + "'");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ModelSetup make_model_setup(const ExperimentConfig& cfg) {
    ModelSetup setup;
    if (cfg.dim == 1) {
        const DerivedParams1D dp =
            derive_params_1d(cfg.eps0, cfg.mu0, cfg.kx, cfg.resolved_omega_pe());
        auto ek = std::make_shared<ManufacturedSolution1D>(dp);
        if (cfg.pair == FieldPair::EK) {
            setup.solution = ek;
            setup.params = dp.params;
            setup.continuous_energy = continuous_energy_ek(*ek, 0.0);
        } else {
            auto hj = std::make_shared<DualHJSolution1D>(*ek);
            setup.params = hj->params();
            setup.solution = std::move(hj);
            setup.continuous_energy = std::nullopt; // no quoted value for (H,J)
        }
    } else {
        const DerivedParams2D dp =
            derive_params_2d(cfg.eps0, cfg.mu0, cfg.kx, cfg.ky, cfg.resolved_omega_pe());
        auto sol = std::make_shared<ManufacturedSolution2D>(dp);
        setup.params = dp.params;
        setup.continuous_energy = continuous_energy_ek(*sol, 0.0);
        setup.solution = std::move(sol);
    }
    return setup;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_rate(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

namespace {

std::string format_cell(const Cell& c) {
    switch (c.kind) {
    case Cell::Kind::Empty:
        return "";
    case Cell::Kind::Int:
        return std::to_string(c.i);
    case Cell::Kind::Real:
        return format_real(c.d);
    case Cell::Kind::Rate:
        return format_rate(c.d);
    default:
        return c.s;
    }
}

std::vector<std::pair<std::string, std::string>>
base_header(const ExperimentConfig& cfg, const ModelSetup& setup) {
    std::vector<std::pair<std::string, std::string>> h;
    h.emplace_back("tool", kToolName);
    h.emplace_back("version", kToolVersion);
    h.emplace_back("experiment", experiment_label(cfg.kind));
    if (cfg.kind == ExperimentKind::EnergyTable) {
        std::string s;
        for (std::size_t i = 0; i < cfg.schemes.size(); ++i)
            s += (i ? "," : "") + scheme_label(cfg.schemes[i]);
        h.emplace_back("schemes", s);
    } else {
        h.emplace_back("scheme", scheme_label(cfg.scheme));
    }
    h.emplace_back("dim", std::to_string(cfg.dim));
    h.emplace_back("pair", cfg.pair == FieldPair::EK ? "ek" : "hj");
    h.emplace_back("domain_length", format_real(kDomainLength));
    h.emplace_back("eps0", format_real(cfg.eps0));
    h.emplace_back("mu0", format_real(cfg.mu0));
    h.emplace_back("omega_pe", format_real(cfg.resolved_omega_pe()));
    if (cfg.dim == 1) {
        h.emplace_back("k", std::to_string(cfg.kx));
    } else {
        h.emplace_back("kx", std::to_string(cfg.kx));
        h.emplace_back("ky", std::to_string(cfg.ky));
    }
    // derived quantities the runs actually use
    h.emplace_back("omega_pm", format_real(setup.params.omega_pm));
    h.emplace_back("omega_pe_effective", format_real(setup.params.omega_pe));
    h.emplace_back("c", format_real(setup.params.c));
    if (setup.continuous_energy)
        h.emplace_back("continuous_energy", format_real(*setup.continuous_energy));
    h.emplace_back("nu", format_real(cfg.nu));
    h.emplace_back("dt0", format_real(cfg.dt0));
    h.emplace_back("dx0", format_real(setup.params.c * cfg.dt0 / cfg.nu));
    h.emplace_back("levels", std::to_string(cfg.levels));
    h.emplace_back("T", format_real(cfg.final_time));
    h.emplace_back("energy_stride", std::to_string(cfg.resolved_energy_stride()));
    h.emplace_back("allow_unstable", cfg.allow_unstable ? "true" : "false");
    h.emplace_back("parallel", cfg.parallel ? "true" : "false");
    h.emplace_back("startup", "exact-samples");
    h.emplace_back("theta_note", "energy-table max_theta is max_n |E_h - E_h(first)| / reference "
                                 "over the whole run");
    return h;
}

struct LevelOutcome {
    int level = 0;
    bool ok = false;
    long failed_step = -1;
    ConvergenceRow row;
};

LevelOutcome run_convergence_level(const ExperimentConfig& cfg, const ModelSetup& setup, int i) {
    LevelOutcome out;
    out.level = i;
    const double dt = std::ldexp(cfg.dt0, -i);
    const MeshSpec mesh = mesh_for_courant(cfg.nu, dt, setup.params, kDomainLength, cfg.dim);
    const SchemeSpec scheme =
        SchemeSpec::make(cfg.scheme, cfg.dim, cfg.pair, setup.params, mesh, dt, cfg.final_time);
    const Stepper stepper(scheme, setup.params);
    SolutionErrorTracker tracker(*setup.solution, scheme);
    try {
        stepper.run(*setup.solution,
                    [&](const StatePair& s) { tracker.observe_state(s); });
    } catch (const InstabilityError& e) {
        out.failed_step = e.step();
        return out;
    }
    out.ok = true;
    out.row.dt = dt;
    out.row.dx = mesh.h;
    out.row.err = tracker.errors();
    return out;
}

} // namespace

ResultTable run_convergence(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const ModelSetup setup = make_model_setup(cfg);
    const std::vector<std::string> names = field_names(cfg.pair, cfg.dim);

    std::vector<LevelOutcome> outcomes(static_cast<std::size_t>(cfg.levels));
    if (cfg.parallel && cfg.levels > 1) {
        std::vector<std::future<LevelOutcome>> futs;
        futs.reserve(outcomes.size());
        for (int i = 0; i < cfg.levels; ++i)
            futs.push_back(std::async(std::launch::async,
                                      [&cfg, &setup, i] { return run_convergence_level(cfg, setup, i); }));
        for (int i = 0; i < cfg.levels; ++i)
            outcomes[static_cast<std::size_t>(i)] = futs[static_cast<std::size_t>(i)].get();
    } else {
        for (int i = 0; i < cfg.levels; ++i)
            outcomes[static_cast<std::size_t>(i)] = run_convergence_level(cfg, setup, i);
    }

    ResultTable table;
    table.columns = {"dt", "dx"};
    for (const auto& n : names) {
        table.columns.push_back("err_" + n);
        table.columns.push_back("rate_" + n);
    }

    std::string unstable_note;
    int prev_level = -2;
    const ConvergenceRow* prev_row = nullptr;
    for (const LevelOutcome& oc : outcomes) {
        if (!oc.ok) {
            if (!unstable_note.empty())
                unstable_note += ";";
            unstable_note += "level " + std::to_string(oc.level) + " unstable at step " +
                             std::to_string(oc.failed_step);
            continue;
        }
        std::vector<Cell> row;
        row.push_back(Cell::real(oc.row.dt));
        row.push_back(Cell::real(oc.row.dx));
        const bool have_rate = (prev_level == oc.level - 1) && prev_row;
        for (std::size_t f = 0; f < names.size(); ++f) {
            row.push_back(Cell::real(oc.row.err[f]));
            if (have_rate && prev_row->err[f] > 0.0 && oc.row.err[f] > 0.0)
                row.push_back(Cell::rate(std::log2(oc.row.err[f] / prev_row->err[f])));
            else
                row.push_back(Cell::empty());
        }
        table.rows.push_back(std::move(row));
        prev_level = oc.level;
        prev_row = &outcomes[static_cast<std::size_t>(oc.level)].row;
    }

    table.header = base_header(cfg, setup);
    if (!unstable_note.empty())
        table.header.emplace_back("unstable_levels", unstable_note);
    const auto t1 = std::chrono::steady_clock::now();
    table.header.emplace_back(
        "wall_clock_s",
        format_rate(std::chrono::duration<double>(t1 - t0).count()));
    return table;
}

namespace {

ResultTable energy_series_table(const ExperimentConfig& cfg, const ModelSetup& setup,
                                bool with_errors) {
    const auto t0 = std::chrono::steady_clock::now();
    const MeshSpec mesh =
        mesh_for_courant(cfg.nu, cfg.dt0, setup.params, kDomainLength, cfg.dim);
    const SchemeSpec scheme = SchemeSpec::make(cfg.scheme, cfg.dim, cfg.pair, setup.params, mesh,
                                               cfg.dt0, cfg.final_time);
    const Stepper stepper(scheme, setup.params);
    EnergyTracker energies =
        setup.continuous_energy
            ? EnergyTracker(stepper, *setup.continuous_energy, cfg.resolved_energy_stride())
            : EnergyTracker::self_referenced(stepper, cfg.resolved_energy_stride());
    SolutionErrorTracker errors(*setup.solution, scheme);
    stepper.run(*setup.solution, [&](const StatePair& s) {
        energies.observe_state(s);
        if (with_errors)
            errors.observe_state(s);
    });

    ResultTable table;
    table.columns = {"n", "t", "energy", "theta", "theta_minus_theta0", "delta_energy"};
    for (const EnergyRecord& r : energies.records()) {
        std::vector<Cell> row;
        row.push_back(Cell::integer(r.n));
        row.push_back(Cell::real(r.t));
        row.push_back(Cell::real(r.energy));
        row.push_back(Cell::real(r.theta));
        row.push_back(Cell::real(r.theta_drift));
        row.push_back(Cell::real(r.delta));
        table.rows.push_back(std::move(row));
    }
    table.header = base_header(cfg, setup);
    table.header.emplace_back("mesh_cells", std::to_string(mesh.cells));
    table.header.emplace_back("steps", std::to_string(scheme.steps));
    table.header.emplace_back("nu_effective", format_real(scheme.nu));
    table.header.emplace_back("energy_reference", format_real(energies.reference()));
    table.header.emplace_back("max_theta_drift", format_real(energies.max_theta_drift()));
    if (with_errors) {
        const auto& names = errors.names();
        for (std::size_t f = 0; f < names.size(); ++f)
            table.header.emplace_back("err_" + names[f], format_real(errors.errors()[f]));
    }
    const auto t1 = std::chrono::steady_clock::now();
    table.header.emplace_back(
        "wall_clock_s",
        format_rate(std::chrono::duration<double>(t1 - t0).count()));
    return table;
}

} // namespace

ResultTable run_longtime(const ExperimentConfig& cfg) {
    return energy_series_table(cfg, make_model_setup(cfg), false);
}

ResultTable run_simulate(const ExperimentConfig& cfg) {
    return energy_series_table(cfg, make_model_setup(cfg), true);
}

ResultTable run_energy_table(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const ModelSetup setup = make_model_setup(cfg);

    ResultTable table;
    table.columns = {"scheme", "nu", "dt", "max_theta"};
    std::string unstable_note;
    for (SchemeOrder sc : cfg.schemes)
        for (double nu : cfg.nu_values)
            for (double dt : cfg.dt_values) {
                const MeshSpec mesh =
                    mesh_for_courant(nu, dt, setup.params, kDomainLength, cfg.dim);
                const SchemeSpec scheme = SchemeSpec::make(sc, cfg.dim, cfg.pair, setup.params,
                                                           mesh, dt, cfg.final_time);
                const Stepper stepper(scheme, setup.params);
                EnergyTracker energies =
                    setup.continuous_energy
                        ? EnergyTracker(stepper, *setup.continuous_energy, 1)
                        : EnergyTracker::self_referenced(stepper, 1);
                try {
                    stepper.run(*setup.solution,
                                [&](const StatePair& s) { energies.observe_state(s); });
                } catch (const InstabilityError& e) {
                    if (!unstable_note.empty())
                        unstable_note += ";";
                    unstable_note += scheme_label(sc) + "/nu=" + format_rate(nu) +
                                     "/dt=" + format_rate(dt) + " unstable at step " +
                                     std::to_string(e.step());
                    continue;
                }
                std::vector<Cell> row;
                row.push_back(Cell::text(scheme_label(sc)));
                row.push_back(Cell::real(nu));
                row.push_back(Cell::real(dt));
                row.push_back(Cell::real(energies.max_theta_drift()));
                table.rows.push_back(std::move(row));
            }

    table.header = base_header(cfg, setup);
    if (!unstable_note.empty())
        table.header.emplace_back("unstable_cells", unstable_note);
    const auto t1 = std::chrono::steady_clock::now();
    table.header.emplace_back(
        "wall_clock_s",
        format_rate(std::chrono::duration<double>(t1 - t0).count()));
    return table;
}

ResultTable run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    switch (cfg.kind) {
    case ExperimentKind::Simulate:
        return run_simulate(cfg);
    case ExperimentKind::Converge:
        return run_convergence(cfg);
    case ExperimentKind::Longtime:
        return run_longtime(cfg);
    default:
        return run_energy_table(cfg);
    }
}

void emit_csv(const ResultTable& table, std::ostream& os) {
    for (const auto& [k, v] : table.header)
        os << "# " << k << " = " << v << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << (c ? "," : "") << table.columns[c];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_cell(row[c]);
        os << "\n";
    }
}

void emit_json(const ResultTable& table, std::ostream& os) {
    ojson j;
    ojson meta = ojson::object();
    for (const auto& [k, v] : table.header)
        meta[k] = v;
    j["meta"] = std::move(meta);
    j["columns"] = table.columns;
    ojson rows = ojson::array();
    for (const auto& row : table.rows) {
        ojson r = ojson::object();
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
            const Cell& cell = row[c];
            switch (cell.kind) {
            case Cell::Kind::Empty:
                r[table.columns[c]] = nullptr;
                break;
            case Cell::Kind::Int:
                r[table.columns[c]] = cell.i;
                break;
            case Cell::Kind::Real:
            case Cell::Kind::Rate:
                r[table.columns[c]] = cell.d;
                break;
            case Cell::Kind::Text:
                r[table.columns[c]] = cell.s;
                break;
            }
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
}

void emit(const ResultTable& table, OutputFormat format, const std::string& path) {
    const auto write = [&](std::ostream& os) {
        if (format == OutputFormat::Csv)
            emit_csv(table, os);
        else
            emit_json(table, os);
        if (!os)
            throw IoError("failed writing results" + (path.empty() ? "" : " to '" + path + "'"));
    };
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open output file '" + path + "'");
    write(out);
}

} // namespace drude
