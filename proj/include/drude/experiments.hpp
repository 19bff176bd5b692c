#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "drude/diagnostics.hpp"
#include "drude/stepper.hpp"

namespace drude {

enum class ExperimentKind { Simulate, Converge, Longtime, EnergyTable };
enum class OutputFormat { Csv, Json };

std::string experiment_label(ExperimentKind k);
ExperimentKind experiment_from_label(const std::string& s);

/// Fully resolved description of one experiment invocation. Defaults follow
/// the reference 1D/2D parameter sets.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Simulate;
    SchemeOrder scheme = SchemeOrder::S44;
    int dim = 1;
    FieldPair pair = FieldPair::EK;

    double eps0 = 5.0;
    double mu0 = 0.2;
    std::optional<double> omega_pe; ///< default 26.63199 (1D) / 10.0 (2D)
    int kx = 2;
    int ky = 2;

    double nu = 0.2;
    double dt0 = 0.02;
    int levels = 6;
    double final_time = 1.0;

    std::string out;                       ///< empty: stdout
    OutputFormat format = OutputFormat::Csv;
    std::optional<long> energy_stride;     ///< default 1 (1D) / 10 (2D)
    bool allow_unstable = false;
    bool parallel = true;

    std::vector<SchemeOrder> schemes = {SchemeOrder::S44, SchemeOrder::S24, SchemeOrder::S22};
    std::vector<double> nu_values = {0.2, 0.5, 0.8};
    std::vector<double> dt_values = {0.02, 0.01};

    double resolved_omega_pe() const;
    long resolved_energy_stride() const;

    /// Throws ConfigError on out-of-range or inconsistent settings.
    void validate() const;
};

/// Parse a flat-key JSON document; unknown keys are errors naming the key.
ExperimentConfig parse_config(const std::string& json_text);
/// Load and parse a JSON config file.
ExperimentConfig load_config(const std::string& path);

/// One table cell: empty, integer, real (17 significant digits in CSV),
/// rate (4 significant digits), or text.
struct Cell {
    enum class Kind { Empty, Int, Real, Rate, Text };
    Kind kind = Kind::Empty;
    long i = 0;
    double d = 0.0;
    std::string s;

    static Cell empty() { return {}; }
    static Cell integer(long v) { return {Kind::Int, v, 0.0, {}}; }
    static Cell real(double v) { return {Kind::Real, 0, v, {}}; }
    static Cell rate(double v) { return {Kind::Rate, 0, v, {}}; }
    static Cell text(std::string v) { return {Kind::Text, 0, 0.0, std::move(v)}; }
};

/// Header metadata plus a fixed-schema data section.
struct ResultTable {
    std::vector<std::pair<std::string, std::string>> header; ///< ordered config echo
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

ResultTable run_convergence(const ExperimentConfig& cfg);
ResultTable run_longtime(const ExperimentConfig& cfg);
ResultTable run_energy_table(const ExperimentConfig& cfg);
ResultTable run_simulate(const ExperimentConfig& cfg);
ResultTable run_experiment(const ExperimentConfig& cfg);

void emit_csv(const ResultTable& table, std::ostream& os);
void emit_json(const ResultTable& table, std::ostream& os);
/// Write to path ('' = stdout); throws IoError on write failure.
void emit(const ResultTable& table, OutputFormat format, const std::string& path);

/// 17-significant-digit shortest-faithful formatting used by the CSV writer.
std::string format_real(double v);
std::string format_rate(double v);

/// The solution/parameter set an experiment runs against.
struct ModelSetup {
    std::shared_ptr<const ExactSolution> solution;
    PhysParams params;                     ///< parameters the stepper runs with
    std::optional<double> continuous_energy; ///< Theta reference when available
};

ModelSetup make_model_setup(const ExperimentConfig& cfg);

} // namespace drude
