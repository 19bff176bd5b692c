#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "drude/experiments.hpp"

using namespace drude;

namespace {

std::string csv_of(const ResultTable& t) {
    std::ostringstream os;
    emit_csv(t, os);
    return os.str();
}

std::string data_section(const std::string& csv) {
    std::istringstream is(csv);
    std::string line, out;
    while (std::getline(is, line))
        if (line.empty() || line[0] != '#')
            out += line + "\n";
    return out;
}

std::string first_data_line(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#')
            return line;
    return {};
}

} // namespace

TEST_CASE("config defaults per dimension") {
    ExperimentConfig c1 = parse_config("{}");
    CHECK(c1.dim == 1);
    CHECK(c1.eps0 == 5.0);
    CHECK(c1.mu0 == 0.2);
    CHECK(c1.resolved_omega_pe() == 26.63199);
    CHECK(c1.kx == 2);
    CHECK(c1.nu == 0.2);
    CHECK(c1.dt0 == 0.02);
    CHECK(c1.levels == 6);
    CHECK(c1.final_time == 1.0);
    CHECK(c1.resolved_energy_stride() == 1);
    c1.validate();

    ExperimentConfig c2 = parse_config(R"({"dim": 2})");
    CHECK(c2.resolved_omega_pe() == 10.0);
    CHECK(c2.kx == 2);
    CHECK(c2.ky == 2);
    CHECK(c2.resolved_energy_stride() == 10);
    c2.validate();
}

TEST_CASE("config rejects unknown keys, bad types and bad ranges") {
    CHECK_THROWS_AS((void)parse_config(R"({"not_a_key": 1})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config(R"({"nu": "fast"})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config("[1,2]"), ConfigError);
    CHECK_THROWS_AS((void)parse_config("{"), ConfigError);
    CHECK_THROWS_AS((void)parse_config(R"({"pair": "xy"})"), ConfigError);

    ExperimentConfig bad = parse_config(R"({"nu": 1.5})");
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("nu < 1"), ConfigError);
    bad.allow_unstable = true;
    bad.validate(); // CFL probing is opt-in

    ExperimentConfig hj2d = parse_config(R"({"pair": "hj", "dim": 2})");
    CHECK_THROWS_AS(hj2d.validate(), ConfigError);

    ExperimentConfig lv = parse_config(R"({"levels": 0})");
    CHECK_THROWS_AS(lv.validate(), ConfigError);
}

TEST_CASE("converge emits the exact 1d csv schema") {
    ExperimentConfig cfg = parse_config(R"({"experiment": "converge", "levels": 2, "T": 0.2})");
    const ResultTable t = run_convergence(cfg);
    const std::string csv = csv_of(t);
    CHECK(first_data_line(csv) == "dt,dx,err_E,rate_E,err_K,rate_K");
    CHECK(t.rows.size() == 2);
    // first row carries no rate
    CHECK(t.rows[0][3].kind == Cell::Kind::Empty);
    CHECK(t.rows[1][3].kind == Cell::Kind::Rate);
}

TEST_CASE("converge schema for 2d and for the (H,J) pair") {
    ExperimentConfig c2 =
        parse_config(R"({"experiment": "converge", "dim": 2, "levels": 1, "T": 0.1})");
    const ResultTable t2 = run_convergence(c2);
    CHECK(first_data_line(csv_of(t2)) == "dt,dx,err_Ex,rate_Ex,err_Ey,rate_Ey,err_K,rate_K");
    CHECK(t2.rows.size() == 1);

    ExperimentConfig ch =
        parse_config(R"({"experiment": "converge", "pair": "hj", "levels": 1, "T": 0.2})");
    const ResultTable th = run_convergence(ch);
    CHECK(first_data_line(csv_of(th)) == "dt,dx,err_H,rate_H,err_J,rate_J");
}

TEST_CASE("converge reproduces second-order rates for the (2,2) scheme") {
    ExperimentConfig cfg =
        parse_config(R"({"experiment": "converge", "scheme": "22", "levels": 3})");
    const ResultTable t = run_convergence(cfg);
    REQUIRE(t.rows.size() == 3);
    for (std::size_t r = 1; r < 3; ++r) {
        CHECK(t.rows[r][3].d == doctest::Approx(-2.0).epsilon(0.05)); // rate_E
        CHECK(t.rows[r][5].d == doctest::Approx(-2.0).epsilon(0.05)); // rate_K
    }
}

TEST_CASE("converge is deterministic and parallel-agnostic") {
    ExperimentConfig cfg = parse_config(R"({"experiment": "converge", "levels": 3, "T": 0.5})");
    const std::string a = data_section(csv_of(run_convergence(cfg)));
    const std::string b = data_section(csv_of(run_convergence(cfg)));
    CHECK(a == b);
    cfg.parallel = false;
    const std::string c = data_section(csv_of(run_convergence(cfg)));
    CHECK(a == c);
}

TEST_CASE("longtime with T = dt0 emits exactly one record") {
    ExperimentConfig cfg = parse_config(R"({"experiment": "longtime", "T": 0.02})");
    const ResultTable t = run_longtime(cfg);
    CHECK(first_data_line(csv_of(t)) == "n,t,energy,theta,theta_minus_theta0,delta_energy");
    CHECK(t.rows.size() == 1);
}

TEST_CASE("longtime conserves at the table-1 level over a short run") {
    ExperimentConfig cfg = parse_config(R"({"experiment": "longtime", "T": 2.0})");
    const ResultTable t = run_longtime(cfg);
    CHECK(t.rows.size() == 100);
    // theta_minus_theta0 column stays at roundoff
    for (const auto& row : t.rows)
        CHECK(std::abs(row[4].d) < 1e-13);
}

TEST_CASE("energy table: full grid and restricted scheme set") {
    ExperimentConfig cfg = parse_config(R"({"experiment": "energy-table", "T": 0.5})");
    const ResultTable t = run_energy_table(cfg);
    CHECK(first_data_line(csv_of(t)) == "scheme,nu,dt,max_theta");
    CHECK(t.rows.size() == 18); // 3 schemes x 3 nu x 2 dt
    for (const auto& row : t.rows)
        CHECK(row[3].d < 1e-13);

    ExperimentConfig one = parse_config(R"({"experiment": "energy-table", "schemes": ["22"],
                                            "T": 0.5})");
    CHECK(run_energy_table(one).rows.size() == 6);
}

TEST_CASE("simulate reports per-field errors in the header") {
    ExperimentConfig cfg = parse_config(R"({"experiment": "simulate", "T": 0.2})");
    const ResultTable t = run_simulate(cfg);
    bool found_e = false, found_k = false;
    for (const auto& [k, v] : t.header) {
        if (k == "err_E")
            found_e = true;
        if (k == "err_K")
            found_k = true;
    }
    CHECK(found_e);
    CHECK(found_k);
}

TEST_CASE("json emission round-trips all values bit-exactly") {
    ExperimentConfig cfg = parse_config(R"({"experiment": "converge", "levels": 2, "T": 0.2})");
    const ResultTable t = run_convergence(cfg);
    std::ostringstream os;
    emit_json(t, os);
    const nlohmann::json j = nlohmann::json::parse(os.str());
    REQUIRE(j["rows"].size() == t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            const auto& cell = t.rows[r][c];
            const auto& jz = j["rows"][r][t.columns[c]];
            if (cell.kind == Cell::Kind::Empty) {
                CHECK(jz.is_null());
            } else if (cell.kind == Cell::Kind::Real || cell.kind == Cell::Kind::Rate) {
                CHECK(jz.get<double>() == cell.d);
            }
        }
    }
}

TEST_CASE("csv real formatting survives a parse round-trip") {
    const double vals[] = {0.02, 1.0 / 3.0, 6.2804660295696365e-04, 13.301488849498404};
    for (double v : vals)
        CHECK(std::stod(format_real(v)) == v);
    CHECK(format_rate(-4.0734567) == "-4.073");
}

TEST_CASE("a table with no rows emits a header-only file") {
    ResultTable t;
    t.header.emplace_back("tool", "x");
    t.columns = {"a", "b"};
    const std::string csv = csv_of(t);
    CHECK(csv == "# tool = x\na,b\n");
}

TEST_CASE("emit to an unwritable path raises an io error") {
    ExperimentConfig cfg = parse_config(R"({"experiment": "longtime", "T": 0.02})");
    const ResultTable t = run_longtime(cfg);
    CHECK_THROWS_AS(emit(t, OutputFormat::Csv, "/nonexistent-dir/out.csv"), IoError);
}

TEST_CASE("run_experiment validates and dispatches") {
    ExperimentConfig cfg = parse_config(R"({"experiment": "converge", "levels": 0})");
    CHECK_THROWS_AS((void)run_experiment(cfg), ConfigError);
}
