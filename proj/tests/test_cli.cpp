#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lwpot/potential.hpp"

using nlohmann::json;

namespace {

#ifndef LWPOT_CLI_PATH
#error "LWPOT_CLI_PATH must point at the built CLI"
#endif

struct RunResult {
    int exit_code;
    std::string out;
};

std::string tmp_path(const std::string& name) {
    return std::string("cli_test_") + name;
}

RunResult run(const std::string& args, const std::string& tag) {
    const std::string out_file = tmp_path(tag) + ".out";
    const std::string cmd =
        std::string(LWPOT_CLI_PATH) + " " + args + " > " + out_file + " 2> /dev/null";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::size_t cols) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        REQUIRE(row.size() == cols);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("spectrum --preset figure2 reports three bound states as JSON") {
    const RunResult r = run("spectrum --preset figure2", "spectrum_fig2");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("count").get<int>() == 3);
    REQUIRE(j.at("energies").size() == 3);
    CHECK(j["energies"][0].get<double>() == doctest::Approx(-1.3578613765).epsilon(1e-6));
    CHECK(j["roots"][0]["node_count"].get<int>() == 0);
    CHECK(j["roots"][1]["node_count"].get<int>() == 1);
    CHECK(j["roots"][2]["node_count"].get<int>() == 2);
    CHECK(j["bounds"]["bargmann"].get<double>() == 27.0);
}

TEST_CASE("spectrum --curve: sign changes bracket every reported root") {
    const RunResult rj = run("spectrum --preset figure2", "spectrum_roots");
    REQUIRE(rj.exit_code == 0);
    const json j = json::parse(rj.out);

    const RunResult rc = run(
        "spectrum --preset figure2 --curve --format csv --grid 1200 --emin=-6 --emax=-0.001",
        "spectrum_curve");
    REQUIRE(rc.exit_code == 0);
    const auto rows = parse_csv(rc.out, 2);
    REQUIRE(rows.size() == 1200);
    for (const auto& e : j.at("energies")) {
        const double root = e.get<double>();
        bool bracketed = false;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i - 1][0] <= root && root <= rows[i][0] &&
                rows[i - 1][1] * rows[i][1] < 0.0)
                bracketed = true;
        }
        CHECK(bracketed);
    }
}

TEST_CASE("potential --preset figure1: emitted V matches the library pointwise") {
    const RunResult r =
        run("potential --preset figure1 --xmin 0.01 --xmax 8 --grid 60", "potential_fig1");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out, 5);
    REQUIRE(rows.size() == 60);
    const lwpot::PhysicalParams p = lwpot::PhysicalParams::figure1();
    for (const auto& row : rows) {
        const double v =
            lwpot::potential::eval_potential(lwpot::PotentialKind::singular, row[0], p);
        CHECK(row[2] == doctest::Approx(v).epsilon(1e-15));
    }
    // near the origin the emitted potential tracks its asymptote
    CHECK(rows[0][0] == doctest::Approx(0.01));
    CHECK(rows[0][2] / rows[0][3] > 0.8);
    CHECK(rows[0][2] / rows[0][3] < 1.2);
}

TEST_CASE("wavefunction at the figure-2 ground state: small residual column") {
    const RunResult r = run(
        "wavefunction --preset figure2 --E=-1.3578613764532796 --xmin 0.05 --xmax 15 "
        "--grid 4001",
        "wavefunction_ground");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out, 5);
    double worst = 0.0;
    for (const auto& row : rows) worst = std::max(worst, row[4]);
    CHECK(worst <= 1e-6);
}

TEST_CASE("usage and domain errors exit with code 2") {
    CHECK(run("potential --preset figure1 --grid 1", "err_grid").exit_code == 2);
    CHECK(run("wavefunction --preset figure2 --E=-1 --C1 0 --C2 0", "err_coef").exit_code == 2);
    CHECK(run("spectrum --V0=-3", "err_v0").exit_code == 2);
    CHECK(run("bogus-subcommand", "err_cmd").exit_code == 2);
    CHECK(run("wavefunction --preset figure2", "err_noE").exit_code == 2);  // E required
}

TEST_CASE("byte-identical output for identical configurations") {
    const RunResult a = run("potential --preset figure2 --grid 200", "det_a");
    const RunResult b = run("potential --preset figure2 --grid 200", "det_b");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    const RunResult c = run("spectrum --preset figure2", "det_c");
    const RunResult d = run("spectrum --preset figure2", "det_d");
    CHECK(c.out == d.out);
}

TEST_CASE("figure2 subcommand emits the spectrum-equation curve") {
    const RunResult r = run("figure2 --grid 50 --emin=-2 --emax=-0.5", "figure2_curve");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("E,F", 0) == 0);
    const auto rows = parse_csv(r.out, 2);
    REQUIRE(rows.size() == 50);
    CHECK(rows.front()[0] == doctest::Approx(-2.0));
    CHECK(rows.back()[0] == doctest::Approx(-0.5));
}

TEST_CASE("potential --kind m1 emits the general family") {
    const RunResult r = run(
        "potential --kind m1 --V0 1.4 --V1 0 --sigma 1 --x0 0 --z0 1 --xmin 1.5 --xmax 4 "
        "--grid 6",
        "potential_m1");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out, 5);
    for (const auto& row : rows) CHECK(row[2] == doctest::Approx(1.4));  // V1 = 0: constant V0
}

TEST_CASE("bounds reports full-precision JSON") {
    const RunResult r = run("bounds --preset figure2", "bounds_fig2");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("bargmann").get<double>() == 27.0);
    CHECK(j.at("calogero").get<double>() == doctest::Approx(7.3484692283495345).epsilon(1e-15));
    CHECK(j.at("chadan").get<double>() == doctest::Approx(3.6742346141747673).epsilon(1e-15));
    CHECK(j.at("bargmann_integral").get<double>() == doctest::Approx(27.0).epsilon(1e-5));
}

TEST_CASE("config file supplies defaults, flags win") {
    {
        std::ofstream cfg(tmp_path("cfg") + ".json");
        cfg << R"({"V0": 3.0, "sigma": 3.0})";
    }
    const RunResult r =
        run("bounds --config " + tmp_path("cfg") + ".json --V0 2", "bounds_cfg");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    // sigma from the config, V0 from the flag: m sigma^2 V0 = 9 * 2
    CHECK(j.at("bargmann").get<double>() == doctest::Approx(18.0));
}

TEST_CASE("verify: suite filter works and the documented mutation trips it") {
    CHECK(run("verify --suite potential", "verify_pot").exit_code == 0);
    CHECK(run("verify --suite bogus", "verify_bogus").exit_code == 2);
    // negative control: a sign flip in the spectrum condition must fail
    const RunResult r = run("verify --suite spectrum --mutate eq24-sign", "verify_mut");
    CHECK(r.exit_code == 4);
    CHECK(r.out.find("[FAIL]") != std::string::npos);
}

TEST_CASE("output lands in --out with optional version header") {
    const std::string path = tmp_path("outfile") + ".csv";
    const RunResult r = run("figure2 --grid 10 --emin=-1 --emax=-0.5 --out " + path +
                                " --with-version-header",
                            "outfile");
    REQUIRE(r.exit_code == 0);
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("# lwpot", 0) == 0);
}
