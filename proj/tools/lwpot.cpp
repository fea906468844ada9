// lwpot - exact solution, spectrum, and verification toolkit for the
// singular Lambert-W potential family.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lwpot/closedform.hpp"
#include "lwpot/heun.hpp"
#include "lwpot/oracle.hpp"
#include "lwpot/potential.hpp"
#include "lwpot/spectrum.hpp"
#include "lwpot/verify.hpp"

namespace {

using nlohmann::json;
using namespace lwpot;

constexpr const char* kVersion = "lwpot 0.1.0";

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kNumerical = 3,
    kVerifyFailed = 4,
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct RunConfig {
    PhysicalParams p{};
    std::string preset;
    double x_min = 0.01;
    double x_max = 0.0;  // 0 -> 10 sigma
    int grid = 500;
    double E = -1.0;
    double e_min = 0.0;  // 0 -> -5 V0
    double e_max = 0.0;  // 0 -> -1e-3 V0
    double C1 = 1.0;
    double C2 = 0.0;
    double tol = 1e-14;  // series tolerance override for the special functions
    std::string signs = "++";
    std::string format = "csv";
    std::string out;
    std::string suite = "all";
    std::string mutate;
    std::string kind = "singular";
    bool curve = false;
    bool version_header = false;
    bool v1_explicit = false;  // --V1 given by flag or config
    bool x0_explicit = false;  // --x0 given by flag or config
};

SignPair parse_signs(const std::string& s) {
    if (s.size() != 2 || (s[0] != '+' && s[0] != '-') || (s[1] != '+' && s[1] != '-'))
        throw DomainError("--signs must be one of ++, +-, -+, --");
    return SignPair{s[0] == '+' ? +1 : -1, s[1] == '+' ? +1 : -1};
}

PotentialKind parse_kind(const std::string& s) {
    if (s == "singular") return PotentialKind::singular;
    if (s == "m1") return PotentialKind::m1_variant;
    if (s == "m2") return PotentialKind::m2_variant;
    throw DomainError("--kind must be singular, m1, or m2");
}

// Common physics/grid flags for one subcommand; config-file values act as
// defaults, explicit flags win.
void add_common(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON file mirroring the flags (flags win)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--V0", cfg.p.V0, "potential strength");
    cmd->add_option("--V1", cfg.p.V1, "second strength (general families)");
    cmd->add_option("--sigma", cfg.p.sigma, "length scale");
    cmd->add_option("--x0", cfg.p.x0, "coordinate offset");
    cmd->add_option("--z0", cfg.p.z0, "transform offset");
    cmd->add_option("--mass", cfg.p.m, "particle mass");
    cmd->add_option("--hbar", cfg.p.hbar, "action quantum");
    cmd->add_option("--preset", cfg.preset, "figure1 (V0=2,sigma=1) or figure2 (V0=sigma=3)")
        ->check(CLI::IsMember({"figure1", "figure2"}));
    cmd->add_option("--xmin", cfg.x_min, "grid start");
    cmd->add_option("--xmax", cfg.x_max, "grid end (default 10 sigma)");
    cmd->add_option("--grid", cfg.grid, "number of grid points");
    cmd->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", cfg.out, "output path (default: stdout)");
    cmd->add_flag("--with-version-header", cfg.version_header,
                  "prefix data output with a version comment line");
}

// Resolve the preset and fill dependent defaults after parsing.
void finalize(const CLI::App* cmd, RunConfig& cfg) {
    const CLI::Option* v1_opt = cmd->get_option_no_throw("--V1");
    const CLI::Option* x0_opt = cmd->get_option_no_throw("--x0");
    cfg.v1_explicit = cfg.v1_explicit || (v1_opt && v1_opt->count() > 0);
    cfg.x0_explicit = cfg.x0_explicit || (x0_opt && x0_opt->count() > 0);
    if (cfg.preset.empty()) {
        // keep the singular-family ties unless the general fields were asked
        // for explicitly
        if (!cfg.v1_explicit) cfg.p.V1 = -cfg.p.V0;
        if (!cfg.x0_explicit) cfg.p.x0 = -cfg.p.sigma;
    }
    if (!cfg.preset.empty()) {
        const PhysicalParams base = (cfg.preset == "figure1") ? PhysicalParams::figure1()
                                                              : PhysicalParams::figure2();
        PhysicalParams merged = base;
        if (cmd->count("--V0")) merged.V0 = cfg.p.V0, merged.V1 = -cfg.p.V0;
        if (cmd->count("--V1")) merged.V1 = cfg.p.V1;
        if (cmd->count("--sigma")) {
            merged.sigma = cfg.p.sigma;
            merged.x0 = -cfg.p.sigma;
        }
        if (cmd->count("--x0")) merged.x0 = cfg.p.x0;
        if (cmd->count("--z0")) merged.z0 = cfg.p.z0;
        if (cmd->count("--mass")) merged.m = cfg.p.m;
        if (cmd->count("--hbar")) merged.hbar = cfg.p.hbar;
        cfg.p = merged;
    }
    if (cfg.x_max == 0.0) cfg.x_max = 10.0 * cfg.p.sigma;
    if (cfg.e_min == 0.0) cfg.e_min = -5.0 * std::abs(cfg.p.V0);
    if (cfg.e_max == 0.0) cfg.e_max = -1e-3 * std::abs(cfg.p.V0);
}

// Merge --config JSON (mirror of the flag names, without dashes) as defaults.
void apply_config_file(CLI::App* cmd, RunConfig& cfg, const json& file) {
    auto set_if = [&](const char* flag, auto& target) {
        const std::string key = std::string(flag).substr(2);
        if (file.contains(key) && !cmd->count(flag)) target = file.at(key).get<std::decay_t<decltype(target)>>();
    };
    set_if("--V0", cfg.p.V0);
    set_if("--V1", cfg.p.V1);
    if (file.contains("V1")) cfg.v1_explicit = true;
    set_if("--sigma", cfg.p.sigma);
    set_if("--x0", cfg.p.x0);
    if (file.contains("x0")) cfg.x0_explicit = true;
    set_if("--z0", cfg.p.z0);
    set_if("--mass", cfg.p.m);
    set_if("--hbar", cfg.p.hbar);
    set_if("--preset", cfg.preset);
    set_if("--xmin", cfg.x_min);
    set_if("--xmax", cfg.x_max);
    set_if("--grid", cfg.grid);
    set_if("--format", cfg.format);
    set_if("--out", cfg.out);
    set_if("--emin", cfg.e_min);
    set_if("--emax", cfg.e_max);
    set_if("--E", cfg.E);
    set_if("--C1", cfg.C1);
    set_if("--C2", cfg.C2);
    set_if("--signs", cfg.signs);
    set_if("--tol", cfg.tol);
    set_if("--kind", cfg.kind);
}

struct Output {
    std::ofstream file;
    std::ostream* stream = &std::cout;
    explicit Output(const RunConfig& cfg) {
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw DomainError("cannot open output path: " + cfg.out);
            stream = &file;
        }
        if (cfg.version_header) *stream << "# " << kVersion << "\n";
    }
    std::ostream& os() { return *stream; }
};

std::vector<double> make_grid(const RunConfig& cfg) {
    if (cfg.grid < 2) throw DomainError("--grid needs at least 2 points");
    if (!(cfg.x_max > cfg.x_min)) throw DomainError("empty grid: xmax must exceed xmin");
    std::vector<double> xs(cfg.grid);
    for (int i = 0; i < cfg.grid; ++i)
        xs[i] = cfg.x_min + (cfg.x_max - cfg.x_min) * i / (cfg.grid - 1);
    return xs;
}

// ----------------------------------------------------------- subcommands --

int cmd_potential(const RunConfig& cfg) {
    const PotentialKind kind = parse_kind(cfg.kind);
    const auto xs = make_grid(cfg);
    Output out(cfg);
    const bool sing = kind == PotentialKind::singular;
    if (cfg.format == "csv") {
        out.os() << "x,z,V,asymptote_origin,asymptote_tail\n";
        for (double x : xs) {
            const double z = potential::map_z(kind, x, cfg.p);
            const double V = potential::eval_potential(kind, x, cfg.p);
            out.os() << num(x) << ',' << num(z) << ',' << num(V) << ','
                     << num(sing ? potential::asymptote_origin(cfg.p, x) : 0.0) << ','
                     << num(sing ? potential::asymptote_tail(cfg.p, x) : 0.0) << '\n';
        }
    } else {
        json j;
        j["params"] = {{"V0", cfg.p.V0},   {"V1", cfg.p.V1}, {"sigma", cfg.p.sigma},
                       {"x0", cfg.p.x0},   {"z0", cfg.p.z0}, {"mass", cfg.p.m},
                       {"hbar", cfg.p.hbar}};
        json rows = json::array();
        for (double x : xs) {
            json row;
            row["x"] = x;
            row["z"] = potential::map_z(kind, x, cfg.p);
            row["V"] = potential::eval_potential(kind, x, cfg.p);
            if (sing) {
                row["asymptote_origin"] = potential::asymptote_origin(cfg.p, x);
                row["asymptote_tail"] = potential::asymptote_tail(cfg.p, x);
            }
            rows.push_back(row);
        }
        j["grid"] = rows;
        out.os() << j.dump(2) << '\n';
    }
    return kOk;
}

int cmd_spectrum(const RunConfig& cfg) {
    const spectrum::SpectrumResult r = spectrum::find_bound_states(cfg.p);

    std::cerr << "bound states: " << r.exact_n << "\n";
    for (std::size_t k = 0; k < r.roots.size(); ++k) {
        const auto& d = r.roots[k];
        std::fprintf(stderr, "  E_%zu = %-22.15g  |F| = %-10.3g  nodes = %d\n", k + 1, d.energy,
                     d.f_residual, d.node_count);
    }
    std::fprintf(stderr, "  bargmann = %.15g  calogero = %.3f  chadan = %.3f\n", r.bargmann,
                 r.calogero, r.chadan);

    Output out(cfg);
    if (cfg.format == "csv" && cfg.curve) {
        out.os() << "E,F\n";
        const int n = cfg.grid;
        for (int i = 0; i < n; ++i) {
            const double E = cfg.e_min + (cfg.e_max - cfg.e_min) * i / (n - 1);
            out.os() << num(E) << ',' << num(spectrum::spectrum_function(E, cfg.p)) << '\n';
        }
        return kOk;
    }
    json j;
    j["params"] = {{"V0", cfg.p.V0},   {"sigma", cfg.p.sigma}, {"mass", cfg.p.m},
                   {"hbar", cfg.p.hbar}};
    j["count"] = r.exact_n;
    j["energies"] = r.energies;
    json roots = json::array();
    for (const auto& d : r.roots)
        roots.push_back({{"energy", d.energy},
                         {"bracket_lo", d.bracket_lo},
                         {"bracket_hi", d.bracket_hi},
                         {"f_residual", d.f_residual},
                         {"node_count", d.node_count}});
    j["roots"] = roots;
    j["bounds"] = {{"bargmann", r.bargmann}, {"calogero", r.calogero}, {"chadan", r.chadan}};
    if (cfg.curve) {
        json curve = json::array();
        const int n = cfg.grid;
        for (int i = 0; i < n; ++i) {
            const double E = cfg.e_min + (cfg.e_max - cfg.e_min) * i / (n - 1);
            curve.push_back({E, spectrum::spectrum_function(E, cfg.p)});
        }
        j["curve"] = curve;
    }
    Output& o = out;
    o.os() << j.dump(2) << '\n';
    return kOk;
}

int cmd_wavefunction(const RunConfig& cfg) {
    if (cfg.C1 == 0.0 && cfg.C2 == 0.0)
        throw DomainError("C1 = C2 = 0 selects the trivial solution");
    const SignPair signs = parse_signs(cfg.signs);
    const auto xs = make_grid(cfg);
    const closedform::SolutionCoefficients coef{cfg.C1, cfg.C2};
    specfun::ChgEvalPolicy policy;
    policy.tol = cfg.tol;
    const GridFunction psi =
        closedform::general_solution_grid(xs, cfg.E, cfg.p, coef, signs, policy);

    // pointwise normalized residual on interior points (5-point stencil)
    std::vector<double> resid(xs.size(), 0.0);
    if (xs.size() >= 5) {
        const double k2m = cfg.p.kappa2m();
        double norm = 0.0;
        std::vector<double> d2(xs.size(), 0.0), fpsi(xs.size(), 0.0);
        const double h = xs[1] - xs[0];
        for (std::size_t i = 2; i + 2 < xs.size(); ++i) {
            d2[i] = (-psi.values[i - 2] + 16.0 * psi.values[i - 1] - 30.0 * psi.values[i] +
                     16.0 * psi.values[i + 1] - psi.values[i + 2]) /
                    (12.0 * h * h);
            const double V = potential::eval_potential(PotentialKind::singular, xs[i], cfg.p);
            fpsi[i] = k2m * (cfg.E - V) * psi.values[i];
            norm = std::max({norm, std::abs(d2[i]), std::abs(fpsi[i])});
        }
        if (norm > 0.0)
            for (std::size_t i = 2; i + 2 < xs.size(); ++i)
                resid[i] = std::abs(d2[i] + fpsi[i]) / norm;
    }

    Output out(cfg);
    if (cfg.format == "csv") {
        out.os() << "x,z,psi,psi_prime,residual\n";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double z = potential::map_z(PotentialKind::singular, xs[i], cfg.p);
            out.os() << num(xs[i]) << ',' << num(z) << ',' << num(psi.values[i]) << ','
                     << num(psi.derivatives[i]) << ',' << num(resid[i]) << '\n';
        }
    } else {
        json j;
        j["E"] = cfg.E;
        j["C1"] = cfg.C1;
        j["C2"] = cfg.C2;
        j["signs"] = cfg.signs;
        j["x"] = psi.xs;
        j["psi"] = psi.values;
        j["psi_prime"] = psi.derivatives;
        j["residual"] = resid;
        out.os() << j.dump(2) << '\n';
    }
    return kOk;
}

int cmd_bounds(const RunConfig& cfg) {
    const double bb = spectrum::bargmann_bound(cfg.p);
    const double bi = spectrum::bargmann_integral(cfg.p);
    const double ic = spectrum::calogero_bound(cfg.p);
    const double ch = spectrum::chadan_estimate(cfg.p);
    std::fprintf(stderr, "bargmann = %.3f (integral %.6g), calogero = %.3f, chadan = %.3f\n", bb,
                 bi, ic, ch);
    Output out(cfg);
    json j;
    j["bargmann"] = bb;
    j["bargmann_integral"] = bi;
    j["calogero"] = ic;
    j["chadan"] = ch;
    out.os() << j.dump(2) << '\n';
    return kOk;
}

int cmd_figure2(const RunConfig& cfg) {
    Output out(cfg);
    out.os() << "E,F\n";
    const int n = cfg.grid;
    if (n < 2) throw DomainError("--grid needs at least 2 points");
    for (int i = 0; i < n; ++i) {
        const double E = cfg.e_min + (cfg.e_max - cfg.e_min) * i / (n - 1);
        out.os() << num(E) << ',' << num(spectrum::spectrum_function(E, cfg.p)) << '\n';
    }
    return kOk;
}

int cmd_verify(const RunConfig& cfg) {
    verify::Options opt;
    opt.suite = cfg.suite;
    opt.mutation = cfg.mutate;
    const auto results = verify::run_checks(opt);
    int failed = 0;
    for (const auto& r : results) {
        std::printf("[%s] %-10s %-28s %s\n", r.passed ? "PASS" : "FAIL", r.suite.c_str(),
                    r.name.c_str(), r.detail.c_str());
        if (!r.passed) ++failed;
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failed,
                results.size());
    return failed == 0 ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Singular Lambert-W potential: exact solutions, spectrum, verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    RunConfig cfg;
    std::string config_path;

    CLI::App* c_pot = app.add_subcommand("potential", "emit x, z, V and the two asymptotes");
    add_common(c_pot, cfg, config_path);
    c_pot->add_option("--kind", cfg.kind, "singular, m1, or m2");

    CLI::App* c_spec = app.add_subcommand("spectrum", "bound-state energies and diagnostics");
    add_common(c_spec, cfg, config_path);
    c_spec->add_flag("--curve", cfg.curve, "also emit the (E, F(E)) curve");
    c_spec->add_option("--emin", cfg.e_min, "curve range start");
    c_spec->add_option("--emax", cfg.e_max, "curve range end");

    CLI::App* c_wave = app.add_subcommand("wavefunction", "closed-form solution with residual");
    add_common(c_wave, cfg, config_path);
    c_wave->add_option("--E", cfg.E, "energy (E < 0)")->required();
    c_wave->add_option("--C1", cfg.C1, "Kummer coefficient");
    c_wave->add_option("--C2", cfg.C2, "Tricomi coefficient");
    c_wave->add_option("--signs", cfg.signs, "sign pair for (c, s0): ++, +-, -+, --");
    c_wave->add_option("--tol", cfg.tol, "hypergeometric series tolerance");

    CLI::App* c_bounds = app.add_subcommand("bounds", "Bargmann/Calogero/Chadan estimates");
    add_common(c_bounds, cfg, config_path);

    CLI::App* c_fig2 = app.add_subcommand("figure2", "spectrum-equation curve (E, F(E)) as CSV");
    add_common(c_fig2, cfg, config_path);
    c_fig2->add_option("--emin", cfg.e_min, "curve range start");
    c_fig2->add_option("--emax", cfg.e_max, "curve range end");

    CLI::App* c_verify = app.add_subcommand("verify", "run the verification suites");
    c_verify->add_option("--suite", cfg.suite,
                         "all, specfun, potential, heun, closedform, spectrum, oracle, acceptance");
    c_verify->add_option("--mutate", cfg.mutate,
                         "negative-control mutation (eq24-sign); verification must then fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            json file = json::parse(in);
            apply_config_file(sub, cfg, file);
        }
        if (sub == c_fig2 && cfg.preset.empty()) cfg.preset = "figure2";
        finalize(sub, cfg);

        if (sub == c_pot) return cmd_potential(cfg);
        if (sub == c_spec) return cmd_spectrum(cfg);
        if (sub == c_wave) return cmd_wavefunction(cfg);
        if (sub == c_bounds) return cmd_bounds(cfg);
        if (sub == c_fig2) return cmd_figure2(cfg);
        if (sub == c_verify) return cmd_verify(cfg);
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const VerificationError& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
}
