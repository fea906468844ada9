#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lwpot/closedform.hpp"
#include "lwpot/oracle.hpp"

using namespace lwpot;
namespace orc = lwpot::oracle;

TEST_CASE("bisect_w: independent route agrees with itself-defining identity") {
    for (double t : {-0.36, -0.2, -0.05, -1e-4, 0.5, 3.0}) {
        if (t < 0.0) {
            const double w = orc::bisect_w(specfun::WBranch::principal, t);
            CHECK(w * std::exp(w) == doctest::Approx(t).epsilon(1e-13));
            const double wl = orc::bisect_w(specfun::WBranch::lower, t);
            CHECK(wl * std::exp(wl) == doctest::Approx(t).epsilon(1e-12));
            CHECK(wl <= -1.0);
        } else {
            const double w = orc::bisect_w(specfun::WBranch::principal, t);
            CHECK(w * std::exp(w) == doctest::Approx(t).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(orc::bisect_w(specfun::WBranch::principal, -0.4), DomainError);
    CHECK_THROWS_AS(orc::bisect_w(specfun::WBranch::lower, 0.1), DomainError);
}

TEST_CASE("numerov: free particle matches sinh from the same start") {
    PhysicalParams p = PhysicalParams::singular(0.0, 1.0);
    const double E = -0.5, k = 1.0;
    orc::ShootingConfig cfg;
    cfg.x_max = 8.0;
    cfg.steps = 8000;
    const GridFunction g = orc::numerov_integrate(E, p, cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); i += 400) {
        const double exact = std::sinh(k * g.xs[i]) / k;
        worst = std::max(worst, std::abs(g.values[i] - exact) / std::max(1e-4, exact));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("numerov: regular start is fourth-order accurate in x_min") {
    // The start-series truncation begins at O(x^4).  Halving the launch
    // point must shrink the defect against an independent regular solution
    // (assembled from the closed form so that psi(0) = 0) by ~2^4.
    const PhysicalParams p = PhysicalParams::figure2();
    const double E = -1.0;
    namespace cf = lwpot::closedform;
    const double b1 = cf::general_solution_psi(0.0, E, p, {1.0, 0.0}, SignPair{});
    const double b2 = cf::general_solution_psi(0.0, E, p, {0.0, 1.0}, SignPair{});
    const cf::SolutionCoefficients reg{b2, -b1};
    auto reference = [&](double x) { return cf::general_solution_psi(x, E, p, reg, SignPair{}); };

    const double k2m = p.kappa2m();
    const double A = std::sqrt(p.sigma / 2.0) * p.V0;
    const double B = 2.0 * p.V0 / 3.0;
    const double C = -(p.V0 / 12.0) * std::sqrt(2.0 / p.sigma);
    auto series = [&](double x) {
        return x - (4.0 / 15.0) * k2m * A * std::pow(x, 2.5) +
               (k2m * (B - E) / 6.0) * x * x * x + (4.0 / 35.0) * k2m * C * std::pow(x, 3.5);
    };
    const double norm = series(1e-7) / reference(1e-7);
    auto defect = [&](double x) { return std::abs(series(x) - norm * reference(x)); };
    const double d1 = defect(0.032), d2 = defect(0.016), d4 = defect(0.008);
    const double order1 = std::log2(d1 / d2), order2 = std::log2(d2 / d4);
    CHECK(order1 >= 3.5);
    CHECK(order1 <= 4.6);
    CHECK(order2 >= 3.5);
    CHECK(order2 <= 4.6);
}

TEST_CASE("numerov: renormalization bookkeeping in deep forbidden regions") {
    const PhysicalParams p = PhysicalParams::figure2();
    orc::ShootingConfig cfg;
    cfg.steps = 20000;
    const orc::NumerovResult r = orc::numerov_run(-400.0, p, cfg);
    CHECK(r.log_scale > 0.0);  // the guard fired
    CHECK(std::isfinite(r.end_value));
    CHECK(r.nodes == 0);  // far below the ground state
}

TEST_CASE("shooting: figure-2 eigenvalues against frozen goldens") {
    const PhysicalParams p = PhysicalParams::figure2();
    const auto es = orc::shooting_eigenvalues(p, orc::ShootingConfig{});
    REQUIRE(es.size() == 3);
    const double golden[3] = {-1.3578613764532796, -0.31154008464256731,
                              -0.045415238584682067};
    for (int i = 0; i < 3; ++i)
        CHECK(es[i] == doctest::Approx(golden[i]).epsilon(1e-6));
    CHECK(es[0] < es[1]);
    CHECK(es[1] < es[2]);
}

TEST_CASE("shooting: no well, no states") {
    CHECK(orc::shooting_eigenvalues(PhysicalParams::singular(0.0, 1.0), orc::ShootingConfig{})
              .empty());
}

TEST_CASE("zero-energy node count") {
    CHECK(orc::zero_energy_node_count(PhysicalParams::figure2()) == 3);
    CHECK(orc::zero_energy_node_count(PhysicalParams::singular(1.0, 1.0)) == 0);
}

TEST_CASE("schrodinger_residual: free solution and controls") {
    PhysicalParams p = PhysicalParams::singular(0.0, 1.0);
    const double E = -0.5, k = 1.0;
    GridFunction g;
    for (int i = 0; i <= 2000; ++i) {
        const double x = 0.1 + i * (6.0 - 0.1) / 2000;
        g.xs.push_back(x);
        g.values.push_back(std::sinh(k * x));
    }
    const auto rep = orc::schrodinger_residual_report(g, E, p);
    CHECK(rep.residual < 1e-9);

    GridFunction junk = g;
    for (auto& v : junk.values) v = std::cos(v) + 2.0;
    CHECK(orc::schrodinger_residual(junk, E, p) > 1e-3);

    GridFunction tiny;
    tiny.xs = {0.1, 0.2, 0.3};
    tiny.values = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(orc::schrodinger_residual(tiny, E, p), DomainError);
}

TEST_CASE("schrodinger_residual: coarse grids are flagged") {
    PhysicalParams p = PhysicalParams::figure2();
    GridFunction g;
    for (int i = 0; i <= 40; ++i) {  // far too coarse for the head
        const double x = 0.05 + i * 0.25;
        g.xs.push_back(x);
        g.values.push_back(std::exp(-x));
    }
    const auto rep = orc::schrodinger_residual_report(g, -1.0, p);
    CHECK(rep.truncation_bound > 0.0);
}

TEST_CASE("wronskian: validation") {
    GridFunction a, b;
    a.xs = {1.0, 2.0, 3.0};
    a.values = {1.0, 1.0, 1.0};
    b = a;
    CHECK_THROWS_AS(orc::wronskian(a, b), DomainError);  // no derivatives
    a.derivatives = {0.0, 0.0, 0.0};
    b.derivatives = {0.0, 0.0, 0.0};
    b.xs = {1.0, 2.0, 3.5};
    CHECK_THROWS_AS(orc::wronskian(a, b), DomainError);  // grid mismatch
    b.xs = a.xs;
    const GridFunction w = orc::wronskian(a, a);
    for (double v : w.values) CHECK(v == 0.0);
}

TEST_CASE("count_sign_changes skips excluded head and exact zeros") {
    GridFunction f;
    f.xs = {0.5e-6, 1.0, 2.0, 3.0, 4.0, 5.0};
    f.values = {-5.0, 1.0, 0.0, -1.0, 1.0, 1.0};
    CHECK(orc::count_sign_changes(f, 1e-6) == 2);  // the head sample is ignored
    CHECK(orc::count_sign_changes(f, 0.0) == 3);
}
