#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lwpot/spectrum.hpp"

using namespace lwpot;
namespace sp = lwpot::spectrum;

namespace {
constexpr double kFig2Golden[3] = {-1.3578613764532796, -0.31154008464256731,
                                   -0.045415238584682067};
}

TEST_CASE("spectrum_function: asymptotic plateau and domain") {
    const PhysicalParams p = PhysicalParams::figure2();
    CHECK(std::abs(sp::spectrum_function(-1e4 * p.V0, p) - 1.0) < 0.05);
    CHECK_THROWS_AS(sp::spectrum_function(0.0, p), DomainError);
    CHECK_THROWS_AS(sp::spectrum_function(1.0, p), DomainError);
    // F changes sign between the plateau and the first pole region
    CHECK(sp::spectrum_function(-1.0, p) < 1.0);
}

TEST_CASE("find_bound_states: figure-2 spectrum") {
    const PhysicalParams p = PhysicalParams::figure2();
    const sp::SpectrumResult r = sp::find_bound_states(p);
    REQUIRE(r.exact_n == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(r.energies[k] == doctest::Approx(kFig2Golden[k]).epsilon(1e-8));
        CHECK(r.roots[k].node_count == k);
        CHECK(r.roots[k].f_residual < 1e-6);
        CHECK(r.roots[k].bracket_lo <= r.energies[k]);
        CHECK(r.roots[k].bracket_hi >= r.energies[k]);
    }
    CHECK(r.energies[0] < r.energies[1]);
    CHECK(r.energies[1] < r.energies[2]);
    CHECK(r.bargmann == 27.0);
    // the scan must not report the spectrum-function poles as roots
    for (double pole : {-4.5067593, -0.79012554, -0.18208789, -0.015678294})
        for (double e : r.energies) CHECK(std::abs(e - pole) > 1e-3);
}

TEST_CASE("find_bound_states: preconditions") {
    PhysicalParams p = PhysicalParams::figure2();
    p.V0 = -1.0;
    p.V1 = 1.0;
    CHECK_THROWS_AS(sp::find_bound_states(p), DomainError);
    CHECK_THROWS_AS(sp::find_bound_states(PhysicalParams::singular(0.0, 1.0)), DomainError);
}

TEST_CASE("count_nodes_zero_energy") {
    CHECK(sp::count_nodes_zero_energy(PhysicalParams::figure2()) == 3);
    CHECK(sp::count_nodes_zero_energy(PhysicalParams::singular(0.0, 1.0)) == 0);
    // golden count for V0 = sigma = 1 fixed by the shooting oracle
    CHECK(sp::count_nodes_zero_energy(PhysicalParams::singular(1.0, 1.0)) == 0);
    CHECK(sp::count_nodes_zero_energy(PhysicalParams::singular(1.0, 3.0)) == 2);
}

TEST_CASE("bound-state-count estimates") {
    const PhysicalParams p = PhysicalParams::figure2();
    CHECK(sp::bargmann_bound(p) == 27.0);
    CHECK(sp::bargmann_integral(p) == doctest::Approx(27.0).epsilon(1e-5));
    CHECK(std::abs(sp::calogero_bound(p) - 7.348469228349534) <= 1e-12);
    CHECK(sp::chadan_estimate(p) == doctest::Approx(3.674234614174767).epsilon(1e-12));

    const PhysicalParams none = PhysicalParams::singular(0.0, 2.0);
    CHECK(sp::bargmann_bound(none) == 0.0);
    CHECK(sp::calogero_bound(none) == 0.0);
    CHECK(sp::chadan_estimate(none) == 0.0);

    // linearity of the Bargmann closed form in V0
    const PhysicalParams half = PhysicalParams::singular(1.5, 3.0);
    CHECK(sp::bargmann_bound(half) == doctest::Approx(13.5));
    CHECK(sp::bargmann_integral(half) == doctest::Approx(13.5).epsilon(1e-5));
}

TEST_CASE("transiently bound: count matches across methods near threshold") {
    // V0 -> 0 with sigma = 1: no bound state survives
    const sp::SpectrumResult weak = sp::find_bound_states(PhysicalParams::singular(0.05, 1.0));
    CHECK(weak.exact_n == 0);
    CHECK(sp::count_nodes_zero_energy(PhysicalParams::singular(0.05, 1.0)) == 0);
    // a slightly larger well on a long scale holds exactly one state
    const sp::SpectrumResult one = sp::find_bound_states(PhysicalParams::singular(0.5, 3.0));
    CHECK(one.exact_n == 1);
}

TEST_CASE("scan policy validation") {
    const PhysicalParams p = PhysicalParams::figure2();
    sp::ScanPolicy bad;
    bad.e_floor = -1.0;
    bad.e_top = -2.0;
    CHECK_THROWS_AS(sp::find_bound_states(p, bad), DomainError);
    sp::ScanPolicy few;
    few.points = 4;
    CHECK_THROWS_AS(sp::find_bound_states(p, few), DomainError);
}
