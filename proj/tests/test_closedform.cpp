#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lwpot/closedform.hpp"
#include "lwpot/oracle.hpp"
#include "lwpot/quadrature.hpp"
#include "lwpot/specfun.hpp"

using namespace lwpot;
namespace cf = lwpot::closedform;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = a + (b - a) * i / (n - 1);
    return xs;
}

constexpr double kFig2Ground = -1.3578613764532796;

}  // namespace

TEST_CASE("chg_parameters: hand-checkable point and limits") {
    const PhysicalParams p = PhysicalParams::figure2();
    const cf::ChgTriple t = cf::chg_parameters(-1.0, p, SignPair{+1, +1});
    CHECK(t.c == doctest::Approx(std::sqrt(72.0)).epsilon(1e-15));
    CHECK(t.s0 == doctest::Approx(std::sqrt(288.0)).epsilon(1e-15));
    CHECK(t.a == doctest::Approx(-72.0 / (4.0 * std::sqrt(288.0))).epsilon(1e-15));
    CHECK(t.a == doctest::Approx(-1.0606601717798212).epsilon(1e-12));

    // E -> V0 from below pushes s0 -> 0+ and a -> -inf; with the bound
    // regime also demanding E < 0 this corner is reachable for V0 < 0
    const PhysicalParams rep = PhysicalParams::singular(-1.0, 1.0);
    const cf::ChgTriple edge = cf::chg_parameters(-1.0 - 1e-12, rep, SignPair{+1, +1});
    CHECK(edge.s0 < 1e-5);
    CHECK(edge.a < -1e5);

    // sign flips negate c and s0; the formula ties a to them
    const cf::ChgTriple m = cf::chg_parameters(-1.0, p, SignPair{-1, -1});
    CHECK(m.c == -t.c);
    CHECK(m.s0 == -t.s0);
    CHECK(m.a == doctest::Approx(-(m.c - m.s0) * (m.c - m.s0) / (4.0 * m.s0)).epsilon(1e-15));
    CHECK(m.a == doctest::Approx(-t.a).epsilon(1e-15));
}

TEST_CASE("chg_parameters: domain errors") {
    const PhysicalParams p = PhysicalParams::figure2();
    CHECK_THROWS_AS(cf::chg_parameters(0.0, p, SignPair{}), DomainError);
    CHECK_THROWS_AS(cf::chg_parameters(0.5, p, SignPair{}), DomainError);
    PhysicalParams bad = p;
    bad.V1 = 0.0;  // not the z0 = 1, V1 = -V0 family
    CHECK_THROWS_AS(cf::chg_parameters(-1.0, bad, SignPair{}), DomainError);
}

TEST_CASE("general solution: trivial and degenerate inputs") {
    const PhysicalParams p = PhysicalParams::figure2();
    CHECK(cf::general_solution_psi(1.0, -1.0, p, {0.0, 0.0}, SignPair{}) == 0.0);
    // linearity in the coefficients
    const double a = cf::general_solution_psi(1.3, -1.0, p, {1.0, 0.0}, SignPair{});
    const double b = cf::general_solution_psi(1.3, -1.0, p, {0.0, 1.0}, SignPair{});
    const double ab = cf::general_solution_psi(1.3, -1.0, p, {2.0, -0.5}, SignPair{});
    CHECK(ab == doctest::Approx(2.0 * a - 0.5 * b).epsilon(1e-12));
    // the Tricomi part is real only for sign_s0 = +1
    CHECK_THROWS_AS(cf::general_solution_psi(1.0, -1.0, p, {1.0, 0.5}, SignPair{+1, -1}),
                    DomainError);
    CHECK_THROWS_AS(cf::general_solution_psi(-0.5, -1.0, p, {1.0, 0.0}, SignPair{}),
                    DomainError);  // below the domain boundary
}

TEST_CASE("general solution: Schrodinger residual on a dense grid") {
    const PhysicalParams p = PhysicalParams::figure2();
    const double E = -0.8;
    const auto xs = linspace(0.1, 15.0, 4001);
    const GridFunction psi = cf::general_solution_grid(xs, E, p, {1.0, 0.25}, SignPair{});
    CHECK(oracle::schrodinger_residual(psi, E, p) < 1e-7);
}

TEST_CASE("general solution: grid and pointwise paths agree") {
    const PhysicalParams p = PhysicalParams::figure2();
    const double E = -1.7;
    const auto xs = linspace(0.3, 9.0, 41);
    const GridFunction g = cf::general_solution_grid(xs, E, p, {0.7, 0.2}, SignPair{});
    for (std::size_t i = 0; i < xs.size(); i += 8) {
        const cf::PsiEval e = cf::general_solution_eval(xs[i], E, p, {0.7, 0.2}, SignPair{});
        CHECK(g.values[i] == doctest::Approx(e.psi).epsilon(1e-10));
        CHECK(g.derivatives[i] == doctest::Approx(e.dpsi_dx).epsilon(1e-9));
    }
}

TEST_CASE("bound state: tail power, boundary value at a root, node structure") {
    const PhysicalParams p = PhysicalParams::figure2();
    const cf::ChgTriple t = cf::chg_parameters(kFig2Ground, p, SignPair{+1, +1});

    // psi_B ~ z^{c/2} ((c-s0)/2 + a s0/c) as z -> 0
    const double x_far = 25.0;
    const double z = potential::map_z(PotentialKind::singular, x_far, p);
    const double predicted =
        std::pow(z, 0.5 * t.c) * (0.5 * (t.c - t.s0) + t.a * t.s0 / t.c);
    CHECK(cf::bound_state_psi(x_far, kFig2Ground, p) ==
          doctest::Approx(predicted).epsilon(1e-6));

    // at the spectrum root the wavefunction vanishes at the origin...
    const double at_origin = cf::bound_state_psi(0.0, kFig2Ground, p);
    double scale = 0.0;
    for (double x : {0.5, 1.0, 2.0}) scale = std::max(scale, std::abs(cf::bound_state_psi(x, kFig2Ground, p)));
    CHECK(std::abs(at_origin) < 1e-9 * scale);

    // ...and the ground state has no interior nodes
    const auto xs = linspace(1e-4, 20.0, 3000);
    const GridFunction psi = cf::bound_state_grid(xs, kFig2Ground, p);
    CHECK(oracle::count_sign_changes(psi, 1e-6) == 0);
}

TEST_CASE("bound state boundary value is proportional to the spectrum function") {
    // the z = 1 bracket equals (c-s0)/2 M(a;c;s0) F(E)
    const PhysicalParams p = PhysicalParams::figure2();
    for (double E : {-2.3, -0.9, -0.17}) {
        const cf::ChgTriple t = cf::chg_parameters(E, p, SignPair{+1, +1});
        const double m = specfun::kummer_m(t.a, t.c, t.s0);
        const double m1 = specfun::kummer_m(1.0 + t.a, 1.0 + t.c, t.s0);
        const double F = 1.0 + (t.s0 - t.c) / (2.0 * t.c) * m1 / m;
        CHECK(cf::bound_state_psi(0.0, E, p) ==
              doctest::Approx(std::exp(-0.5 * t.s0) * 0.5 * (t.c - t.s0) * m * F)
                  .epsilon(1e-12));
    }
}

TEST_CASE("zero-energy solution: trivial input, regular combination, free limit") {
    const PhysicalParams p = PhysicalParams::figure2();
    CHECK(cf::zero_energy_psi(1.0, p, {0.0, 0.0}) == 0.0);

    const cf::SolutionCoefficients reg = cf::zero_energy_regular_coefficients(p);
    CHECK(std::abs(cf::zero_energy_psi(0.0, p, reg)) < 1e-10);

    // figure-2 parameters: three nodes away from the origin
    const auto xs = linspace(1e-4, p.sigma * std::log(1e8), 6000);
    const GridFunction psi = cf::zero_energy_grid(xs, p, reg);
    CHECK(oracle::count_sign_changes(psi, 1e-6 * p.sigma) == 3);

    // V0 -> 0: the Kummer-led zero-energy solution approaches a constant
    PhysicalParams weak = PhysicalParams::singular(1e-8, 1.0);
    for (double x : {0.5, 2.0, 6.0})
        CHECK(cf::zero_energy_psi(x, weak, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("normalization constant really normalizes") {
    const PhysicalParams p = PhysicalParams::figure2();
    const double N = cf::normalization_constant(kFig2Ground, p);
    CHECK(N > 0.0);
    auto f = [&](double x) {
        const double v = cf::bound_state_psi(x, kFig2Ground, p) / N;
        return v * v;
    };
    const auto I = quadrature::integrate_sqrt_left(f, 0.0, 60.0, 1e-9, 1e-300);
    CHECK(I.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("fundamental pair: constant Wronskian") {
    const PhysicalParams p = PhysicalParams::figure1();
    const double E = -0.35;
    const auto xs = linspace(0.2, 8.0, 200);
    const GridFunction p1 = cf::general_solution_grid(xs, E, p, {1.0, 0.0}, SignPair{});
    const GridFunction p2 = cf::general_solution_grid(xs, E, p, {0.0, 1.0}, SignPair{});
    const GridFunction w = oracle::wronskian(p1, p2);
    for (std::size_t i = 1; i < w.size(); ++i)
        CHECK(w.values[i] == doctest::Approx(w.values[0]).epsilon(1e-9));
}
