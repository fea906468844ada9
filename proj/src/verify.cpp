#include "lwpot/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "lwpot/closedform.hpp"
#include "lwpot/heun.hpp"
#include "lwpot/oracle.hpp"
#include "lwpot/potential.hpp"
#include "lwpot/quadrature.hpp"
#include "lwpot/specfun.hpp"
#include "lwpot/spectrum.hpp"

namespace lwpot::verify {

namespace {

namespace sf = lwpot::specfun;
namespace cf = lwpot::closedform;
namespace sp = lwpot::spectrum;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Analytic eigenvalues of the figure-2 configuration, frozen from the
// shooting oracle at release time (the fixture for regression pinning).
constexpr double kFig2Golden[3] = {-1.3578613764532796, -0.31154008464256731,
                                   -0.045415238584682067};

struct Failure {
    std::string message;
};

void require(bool ok, const std::string& msg) {
    if (!ok) throw Failure{msg};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = a + (b - a) * i / (n - 1);
    return xs;
}

// ---------------------------------------------------------------- specfun --

std::string check_lambert_identity(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double inv_e = 0.36787944117144232160;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = uni(rng);
        const double t = -inv_e + (50.0 + inv_e) * u * u * u;
        const double w = sf::lambert_w(sf::WBranch::principal, t);
        require(w >= -1.0, "principal branch value below -1 at t=" + fmt(t));
        const double r = std::abs(w * std::exp(w) - t);
        worst = std::max(worst, r / (8.0 * kEps * std::max(1.0, std::abs(t))));
        require(r <= 8.0 * kEps * std::max(1.0, std::abs(t)),
                "principal-branch defining identity violated at t=" + fmt(t));
    }
    for (int i = 0; i < 10000; ++i) {
        const double u = uni(rng);
        const double t = (i % 2 == 0) ? -inv_e * std::exp(-27.6 * u)
                                      : -inv_e + inv_e * 0.5 * u * u * u;
        const double w = sf::lambert_w(sf::WBranch::lower, t);
        require(w <= -1.0, "lower branch value above -1 at t=" + fmt(t));
        const double r = std::abs(w * std::exp(w) - t);
        worst = std::max(worst, r / (8.0 * kEps * std::max(1.0, std::abs(t))));
        require(r <= 8.0 * kEps * std::max(1.0, std::abs(t)),
                "lower-branch defining identity violated at t=" + fmt(t));
    }
    return "max residual/(8 eps max(1,|t|)) = " + fmt(worst);
}

std::string check_kummer_transformation(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(-5.0, 5.0), uc(0.3, 8.0), ux(0.0, 30.0);
    double worst = 0.0;
    for (int i = 0; i < 400; ++i) {
        const double a = ua(rng), c = uc(rng), x = ux(rng) + 1e-3;
        const double lhs = sf::kummer_m(a, c, x);
        const double rhs = std::exp(x) * sf::kummer_m(c - a, c, -x);
        worst = std::max(worst, rel_diff(lhs, rhs));
        require(rel_diff(lhs, rhs) <= 1e-10,
                "Kummer transformation off at a=" + fmt(a) + " c=" + fmt(c) + " x=" + fmt(x));
    }
    // independent route: raw Taylor sum of M(a;c;-x) against the transformed
    // evaluation, restricted to draws where the alternating series itself is
    // well enough conditioned to certify 1e-10
    int tested = 0;
    for (int i = 0; tested < 200 && i < 2000; ++i) {
        const double a = ua(rng), c = uc(rng), x = ux(rng) * 8.0 / 30.0 + 1e-3;
        double term = 1.0, sum = 1.0, peak = 1.0;
        for (int k = 0; k < 4000 && std::abs(term) > 1e-18 * std::abs(sum); ++k) {
            term *= (a + k) / (c + k) * (-x) / (k + 1);
            sum += term;
            peak = std::max(peak, std::abs(term));
        }
        if (peak * kEps > 1e-11 * std::abs(sum)) continue;  // oracle accuracy insufficient
        ++tested;
        worst = std::max(worst, rel_diff(sum, sf::kummer_m(a, c, -x)));
        require(rel_diff(sum, sf::kummer_m(a, c, -x)) <= 1e-10,
                "transformed M disagrees with the direct alternating series at a=" + fmt(a) +
                    " c=" + fmt(c) + " x=" + fmt(-x));
    }
    return "max relative discrepancy = " + fmt(worst) + " (" + std::to_string(tested) +
           " conditioned oracle draws)";
}

std::string check_contiguous_relation(std::uint64_t seed) {
    // DLMF 13.3.1:  (b-a) M(a-1,b,x) + (2a-b+x) M(a,b,x) - a M(a+1,b,x) = 0
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(-4.0, 4.0), ub(0.5, 10.0), ux(0.1, 25.0);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const double a = ua(rng), b = ub(rng), x = ux(rng);
        const double t1 = (b - a) * sf::kummer_m(a - 1.0, b, x);
        const double t2 = (2.0 * a - b + x) * sf::kummer_m(a, b, x);
        const double t3 = -a * sf::kummer_m(a + 1.0, b, x);
        const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
        worst = std::max(worst, std::abs(t1 + t2 + t3) / scale);
        require(std::abs(t1 + t2 + t3) / scale <= 1e-10,
                "contiguous relation violated at a=" + fmt(a) + " b=" + fmt(b) + " x=" + fmt(x));
    }
    return "max normalized residual = " + fmt(worst);
}

std::string check_u_strategies(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    // the forced connection formula cancels e^x-sized terms down to x^{-a};
    // keep the sample where that still leaves 1e-8 certifiable headroom
    std::uniform_real_distribution<double> ua(-2.5, 2.5), ufrac(0.1, 0.9), ux(0.5, 5.0);
    std::uniform_int_distribution<int> uk(0, 5);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double a = ua(rng), c = uk(rng) + ufrac(rng), x = ux(rng);
        sf::ChgEvalPolicy conn, ode;
        conn.u_strategy = sf::ChgEvalPolicy::UStrategy::connection_formula;
        ode.u_strategy = sf::ChgEvalPolicy::UStrategy::ode_inward;
        const double u1 = sf::tricomi_u(a, c, x, conn);
        const double u2 = sf::tricomi_u(a, c, x, ode);
        worst = std::max(worst, rel_diff(u1, u2));
        require(rel_diff(u1, u2) <= 1e-8,
                "U strategies disagree at a=" + fmt(a) + " c=" + fmt(c) + " x=" + fmt(x));
    }
    return "max relative disagreement = " + fmt(worst);
}

std::string check_chg_ode_residual(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(-3.0, 3.0), ufrac(0.15, 0.85), ux(0.5, 8.0);
    std::uniform_int_distribution<int> uk(0, 4);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double a = ua(rng), c = uk(rng) + ufrac(rng), x = ux(rng);
        {
            const double m = sf::kummer_m(a, c, x);
            const double mp = (a / c) * sf::kummer_m(a + 1.0, c + 1.0, x);
            const double mpp =
                a * (a + 1.0) / (c * (c + 1.0)) * sf::kummer_m(a + 2.0, c + 2.0, x);
            const double t1 = x * mpp, t2 = (c - x) * mp, t3 = -a * m;
            const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
            worst = std::max(worst, std::abs(t1 + t2 + t3) / scale);
            require(std::abs(t1 + t2 + t3) / scale <= 1e-7, "1F1 does not satisfy its ODE");
        }
        {
            const double u = sf::tricomi_u(a, c, x);
            const double up = -a * sf::tricomi_u(a + 1.0, c + 1.0, x);
            const double upp = a * (a + 1.0) * sf::tricomi_u(a + 2.0, c + 2.0, x);
            const double t1 = x * upp, t2 = (c - x) * up, t3 = -a * u;
            const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
            worst = std::max(worst, std::abs(t1 + t2 + t3) / scale);
            require(std::abs(t1 + t2 + t3) / scale <= 1e-7, "U does not satisfy its ODE");
        }
    }
    return "max normalized ODE residual = " + fmt(worst);
}

// -------------------------------------------------------------- potential --

std::string check_transform_monotonicity() {
    const PhysicalParams p = PhysicalParams::figure1();
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10000; ++i) {
        const double x = 1e-6 + (30.0 * p.sigma - 1e-6) * i / 9999.0;
        const double z = potential::map_z(PotentialKind::singular, x, p);
        require(z < prev, "z(x) not strictly decreasing at x=" + fmt(x));
        prev = z;
    }
    return "z strictly decreasing on a 1e4-point grid";
}

std::string check_inverse_consistency(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(1e-4, 20.0);
    const PhysicalParams p = PhysicalParams::figure2();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = ux(rng) * p.sigma;
        const double z = potential::map_z(PotentialKind::singular, x, p);
        const double back = potential::x_from_z(PotentialKind::singular, z, p);
        const double err = std::abs(back - x) / std::max(1.0, std::abs(x));
        worst = std::max(worst, err);
        require(err <= 1e-12, "inverse transform off at x=" + fmt(x));
    }
    return "max |x(z(x)) - x| / max(1,|x|) = " + fmt(worst);
}

std::string check_origin_asymptote() {
    const PhysicalParams p = PhysicalParams::figure1();
    const double target = std::sqrt(p.sigma / 2.0) * p.V0;
    double prev = std::numeric_limits<double>::infinity();
    std::ostringstream os;
    for (int k = 2; k <= 8; ++k) {
        const double x = std::pow(10.0, -k);
        const double V = potential::eval_potential(PotentialKind::singular, x, p);
        const double d = std::abs(V * std::sqrt(x) + target);
        require(d < prev, "origin deficit not monotone at x=1e-" + std::to_string(k));
        prev = d;
    }
    os << "deficit decreases monotonically to " << fmt(prev) << " at x=1e-8";
    return os.str();
}

std::string check_tail_asymptote() {
    const PhysicalParams p = PhysicalParams::figure1();
    double worst = 0.0;
    for (int i = 0; i <= 50; ++i) {
        const double x = 10.0 * p.sigma + i * (30.0 * p.sigma) / 50.0;
        const double V = potential::eval_potential(PotentialKind::singular, x, p);
        const double ratio = V / potential::asymptote_tail(p, x);
        worst = std::max(worst, std::abs(ratio - 1.0));
        require(std::abs(ratio - 1.0) <= 0.01, "tail ratio off at x=" + fmt(x));
    }
    return "max |V/tail - 1| = " + fmt(worst) + " for x >= 10 sigma";
}

std::string check_specialization_chain(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(1e-3, 15.0);
    PhysicalParams singular = PhysicalParams::figure1();
    PhysicalParams general = singular;  // same fields; drive through m1_variant
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = ux(rng);
        const double a = potential::eval_potential(PotentialKind::singular, x, singular);
        const double b = potential::eval_potential(PotentialKind::m1_variant, x, general);
        // rounding floor of the general V0 + V1/(1 - z) route is set by the
        // V0-sized terms it subtracts, not by the (possibly tiny) result
        const double floor = 4.0 * kEps * (std::abs(general.V0) + std::abs(general.V1) +
                                           std::abs(a));
        worst = std::max(worst, std::abs(a - b) / floor);
        require(std::abs(a - b) <= floor, "specialization chain broken at x=" + fmt(x));
    }
    return "max gap / rounding floor = " + fmt(worst);
}

// ------------------------------------------------------------------- heun --

heun::DchParams generic_m1_params(const PhysicalParams& p, double E) {
    return heun::dch_params_for(PotentialKind::m1_variant, E, p, SignPair{+1, +1});
}

std::string check_apparent_singularity() {
    PhysicalParams p;
    p.V0 = 1.7;
    p.V1 = -0.9;
    p.sigma = 1.2;
    p.z0 = 1.0;
    p.x0 = 0.0;
    const heun::DchParams d = generic_m1_params(p, 0.3);
    const double z0 = d.apparent_singularity();

    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) {
        const double z = 0.5 + i * (1.0 / 400.0);
        if (std::abs(z - z0) > 1e-9) grid.push_back(z);
    }
    const heun::DcheSolution sol = heun::solve_dche(d, grid.front(), 0.7, -0.4, grid);
    const heun::DeformedFunction w = heun::deformed_from_dche(d, sol);

    // cubic extrapolation onto z0 from both sides
    auto extrapolate = [&](bool left, const std::vector<double>& vals) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < w.z.size(); ++i) {
            if (left ? (w.z[i] < z0) : (w.z[i] > z0)) pts.push_back({w.z[i], vals[i]});
        }
        if (left) {
            pts.assign(pts.end() - 4, pts.end());
        } else {
            pts.assign(pts.begin(), pts.begin() + 4);
        }
        double acc = 0.0;  // Lagrange at z0
        for (int i = 0; i < 4; ++i) {
            double li = 1.0;
            for (int j = 0; j < 4; ++j)
                if (j != i) li *= (z0 - pts[j].first) / (pts[i].first - pts[j].first);
            acc += li * pts[i].second;
        }
        return acc;
    };
    // scale by the neighborhood magnitude: w' legitimately passes through 0
    // at the apparent singularity, so a pointwise relative test degenerates
    auto near_scale = [&](const std::vector<double>& vals) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.z.size(); ++i)
            if (std::abs(w.z[i] - z0) < 0.06) s = std::max(s, std::abs(vals[i]));
        return s;
    };
    const double wl = extrapolate(true, w.w), wr = extrapolate(false, w.w);
    const double wpl = extrapolate(true, w.wp), wpr = extrapolate(false, w.wp);
    const double gap_w = std::abs(wl - wr) / near_scale(w.w);
    const double gap_wp = std::abs(wpl - wpr) / near_scale(w.wp);
    require(gap_w <= 1e-6, "w jumps across the apparent singularity by " + fmt(gap_w));
    require(gap_wp <= 1e-6, "w' jumps across the apparent singularity by " + fmt(gap_wp));
    return "w and w' continuous across z0 to " + fmt(std::max(gap_w, gap_wp));
}

std::string check_pipeline_equivalence() {
    const PhysicalParams p = PhysicalParams::figure2();
    const double E = -1.0;
    const auto xs = linspace(0.3, 12.0, 60);

    const cf::SolutionCoefficients coef{1.0, 0.3};
    const GridFunction exact = cf::general_solution_grid(xs, E, p, coef, SignPair{+1, +1});
    const GridFunction pipe = heun::assemble_psi(PotentialKind::singular, E, p, xs,
                                                 exact.values.front(), exact.derivatives.front());
    double scale = 0.0, worst = 0.0;
    for (double v : exact.values) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < xs.size(); ++i)
        worst = std::max(worst, std::abs(pipe.values[i] - exact.values[i]) / scale);
    require(worst <= 1e-8, "Heun pipeline deviates from the closed form by " + fmt(worst));

    // deformed-equation chain on a z grid reaching the z -> 0 region
    const heun::DchParams d = generic_m1_params(p, E);
    std::vector<double> zg;
    for (int i = 0; i <= 300; ++i)
        zg.push_back(std::exp(std::log(1e-3) + (std::log(0.95) - std::log(1e-3)) * i / 300.0));
    const heun::DcheSolution sol = heun::solve_dche(d, zg.back(), 1.0, 0.5, zg);
    const heun::DeformedFunction w = heun::deformed_from_dche(d, sol);
    const double dres = heun::deformed_residual(d, w);
    require(dres <= 1e-6, "deformed-equation residual too large: " + fmt(dres));
    return "pipeline gap " + fmt(worst) + ", deformed residual " + fmt(dres);
}

std::string check_reduction_identity(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
        PhysicalParams p;
        p.sigma = 0.5 + 2.5 * uni(rng);
        p.V0 = -2.0 + 6.0 * uni(rng);
        p.V1 = (uni(rng) < 0.5 ? -1.0 : 1.0) * (0.2 + 2.8 * uni(rng));
        p.z0 = (uni(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 1.5 * uni(rng));
        p.x0 = -1.0 + 2.0 * uni(rng);
        const double E = p.V0 - (0.1 + 5.0 * uni(rng));
        const PotentialKind kind =
            (i % 2 == 0) ? PotentialKind::m1_variant : PotentialKind::m2_variant;
        const SignPair signs{uni(rng) < 0.5 ? +1 : -1, uni(rng) < 0.5 ? +1 : -1};

        std::vector<double> zg;
        for (int k = 0; k < 30; ++k) {
            const double z = 0.1 + 2.9 * k / 29.0;
            if (std::abs(z - p.z0) > 0.1 && std::abs(z) > 0.05) zg.push_back(z);
        }
        const heun::ReductionWitness wit = heun::verify_reduction(kind, p, E, zg, signs);
        worst = std::max(worst, wit.residual_norm);
        require(wit.residual_norm <= 1e-8,
                "reduction identity residual " + fmt(wit.residual_norm) + " on draw " +
                    std::to_string(i));
        require(wit.v_form_residual <= 1e-10, "rational potential form mismatch");
    }
    const auto roots = heun::m2_candidates();
    require(roots[0] == -1.0 && roots[1] == 3.0, "exponent quadratic roots are not {-1, 3}");
    return "max identity residual = " + fmt(worst) + "; m2 roots exactly {-1, 3}";
}

std::string check_deformed_negative_control() {
    const PhysicalParams p = PhysicalParams::figure2();
    const heun::DchParams d = generic_m1_params(p, -1.0);
    heun::DeformedFunction w;
    for (int i = 0; i <= 100; ++i) {
        const double z = 0.3 + 0.5 * i / 100.0;
        w.z.push_back(z);
        w.w.push_back(std::exp(z));
        w.wp.push_back(std::exp(z));
        w.wpp.push_back(std::exp(z));
    }
    const double r = heun::deformed_residual(d, w);
    require(r > 1e-2, "unrelated smooth function passes the deformed equation: " + fmt(r));
    return "negative control residual = " + fmt(r);
}

// ------------------------------------------------------------- closedform --

struct Tuple {
    PhysicalParams p;
    double E;
    cf::SolutionCoefficients coef;
};

Tuple random_tuple(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Tuple t;
    const double sigma = 0.5 + 1.5 * uni(rng);
    const double V0 = 0.5 + 4.5 * uni(rng);
    t.p = PhysicalParams::singular(V0, sigma);
    t.E = -(0.05 + 4.95 * uni(rng)) * V0;
    t.coef.C1 = 1.0;
    t.coef.C2 = (uni(rng) < 0.3) ? 0.0 : (uni(rng) - 0.5);
    return t;
}

// Piecewise-uniform grid covering [x_lo, x_hi] for finite-difference
// residual checks.  Within a block the spacing is constant, so the 5-point
// stencil keeps its symmetric fourth-order truncation; the spacing doubles
// from block to block as the resolution limit relaxes.  The local limit
// balances the truncation, driven near the origin by the steep derivatives
// of the -1/sqrt(x) head and elsewhere by the local wavenumber, against the
// h^-2 amplification of pointwise evaluation noise.
std::vector<std::vector<double>> residual_blocks(const PhysicalParams& p, double E, double x_lo,
                                                 double x_hi) {
    const double tau = 4e-9;  // per-point truncation budget
    const double A = std::sqrt(p.sigma / 2.0) * p.V0;
    const double k2m = p.kappa2m();
    auto h_of = [&](double x) {
        const double v_env = A / std::sqrt(x) + p.V0 * std::exp(-x / p.sigma);
        const double f = k2m * (std::abs(E) + v_env) + 1e-3;
        const double v4 = k2m * std::max(A * (105.0 / 16.0) * std::pow(x, -4.5),
                                         p.V0 * std::exp(-x / p.sigma) / std::pow(p.sigma, 4));
        return std::clamp(std::pow(90.0 * tau / (f * f + v4 / f), 0.25), 1e-4, 0.25);
    };
    std::vector<std::vector<double>> blocks;
    double x = x_lo;
    while (x < x_hi) {
        const double h = h_of(x);
        double xe = x;
        int count = 0;
        while (xe < x_hi) {  // scan ahead for where the spacing may double
            xe += h;
            ++count;
            if (h_of(xe) >= 2.0 * h && count >= 24) break;
        }
        xe = std::min(xe, x_hi);
        // exact linspace: a clipped trailing interval would break the
        // stencil symmetry right where the solution can be largest
        const int n = std::max(5, static_cast<int>(std::ceil((xe - x) / h)));
        std::vector<double> xs(n + 1);
        for (int i = 0; i <= n; ++i) xs[i] = x + (xe - x) * i / n;
        blocks.push_back(std::move(xs));
        x = xe;
    }
    return blocks;
}

// Max residual with one shared normalization across all blocks.
double blocked_residual(const PhysicalParams& p, double E, const cf::SolutionCoefficients& coef,
                        SignPair signs, double x_lo, double x_hi) {
    double abs_res = 0.0, norm = 0.0;
    for (const auto& xs : residual_blocks(p, E, x_lo, x_hi)) {
        const GridFunction psi = cf::general_solution_grid(xs, E, p, coef, signs);
        const auto rep = oracle::schrodinger_residual_report(psi, E, p);
        abs_res = std::max(abs_res, rep.abs_residual);
        norm = std::max(norm, rep.norm_scale);
    }
    return norm > 0.0 ? abs_res / norm : 0.0;
}

std::string check_schrodinger_residual(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Tuple t = random_tuple(rng);
        const double r = blocked_residual(t.p, t.E, t.coef, SignPair{+1, +1}, 0.05, 20.0);
        worst = std::max(worst, r);
        require(r <= 1e-7, "Schrodinger residual " + fmt(r) + " for V0=" + fmt(t.p.V0) +
                               " sigma=" + fmt(t.p.sigma) + " E=" + fmt(t.E) +
                               " C2=" + fmt(t.coef.C2));
    }
    return "max grid-norm residual over 20 tuples = " + fmt(worst);
}

std::string check_wronskian_constancy(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const Tuple t = random_tuple(rng);
        const auto xs = linspace(0.05, 12.0, 400);
        const GridFunction psi1 =
            cf::general_solution_grid(xs, t.E, t.p, {1.0, 0.0}, SignPair{+1, +1});
        const GridFunction psi2 =
            cf::general_solution_grid(xs, t.E, t.p, {0.0, 1.0}, SignPair{+1, +1});
        const GridFunction w = oracle::wronskian(psi1, psi2);
        double lo = w.values.front(), hi = lo;
        for (double v : w.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double spread = (hi - lo) / std::max(std::abs(hi), std::abs(lo));
        worst = std::max(worst, spread);
        require(spread <= 1e-8, "Wronskian drifts by " + fmt(spread) + " (V0=" + fmt(t.p.V0) +
                                    ", sigma=" + fmt(t.p.sigma) + ", E=" + fmt(t.E) + ")");
    }
    return "max relative Wronskian spread = " + fmt(worst);
}

std::string check_sign_pair_span() {
    const PhysicalParams p = PhysicalParams::figure2();
    const double E = -0.7;
    const auto xs = linspace(0.4, 10.0, 24);
    const GridFunction base1 = cf::general_solution_grid(xs, E, p, {1.0, 0.0}, SignPair{+1, +1});
    const GridFunction base2 = cf::general_solution_grid(xs, E, p, {0.0, 1.0}, SignPair{+1, +1});
    double worst = 0.0;
    for (const SignPair signs : {SignPair{-1, -1}, SignPair{+1, -1}, SignPair{-1, +1}}) {
        // the Tricomi part lives on s0 z > 0; real arithmetic confines it to
        // sign_s0 = +1, so flipped-s0 members are probed through their
        // Kummer-led solution
        const cf::SolutionCoefficients mix{1.0, signs.sign_s0 > 0 ? 0.4 : 0.0};
        const GridFunction tgt = cf::general_solution_grid(xs, E, p, mix, signs);
        // fit the target in the (+,+) fundamental system at two points
        const int i0 = 3, i1 = 15;
        const double det = base1.values[i0] * base2.values[i1] -
                           base2.values[i0] * base1.values[i1];
        const double A =
            (tgt.values[i0] * base2.values[i1] - base2.values[i0] * tgt.values[i1]) / det;
        const double B =
            (base1.values[i0] * tgt.values[i1] - tgt.values[i0] * base1.values[i1]) / det;
        double scale = 0.0;
        for (double v : tgt.values) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double fitted = A * base1.values[i] + B * base2.values[i];
            worst = std::max(worst, std::abs(fitted - tgt.values[i]) / scale);
        }
    }
    require(worst <= 1e-8, "sign-pair solutions leave the fundamental span by " + fmt(worst));
    return "max span deviation over sign pairs = " + fmt(worst);
}

std::string check_irreducibility_witness() {
    const PhysicalParams p = PhysicalParams::figure2();
    const double E = -1.0;
    const cf::ChgTriple t = cf::chg_parameters(E, p, SignPair{+1, +1});
    const auto xs = linspace(0.2, 8.0, 50);
    double mean = 0.0, m2 = 0.0;
    int n = 0;
    for (double x : xs) {
        const double psi = cf::bound_state_psi(x, E, p);
        const double z = -sf::lambert_w(sf::WBranch::principal,
                                        -std::exp(-(x + p.sigma) / p.sigma));
        const double single = std::pow(z, 0.5 * t.c) * std::exp(-0.5 * t.s0 * z) *
                              sf::kummer_m(t.a, t.c, t.s0 * z);
        const double ratio = psi / single;
        ++n;
        const double d = ratio - mean;
        mean += d / n;
        m2 += d * (ratio - mean);
    }
    const double rel_std = std::sqrt(m2 / n) / std::abs(mean);
    require(rel_std > 1e-2, "bound state is proportional to a single Kummer term");
    return "ratio rel. std = " + fmt(rel_std) + " (bounded away from 0)";
}

std::string check_zero_energy_continuity() {
    const PhysicalParams p = PhysicalParams::figure2();
    const double E = -1e-7 * p.V0;  // the limit closes like |E| x^2 at the far probe
    const auto fit_x = std::vector<double>{2.0, 5.0};
    const auto probe_x = std::vector<double>{1.0, 3.5, 8.0};

    const cf::SolutionCoefficients limit_coef{1.0, 0.0};
    auto psi_eps = [&](double x) {
        return cf::general_solution_psi(x, E, p, limit_coef, SignPair{+1, +1});
    };
    // fit the E = 0 family to the small-|E| solution at two points
    const double f1 = psi_eps(fit_x[0]), f2 = psi_eps(fit_x[1]);
    const double a11 = cf::zero_energy_psi(fit_x[0], p, {1.0, 0.0});
    const double a12 = cf::zero_energy_psi(fit_x[0], p, {0.0, 1.0});
    const double a21 = cf::zero_energy_psi(fit_x[1], p, {1.0, 0.0});
    const double a22 = cf::zero_energy_psi(fit_x[1], p, {0.0, 1.0});
    const double det = a11 * a22 - a12 * a21;
    const double C1 = (f1 * a22 - a12 * f2) / det;
    const double C2 = (a11 * f2 - f1 * a21) / det;
    double worst = 0.0;
    for (double x : probe_x) {
        const double approx = cf::zero_energy_psi(x, p, {C1, C2});
        const double exact = psi_eps(x);
        worst = std::max(worst, rel_diff(approx, exact));
    }
    require(worst <= 1e-4, "E -> 0 limit misses the zero-energy solution by " + fmt(worst));
    return "max relative gap at the probe points = " + fmt(worst);
}

// --------------------------------------------------------------- spectrum --

std::function<double(double)> spectrum_fn(const PhysicalParams& p, const std::string& mutation) {
    if (mutation == "eq24-sign") {
        return [p](double E) {
            const sp::FParts f = sp::spectrum_function_parts(E, p);
            return 2.0 - f.F;  // flips the sign of the ratio term
        };
    }
    return [p](double E) { return sp::spectrum_function(E, p); };
}

sp::SpectrumResult fig2_spectrum(const std::string& mutation) {
    const PhysicalParams p = PhysicalParams::figure2();
    return sp::find_bound_states_with(spectrum_fn(p, mutation), p, sp::ScanPolicy{},
                                      /*cross_check=*/true);
}

std::string check_fig2_count(const std::string& mutation) {
    const auto start = std::chrono::steady_clock::now();
    const sp::SpectrumResult r = fig2_spectrum(mutation);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(r.exact_n == 3, "expected 3 bound states, found " + std::to_string(r.exact_n));
    require(secs < 5.0, "spectrum run took " + fmt(secs) + " s (budget 5 s)");
    return "3 bound states in " + fmt(secs) + " s";
}

std::string check_bargmann() {
    const PhysicalParams p = PhysicalParams::figure2();
    const double closed = sp::bargmann_bound(p);
    require(closed == 27.0, "closed-form Bargmann bound is " + fmt(closed) + ", not 27");
    const double integral = sp::bargmann_integral(p);
    require(std::abs(integral - 27.0) <= 27.0 * 1e-5,
            "Bargmann integral " + fmt(integral) + " misses 27");
    return "closed form 27 exactly; integral " + fmt(integral);
}

std::string check_calogero_chadan() {
    const PhysicalParams p = PhysicalParams::figure2();
    const double ic = sp::calogero_bound(p);
    require(std::abs(ic - 7.348469228349534) <= 1e-12, "Calogero bound off: " + fmt(ic));
    char b1[32], b2[32];
    std::snprintf(b1, sizeof b1, "%.3f", ic);
    std::snprintf(b2, sizeof b2, "%.3f", sp::chadan_estimate(p));
    require(std::string(b1) == "7.348", std::string("Calogero renders as ") + b1);
    require(std::string(b2) == "3.674", std::string("Chadan renders as ") + b2);
    return "sqrt(54) = " + fmt(ic) + " -> 7.348, 3.674";
}

std::string check_oracle_eigenvalues(const std::string& mutation) {
    const PhysicalParams p = PhysicalParams::figure2();
    const sp::SpectrumResult analytic = fig2_spectrum(mutation);
    const std::vector<double> shot = oracle::shooting_eigenvalues(p, oracle::ShootingConfig{});
    require(analytic.exact_n == 3 && shot.size() == 3,
            "count mismatch: analytic " + std::to_string(analytic.exact_n) + ", shooting " +
                std::to_string(shot.size()));
    double worst = 0.0, worst_pin = 0.0;
    for (int k = 0; k < 3; ++k) {
        worst = std::max(worst, rel_diff(analytic.energies[k], shot[k]));
        worst_pin = std::max(worst_pin, rel_diff(analytic.energies[k], kFig2Golden[k]));
        require(rel_diff(analytic.energies[k], shot[k]) <= 1e-6,
                "level " + std::to_string(k) + ": analytic " + fmt(analytic.energies[k]) +
                    " vs shooting " + fmt(shot[k]));
        require(rel_diff(analytic.energies[k], kFig2Golden[k]) <= 1e-8,
                "level " + std::to_string(k) + " drifted from the golden value");
    }
    return "max analytic/shooting gap " + fmt(worst) + ", golden pin gap " + fmt(worst_pin);
}

std::string check_node_theorem() {
    const int n = sp::count_nodes_zero_energy(PhysicalParams::figure2());
    require(n == 3, "zero-energy node count is " + std::to_string(n) + ", not 3");
    return "3 nodes via both the analytic and the oracle path";
}

std::string check_f_limit() {
    const PhysicalParams p = PhysicalParams::figure2();
    const double F = sp::spectrum_function(-1e4 * p.V0, p);
    require(std::abs(F - 1.0) < 0.05, "F(-1e4 V0) = " + fmt(F));
    return "F(-1e4 V0) = " + fmt(F);
}

std::string check_three_way_sweep() {
    std::ostringstream os;
    for (double V0 : {0.5, 1.0, 3.0, 10.0}) {
        for (double sigma : {0.5, 1.0, 3.0}) {
            const PhysicalParams p = PhysicalParams::singular(V0, sigma);
            const sp::SpectrumResult r = sp::find_bound_states(p);
            const int nodes = sp::count_nodes_zero_energy(p);
            oracle::ShootingConfig cfg;
            cfg.steps = 60000;
            const auto shot = oracle::shooting_eigenvalues(p, cfg);
            require(r.exact_n == nodes && nodes == static_cast<int>(shot.size()),
                    "count disagreement at V0=" + fmt(V0) + " sigma=" + fmt(sigma) + ": roots " +
                        std::to_string(r.exact_n) + ", nodes " + std::to_string(nodes) +
                        ", shooting " + std::to_string(shot.size()));
            require(r.exact_n <= r.bargmann + 1e-12, "count exceeds the Bargmann bound");
            require(r.exact_n <= std::ceil(r.calogero) + 1e-12,
                    "count exceeds the Calogero bound");
            os << r.exact_n << " ";
        }
    }
    return "counts agree three ways: " + os.str();
}

std::string check_estimate_ordering() {
    const sp::SpectrumResult r = fig2_spectrum("");
    require(r.exact_n <= r.chadan && r.chadan <= r.calogero && r.calogero <= r.bargmann,
            "estimate ordering violated at the figure-2 point");
    return "3 <= 3.674 <= 7.348 <= 27";
}

// ----------------------------------------------------------------- oracle --

std::string check_numerov_convergence() {
    // Measured where it is cleanly observable: exact initial data (the free
    // start series is the truncation of sinh), no -1/sqrt(x) head whose
    // half-integer-power error terms would shade the order, and h coarse
    // enough that truncation dominates the O(n^2 eps) recurrence roundoff.
    const PhysicalParams p = PhysicalParams::singular(0.0, 1.0);
    const double E = -0.5;
    const double k = std::sqrt(-2.0 * E);
    auto error_at = [&](long steps) {
        oracle::ShootingConfig cfg;
        cfg.steps = steps;
        cfg.x_max = 40.0;  // long enough that truncation rises above roundoff
        const GridFunction g = oracle::numerov_integrate(E, p, cfg);
        const std::size_t i = static_cast<std::size_t>(0.75 * steps);
        return (g.values[i] - std::sinh(k * g.xs[i]) / k) / std::sinh(k * g.xs[i]);
    };
    const double e1 = error_at(1000), e2 = error_at(2000), e4 = error_at(4000);
    const double order = std::log2(std::abs(e1 - e2) / std::abs(e2 - e4));
    require(order >= 3.5 && order <= 4.5, "Numerov self-convergence order " + fmt(order));

    // and on the singular potential itself, via the start-amplitude-free
    // probe ratio (the singular head contributes fractional-power terms, so
    // the window is wider)
    const PhysicalParams p2 = PhysicalParams::figure2();
    auto ratio_at = [&](long steps) {
        oracle::ShootingConfig cfg;
        cfg.steps = steps;
        cfg.x_max = 12.0;
        const GridFunction g = oracle::numerov_integrate(-1.0, p2, cfg);
        return g.values[static_cast<std::size_t>(0.6 * steps)] /
               g.values[static_cast<std::size_t>(0.3 * steps)];
    };
    const double v1 = ratio_at(1000), v2 = ratio_at(2000), v4 = ratio_at(4000);
    const double order_singular = std::log2(std::abs(v1 - v2) / std::abs(v2 - v4));
    require(order_singular >= 2.4,
            "convergence degrades beyond the head's x^(5/2) term: " + fmt(order_singular));
    return "free-particle order " + fmt(order) + ", singular-head probe order " +
           fmt(order_singular);
}

std::string check_free_particle() {
    PhysicalParams p = PhysicalParams::singular(0.0, 1.0);
    const double E = -0.5;
    const double k = std::sqrt(-2.0 * E);
    oracle::ShootingConfig cfg;
    cfg.x_max = 8.0;
    cfg.steps = 8000;  // finer grids trade truncation for recurrence roundoff
    const GridFunction g = oracle::numerov_integrate(E, p, cfg);
    // the regular start is the truncated series of sinh(k x)/k, so that is
    // the exact solution carrying the same initial data
    double scale = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < g.size(); i += 500) {
        const double exact = std::sinh(k * g.xs[i]) / k;
        scale = std::max(scale, std::abs(exact));
        worst = std::max(worst, std::abs(g.values[i] - exact));
    }
    require(worst / scale <= 1e-9, "free-particle trajectory off by " + fmt(worst / scale));
    return "free solution matches sinh(kx)/k to " + fmt(worst / scale);
}

std::string check_residual_negative_control() {
    const PhysicalParams p = PhysicalParams::figure2();
    const auto xs = linspace(0.5, 10.0, 2001);
    GridFunction junk;
    junk.xs = xs;
    for (double x : xs) junk.values.push_back(std::sin(1.7 * x) + 2.0);
    const double r = oracle::schrodinger_residual(junk, -1.0, p);
    require(r > 1e-3, "non-solution sneaks through the residual check: " + fmt(r));

    const double rnum = oracle::schrodinger_residual(
        oracle::numerov_integrate(-1.0, p, oracle::ShootingConfig{0.0, 12.0, 100000}), -1.0, p);
    require(rnum <= 1e-6, "Numerov output residual " + fmt(rnum));
    return "junk residual " + fmt(r) + ", Numerov residual " + fmt(rnum);
}

std::string check_wronskian_bilinearity() {
    const PhysicalParams p = PhysicalParams::figure2();
    const double E = -1.0;
    const auto xs = linspace(0.3, 6.0, 101);
    const GridFunction p1 = cf::general_solution_grid(xs, E, p, {1.0, 0.0}, SignPair{+1, +1});
    const GridFunction p2 = cf::general_solution_grid(xs, E, p, {0.0, 1.0}, SignPair{+1, +1});
    const GridFunction self = oracle::wronskian(p1, p1);
    for (double v : self.values) require(v == 0.0, "W(psi, psi) != 0");

    GridFunction combo = p2;
    for (std::size_t i = 0; i < combo.size(); ++i) {
        combo.values[i] = 2.0 * p1.values[i] + p2.values[i];
        combo.derivatives[i] = 2.0 * p1.derivatives[i] + p2.derivatives[i];
    }
    const GridFunction w_combo = oracle::wronskian(p1, combo);
    const GridFunction w_base = oracle::wronskian(p1, p2);
    double worst = 0.0;
    for (std::size_t i = 0; i < combo.size(); ++i)
        worst = std::max(worst, rel_diff(w_combo.values[i], w_base.values[i]));
    require(worst <= 1e-12, "Wronskian bilinearity broken: " + fmt(worst));
    return "W(psi,psi) = 0 and bilinearity holds to " + fmt(worst);
}

// ---------------------------------------------------------------- registry --

struct Check {
    const char* suite;
    const char* name;
    std::function<std::string()> fn;
};

std::vector<Check> build_registry(const Options& opt) {
    const std::uint64_t seed = opt.seed;
    const std::string mut = opt.mutation;
    std::vector<Check> checks;

    checks.push_back({"specfun", "lambert-defining-identity",
                      [seed] { return check_lambert_identity(seed); }});
    checks.push_back({"specfun", "kummer-transformation",
                      [seed] { return check_kummer_transformation(seed + 1); }});
    checks.push_back({"specfun", "contiguous-relation",
                      [seed] { return check_contiguous_relation(seed + 2); }});
    checks.push_back(
        {"specfun", "u-strategy-agreement", [seed] { return check_u_strategies(seed + 3); }});
    checks.push_back(
        {"specfun", "chg-ode-residual", [seed] { return check_chg_ode_residual(seed + 4); }});

    checks.push_back({"potential", "transform-monotonicity", check_transform_monotonicity});
    checks.push_back({"potential", "inverse-consistency",
                      [seed] { return check_inverse_consistency(seed + 5); }});
    checks.push_back({"potential", "origin-asymptote", check_origin_asymptote});
    checks.push_back({"potential", "tail-asymptote", check_tail_asymptote});
    checks.push_back({"potential", "specialization-chain",
                      [seed] { return check_specialization_chain(seed + 6); }});

    checks.push_back({"heun", "apparent-singularity", check_apparent_singularity});
    checks.push_back({"heun", "pipeline-equivalence", check_pipeline_equivalence});
    checks.push_back(
        {"heun", "reduction-identity", [seed] { return check_reduction_identity(seed + 7); }});
    checks.push_back({"heun", "deformed-negative-control", check_deformed_negative_control});

    checks.push_back({"closedform", "schrodinger-residual",
                      [seed] { return check_schrodinger_residual(seed + 8); }});
    checks.push_back({"closedform", "wronskian-constancy",
                      [seed] { return check_wronskian_constancy(seed + 9); }});
    checks.push_back({"closedform", "sign-pair-span", check_sign_pair_span});
    checks.push_back({"closedform", "irreducibility-witness", check_irreducibility_witness});
    checks.push_back({"closedform", "zero-energy-continuity", check_zero_energy_continuity});

    checks.push_back({"spectrum", "figure2-count", [mut] { return check_fig2_count(mut); }});
    checks.push_back({"spectrum", "bargmann-bound", check_bargmann});
    checks.push_back({"spectrum", "calogero-chadan", check_calogero_chadan});
    checks.push_back(
        {"spectrum", "oracle-eigenvalues", [mut] { return check_oracle_eigenvalues(mut); }});
    checks.push_back({"spectrum", "zero-energy-node-theorem", check_node_theorem});
    checks.push_back({"spectrum", "f-limit", check_f_limit});
    checks.push_back({"spectrum", "three-way-sweep", check_three_way_sweep});
    checks.push_back({"spectrum", "estimate-ordering", check_estimate_ordering});

    checks.push_back({"oracle", "numerov-self-convergence", check_numerov_convergence});
    checks.push_back({"oracle", "free-particle", check_free_particle});
    checks.push_back({"oracle", "residual-negative-control", check_residual_negative_control});
    checks.push_back({"oracle", "wronskian-bilinearity", check_wronskian_bilinearity});

    // acceptance criteria, in spec order, reusing the same check bodies
    checks.push_back({"acceptance", "A01-bound-state-count", [mut] { return check_fig2_count(mut); }});
    checks.push_back({"acceptance", "A02-bargmann", check_bargmann});
    checks.push_back({"acceptance", "A03-calogero-chadan", check_calogero_chadan});
    checks.push_back(
        {"acceptance", "A04-oracle-cross-validation", [mut] { return check_oracle_eigenvalues(mut); }});
    checks.push_back({"acceptance", "A05-zero-energy-node-theorem", check_node_theorem});
    checks.push_back({"acceptance", "A06-closed-form-validity", [seed] {
                          const std::string a = check_schrodinger_residual(seed + 8);
                          const std::string b = check_wronskian_constancy(seed + 9);
                          return a + "; " + b;
                      }});
    checks.push_back({"acceptance", "A07-heun-pipeline-equivalence", check_pipeline_equivalence});
    checks.push_back({"acceptance", "A08-reduction-identity",
                      [seed] { return check_reduction_identity(seed + 7); }});
    checks.push_back({"acceptance", "A09-asymptotes", [] {
                          const std::string a = check_origin_asymptote();
                          const std::string b = check_tail_asymptote();
                          return a + "; " + b;
                      }});
    checks.push_back({"acceptance", "A10-f-limit", check_f_limit});
    checks.push_back({"acceptance", "A11-special-function-core", [seed] {
                          const std::string a = check_lambert_identity(seed);
                          const std::string b = check_kummer_transformation(seed + 1);
                          const std::string c = check_u_strategies(seed + 3);
                          return a + "; " + b + "; " + c;
                      }});
    return checks;
}

}  // namespace

std::vector<CheckResult> run_checks(const Options& opt) {
    if (!opt.mutation.empty() && opt.mutation != "eq24-sign")
        throw DomainError("verify: unknown mutation '" + opt.mutation + "'");
    std::vector<CheckResult> results;
    for (const Check& c : build_registry(opt)) {
        if (opt.suite != "all" && opt.suite != c.suite) continue;
        CheckResult r;
        r.suite = c.suite;
        r.name = c.name;
        try {
            r.detail = c.fn();
            r.passed = true;
        } catch (const Failure& f) {
            r.passed = false;
            r.detail = f.message;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        results.push_back(std::move(r));
    }
    if (results.empty()) throw DomainError("verify: unknown suite '" + opt.suite + "'");
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

}  // namespace lwpot::verify
