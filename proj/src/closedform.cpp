#include "lwpot/closedform.hpp"

#include <cmath>
#include <limits>

#include "lwpot/quadrature.hpp"

namespace lwpot::closedform {

namespace sf = lwpot::specfun;

namespace {

void require_family(const PhysicalParams& p, const char* who) {
    p.validate();
    if (p.z0 != 1.0 || p.V1 != -p.V0)
        throw DomainError(std::string(who) + ": closed form requires z0 = 1, V1 = -V0");
}

double map_z_family(double x, const PhysicalParams& p) {
    const double t = -std::exp(-(x - p.x0) / p.sigma);
    return -sf::lambert_w(sf::WBranch::principal, t);
}

// dz/dx = -z / (sigma (1 - z)); infinite at z = 1.
double rho_family(double z, const PhysicalParams& p) {
    if (z == 1.0) return std::numeric_limits<double>::infinity();
    return -z / (p.sigma * (1.0 - z));
}

struct ChgSet {  // values of the shifted Kummer/Tricomi family at w = s0 z
    double M0, M1, M2;
    double U0, U1, U2;
};

// Assemble psi and dpsi/dz from the function values at one point.
PsiEval assemble(double z, const ChgTriple& t, const SolutionCoefficients& coef,
                 const ChgSet& f, const PhysicalParams& p) {
    const double a = t.a, c = t.c, s0 = t.s0;
    const double bracket = 0.5 * (c - s0) * (coef.C1 * f.M0 + coef.C2 * f.U0) +
                           s0 * (coef.C1 * (a / c) * f.M1 - coef.C2 * a * f.U1);
    const double dbracket = 0.5 * (c - s0) * s0 * (coef.C1 * (a / c) * f.M1 - coef.C2 * a * f.U1) +
                            s0 * s0 *
                                (coef.C1 * a * (a + 1.0) / (c * (c + 1.0)) * f.M2 +
                                 coef.C2 * a * (a + 1.0) * f.U2);
    const double envelope = std::pow(z, 0.5 * c) * std::exp(-0.5 * s0 * z);
    PsiEval out;
    out.z = z;
    out.psi = envelope * bracket;
    out.dpsi_dz = (0.5 * c / z - 0.5 * s0) * out.psi + envelope * dbracket;
    out.dpsi_dx = out.dpsi_dz * rho_family(z, p);
    if (z == 1.0) out.dpsi_dx = std::numeric_limits<double>::quiet_NaN();
    return out;
}

ChgSet chg_values_point(const ChgTriple& t, double w, bool need_u,
                        const sf::ChgEvalPolicy& policy) {
    ChgSet f{};
    f.M0 = sf::kummer_m(t.a, t.c, w, policy);
    f.M1 = sf::kummer_m(t.a + 1.0, t.c + 1.0, w, policy);
    f.M2 = sf::kummer_m(t.a + 2.0, t.c + 2.0, w, policy);
    if (need_u) {
        f.U0 = sf::tricomi_u(t.a, t.c, w, policy);
        f.U1 = sf::tricomi_u(t.a + 1.0, t.c + 1.0, w, policy);
        f.U2 = sf::tricomi_u(t.a + 2.0, t.c + 2.0, w, policy);
    }
    return f;
}

void check_x_domain(double x, const PhysicalParams& p, const char* who) {
    if (!(x >= p.x0 + p.sigma))
        throw DomainError(std::string(who) + ": x below the domain boundary x0 + sigma");
}

}  // namespace

ChgTriple chg_parameters(double E, const PhysicalParams& p, SignPair signs) {
    require_family(p, "chg_parameters");
    if (E == 0.0)
        throw DomainError("chg_parameters: E = 0 is excluded (c = 0); use zero_energy_psi");
    if (E > 0.0) throw DomainError("chg_parameters: requires E < 0 (real c)");
    if (E >= p.V0) throw DomainError("chg_parameters: requires E < V0 (real s0)");
    if (signs.sign_c != 1 && signs.sign_c != -1)
        throw DomainError("chg_parameters: sign_c must be +-1");
    if (signs.sign_s0 != 1 && signs.sign_s0 != -1)
        throw DomainError("chg_parameters: sign_s0 must be +-1");
    const double s2 = p.sigma * p.sigma;
    ChgTriple t;
    t.c = signs.sign_c * std::sqrt(-8.0 * p.m * s2 * E) / p.hbar;
    t.s0 = signs.sign_s0 * std::sqrt(8.0 * p.m * s2 * (p.V0 - E)) / p.hbar;
    t.a = -(t.c - t.s0) * (t.c - t.s0) / (4.0 * t.s0);
    return t;
}

PsiEval general_solution_eval(double x, double E, const PhysicalParams& p,
                              const SolutionCoefficients& coef, SignPair signs,
                              const sf::ChgEvalPolicy& policy) {
    const ChgTriple t = chg_parameters(E, p, signs);
    if (coef.C2 != 0.0 && t.s0 < 0.0)
        throw DomainError(
            "general_solution: the Tricomi part needs sign_s0 = +1 in real arithmetic "
            "(U is evaluated at s0 z > 0)");
    check_x_domain(x, p, "general_solution_eval");
    const double z = map_z_family(x, p);
    const ChgSet f = chg_values_point(t, t.s0 * z, coef.C2 != 0.0, policy);
    return assemble(z, t, coef, f, p);
}

double general_solution_psi(double x, double E, const PhysicalParams& p,
                            const SolutionCoefficients& coef, SignPair signs) {
    return general_solution_eval(x, E, p, coef, signs).psi;
}

PsiEval bound_state_eval(double x, double E, const PhysicalParams& p) {
    return general_solution_eval(x, E, p, SolutionCoefficients{1.0, 0.0}, SignPair{+1, +1});
}

double bound_state_psi(double x, double E, const PhysicalParams& p) {
    return bound_state_eval(x, E, p).psi;
}

GridFunction general_solution_grid(std::span<const double> xs, double E,
                                   const PhysicalParams& p, const SolutionCoefficients& coef,
                                   SignPair signs, const sf::ChgEvalPolicy& policy) {
    const ChgTriple t = chg_parameters(E, p, signs);
    if (coef.C2 != 0.0 && t.s0 < 0.0)
        throw DomainError(
            "general_solution: the Tricomi part needs sign_s0 = +1 in real arithmetic "
            "(U is evaluated at s0 z > 0)");
    GridFunction out;
    out.xs.assign(xs.begin(), xs.end());
    out.values.resize(xs.size());
    out.derivatives.resize(xs.size());
    if (xs.empty()) return out;

    std::vector<double> zs(xs.size()), ws(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        check_x_domain(xs[i], p, "general_solution_grid");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw DomainError("general_solution_grid: xs must be strictly increasing");
        zs[i] = map_z_family(xs[i], p);
        ws[i] = t.s0 * zs[i];
    }

    // U on the whole grid with three inward sweeps (w descends as x ascends).
    const bool need_u = coef.C2 != 0.0;
    std::vector<double> u0, u1, u2;
    if (need_u) {
        std::vector<double> ws_asc(ws.rbegin(), ws.rend());
        u0 = sf::tricomi_u_grid(t.a, t.c, ws_asc, policy).values;
        u1 = sf::tricomi_u_grid(t.a + 1.0, t.c + 1.0, ws_asc, policy).values;
        u2 = sf::tricomi_u_grid(t.a + 2.0, t.c + 2.0, ws_asc, policy).values;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ChgSet f{};
        f.M0 = sf::kummer_m(t.a, t.c, ws[i], policy);
        f.M1 = sf::kummer_m(t.a + 1.0, t.c + 1.0, ws[i], policy);
        f.M2 = sf::kummer_m(t.a + 2.0, t.c + 2.0, ws[i], policy);
        if (need_u) {
            const std::size_t r = xs.size() - 1 - i;
            f.U0 = u0[r];
            f.U1 = u1[r];
            f.U2 = u2[r];
        }
        const PsiEval e = assemble(zs[i], t, coef, f, p);
        out.values[i] = e.psi;
        out.derivatives[i] = e.dpsi_dx;
    }
    return out;
}

GridFunction bound_state_grid(std::span<const double> xs, double E, const PhysicalParams& p) {
    return general_solution_grid(xs, E, p, SolutionCoefficients{1.0, 0.0}, SignPair{+1, +1});
}

namespace {

struct ZeroEnergyParts {
    double s0, a;
};

ZeroEnergyParts zero_energy_parameters(const PhysicalParams& p) {
    if (!(p.V0 > 0.0)) throw DomainError("zero_energy: requires V0 > 0");
    ZeroEnergyParts zp;
    zp.s0 = std::sqrt(8.0 * p.m * p.sigma * p.sigma * p.V0) / p.hbar;
    zp.a = -zp.s0 / 4.0;
    return zp;
}

// psi_0 = d/dz [ z e^{-s0 z/2} Q(z) ],  Q = C1 M(1+a;2;w) + C2 U(1+a;2;w), w = s0 z:
//   psi_0 = e^{-s0 z/2} [ (1 - s0 z/2) Q + z Q' ],
//   Q' = s0 [ C1 (1+a)/2 M(2+a;3;w) - C2 (1+a) U(2+a;3;w) ].
double zero_energy_assemble(double z, const ZeroEnergyParts& zp, const SolutionCoefficients& coef,
                            double m2a, double m3a, double u2a, double u3a) {
    const double q = coef.C1 * m2a + coef.C2 * u2a;
    const double qp =
        zp.s0 * (coef.C1 * 0.5 * (1.0 + zp.a) * m3a - coef.C2 * (1.0 + zp.a) * u3a);
    return std::exp(-0.5 * zp.s0 * z) * ((1.0 - 0.5 * zp.s0 * z) * q + z * qp);
}

}  // namespace

double zero_energy_psi(double x, const PhysicalParams& p, const SolutionCoefficients& coef) {
    require_family(p, "zero_energy_psi");
    check_x_domain(x, p, "zero_energy_psi");
    const ZeroEnergyParts zp = zero_energy_parameters(p);
    const double z = map_z_family(x, p);
    const double w = zp.s0 * z;
    const double m2a = sf::kummer_m(1.0 + zp.a, 2.0, w);
    const double m3a = sf::kummer_m(2.0 + zp.a, 3.0, w);
    double u2a = 0.0, u3a = 0.0;
    if (coef.C2 != 0.0) {
        u2a = sf::tricomi_u(1.0 + zp.a, 2.0, w);
        u3a = sf::tricomi_u(2.0 + zp.a, 3.0, w);
    }
    return zero_energy_assemble(z, zp, coef, m2a, m3a, u2a, u3a);
}

GridFunction zero_energy_grid(std::span<const double> xs, const PhysicalParams& p,
                              const SolutionCoefficients& coef) {
    require_family(p, "zero_energy_grid");
    const ZeroEnergyParts zp = zero_energy_parameters(p);
    GridFunction out;
    out.xs.assign(xs.begin(), xs.end());
    out.values.resize(xs.size());
    if (xs.empty()) return out;

    std::vector<double> ws(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        check_x_domain(xs[i], p, "zero_energy_grid");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw DomainError("zero_energy_grid: xs must be strictly increasing");
        ws[i] = zp.s0 * map_z_family(xs[i], p);
    }
    std::vector<double> u2a, u3a;
    if (coef.C2 != 0.0) {
        std::vector<double> ws_asc(ws.rbegin(), ws.rend());
        u2a = sf::tricomi_u_grid(1.0 + zp.a, 2.0, ws_asc).values;
        u3a = sf::tricomi_u_grid(2.0 + zp.a, 3.0, ws_asc).values;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double w = ws[i];
        const double m2a = sf::kummer_m(1.0 + zp.a, 2.0, w);
        const double m3a = sf::kummer_m(2.0 + zp.a, 3.0, w);
        const std::size_t r = xs.size() - 1 - i;
        out.values[i] = zero_energy_assemble(w / zp.s0, zp, coef, m2a, m3a,
                                             coef.C2 != 0.0 ? u2a[r] : 0.0,
                                             coef.C2 != 0.0 ? u3a[r] : 0.0);
    }
    return out;
}

SolutionCoefficients zero_energy_regular_coefficients(const PhysicalParams& p) {
    // one linear condition psi(0) = 0 on the two-parameter family
    const double at_origin_c1 = zero_energy_psi(p.x0 + p.sigma, p, SolutionCoefficients{1.0, 0.0});
    const double at_origin_c2 = zero_energy_psi(p.x0 + p.sigma, p, SolutionCoefficients{0.0, 1.0});
    const double n = std::hypot(at_origin_c1, at_origin_c2);
    if (n == 0.0) throw NumericalError("zero_energy_regular_coefficients: degenerate condition");
    return SolutionCoefficients{at_origin_c2 / n, -at_origin_c1 / n};
}

double normalization_constant(double E, const PhysicalParams& p) {
    const ChgTriple t = chg_parameters(E, p, SignPair{+1, +1});
    const double x_lo = p.x0 + p.sigma;
    const double x_hi = x_lo + 40.0 * p.sigma;
    auto f = [&](double x) {
        const double v = bound_state_psi(x, E, p);
        return v * v;
    };
    const auto integral = quadrature::integrate_sqrt_left(f, x_lo, x_hi, 1e-10, 1e-300);
    // analytic tail: psi^2 ~ psi(x_hi)^2 e^{-c (x - x_hi)/sigma} beyond the cutoff
    const double tail = f(x_hi) * p.sigma / t.c;
    return std::sqrt(integral.value + tail);
}

}  // namespace lwpot::closedform
