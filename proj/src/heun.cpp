#include "lwpot/heun.hpp"

#include <algorithm>
#include <cmath>

#include "lwpot/ode.hpp"

namespace lwpot::heun {

namespace {

PotentialKind family_of(PotentialKind kind) {
    return kind == PotentialKind::singular ? PotentialKind::m1_variant : kind;
}

// Deformed-equation coefficients, first-derivative group carried with its
// overall minus sign: w'' + f w' + g w = 0.
struct DeformedCoeffs {
    double f, fp, g;
};

DeformedCoeffs deformed_coeffs(const DchParams& d, double z) {
    const double z0 = d.apparent_singularity();
    DeformedCoeffs c;
    c.f = -(d.gamma / (z * z) + (d.delta - 2.0) / z + d.epsilon + 1.0 / (z - z0));
    c.fp = 2.0 * d.gamma / (z * z * z) + (d.delta - 2.0) / (z * z) + 1.0 / ((z - z0) * (z - z0));
    c.g = (d.alpha * z - d.q) / (z * z);
    return c;
}

double weight(const DchParams& d, double z) {
    return std::pow(z, d.delta) * std::exp(d.epsilon * z - d.gamma / z);
}

// 5-point Fornberg weights for the m-th derivative (same algorithm as the
// oracle's difference stencils; duplicated locally to keep modules decoupled).
void fd_weights5(double x0, const double* xs, int m, double* w) {
    constexpr int n = 5;
    double c[n][3] = {};
    double c1 = 1.0, c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int s = mn; s >= 1; --s)
                    c[i][s] = c1 * (s * c[i - 1][s - 1] - c5 * c[i - 1][s]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int s = mn; s >= 1; --s) c[j][s] = (c4 * c[j][s] - s * c[j][s - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    for (int i = 0; i < n; ++i) w[i] = c[i][m];
}

}  // namespace

DchParams dch_params_for(PotentialKind kind, double E, const PhysicalParams& p, SignPair signs) {
    p.validate();
    if (kind == PotentialKind::singular)
        throw DomainError("dch_params_for: use m1_variant for the singular specialization");
    if (E > p.V0)
        throw DomainError("dch_params_for: E > V0 makes the parameters complex (rejected)");
    const double s =
        signs.sign_s0 * std::sqrt(8.0 * p.m * p.sigma * p.sigma * (p.V0 - E)) / p.hbar;
    const double coupling = 2.0 * p.m * p.sigma * p.sigma / (p.hbar * p.hbar);
    DchParams d{};
    if (kind == PotentialKind::m2_variant) {
        d.delta = s;
        d.gamma = -d.delta * p.z0;
        d.epsilon = 0.0;
        d.alpha = coupling * p.V1 / p.z0;
    } else {
        d.epsilon = s;
        d.delta = 1.0 - d.epsilon * p.z0;
        d.gamma = 0.0;
        d.alpha = coupling * p.z0 * p.V1;
    }
    d.q = d.alpha * p.z0;
    return d;
}

DcheSolution solve_dche(const DchParams& d, double z_start, double u0, double u0p,
                        std::span<const double> z_grid) {
    if (z_grid.size() < 2) throw DomainError("solve_dche: need at least two grid points");
    for (std::size_t i = 0; i < z_grid.size(); ++i) {
        if (z_grid[i] == 0.0 || (i > 0 && z_grid[i] * z_grid[0] < 0.0))
            throw DomainError("solve_dche: grid spans the irregular singularity z = 0");
        if (i > 0 && !(z_grid[i] > z_grid[i - 1]))
            throw DomainError("solve_dche: grid must be strictly increasing");
    }
    if (z_start < z_grid.front() || z_start > z_grid.back())
        throw DomainError("solve_dche: z_start outside the grid span");

    ode::RK2::Rhs rhs = [&d](double z, const std::array<double, 2>& y,
                             std::array<double, 2>& dy) {
        dy[0] = y[1];
        dy[1] = -(d.gamma / (z * z) + d.delta / z + d.epsilon) * y[1] -
                (d.alpha * z - d.q) / (z * z) * y[0];
    };
    ode::Options opt;
    opt.rtol = 1e-12;
    opt.atol = (std::abs(u0) + std::abs(u0p)) * 1e-16 + 1e-300;

    DcheSolution sol;
    sol.z.assign(z_grid.begin(), z_grid.end());
    sol.u.assign(z_grid.size(), 0.0);
    sol.u_prime.assign(z_grid.size(), 0.0);

    auto sweep = [&](bool upward) {
        std::vector<double> pts;
        for (double z : z_grid)
            if (upward ? z >= z_start : z <= z_start) pts.push_back(z);
        if (!upward) std::reverse(pts.begin(), pts.end());
        if (pts.empty()) return;
        auto obs = [&](double z, const std::array<double, 2>& y) {
            const auto it = std::lower_bound(sol.z.begin(), sol.z.end(), z);
            const std::size_t idx = static_cast<std::size_t>(it - sol.z.begin());
            sol.u[idx] = y[0];
            sol.u_prime[idx] = y[1];
        };
        ode::RK2::integrate(rhs, z_start, pts.back(), {u0, u0p}, opt, pts, obs);
    };
    sweep(true);
    sweep(false);

    // FD consistency of (u, u') against the equation on interior points
    const std::size_t n = sol.z.size();
    if (n >= 5) {
        double worst = 0.0;
        for (std::size_t i = 2; i + 2 < n; ++i) {
            double w[5];
            fd_weights5(sol.z[i], &sol.z[i - 2], 1, w);
            double upp_fd = 0.0;
            for (int j = 0; j < 5; ++j) upp_fd += w[j] * sol.u_prime[i - 2 + j];
            const double z = sol.z[i];
            const double t1 = (d.gamma / (z * z) + d.delta / z + d.epsilon) * sol.u_prime[i];
            const double t2 = (d.alpha * z - d.q) / (z * z) * sol.u[i];
            const double scale = std::max({std::abs(upp_fd), std::abs(t1), std::abs(t2), 1e-300});
            worst = std::max(worst, std::abs(upp_fd + t1 + t2) / scale);
        }
        sol.residual = worst;
    }
    return sol;
}

double derivative_map(const DchParams& d, double z, double u_prime) {
    if (z == 0.0) throw DomainError("derivative_map: singular at z = 0");
    if (z < 0.0) throw DomainError("derivative_map: requires z > 0 (real weight)");
    return weight(d, z) * u_prime;
}

DeformedFunction deformed_from_dche(const DchParams& d, const DcheSolution& sol) {
    DeformedFunction out;
    const std::size_t n = sol.z.size();
    out.z = sol.z;
    out.w.resize(n);
    out.wp.resize(n);
    out.wpp.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = sol.z[i];
        const double P = weight(d, z);
        const double az_q = d.alpha * z - d.q;
        out.w[i] = P * sol.u_prime[i];
        out.wp[i] = -az_q * P * sol.u[i] / (z * z);
        out.wpp[i] = -(P / (z * z)) *
                     ((d.alpha + az_q * ((d.delta - 2.0) / z + d.epsilon + d.gamma / (z * z))) *
                          sol.u[i] +
                      az_q * sol.u_prime[i]);
    }
    return out;
}

double deformed_residual(const DchParams& d, const DeformedFunction& fn) {
    const double z0 = d.apparent_singularity();
    const std::size_t n = fn.z.size();
    if (n == 0) throw DomainError("deformed_residual: empty grid");
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = fn.z[i];
        const double spacing =
            (n > 1) ? std::abs(fn.z[std::min(i + 1, n - 1)] - fn.z[i - (i > 0 ? 1 : 0)]) : 0.0;
        if (std::abs(z) < spacing || std::abs(z - z0) < spacing)
            throw DomainError("deformed_residual: grid point too close to z = 0 or z = q/alpha");
        const auto c = deformed_coeffs(d, z);
        const double t1 = fn.wpp[i], t2 = c.f * fn.wp[i], t3 = c.g * fn.w[i];
        const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
        if (scale == 0.0) continue;  // w == 0 there: residual contribution zero
        worst = std::max(worst, std::abs(t1 + t2 + t3) / scale);
    }
    return worst;
}

double prefactor(PotentialKind kind, const DchParams& d, double z, const PhysicalParams& p) {
    (void)p;
    if (z == 0.0) throw DomainError("prefactor: singular at z = 0");
    if (z < 0.0) throw DomainError("prefactor: requires z > 0");
    const int m1 = potential::m1_exponent(kind);
    // (z - z0)^{-(m2+1)/2} = 1 for m2 = -1
    return std::pow(z, -0.5 * (m1 + d.delta - 2.0)) *
           std::exp(-0.5 * (d.epsilon * z - d.gamma / z));
}

namespace {

double prefactor_log_derivative(PotentialKind kind, const DchParams& d, double z) {
    const int m1 = potential::m1_exponent(kind);
    return -0.5 * (m1 + d.delta - 2.0) / z - 0.5 * d.epsilon - 0.5 * d.gamma / (z * z);
}

}  // namespace

GridFunction assemble_psi(PotentialKind kind, double E, const PhysicalParams& p,
                          std::span<const double> x_grid, double psi0, double dpsi0) {
    if (x_grid.size() < 2) throw DomainError("assemble_psi: need at least two grid points");
    const PotentialKind family = family_of(kind);
    const DchParams d = dch_params_for(family, E, p, SignPair{+1, +1});

    std::vector<double> zs(x_grid.size());
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (i > 0 && !(x_grid[i] > x_grid[i - 1]))
            throw DomainError("assemble_psi: x grid must be strictly increasing");
        zs[i] = potential::map_z(kind, x_grid[i], p);
    }

    GridFunction out;
    out.xs.assign(x_grid.begin(), x_grid.end());
    out.values.resize(x_grid.size());
    out.derivatives.resize(x_grid.size());

    const double z_ref = zs.front();
    const double phi_ref = prefactor(kind, d, z_ref, p);
    const double w_ref = psi0 / phi_ref;

    if (d.degenerate()) {
        // alpha = 0: u' integrates in closed form and w is a constant, so the
        // pipeline spans only psi = const * phi (dpsi0 ignored).
        for (std::size_t i = 0; i < zs.size(); ++i) {
            const double phi = prefactor(kind, d, zs[i], p);
            out.values[i] = phi * w_ref;
            out.derivatives[i] = phi * prefactor_log_derivative(kind, d, zs[i]) * w_ref *
                                 potential::rho(kind, zs[i], p);
        }
        return out;
    }

    const double rho_ref = potential::rho(kind, z_ref, p);
    const double wp_ref = (dpsi0 / rho_ref - phi_ref * prefactor_log_derivative(kind, d, z_ref) *
                                                 w_ref) /
                          phi_ref;
    const double az_q_ref = d.alpha * z_ref - d.q;
    if (az_q_ref == 0.0)
        throw DomainError("assemble_psi: x grid starts at the apparent singularity");
    const double P_ref = weight(d, z_ref);
    const double u_ref = -wp_ref * z_ref * z_ref / (az_q_ref * P_ref);
    const double up_ref = w_ref / P_ref;

    const bool z_ascending = zs.back() > zs.front();
    std::vector<double> z_sorted(zs);
    if (!z_ascending) std::reverse(z_sorted.begin(), z_sorted.end());
    DcheSolution sol = solve_dche(d, z_ref, u_ref, up_ref, z_sorted);

    for (std::size_t i = 0; i < zs.size(); ++i) {
        const std::size_t j = z_ascending ? i : zs.size() - 1 - i;
        const double z = sol.z[j];
        const double P = weight(d, z);
        const double w = P * sol.u_prime[j];
        const double wp = -(d.alpha * z - d.q) * P * sol.u[j] / (z * z);
        const double phi = prefactor(kind, d, z, p);
        out.values[i] = phi * w;
        out.derivatives[i] =
            (phi * prefactor_log_derivative(kind, d, z) * w + phi * wp) *
            potential::rho(kind, z, p);
    }
    return out;
}

ReductionWitness verify_reduction(PotentialKind kind, const PhysicalParams& p, double E,
                                  std::span<const double> z_grid, SignPair signs) {
    const PotentialKind family = family_of(kind);
    const DchParams d = dch_params_for(family, E, p, signs);
    const int m1 = potential::m1_exponent(family);
    const double z0 = (kind == PotentialKind::singular) ? 1.0 : p.z0;
    const double s2 = p.sigma * p.sigma;

    ReductionWitness wit{};
    wit.m1 = m1;
    wit.m2 = -1.0;
    wit.sigma = p.sigma;
    wit.grid.assign(z_grid.begin(), z_grid.end());

    // coefficients of  sigma^2 V(z) z^{4-2 m1} (z-z0)^4  as a polynomial in z
    std::array<double, 7>& v = wit.v;
    v.fill(0.0);
    const double V0 = p.V0, V1 = (kind == PotentialKind::singular) ? -p.V0 : p.V1;
    if (family == PotentialKind::m1_variant) {
        v[2] = s2 * std::pow(z0, 4) * (V0 + V1);
        v[3] = -s2 * std::pow(z0, 3) * (4.0 * V0 + 3.0 * V1);
        v[4] = s2 * z0 * z0 * (6.0 * V0 + 3.0 * V1);
        v[5] = -s2 * z0 * (4.0 * V0 + V1);
        v[6] = s2 * V0;
    } else {
        v[0] = s2 * std::pow(z0, 4) * V0;
        v[1] = -4.0 * s2 * std::pow(z0, 3) * V0;
        v[2] = s2 * z0 * z0 * (6.0 * V0 + V1);
        v[3] = -s2 * z0 * (4.0 * V0 + 3.0 * V1);
        v[4] = s2 * (V0 + 3.0 * V1);
        v[5] = -s2 * V1 / z0;
    }

    const double k2m = p.kappa2m();
    double worst = 0.0, worst_v = 0.0;
    for (double z : z_grid) {
        if (z == 0.0 || z == z0)
            throw DomainError("verify_reduction: grid touches z = 0 or z = z0");
        // deformed-equation coefficients with the apparent singularity at the
        // transform's z0 (identical to q/alpha whenever alpha != 0, and still
        // defined in the V1 = 0 limit)
        const double f = -(d.gamma / (z * z) + (d.delta - 2.0) / z + d.epsilon +
                           1.0 / (z - z0));
        const double fp = 2.0 * d.gamma / (z * z * z) + (d.delta - 2.0) / (z * z) +
                          1.0 / ((z - z0) * (z - z0));
        const double g = d.alpha * (z - z0) / (z * z);
        const double lhs = g - 0.5 * fp - 0.25 * f * f;

        const double lr = m1 / z - 1.0 / (z - z0);            // rho'/rho
        const double lrp = -m1 / (z * z) + 1.0 / ((z - z0) * (z - z0));
        const double rho = std::pow(z, m1) / (p.sigma * (z - z0));
        double poly = 0.0;
        for (int k = 6; k >= 0; --k) poly = poly * z + v[k];
        const double V_rational =
            rho * rho * poly / (std::pow(z, 4) * (z - z0) * (z - z0));
        const double rhs = -0.5 * lrp - 0.25 * lr * lr + k2m * (E - V_rational) / (rho * rho);

        worst = std::max(worst,
                         std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0}));
        const double V_direct = potential::potential_of_z(kind, z, p);
        worst_v = std::max(worst_v, std::abs(V_direct - V_rational) /
                                        std::max({std::abs(V_direct), std::abs(V_rational), 1.0}));
    }
    wit.residual_norm = worst;
    wit.v_form_residual = worst_v;
    return wit;
}

std::array<double, 2> m2_candidates() {
    // -3/4 = m2/2 - m2^2/4  <=>  m2^2 - 2 m2 - 3 = 0
    const double disc = std::sqrt(4.0 + 12.0);
    return {(2.0 - disc) / 2.0, (2.0 + disc) / 2.0};
}

}  // namespace lwpot::heun
