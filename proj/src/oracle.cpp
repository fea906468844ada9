#include "lwpot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lwpot::oracle {

namespace {

constexpr double kInvE = 0.36787944117144232160;
constexpr double kRenormThreshold = 1e250;

double start_series(double x, double E, const PhysicalParams& p, int terms) {
    const double k2m = p.kappa2m();
    const double A = std::sqrt(p.sigma / 2.0) * p.V0;
    const double B = 2.0 * p.V0 / 3.0;
    const double C = -(p.V0 / 12.0) * std::sqrt(2.0 / p.sigma);
    double psi = x;
    if (terms >= 2) psi += -(4.0 / 15.0) * k2m * A * std::pow(x, 2.5);
    if (terms >= 3) psi += (k2m * (B - E) / 6.0) * x * x * x;
    if (terms >= 4) psi += (4.0 / 35.0) * k2m * C * std::pow(x, 3.5);
    return psi;
}

// Marching core shared by the storing and counting-only paths.  Vs holds the
// precomputed potential on the uniform grid.
struct March {
    int nodes = 0;
    double y_prev = 0.0, y_curr = 0.0;
    double log_scale = 0.0;
};

template <typename PerStep>
March numerov_march(double E, const PhysicalParams& p, const std::vector<double>& Vs,
                    double x_min, double h, PerStep&& per_step) {
    const double k2m = p.kappa2m();
    const double h2_12 = h * h / 12.0;
    March m;
    m.y_prev = start_series(x_min, E, p, 4);
    m.y_curr = start_series(x_min + h, E, p, 4);
    per_step(0, m.y_prev);
    per_step(1, m.y_curr);
    double f_prev = k2m * (Vs[0] - E);
    double f_curr = k2m * (Vs[1] - E);
    const long n = static_cast<long>(Vs.size()) - 1;
    for (long i = 1; i < n; ++i) {
        const double f_next = k2m * (Vs[i + 1] - E);
        const double y_next = (2.0 * m.y_curr * (1.0 + 5.0 * h2_12 * f_curr) -
                               m.y_prev * (1.0 - h2_12 * f_prev)) /
                              (1.0 - h2_12 * f_next);
        if (m.y_curr * y_next < 0.0) ++m.nodes;
        m.y_prev = m.y_curr;
        m.y_curr = y_next;
        f_prev = f_curr;
        f_curr = f_next;
        per_step(i + 1, m.y_curr);
        // overflow guard with the cumulative scale tracked in log form
        const double mag = std::max(std::abs(m.y_prev), std::abs(m.y_curr));
        if (mag > kRenormThreshold) {
            m.y_prev /= mag;
            m.y_curr /= mag;
            m.log_scale += std::log(mag);
            per_step(-1, mag);  // sentinel: downscale everything stored
        }
    }
    if (!std::isfinite(m.y_curr)) throw NumericalError("numerov: non-finite state");
    return m;
}

std::vector<double> potential_grid(const PhysicalParams& p, double x_min, double h, long n) {
    std::vector<double> Vs(n + 1);
    for (long i = 0; i <= n; ++i) Vs[i] = oracle_potential(x_min + i * h, p);
    return Vs;
}

int node_count_at(double E, const PhysicalParams& p, const std::vector<double>& Vs,
                  double x_min, double h) {
    return numerov_march(E, p, Vs, x_min, h, [](long, double) {}).nodes;
}

}  // namespace

ShootingConfig ShootingConfig::resolved(const PhysicalParams& p) const {
    p.validate();
    ShootingConfig c = *this;
    if (c.x_min == 0.0) c.x_min = 1e-4 * p.sigma;
    if (c.x_max == 0.0) c.x_max = 40.0 * p.sigma;
    if (!(c.x_min > 0.0 && c.x_max > c.x_min))
        throw DomainError("ShootingConfig: requires 0 < x_min < x_max");
    if (c.steps < 1000) throw DomainError("ShootingConfig: steps >= 1000 required");
    if (c.frobenius_terms < 2 || c.frobenius_terms > 4)
        throw DomainError("ShootingConfig: frobenius_terms in [2,4]");
    return c;
}

double bisect_w(specfun::WBranch branch, double t) {
    if (t < -kInvE - 4.0 * std::numeric_limits<double>::epsilon())
        throw DomainError("bisect_w: argument below -1/e");
    auto g = [](double w) { return w * std::exp(w); };
    double lo, hi;
    if (branch == specfun::WBranch::principal) {
        if (t >= 0.0) {
            lo = 0.0;
            hi = 1.0 + std::log1p(t);
            while (g(hi) < t) hi *= 2.0;
        } else {
            lo = -1.0;
            hi = 0.0;
        }
    } else {
        if (t >= 0.0) throw DomainError("bisect_w: lower branch requires t < 0");
        hi = -1.0;
        lo = -2.0;
        while (g(lo) < t) lo -= 4.0;  // g decreasing toward -inf on the lower branch
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (branch == specfun::WBranch::principal) {
            (g(mid) < t ? lo : hi) = mid;
        } else {
            (g(mid) < t ? hi : lo) = mid;  // g decreases with w here
        }
    }
    return 0.5 * (lo + hi);
}

double oracle_potential(double x, const PhysicalParams& p) {
    return oracle_potential(PotentialKind::singular, x, p);
}

double oracle_potential(PotentialKind kind, double x, const PhysicalParams& p) {
    p.validate();
    double t, w, z;
    switch (kind) {
        case PotentialKind::singular:
            t = -std::exp(-(x + p.sigma) / p.sigma);
            z = -bisect_w(specfun::WBranch::principal, t);
            return -p.V0 * z / (1.0 - z);
        case PotentialKind::m1_variant:
            t = -std::exp((p.x0 - x) / (p.sigma * p.z0)) / p.z0;
            w = bisect_w(specfun::WBranch::principal, t);
            z = -p.z0 * w;
            return p.V0 + p.V1 / (1.0 - z / p.z0);
        case PotentialKind::m2_variant:
            t = -p.z0 * std::exp((p.x0 - x) / p.sigma);
            w = bisect_w(specfun::WBranch::principal, t);
            z = -p.z0 / w;
            return p.V0 + p.V1 * (z / p.z0) * (z / p.z0) / (1.0 - z / p.z0);
    }
    throw DomainError("oracle_potential: unknown kind");
}

NumerovResult numerov_run(double E, const PhysicalParams& p, const ShootingConfig& cfg_in) {
    const ShootingConfig cfg = cfg_in.resolved(p);
    const long n = cfg.steps;
    const double h = (cfg.x_max - cfg.x_min) / static_cast<double>(n);
    const auto Vs = potential_grid(p, cfg.x_min, h, n);

    NumerovResult out;
    out.psi.xs.resize(n + 1);
    out.psi.values.assign(n + 1, 0.0);
    for (long i = 0; i <= n; ++i) out.psi.xs[i] = cfg.x_min + i * h;

    long filled = 0;
    auto per_step = [&](long idx, double v) {
        if (idx < 0) {
            for (long j = 0; j < filled; ++j) out.psi.values[j] /= v;
            return;
        }
        out.psi.values[idx] = v;
        filled = idx + 1;
    };
    const March m = numerov_march(E, p, Vs, cfg.x_min, h, per_step);
    out.nodes = m.nodes;
    out.end_value = m.y_curr;
    out.log_scale = m.log_scale;
    return out;
}

GridFunction numerov_integrate(double E, const PhysicalParams& p, const ShootingConfig& cfg) {
    return numerov_run(E, p, cfg).psi;
}

int zero_energy_node_count(const PhysicalParams& p, const ShootingConfig& cfg_in) {
    ShootingConfig cfg = cfg_in;
    if (cfg.x_max == 0.0) cfg.x_max = p.sigma * std::log(1e8);
    cfg = cfg.resolved(p);
    const long n = cfg.steps;
    const double h = (cfg.x_max - cfg.x_min) / static_cast<double>(n);
    const auto Vs = potential_grid(p, cfg.x_min, h, n);
    return node_count_at(0.0, p, Vs, cfg.x_min, h);
}

std::vector<double> shooting_eigenvalues(const PhysicalParams& p, const ShootingConfig& cfg_in) {
    const ShootingConfig cfg = cfg_in.resolved(p);
    const int n_states = zero_energy_node_count(p, cfg_in);
    if (n_states == 0) return {};

    const long n = cfg.steps;
    const double h = (cfg.x_max - cfg.x_min) / static_cast<double>(n);
    const auto Vs = potential_grid(p, cfg.x_min, h, n);
    auto nodes = [&](double E) { return node_count_at(E, p, Vs, cfg.x_min, h); };

    double e_floor = -50.0 * std::abs(p.V0) *
                     std::max(1.0, std::cbrt(p.m * p.sigma * p.sigma * std::abs(p.V0) /
                                             (p.hbar * p.hbar)));
    for (int guard = 0; nodes(e_floor) > 0; ++guard) {
        if (guard > 6) throw NumericalError("shooting: cannot find a node-free floor");
        e_floor *= 10.0;
    }

    std::vector<double> out;
    double lo = e_floor;
    for (int k = 0; k < n_states; ++k) {
        // invariant: nodes(lo) <= k, nodes(hi) >= k+1
        double hi = -std::abs(p.V0) * 1e-12;
        double a = lo, b = hi;
        while (b - a > cfg.match_tol * std::max({std::abs(a), std::abs(b), 1e-30})) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            (nodes(mid) <= k ? a : b) = mid;
        }
        out.push_back(0.5 * (a + b));
        lo = b;  // nodes(b) >= k+1: valid floor for the next level
    }
    return out;
}

double schrodinger_residual(const GridFunction& psi, double E, const PhysicalParams& p,
                            PotentialKind kind) {
    return schrodinger_residual_report(psi, E, p, kind).residual;
}

namespace {

// Fornberg weights of the m-th derivative at x0 from the nodes xs[0..n-1].
void fd_weights(double x0, const double* xs, int n, int m, double* w) {
    std::vector<double> c(static_cast<std::size_t>(n) * (m + 1), 0.0);
    auto C = [&](int i, int j) -> double& { return c[static_cast<std::size_t>(i) * (m + 1) + j]; };
    double c1 = 1.0, c4 = xs[0] - x0;
    C(0, 0) = 1.0;
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
                    C(i, s) = c1 * (s * C(i - 1, s - 1) - c5 * C(i - 1, s)) / c2;
                C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
            }
            for (int s = mn; s >= 1; --s) C(j, s) = (c4 * C(j, s) - s * C(j, s - 1)) / c3;
            C(j, 0) = c4 * C(j, 0) / c3;
        }
        c1 = c2;
    }
    for (int i = 0; i < n; ++i) w[i] = C(i, m);
}

}  // namespace

ResidualReport schrodinger_residual_report(const GridFunction& psi, double E,
                                           const PhysicalParams& p, PotentialKind kind) {
    psi.validate();
    if (psi.size() < 5) throw DomainError("schrodinger_residual: need at least 5 grid points");
    const double k2m = p.kappa2m();
    const std::size_t n = psi.size();

    std::vector<double> d2(n, 0.0), fpsi(n, 0.0);
    double norm = 0.0;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        double w[5];
        fd_weights(psi.xs[i], &psi.xs[i - 2], 5, 2, w);
        double acc = 0.0;
        for (int j = 0; j < 5; ++j) acc += w[j] * psi.values[i - 2 + j];
        d2[i] = acc;
        const double V = oracle_potential(kind, psi.xs[i], p);
        fpsi[i] = k2m * (E - V) * psi.values[i];
        norm = std::max({norm, std::abs(d2[i]), std::abs(fpsi[i])});
    }
    if (norm == 0.0) return {0.0, 0.0, true, 0.0, 0.0};

    ResidualReport rep;
    rep.norm_scale = norm;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        rep.abs_residual = std::max(rep.abs_residual, std::abs(d2[i] + fpsi[i]));
        // FD truncation ~ (h^4/90) psi^(6) with psi^(6) ~ (k2m (V-E))^3 psi
        const double h = std::max(psi.xs[i + 1] - psi.xs[i], psi.xs[i] - psi.xs[i - 1]);
        const double f = fpsi[i] == 0.0 ? 0.0 : std::abs(fpsi[i] / psi.values[i]);
        const double bound = std::pow(h, 4) / 90.0 * f * f * std::abs(fpsi[i]);
        rep.truncation_bound = std::max(rep.truncation_bound, bound / norm);
    }
    rep.residual = rep.abs_residual / norm;
    rep.grid_adequate = rep.truncation_bound <= rep.residual;
    return rep;
}

GridFunction wronskian(const GridFunction& psi1, const GridFunction& psi2) {
    psi1.validate();
    psi2.validate();
    if (psi1.size() != psi2.size() || !std::equal(psi1.xs.begin(), psi1.xs.end(), psi2.xs.begin()))
        throw DomainError("wronskian: grids do not match");
    if (!psi1.has_derivatives() || !psi2.has_derivatives())
        throw DomainError("wronskian: derivative samples required");
    GridFunction w;
    w.xs = psi1.xs;
    w.values.resize(psi1.size());
    for (std::size_t i = 0; i < psi1.size(); ++i)
        w.values[i] = psi1.values[i] * psi2.derivatives[i] - psi2.values[i] * psi1.derivatives[i];
    return w;
}

int count_sign_changes(const GridFunction& f, double x_exclude) {
    int count = 0;
    int last_sign = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.xs[i] <= x_exclude) continue;
        const double v = f.values[i];
        if (v == 0.0) continue;
        const int s = v > 0.0 ? +1 : -1;
        if (last_sign != 0 && s != last_sign) ++count;
        last_sign = s;
    }
    return count;
}

}  // namespace lwpot::oracle
