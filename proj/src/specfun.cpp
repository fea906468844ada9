#include "lwpot/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lwpot/ode.hpp"

namespace lwpot::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInvE = 0.36787944117144232160;  // 1/e
constexpr double kLnPi = 1.1447298858494001741;   // ln(pi)
constexpr double kHalfLn2Pi = 0.91893853320467274178;

bool is_nonpositive_integer(double x) { return x == std::floor(x) && x <= 0.0; }

// One Halley step for f(w) = w e^w - t.
double halley_step(double w, double t) {
    const double ew = std::exp(w);
    const double f = w * ew - t;
    const double w1 = w + 1.0;
    const double denom = ew * w1 - f * (w + 2.0) / (2.0 * w1);
    return w - f / denom;
}

// Series around the branch point (-1/e, -1); p = +-sqrt(2(1 + e t)).
double branch_point_series(double p) {
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
}

double lambert_w0(double t) {
    if (t == 0.0) return 0.0;
    const double d = t + kInvE;  // distance to the branch point
    if (d < 1e-12) {
        // Halley's correction degenerates this close to the branch point;
        // the series is already past double accuracy here.
        return branch_point_series(std::sqrt(2.0 * std::exp(1.0) * d));
    }
    double w;
    if (t < -0.25) {
        w = branch_point_series(std::sqrt(2.0 * std::exp(1.0) * d));
    } else if (t < std::exp(1.0)) {
        w = std::log1p(t);  // exact to O(t^2), ample for Halley
    } else {
        const double l1 = std::log(t), l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }
    for (int i = 0; i < 12; ++i) {
        const double w_next = halley_step(w, t);
        if (std::abs(w_next - w) <= 2.0 * kEps * (1.0 + std::abs(w_next))) {
            w = w_next;
            break;
        }
        w = w_next;
    }
    return w;
}

double lambert_wm1(double t) {
    const double d = t + kInvE;
    if (d < 1e-12) return branch_point_series(-std::sqrt(2.0 * std::exp(1.0) * d));
    double w;
    if (t < -0.25) {
        w = branch_point_series(-std::sqrt(2.0 * std::exp(1.0) * d));
    } else {
        const double l1 = std::log(-t), l2 = std::log(-l1);
        w = l1 - l2 + l2 / l1;
    }
    for (int i = 0; i < 16; ++i) {
        const double w_next = halley_step(w, t);
        if (std::abs(w_next - w) <= 2.0 * kEps * (1.0 + std::abs(w_next))) {
            w = w_next;
            break;
        }
        w = w_next;
    }
    return w;
}

// ln Gamma by the Stirling series with Bernoulli-number corrections,
// argument shifted up to >= 12 by the recurrence.
double log_gamma_positive(double x) {
    static constexpr double kStirling[8] = {
        1.0 / 12.0,     -1.0 / 360.0,      1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0,   -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0};
    double shift = 0.0;
    while (x < 12.0) {
        shift -= std::log(x);
        x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    double series = 0.0;
    double p = inv;
    for (double coeff : kStirling) {
        series += coeff * p;
        p *= inv2;
    }
    return shift + (x - 0.5) * std::log(x) - x + kHalfLn2Pi + series;
}

// sin(pi x) with exact argument reduction to [-1/2, 1/2].
double sin_pi(double x) {
    const double n = std::round(x);
    const double r = x - n;
    const double s = std::sin(M_PI * r);
    return (std::fmod(std::abs(n), 2.0) == 0.0) ? s : -s;
}

// Raw 1F1 series; caller guarantees x >= 0 and c not a non-positive integer.
double kummer_series(double a, double c, double x, const ChgEvalPolicy& policy) {
    double sum = 1.0, comp = 0.0, term = 1.0;
    int quiet = 0;
    for (int k = 0; k < policy.max_terms; ++k) {
        term *= (a + k) / (c + k) * x / (k + 1);
        const double y = term - comp;  // Kahan update
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (term == 0.0) return sum;  // terminating (a a non-positive integer)
        quiet = (std::abs(term) <= policy.tol * std::abs(sum)) ? quiet + 1 : 0;
        if (quiet >= 2) return sum;
    }
    throw NumericalError("kummer_m: series did not converge within max_terms");
}

// Asymptotic series U(a;c;x) ~ x^{-a} sum_k (a)_k (a-c+1)_k / (k! (-x)^k).
// Returns the sum with the prefactor applied; throws when the optimal
// truncation cannot reach tol.
double u_asymptotic(double a, double c, double x, double tol) {
    double sum = 1.0, term = 1.0, prev_abs = 1.0;
    bool converged = false;
    for (int k = 0; k < 120; ++k) {
        term *= (a + k) * (a - c + 1.0 + k) / ((k + 1) * (-x));
        const double abs_term = std::abs(term);
        if (abs_term > prev_abs) break;  // divergence onset; stop at optimal truncation
        sum += term;
        prev_abs = abs_term;
        if (abs_term <= tol * std::abs(sum)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericalError("tricomi_u: asymptotic series failed to reach tol at the seed point");
    return std::pow(x, -a) * sum;
}

double u_seed_point(double a, double c, double x) {
    return std::max(50.0, 4.0 * (std::abs(a) + std::abs(c) + x));
}

bool connection_formula_applicable(double c) { return std::abs(c - std::round(c)) >= 1e-6; }

// Gamma(num)/Gamma(den): zero at the poles of the denominator, direct tgamma
// quotient when both stay in range (tighter than composing signed logs).
double gamma_ratio(double num, double den) {
    if (is_nonpositive_integer(den)) return 0.0;
    if (std::abs(num) < 170.0 && std::abs(den) < 170.0) {
        const double gn = std::tgamma(num), gd = std::tgamma(den);
        const double r = gn / gd;
        if (std::isfinite(r)) return r;
    }
    const auto gn = log_gamma(num);
    const auto gd = log_gamma(den);
    return gn.sign * gd.sign * std::exp(gn.log_abs - gd.log_abs);
}

double u_connection(double a, double c, double x, const ChgEvalPolicy& policy) {
    if (!connection_formula_applicable(c))
        throw DomainError("tricomi_u: connection formula rejected for (near-)integer c");
    // G(1-c)/G(a-c+1) M(a;c;x) + G(c-1)/G(a) x^{1-c} M(a-c+1;2-c;x)
    double t1 = 0.0, t2 = 0.0;
    const double c1 = gamma_ratio(1.0 - c, a - c + 1.0);
    if (c1 != 0.0) t1 = c1 * kummer_m(a, c, x, policy);
    const double c2 = gamma_ratio(c - 1.0, a);
    if (c2 != 0.0) t2 = c2 * std::exp((1.0 - c) * std::log(x)) * kummer_m(a - c + 1.0, 2.0 - c, x, policy);
    return t1 + t2;
}

// Inward integration of x u'' + (c - x) u' - a u = 0 from the asymptotic
// seed down through the (descending) abscissae.  xs may be empty, in which
// case only the endpoint value is of interest.
void u_ode_inward(double a, double c, std::span<const double> xs_desc, double x_lo,
                  const ChgEvalPolicy& policy, std::vector<double>* out_u,
                  std::vector<double>* out_up) {
    // Escalate the seed when the divergent tail of the asymptotic series sets
    // in before tol is reached (large |a|, |a-c+1|); the base point follows
    // x_seed = max(50, 4(|a|+|c|+x)).
    double seed = u_seed_point(a, c, xs_desc.empty() ? x_lo : xs_desc.front());
    double u0 = 0.0, up0 = 0.0;
    for (int attempt = 0;; ++attempt, seed *= 2.0) {
        try {
            u0 = u_asymptotic(a, c, seed, policy.tol);
            up0 = -a * u_asymptotic(a + 1.0, c + 1.0, seed, policy.tol);
            break;
        } catch (const NumericalError&) {
            if (attempt >= 3) throw;
        }
    }

    ode::RK2::Rhs rhs = [a, c](double x, const std::array<double, 2>& y,
                               std::array<double, 2>& dy) {
        dy[0] = y[1];
        dy[1] = (a * y[0] - (c - x) * y[1]) / x;
    };
    ode::Options opt;
    opt.rtol = 3e-14;  // effectively the integrator's double-precision floor
    opt.atol = (std::abs(u0) + std::abs(up0)) * 1e-16 + 1e-300;

    out_u->reserve(xs_desc.size());
    out_up->reserve(xs_desc.size());
    auto observer = [&](double, const std::array<double, 2>& y) {
        out_u->push_back(y[0]);
        out_up->push_back(y[1]);
    };
    ode::RK2::integrate(rhs, seed, x_lo, {u0, up0}, opt, xs_desc, observer);
}

}  // namespace

void ChgEvalPolicy::validate() const {
    if (max_terms <= 0) throw DomainError("ChgEvalPolicy: max_terms must be positive");
    if (!(tol >= 10.0 * kEps)) throw DomainError("ChgEvalPolicy: tol below 10*eps");
}

double lambert_w(WBranch branch, double t) {
    if (!std::isfinite(t)) throw DomainError("lambert_w: non-finite argument");
    if (t < -kInvE) {
        if (-kInvE - t <= 4.0 * kEps) {
            t = -kInvE;  // x = 0 maps exactly onto the branch point; do not
                         // let rounding push it below
        } else {
            throw DomainError("lambert_w: argument below -1/e");
        }
    }
    if (branch == WBranch::principal) return lambert_w0(t);
    if (t >= 0.0) throw DomainError("lambert_w: lower branch requires t < 0");
    return lambert_wm1(t);
}

SignedLogGamma log_gamma(double x) {
    if (!std::isfinite(x)) throw DomainError("log_gamma: non-finite argument");
    if (is_nonpositive_integer(x)) throw DomainError("log_gamma: pole at non-positive integer");
    if (x >= 0.5) return {log_gamma_positive(x), +1};
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    const double s = sin_pi(x);
    const double log_abs = kLnPi - std::log(std::abs(s)) - log_gamma_positive(1.0 - x);
    return {log_abs, s > 0.0 ? +1 : -1};
}

double inv_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    const auto g = log_gamma(x);
    return g.sign * std::exp(-g.log_abs);
}

double kummer_m(double a, double c, double x, const ChgEvalPolicy& policy) {
    policy.validate();
    if (is_nonpositive_integer(c))
        throw DomainError("kummer_m: c must not be zero or a negative integer");
    if (x == 0.0) return 1.0;
    if (x < 0.0) return std::exp(x) * kummer_series(c - a, c, -x, policy);
    return kummer_series(a, c, x, policy);
}

double tricomi_u(double a, double c, double x, const ChgEvalPolicy& policy) {
    policy.validate();
    if (!(x > 0.0)) throw DomainError("tricomi_u: requires x > 0");

    ChgEvalPolicy::UStrategy strategy;
    if (policy.u_strategy) {
        strategy = *policy.u_strategy;
    } else if (connection_formula_applicable(c) && x <= 8.0 &&
               (a <= 0.25 || x + (2.0 * a - c) * std::log(std::max(x, 1.0)) <= 12.0)) {
        // The formula cancels e^x-sized terms down to O(x^{-a}); skip it
        // where that (estimated in logs) costs more digits than tol allows.
        strategy = ChgEvalPolicy::UStrategy::connection_formula;
    } else {
        strategy = ChgEvalPolicy::UStrategy::ode_inward;
    }

    if (strategy == ChgEvalPolicy::UStrategy::connection_formula)
        return u_connection(a, c, x, policy);

    if (x >= 50.0) {
        try {
            return u_asymptotic(a, c, x, policy.tol);
        } catch (const NumericalError&) {
            // fall through to the integration path
        }
    }
    std::vector<double> u, up;
    const double pts[1] = {x};
    u_ode_inward(a, c, pts, x, policy, &u, &up);
    return u.front();
}

UGrid tricomi_u_grid(double a, double c, std::span<const double> xs,
                     const ChgEvalPolicy& policy) {
    policy.validate();
    UGrid out;
    if (xs.empty()) return out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0)) throw DomainError("tricomi_u_grid: abscissae must be positive");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw DomainError("tricomi_u_grid: abscissae must be strictly increasing");
    }
    out.values.resize(xs.size());
    out.derivatives.resize(xs.size());

    // The connection formula is clean for small arguments; per-point use of
    // it there keeps the inward integration short, so its step bias cannot
    // pile up across many decades of x.
    std::size_t n_conn = 0;
    if (connection_formula_applicable(c)) {
        while (n_conn < xs.size() && xs[n_conn] <= 8.0) ++n_conn;
        for (std::size_t i = 0; i < n_conn; ++i) {
            out.values[i] = u_connection(a, c, xs[i], policy);
            out.derivatives[i] = -a * u_connection(a + 1.0, c + 1.0, xs[i], policy);
        }
    }
    if (n_conn < xs.size()) {
        std::vector<double> desc(xs.rbegin(), xs.rend() - static_cast<long>(n_conn));
        std::vector<double> u, up;
        u_ode_inward(a, c, desc, desc.back(), policy, &u, &up);
        for (std::size_t i = n_conn; i < xs.size(); ++i) {
            const std::size_t r = xs.size() - 1 - i;
            out.values[i] = u[r];
            out.derivatives[i] = up[r];
        }
    }
    return out;
}

}  // namespace lwpot::specfun
