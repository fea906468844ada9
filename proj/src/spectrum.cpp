#include "lwpot/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "lwpot/closedform.hpp"
#include "lwpot/oracle.hpp"
#include "lwpot/quadrature.hpp"
#include "lwpot/specfun.hpp"

namespace lwpot::spectrum {

namespace {

constexpr double kPoleThreshold = 1e3;  // |F| above this at a refined bracket = pole

void require_well(const PhysicalParams& p, const char* who, bool allow_zero_v0 = false) {
    p.validate();
    if (!p.is_singular_form())
        throw DomainError(std::string(who) +
                          ": spectrum machinery applies to the singular potential family");
    if (p.V0 < 0.0 || (p.V0 == 0.0 && !allow_zero_v0))
        throw DomainError(std::string(who) + ": requires V0 > 0");
}

ScanPolicy resolve(const ScanPolicy& in, const PhysicalParams& p) {
    ScanPolicy s = in;
    if (s.e_floor == 0.0) {
        const double depth =
            std::cbrt(p.m * p.sigma * p.sigma * p.V0 / (p.hbar * p.hbar));
        s.e_floor = -50.0 * p.V0 * std::max(1.0, depth);
    }
    if (s.e_top == 0.0) s.e_top = -1e-8 * p.V0;
    if (!(s.e_floor < s.e_top && s.e_top < 0.0))
        throw DomainError("ScanPolicy: requires e_floor < e_top < 0");
    if (s.points < 16) throw DomainError("ScanPolicy: too few scan points");
    return s;
}

// Node count of the bound-state candidate at E on a graded grid.
int bound_state_nodes(double E, const PhysicalParams& p) {
    const double x_lo = 1e-6 * p.sigma;
    const double x_hi = p.sigma * std::log(1e8);
    const int n = 3000;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        xs[i] = x_lo + (x_hi - x_lo) * t * t;
    }
    const GridFunction psi = closedform::bound_state_grid(xs, E, p);
    return oracle::count_sign_changes(psi, x_lo * 0.5);
}

struct Feature {
    double energy;
    double lo, hi;
    double f_at;
    bool is_root;
};

Feature refine_bracket(const std::function<double(double)>& F, double lo, double hi, double flo) {
    while (hi - lo > 1e-10 * std::max(1.0, std::min(std::abs(lo), std::abs(hi)))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = F(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Feature out{};
    out.lo = lo;
    out.hi = hi;
    out.energy = 0.5 * (lo + hi);
    out.f_at = F(out.energy);
    out.is_root = std::abs(out.f_at) < kPoleThreshold;
    return out;
}

}  // namespace

FParts spectrum_function_parts(double E, const PhysicalParams& p) {
    require_well(p, "spectrum_function");
    if (!(E < 0.0)) throw DomainError("spectrum_function: requires E < 0");
    const closedform::ChgTriple t = closedform::chg_parameters(E, p, SignPair{+1, +1});
    FParts out;
    out.numerator_m = specfun::kummer_m(1.0 + t.a, 1.0 + t.c, t.s0);
    out.denominator_m = specfun::kummer_m(t.a, t.c, t.s0);
    out.F = 1.0 + (t.s0 - t.c) / (2.0 * t.c) * out.numerator_m / out.denominator_m;
    return out;
}

double spectrum_function(double E, const PhysicalParams& p) {
    return spectrum_function_parts(E, p).F;
}

SpectrumResult find_bound_states_with(const std::function<double(double)>& F,
                                      const PhysicalParams& p, const ScanPolicy& scan_in,
                                      bool cross_check) {
    require_well(p, "find_bound_states");
    ScanPolicy scan = resolve(scan_in, p);

    // the floor must be in the F ~ 1 asymptotic regime (no roots below)
    for (int guard = 0; std::abs(F(scan.e_floor) - 1.0) >= 0.5; ++guard) {
        if (guard >= 3) throw NumericalError("find_bound_states: no F ~ 1 floor found");
        scan.e_floor *= 10.0;
    }

    const int expected = cross_check ? count_nodes_zero_energy(p) : -1;

    SpectrumResult result;
    int points = scan.points;
    double e_top = scan.e_top;
    for (int attempt = 0;; ++attempt) {
        std::vector<Feature> roots;
        const double ratio = e_top / scan.e_floor;  // in (0,1)
        double e_prev = scan.e_floor;
        double f_prev = F(e_prev);
        for (int i = 1; i < points; ++i) {
            const double e = scan.e_floor * std::pow(ratio, static_cast<double>(i) / (points - 1));
            const double f = F(e);
            if ((f < 0.0) != (f_prev < 0.0)) {
                Feature feat = refine_bracket(F, e_prev, e, f_prev);
                if (feat.is_root) roots.push_back(feat);
            }
            e_prev = e;
            f_prev = f;
        }

        bool consistent = (expected < 0) || static_cast<int>(roots.size()) == expected;
        std::vector<int> nodes(roots.size(), -1);
        if (consistent) {
            for (std::size_t k = 0; k < roots.size(); ++k) {
                nodes[k] = bound_state_nodes(roots[k].energy, p);
                if (nodes[k] != static_cast<int>(k)) {
                    consistent = false;
                    break;
                }
            }
        }
        if (consistent) {
            result.energies.clear();
            result.roots.clear();
            for (std::size_t k = 0; k < roots.size(); ++k) {
                result.energies.push_back(roots[k].energy);
                result.roots.push_back({roots[k].energy, roots[k].lo, roots[k].hi,
                                        std::abs(roots[k].f_at), nodes[k]});
            }
            break;
        }
        if (attempt >= scan.max_refine)
            throw VerificationError(
                "find_bound_states: root list disagrees with the node-count cross-check");
        points *= 4;        // unresolved scan cells
        e_top *= 1e-2;      // shallow levels may hide near E = 0
    }

    result.exact_n = static_cast<int>(result.energies.size());
    result.bargmann = bargmann_bound(p);
    result.calogero = calogero_bound(p);
    result.chadan = chadan_estimate(p);
    return result;
}

SpectrumResult find_bound_states(const PhysicalParams& p, const ScanPolicy& scan) {
    return find_bound_states_with([&p](double E) { return spectrum_function(E, p); }, p, scan,
                                  /*cross_check=*/true);
}

int count_nodes_zero_energy(const PhysicalParams& p) {
    require_well(p, "count_nodes_zero_energy", /*allow_zero_v0=*/true);
    // V0 -> 0 limit: free zero-energy regular solution is proportional to x
    if (p.V0 == 0.0) return 0;

    // analytic path: regular combination of the E = 0 closed form
    const closedform::SolutionCoefficients coef =
        closedform::zero_energy_regular_coefficients(p);
    const double x_lo = 1e-6 * p.sigma;
    const double x_hi = p.sigma * std::log(1e8);
    const int n = 6000;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        xs[i] = x_lo + (x_hi - x_lo) * t * t;
    }
    const GridFunction psi = closedform::zero_energy_grid(xs, p, coef);
    const int analytic = oracle::count_sign_changes(psi, x_lo * 0.5);

    const int shot = oracle::zero_energy_node_count(p);
    if (analytic != shot)
        throw VerificationError("count_nodes_zero_energy: analytic (" + std::to_string(analytic) +
                                ") and oracle (" + std::to_string(shot) + ") paths disagree");
    return analytic;
}

double bargmann_bound(const PhysicalParams& p) {
    require_well(p, "bargmann_bound", /*allow_zero_v0=*/true);
    return p.m * p.sigma * p.sigma * p.V0 / (p.hbar * p.hbar);
}

double bargmann_integral(const PhysicalParams& p) {
    require_well(p, "bargmann_integral", /*allow_zero_v0=*/true);
    const double cutoff = 50.0 * p.sigma;
    auto f = [&p](double x) {
        return x * std::abs(potential::eval_potential(PotentialKind::singular, x, p));
    };
    const auto head = quadrature::integrate_sqrt_left(f, 0.0, cutoff, 1e-12, 1e-300);
    return p.kappa2m() * head.value;
}

double calogero_bound(const PhysicalParams& p) {
    require_well(p, "calogero_bound", /*allow_zero_v0=*/true);
    return std::sqrt(2.0 * p.m * p.sigma * p.sigma * p.V0) / p.hbar;
}

double chadan_estimate(const PhysicalParams& p) { return 0.5 * calogero_bound(p); }

}  // namespace lwpot::spectrum
