#pragma once

#include <functional>
#include <vector>

#include "lwpot/potential.hpp"
#include "lwpot/types.hpp"

namespace lwpot::spectrum {

/// Energy-scan policy for the root finder.  Zeros resolve to the defaults:
/// e_floor = -50 V0 max(1, cbrt(m sigma^2 V0 / hbar^2)), e_top = -1e-8 V0,
/// geometric grid with `points` samples.
struct ScanPolicy {
    double e_floor = 0.0;
    double e_top = 0.0;
    int points = 2000;
    int max_refine = 3;
};

struct RootDiagnostics {
    double energy;
    double bracket_lo;
    double bracket_hi;
    double f_residual;  // |F| at the refined root
    int node_count;
};

struct SpectrumResult {
    std::vector<double> energies;  // strictly increasing, all negative
    std::vector<RootDiagnostics> roots;
    int exact_n = 0;
    double bargmann = 0.0;
    double calogero = 0.0;
    double chadan = 0.0;
};

/// Spectrum function (plus signs)
///   F(E) = 1 + (s0-c)/(2c) M(1+a;1+c;s0) / M(a;c;s0),
/// whose zeros on E < 0 are the bound-state energies; F -> 1 as E -> -inf
/// and has poles at the zeros of the denominator Kummer function.
double spectrum_function(double E, const PhysicalParams& p);

struct FParts {
    double F;
    double numerator_m;    // M(1+a;1+c;s0)
    double denominator_m;  // M(a;c;s0)
};
FParts spectrum_function_parts(double E, const PhysicalParams& p);

/// All roots of F on (e_floor, e_top): geometric sign-change scan, poles
/// discriminated from roots by |F| at the refined point, bisection refinement
/// to |dE| <= 1e-10 max(1,|E|).  Each root's eigenfunction node count is
/// verified against its index and the total count against the zero-energy
/// node theorem; on mismatch the scan is retried finer, then rejected.
SpectrumResult find_bound_states(const PhysicalParams& p, const ScanPolicy& scan = {});

/// Same engine with an injected spectrum function (negative-control hook for
/// mutation testing; see `verify --mutate`).
SpectrumResult find_bound_states_with(const std::function<double(double)>& F,
                                      const PhysicalParams& p, const ScanPolicy& scan,
                                      bool cross_check);

/// Number of bound states via the node theorem: zeros (x > 0) of the regular
/// zero-energy solution, counted on (0, sigma ln 1e8] along BOTH the analytic
/// closed-form path and the Numerov oracle path; they must agree.
int count_nodes_zero_energy(const PhysicalParams& p);

/// Closed-form bound on the number of bound states, n <= m sigma^2 V0/hbar^2.
double bargmann_bound(const PhysicalParams& p);
/// The same bound as the defining integral (2m/hbar^2) int_0^inf x |V(x)| dx
/// by adaptive quadrature.
double bargmann_integral(const PhysicalParams& p);
/// n <= sqrt(2 m sigma^2 V0/hbar^2) for monotone attractive potentials.
double calogero_bound(const PhysicalParams& p);
/// Large-coupling estimate: half the Calogero bound.
double chadan_estimate(const PhysicalParams& p);

}  // namespace lwpot::spectrum
