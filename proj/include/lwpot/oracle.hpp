#pragma once

#include <vector>

#include "lwpot/potential.hpp"
#include "lwpot/types.hpp"

namespace lwpot::oracle {

/// Configuration of the Numerov integration / shooting runs.
/// x_min or x_max left at 0 resolve to 1e-4*sigma and 40*sigma.
struct ShootingConfig {
    double x_min = 0.0;
    double x_max = 0.0;
    long steps = 200000;
    double match_tol = 1e-9;  // relative eigenvalue convergence
    int frobenius_terms = 4;  // regular-start series terms (2..4)

    ShootingConfig resolved(const PhysicalParams& p) const;
};

/// Lambert W by plain bisection on w e^w = t.  Deliberately shares no code
/// with specfun::lambert_w; this is the oracle's own route to the potential.
double bisect_w(specfun::WBranch branch, double t);

/// Potential evaluated through bisect_w.
double oracle_potential(double x, const PhysicalParams& p);
double oracle_potential(PotentialKind kind, double x, const PhysicalParams& p);

/// Fourth-order Numerov solution of psi'' = (2m/hbar^2)(V - E) psi for the
/// singular potential, launched with the regular series at x_min:
///   psi = x + alpha x^{5/2} + beta x^3 + gamma x^{7/2},
/// alpha = -(2m/hbar^2) A (4/15) with A = sqrt(sigma/2) V0 (matching the
/// x^{1/2} term of V psi), beta = (2m/hbar^2)(B - E)/6 with B = 2 V0/3 the
/// constant term of V at the origin, gamma = (4/35)(2m/hbar^2) C with
/// C = -(V0/12) sqrt(2/sigma) the sqrt(x) term.
/// If the march is renormalized against overflow, all stored values are kept
/// on a common final scale (the earliest samples may then underflow to zero)
/// and the cumulative log-scale is reported.
struct NumerovResult {
    GridFunction psi;
    int nodes = 0;
    double end_value = 0.0;
    double log_scale = 0.0;
};
NumerovResult numerov_run(double E, const PhysicalParams& p, const ShootingConfig& cfg);
GridFunction numerov_integrate(double E, const PhysicalParams& p, const ShootingConfig& cfg);

/// All bound-state energies by node-count bisection on the regular solution
/// (Sturm oscillation guarantees none are skipped).
std::vector<double> shooting_eigenvalues(const PhysicalParams& p, const ShootingConfig& cfg);

/// Nodes (x > 0) of the regular zero-energy solution on (0, sigma ln 1e8].
int zero_energy_node_count(const PhysicalParams& p, const ShootingConfig& cfg = {});

/// Max normalized residual of the Schrodinger equation over interior grid
/// points, second derivative by 5-point finite differences.
double schrodinger_residual(const GridFunction& psi, double E, const PhysicalParams& p,
                            PotentialKind kind = PotentialKind::singular);
struct ResidualReport {
    double residual = 0.0;
    double truncation_bound = 0.0;  // finite-difference error estimate, same normalization
    bool grid_adequate = true;      // truncation_bound <= residual
    double abs_residual = 0.0;      // un-normalized max |psi'' + (2m/hbar^2)(E-V) psi|
    double norm_scale = 0.0;        // largest term magnitude used as the normalizer
};
ResidualReport schrodinger_residual_report(const GridFunction& psi, double E,
                                           const PhysicalParams& p,
                                           PotentialKind kind = PotentialKind::singular);

/// Pointwise psi1 psi2' - psi2 psi1' (derivative samples required).
GridFunction wronskian(const GridFunction& psi1, const GridFunction& psi2);

/// Strict sign changes of the sampled values, ignoring samples at
/// x <= x_exclude and exact zeros.
int count_sign_changes(const GridFunction& f, double x_exclude);

}  // namespace lwpot::oracle
