#pragma once

#include <array>
#include <span>
#include <vector>

#include "lwpot/potential.hpp"
#include "lwpot/types.hpp"

namespace lwpot::heun {

/// Five-parameter double-confluent Heun equation
///   u'' + (gamma/z^2 + delta/z + epsilon) u' + (alpha z - q)/z^2 u = 0.
struct DchParams {
    double gamma;
    double delta;
    double epsilon;
    double alpha;
    double q;

    /// Location of the apparent singularity of the derivative equation.
    double apparent_singularity() const {
        if (alpha == 0.0) throw DomainError("DchParams: z0 = q/alpha undefined for alpha = 0");
        return q / alpha;
    }
    bool degenerate() const { return alpha == 0.0; }
};

/// Heun parameters of the solution for the selected potential family.
/// m2_variant:  delta = s, gamma = -delta z0, epsilon = 0,
///              alpha = 2 m sigma^2 V1/(z0 hbar^2), q = alpha z0;
/// m1_variant:  epsilon = s, delta = 1 - epsilon z0, gamma = 0,
///              alpha = 2 m sigma^2 z0 V1/hbar^2,    q = alpha z0;
/// with s = sign_s0 * sqrt(8 m sigma^2 (V0 - E)/hbar^2).
/// alpha = 0 (V1 = 0) is returned flagged via DchParams::degenerate();
/// the derivative map requires alpha != 0.
DchParams dch_params_for(PotentialKind kind, double E, const PhysicalParams& p, SignPair signs);

/// Numerical solution of the equation on a strictly increasing grid that
/// must not span z = 0.  z_start has to lie inside [front, back]; the
/// integration runs outwards in both directions from it.
/// `residual` is a finite-difference consistency check of the returned
/// (u, u') pair against the equation, normalized by the largest term.
struct DcheSolution {
    std::vector<double> z;
    std::vector<double> u;
    std::vector<double> u_prime;
    double residual = 0.0;
};
DcheSolution solve_dche(const DchParams& params, double z_start, double u0, double u0p,
                        std::span<const double> z_grid);

/// w(z) = z^delta e^{epsilon z - gamma/z} u'(z).
double derivative_map(const DchParams& params, double z, double u_prime);

/// w together with its first two derivatives, propagated analytically from a
/// DCHE solution (u'' eliminated through the equation, never by finite
/// differences).
struct DeformedFunction {
    std::vector<double> z;
    std::vector<double> w;
    std::vector<double> wp;
    std::vector<double> wpp;
};
DeformedFunction deformed_from_dche(const DchParams& params, const DcheSolution& sol);

/// Max pointwise residual of the deformed equation
///   w'' - (gamma/z^2 + (delta-2)/z + epsilon + 1/(z-z0)) w' + alpha (z-z0)/z^2 w = 0
/// normalized by the largest term magnitude.  The grid must keep at least
/// one local spacing away from z = 0 and z = q/alpha.
double deformed_residual(const DchParams& params, const DeformedFunction& w);

/// Pre-factor phi(z) = z^{-(m1+delta-2)/2} (z-z0)^{-(m2+1)/2} e^{-(eps z - gamma/z)/2};
/// m2 = -1 makes the middle factor identically one.
double prefactor(PotentialKind kind, const DchParams& params, double z, const PhysicalParams& p);

/// psi(x) = phi(z(x)) w(z(x)) built entirely from the Heun-side pipeline,
/// matched to the initial data (psi, dpsi/dx) at x_grid.front().  This is
/// the numerical solution path that exists for both potential families.
/// For alpha = 0 the pipeline degenerates to the one-dimensional family
/// psi = const * phi and the derivative datum is ignored.
GridFunction assemble_psi(PotentialKind kind, double E, const PhysicalParams& p,
                          std::span<const double> x_grid, double psi0, double dpsi0);

/// Numerical witness of the reduction identity: the invariant
/// I = g - f'/2 - f^2/4 of the deformed equation against
/// -(1/2)(rho'/rho)' - (1/4)(rho'/rho)^2 + (2m/hbar^2)(E - V)/rho^2
/// with rho = z^{m1}(z-z0)^{m2}/sigma and V in the rational form
/// rho^2 (v0 + v1 z + ... + v6 z^6)/(z^4 (z-z0)^2).
struct ReductionWitness {
    double m1;
    double m2;
    std::array<double, 7> v;
    double sigma;
    std::vector<double> grid;
    double residual_norm;
    double v_form_residual;  // max |V(z) - rational form| over the grid
};
ReductionWitness verify_reduction(PotentialKind kind, const PhysicalParams& p, double E,
                                  std::span<const double> z_grid, SignPair signs = {});

/// Roots of the exponent-matching quadratic -3/4 = m2/2 - m2^2/4 ({-1, 3}).
std::array<double, 2> m2_candidates();

}  // namespace lwpot::heun
