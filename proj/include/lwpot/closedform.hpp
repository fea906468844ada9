#pragma once

#include <span>

#include "lwpot/potential.hpp"
#include "lwpot/specfun.hpp"
#include "lwpot/types.hpp"

namespace lwpot::closedform {

/// Confluent hypergeometric parameter triple of the closed-form solution:
///   c  = sign_c  sqrt(-8 m sigma^2 E / hbar^2)        (E < 0)
///   s0 = sign_s0 sqrt( 8 m sigma^2 (V0 - E) / hbar^2) (E < V0)
///   a  = -(c - s0)^2 / (4 s0)
struct ChgTriple {
    double a;
    double c;
    double s0;
};

/// Coefficients of the general solution; (1,0) and (0,1) select the
/// Kummer-led and Tricomi-led fundamental solutions.
struct SolutionCoefficients {
    double C1 = 1.0;
    double C2 = 0.0;
};

ChgTriple chg_parameters(double E, const PhysicalParams& p, SignPair signs);

/// One evaluation of the closed-form solution and its derivatives.
struct PsiEval {
    double z;
    double psi;
    double dpsi_dz;
    double dpsi_dx;  // NaN exactly at the z = 1 boundary, where dz/dx diverges
};

/// General solution psi = z^{c/2} e^{-c z/2} du/dz with
/// u = e^{z(c-s0)/2} (C1 M(a;c;s0 z) + C2 U(a;c;s0 z)),  z = -W(-e^{-(x-x0)/sigma}).
/// All z-derivatives are taken analytically through
/// d/dy M(a;c;y) = (a/c) M(a+1;c+1;y) and d/dy U(a;c;y) = -a U(a+1;c+1;y).
/// Requires the z0 = 1, V1 = -V0 family; E < 0 (E = 0 has its own form below).
PsiEval general_solution_eval(double x, double E, const PhysicalParams& p,
                              const SolutionCoefficients& coef, SignPair signs,
                              const specfun::ChgEvalPolicy& policy = {});
double general_solution_psi(double x, double E, const PhysicalParams& p,
                            const SolutionCoefficients& coef, SignPair signs);

/// Bound-state wavefunction (not normalized): plus signs, C2 = 0,
///   psi_B = z^{c/2} e^{-s0 z/2} [ (c-s0)/2 M(a;c;s0 z) + (a s0/c) M(a+1;c+1;s0 z) ].
PsiEval bound_state_eval(double x, double E, const PhysicalParams& p);
double bound_state_psi(double x, double E, const PhysicalParams& p);

/// Zero-energy solution
///   psi = d/dz [ z e^{-s0 z/2} (C1 M(1+a;2;s0 z) + C2 U(1+a;2;s0 z)) ],
/// a = -s0/4, s0 = sqrt(8 m sigma^2 V0/hbar^2); the integer-c U values force
/// the ode_inward strategy.
double zero_energy_psi(double x, const PhysicalParams& p, const SolutionCoefficients& coef);

/// Coefficients (C1, C2), unit-normalized, for which the zero-energy solution
/// vanishes at the origin.
SolutionCoefficients zero_energy_regular_coefficients(const PhysicalParams& p);

/// Grid evaluations.  Tricomi values are produced by single inward
/// integration sweeps over the whole grid, so these are the preferred path
/// for dense sampling.  Returned GridFunctions carry d(psi)/dx.
GridFunction general_solution_grid(std::span<const double> xs, double E,
                                   const PhysicalParams& p, const SolutionCoefficients& coef,
                                   SignPair signs, const specfun::ChgEvalPolicy& policy = {});
GridFunction bound_state_grid(std::span<const double> xs, double E, const PhysicalParams& p);
GridFunction zero_energy_grid(std::span<const double> xs, const PhysicalParams& p,
                              const SolutionCoefficients& coef);

/// L2 normalization constant N = sqrt(int_0^inf psi_B^2 dx) by adaptive
/// quadrature (sqrt-graded near the origin, analytic exponential tail).
double normalization_constant(double E, const PhysicalParams& p);

}  // namespace lwpot::closedform
