#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lwpot/types.hpp"

namespace lwpot::specfun {

/// Real branches of the Lambert W function (inverse of w -> w e^w).
/// principal = W0 on [-1/e, inf), values >= -1;
/// lower     = W-1 on [-1/e, 0), values <= -1.
enum class WBranch { principal, lower };

/// Real-branch Lambert W.  Guarantees |w e^w - t| <= 8 eps max(1, |t|).
/// Arguments within 4 eps below the branch point -1/e are clamped onto it;
/// anything further below (or t >= 0 on the lower branch) throws DomainError.
double lambert_w(WBranch branch, double t);

/// Evaluation policy for the confluent hypergeometric functions.
struct ChgEvalPolicy {
    int max_terms = 100000;
    double tol = 1e-14;

    enum class UStrategy { connection_formula, ode_inward };
    /// Unset: connection_formula off the integer-c lines for small arguments,
    /// ode_inward otherwise.
    std::optional<UStrategy> u_strategy{};

    void validate() const;
};

/// Kummer 1F1(a; c; x) by direct series; negative x is routed through the
/// Kummer transformation 1F1(a;c;x) = e^x 1F1(c-a;c;-x).
double kummer_m(double a, double c, double x, const ChgEvalPolicy& policy = {});

/// Tricomi U(a; c; x) for x > 0.
/// connection_formula:  U = G(1-c)/G(a-c+1) M(a;c;x) + G(c-1)/G(a) x^{1-c} M(a-c+1;2-c;x)
///                      (non-integer c only).
/// ode_inward:          seed (U, U') from the asymptotic series at
///                      x_seed = max(50, 4(|a|+|c|+x)) and integrate
///                      x u'' + (c-x) u' - a u = 0 down to x; valid for any c.
double tricomi_u(double a, double c, double x, const ChgEvalPolicy& policy = {});

/// U and dU/dx on an ascending grid of positive abscissae, computed with a
/// single inward integration sweep (or directly from the asymptotic series
/// where it already converges).
struct UGrid {
    std::vector<double> values;
    std::vector<double> derivatives;
};
UGrid tricomi_u_grid(double a, double c, std::span<const double> xs,
                     const ChgEvalPolicy& policy = {});

/// ln|Gamma(x)| together with the sign of Gamma(x).
struct SignedLogGamma {
    double log_abs;
    int sign;
};
SignedLogGamma log_gamma(double x);

/// 1/Gamma(x); entire, zero at the poles of Gamma.
double inv_gamma(double x);

}  // namespace lwpot::specfun
