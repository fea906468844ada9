#pragma once

#include <functional>

namespace lwpot::quadrature {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

/// Adaptive Gauss-Kronrod (G7,K15) on a finite interval.
/// Bisects until the Kronrod-Gauss discrepancy meets abs_tol + rel_tol*|I|.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-14, int max_intervals = 20000);

/// Same, but with the integrand regularized by the substitution x = a + t^2
/// near the left endpoint (for integrable algebraic singularities at a).
Result integrate_sqrt_left(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10, double abs_tol = 1e-14);

}  // namespace lwpot::quadrature
