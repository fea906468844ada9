#pragma once

#include <span>

#include "lwpot/specfun.hpp"
#include "lwpot/types.hpp"

namespace lwpot {

/// Physics configuration: mass, action quantum, potential strengths V0/V1,
/// length scale sigma, offsets x0 and z0.  Defaults follow the m = hbar = 1
/// convention used throughout.
struct PhysicalParams {
    double m = 1.0;
    double hbar = 1.0;
    double V0 = 1.0;
    double V1 = -1.0;
    double sigma = 1.0;
    double x0 = -1.0;
    double z0 = 1.0;

    void validate() const;

    /// 2m/hbar^2, the Schrodinger-equation coupling.
    double kappa2m() const { return 2.0 * m / (hbar * hbar); }

    /// True when (z0, x0, V1) sit at the singular specialization
    /// z0 = 1, x0 = -sigma, V1 = -V0.
    bool is_singular_form() const { return z0 == 1.0 && x0 == -sigma && V1 == -V0; }

    static PhysicalParams singular(double V0, double sigma, double m = 1.0, double hbar = 1.0);
    static PhysicalParams figure1() { return singular(2.0, 1.0); }
    static PhysicalParams figure2() { return singular(3.0, 3.0); }
};

/// The three potential shapes: the (m1,m2) = (2,-1) family, the
/// (m1,m2) = (1,-1) family, and the singular specialization of the latter
/// defined on the positive half-axis.
enum class PotentialKind { m2_variant, m1_variant, singular };

namespace potential {

/// Exponent m1 of the coordinate-transform rate rho(z) = z^{m1} (z-z0)^{m2} / sigma
/// (m2 = -1 for both admitted families).
int m1_exponent(PotentialKind kind);

/// Argument handed to the Lambert W function by the transform at x.
double w_argument(PotentialKind kind, double x, const PhysicalParams& p);

/// Coordinate transform z(x).  Branch defaults to the principal branch;
/// the explicit-branch overload permits the lower branch where real.
double map_z(PotentialKind kind, double x, const PhysicalParams& p);
double map_z(PotentialKind kind, double x, const PhysicalParams& p, specfun::WBranch branch);

/// Grid-level branch selection: tries the principal branch first, then the
/// lower branch, and reports the first that yields a real, finite, strictly
/// monotone z over the whole grid.
struct BranchChoice {
    specfun::WBranch branch;
    bool principal_ok;
    bool lower_ok;
};
BranchChoice select_branch(PotentialKind kind, std::span<const double> xs,
                           const PhysicalParams& p);

/// Potential value at x (through the transform) or directly as a function of z.
double eval_potential(PotentialKind kind, double x, const PhysicalParams& p);
double potential_of_z(PotentialKind kind, double z, const PhysicalParams& p);

/// Leading origin behavior of the singular potential: -sqrt(sigma/2) V0 / sqrt(x).
double asymptote_origin(const PhysicalParams& p, double x);

/// Exponential tail of the singular potential: -V0 exp(-(x+sigma)/sigma).
double asymptote_tail(const PhysicalParams& p, double x);

/// dz/dx expressed through z: rho(z) = z^{m1} (z - z0)^{m2} / sigma.
double rho(PotentialKind kind, double z, const PhysicalParams& p);

/// Inverse of the coordinate transform.
double x_from_z(PotentialKind kind, double z, const PhysicalParams& p);

}  // namespace potential
}  // namespace lwpot
