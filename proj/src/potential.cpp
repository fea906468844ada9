#include "lwpot/potential.hpp"

#include <cmath>

namespace lwpot {

void PhysicalParams::validate() const {
    if (!(m > 0.0)) throw DomainError("PhysicalParams: m must be positive");
    if (!(hbar > 0.0)) throw DomainError("PhysicalParams: hbar must be positive");
    if (!(sigma > 0.0)) throw DomainError("PhysicalParams: sigma must be positive");
    if (z0 == 0.0) throw DomainError("PhysicalParams: z0 must be nonzero");
}

PhysicalParams PhysicalParams::singular(double V0, double sigma, double m, double hbar) {
    PhysicalParams p;
    p.m = m;
    p.hbar = hbar;
    p.V0 = V0;
    p.V1 = -V0;
    p.sigma = sigma;
    p.x0 = -sigma;
    p.z0 = 1.0;
    p.validate();
    return p;
}

namespace potential {

namespace {

void require_singular(const PhysicalParams& p, const char* who) {
    if (!p.is_singular_form())
        throw DomainError(std::string(who) + ": requires the singular specialization "
                                             "(z0 = 1, x0 = -sigma, V1 = -V0)");
}

double w_of(PotentialKind kind, double x, const PhysicalParams& p, specfun::WBranch branch) {
    if (kind == PotentialKind::singular && x < 0.0)
        throw DomainError("map_z: singular potential is defined on x >= 0");
    return specfun::lambert_w(branch, w_argument(kind, x, p));
}

}  // namespace

int m1_exponent(PotentialKind kind) { return kind == PotentialKind::m2_variant ? 2 : 1; }

double w_argument(PotentialKind kind, double x, const PhysicalParams& p) {
    p.validate();
    switch (kind) {
        case PotentialKind::singular:
            require_singular(p, "w_argument");
            return -std::exp(-(x + p.sigma) / p.sigma);
        case PotentialKind::m1_variant:
            return -std::exp((p.x0 - x) / (p.sigma * p.z0)) / p.z0;
        case PotentialKind::m2_variant:
            return -p.z0 * std::exp((p.x0 - x) / p.sigma);
    }
    throw DomainError("w_argument: unknown kind");
}

double map_z(PotentialKind kind, double x, const PhysicalParams& p, specfun::WBranch branch) {
    const double w = w_of(kind, x, p, branch);
    if (kind == PotentialKind::m2_variant) {
        if (w == 0.0) throw DomainError("map_z: transform diverges (W = 0)");
        return -p.z0 / w;
    }
    return -p.z0 * w;  // singular kind has z0 = 1
}

double map_z(PotentialKind kind, double x, const PhysicalParams& p) {
    return map_z(kind, x, p, specfun::WBranch::principal);
}

BranchChoice select_branch(PotentialKind kind, std::span<const double> xs,
                           const PhysicalParams& p) {
    auto usable = [&](specfun::WBranch b) {
        double prev = 0.0;
        int dir = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double z;
            try {
                z = map_z(kind, xs[i], p, b);
            } catch (const DomainError&) {
                return false;
            }
            if (!std::isfinite(z)) return false;
            if (i > 0) {
                const int step = (z > prev) ? +1 : (z < prev ? -1 : 0);
                if (step == 0) return false;
                if (dir == 0) dir = step;
                else if (step != dir) return false;
            }
            prev = z;
        }
        return true;
    };
    BranchChoice choice{};
    choice.principal_ok = usable(specfun::WBranch::principal);
    choice.lower_ok = usable(specfun::WBranch::lower);
    if (choice.principal_ok)
        choice.branch = specfun::WBranch::principal;
    else if (choice.lower_ok)
        choice.branch = specfun::WBranch::lower;
    else
        throw DomainError("select_branch: no real branch gives a monotone transform on the grid");
    return choice;
}

double potential_of_z(PotentialKind kind, double z, const PhysicalParams& p) {
    p.validate();
    switch (kind) {
        case PotentialKind::singular:
            require_singular(p, "potential_of_z");
            if (z == 1.0) throw DomainError("potential_of_z: singular at z = 1 (x = 0)");
            return -p.V0 * z / (1.0 - z);
        case PotentialKind::m1_variant:
            if (z == p.z0) throw DomainError("potential_of_z: singular at z = z0");
            return p.V0 + p.V1 / (1.0 - z / p.z0);
        case PotentialKind::m2_variant:
            if (z == p.z0) throw DomainError("potential_of_z: singular at z = z0");
            return p.V0 + p.V1 * (z / p.z0) * (z / p.z0) / (1.0 - z / p.z0);
    }
    throw DomainError("potential_of_z: unknown kind");
}

double eval_potential(PotentialKind kind, double x, const PhysicalParams& p) {
    if (kind == PotentialKind::singular && x == 0.0)
        throw DomainError("eval_potential: singular potential diverges at x = 0");
    return potential_of_z(kind, map_z(kind, x, p), p);
}

double asymptote_origin(const PhysicalParams& p, double x) {
    p.validate();
    if (p.V0 == 0.0) return 0.0;
    if (!(x > 0.0)) throw DomainError("asymptote_origin: requires x > 0");
    return -std::sqrt(p.sigma / 2.0) * p.V0 / std::sqrt(x);
}

double asymptote_tail(const PhysicalParams& p, double x) {
    p.validate();
    return -p.V0 * std::exp(-(x + p.sigma) / p.sigma);
}

double rho(PotentialKind kind, double z, const PhysicalParams& p) {
    const double zp = (kind == PotentialKind::singular) ? 1.0 : p.z0;
    if (z == zp) throw DomainError("rho: apparent pole at z = z0");
    const double num = (m1_exponent(kind) == 2) ? z * z : z;
    return num / (p.sigma * (z - zp));
}

double x_from_z(PotentialKind kind, double z, const PhysicalParams& p) {
    p.validate();
    if (!(z > 0.0)) throw DomainError("x_from_z: requires z > 0");
    switch (kind) {
        case PotentialKind::singular:
            require_singular(p, "x_from_z");
            return -p.sigma * (std::log(z) - z) - p.sigma;
        case PotentialKind::m1_variant:
            return p.x0 - p.sigma * p.z0 * std::log(z) + p.sigma * z;
        case PotentialKind::m2_variant:
            return p.x0 + p.sigma * (std::log(z) + p.z0 / z);
    }
    throw DomainError("x_from_z: unknown kind");
}

}  // namespace potential
}  // namespace lwpot
