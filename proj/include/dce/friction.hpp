#pragma once

#include "dce/params.hpp"
#include "dce/quad.hpp"

namespace dce {

// Atom moving at constant speed u parallel to the plate at distance a.
// The rate depends on u only through |u|; the sign is normalized away here.
struct FrictionQuery {
    AtomParams atom;
    MirrorParams mirror;
    double a;  // > 0
    double u;  // 0 < u < 1 after normalization

    FrictionQuery(AtomParams atom_, MirrorParams mirror_, double a_, double u_)
        : atom(atom_), mirror(mirror_), a(a_), u(u_ < 0 ? -u_ : u_) {
        if (!(std::isfinite(a) && std::isfinite(u)))
            throw std::domain_error("FrictionQuery: non-finite input");
        if (!(a > 0.0)) throw std::domain_error("FrictionQuery: a must be positive");
        if (!(u > 0.0 && u < 1.0))
            throw std::domain_error("FrictionQuery: need 0 < |u| < 1");
    }
};

// Quantum friction rate Im Gamma / T (dimension mass), from the reduced 1-D
// integral
//   (gamma^2 g^2 a / 32 pi omega_m omega_p)
//     int_0^inf dx exp(-(2/u) sqrt(x^2 + S^2)) / (x^2 + S^2),
//   S^2 = a^2 (omega_m + omega_p)^2 - a^2 u^2 omega_m^2  (> 0 since u < 1).
// The xi -> 0 limit is already taken analytically; strictly positive.
QuadResult friction_rate(const FrictionQuery& q, double tol = kDefaultQuadTol);

// Asymptotic decay constant of the rate in a:
//   -(2/u) sqrt((omega_m + omega_p)^2 - u^2 omega_m^2).
double friction_asymptotic_slope(double u, double omega_m, double omega_p);

// Finite-difference estimate of d ln(rate)/da on [a_lo, a_hi]. The Laplace
// prefactor of the rate carries an a^(-1/2) drift that a two-point difference
// resolves only slowly, so three evaluations fit
//   ln rate = c0 + c1 a + cL ln a
// and c1 is returned; it converges to friction_asymptotic_slope() as a grows.
// Underflowed rates raise std::range_error with advice to lower a.
double friction_large_a_log_slope(const FrictionQuery& q, double a_lo, double a_hi);

}  // namespace dce
