#pragma once

#include <cmath>
#include <stdexcept>

// Natural units throughout: c = hbar = 1, so frequencies, momenta and
// masses share one dimension and lengths carry 1/mass.

namespace dce {

// Internal oscillator of the moving atom. omega_p always stores the
// renormalized frequency; the bare/cutoff relation lives in freq_shift().
struct AtomParams {
    double g = 1.0;        // coupling to the field, [mass]^(1/2)
    double omega_p = 1.0;  // internal frequency, [mass]

    AtomParams() = default;
    AtomParams(double g_, double omega_p_) : g(g_), omega_p(omega_p_) {
        if (!(std::isfinite(g) && std::isfinite(omega_p)))
            throw std::domain_error("AtomParams: non-finite input");
        if (!(omega_p > 0.0))
            throw std::domain_error("AtomParams: omega_p must be positive");
        if (g < 0.0)
            throw std::domain_error("AtomParams: g must be non-negative");
    }
};

// Lossy plate: a continuum of oscillators of frequency omega_m on the
// x3 = 0 plane, with ohmic damping xi entering as omega_m^2 -> omega_m^2 - i xi.
struct MirrorParams {
    double gamma = 1.0;    // plate coupling, [mass]^(3/2)
    double omega_m = 1.0;  // plate oscillator frequency, [mass]
    double xi = 0.0;       // dissipation coefficient, [mass]^2

    MirrorParams() = default;
    MirrorParams(double gamma_, double omega_m_, double xi_)
        : gamma(gamma_), omega_m(omega_m_), xi(xi_) {
        if (!(std::isfinite(gamma) && std::isfinite(omega_m) && std::isfinite(xi)))
            throw std::domain_error("MirrorParams: non-finite input");
        if (!(omega_m > 0.0))
            throw std::domain_error("MirrorParams: omega_m must be positive");
        if (gamma < 0.0 || xi < 0.0)
            throw std::domain_error("MirrorParams: gamma and xi must be non-negative");
    }
};

// Dimensionless reductions used by the scans and the figures-style output:
// everything measured against the atom frequency omega_p.
struct DimensionlessSet {
    double nu_tilde;       // nu / omega_p
    double a_tilde;        // a * omega_p
    double omega_m_tilde;  // omega_m / omega_p
    double xi_tilde;       // xi / omega_p^2
};

inline DimensionlessSet to_dimensionless(const AtomParams& atom, const MirrorParams& mirror,
                                         double a, double nu) {
    if (!(std::isfinite(a) && std::isfinite(nu)))
        throw std::domain_error("to_dimensionless: non-finite input");
    if (!(atom.omega_p > 0.0))
        throw std::domain_error("to_dimensionless: omega_p must be positive");
    const double w = atom.omega_p;
    return DimensionlessSet{nu / w, a * w, mirror.omega_m / w, mirror.xi / (w * w)};
}

}  // namespace dce
