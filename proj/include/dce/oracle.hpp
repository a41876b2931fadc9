#pragma once

// Brute-force cross-check evaluators, test and acceptance builds only.
// Every routine here integrates with fixed-grid Romberg / tensor-product
// schemes written independently of the adaptive machinery in dce/quad.hpp.

#include <string>

#include "dce/free_space.hpp"
#include "dce/friction.hpp"
#include "dce/plate_response.hpp"

namespace dce::oracle {

struct OracleReport {
    std::string quantity;
    double main_value = 0.0;
    double oracle_value = 0.0;
    double rel_diff = 0.0;
    std::string method;
};

// |main - oracle| / max(|oracle|, 1e-300).
double rel_diff(double main_value, double oracle_value);

OracleReport make_report(std::string quantity, double main_value, double oracle_value,
                         std::string method);

// Sigma_ren / Omega by Romberg with explicit symmetric pairing of grid points
// about the q = Omega pole. grid_n sets the finest grid (>= 1e4 intended).
double oracle_sigma(double nu_over_omega, int grid_n = 16384);

// m_parallel from the unreduced momentum-space form: the p3 and q3 threshold
// integrals (with their principal-value pole pairing) and the resonance
// u-integral are all done numerically on fixed grids; none of the closed-form
// B coefficients or the adaptive quadrature enter. Requires xi > 0 and |nu|
// at least two Lorentzian widths off the resonance.
double oracle_plate_point(const AtomParams& atom, const MirrorParams& mirror, double a,
                          double nu);

// Friction rate from the pre-substitution transverse-momentum integral
// (the e^{-2a sqrt(p_par^2 - omega_m^2)} form), Romberg on a truncated range.
double oracle_friction_2d(const FrictionQuery& q);

// Fixed-grid Romberg of the resonance-coefficient integrals.
double oracle_coeff_a_parallel(double xi, double omega_m, double a);
double oracle_coeff_a_perp(double xi, double omega_m, double a);

}  // namespace dce::oracle
