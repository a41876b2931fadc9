#pragma once

#include <utility>

#include "dce/params.hpp"
#include "dce/quad.hpp"
#include "dce/trajectory.hpp"

namespace dce {

// xi = 0 requested where only the losses keep the kernels finite.
class RegularizationRequiredError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Emission kernels at one external frequency. Each kernel splits into the
// resonance piece (delta_xi localized at |nu| = omega_m + omega_p) and the
// threshold piece (P_xi modulated, zero for |nu| <= omega_p); the m_* fields
// are exactly the sums of their two parts.
struct PlateKernelPoint {
    double nu = 0.0;
    double m_parallel = 0.0;
    double m_perp = 0.0;
    double resonance_term_parallel = 0.0;
    double threshold_term_parallel = 0.0;
    double resonance_term_perp = 0.0;
    double threshold_term_perp = 0.0;
};

// alpha = sqrt((sqrt(u^2 + xi^2) - u)/2), beta = sqrt((sqrt(u^2 + xi^2) + u)/2);
// alpha beta = xi/2 and beta^2 - alpha^2 = u. Evaluated cancellation-free on
// both signs of u.
std::pair<double, double> alpha_beta(double u, double xi);

// Resonance-coefficient integrals over u in [-omega_m^2, inf):
//   A_par  = int du (u/(u^2+xi^2)) e^{-kappa a} [u cos(phi a) + xi sin(phi a)]
//   A_perp = int du               e^{-kappa a}  cos(phi a)
// with kappa = sqrt((sqrt(u^2+xi^2) + |u|)/2) and phi = xi/(2 kappa): the
// decaying branch on both sides of u = 0. At xi = 0 both reduce exactly to
//   int du e^{-sqrt(|u|) a} = (2/a^2) (2 - (1 + omega_m a) e^{-omega_m a}),
// the closed form the resonance peak heights are calibrated against.
QuadResult coeff_A_parallel(double xi, double omega_m, double a, double tol = kDefaultQuadTol);
QuadResult coeff_A_perp(double xi, double omega_m, double a, double tol = kDefaultQuadTol);

// The xi -> 0 closed form above.
double coeff_A_closed_form_xi0(double omega_m, double a);

// Threshold-coefficient closed forms, x = (|nu| - omega_p) a >= 0:
//   B_perp(x) = (sin 2x - 2x cos 2x) / (4 x^2)
//   B_par(x)  = Si(2x) - B_perp(x)
// with series evaluation below x = 1e-3 where the closed form cancels.
double coeff_B_parallel(double x);
double coeff_B_perp(double x);

// Both kernels and their two-term splits at one nu. Computes the shared A
// coefficients once; even in nu. xi = 0 is allowed only away from the
// resonance and the P_xi singular point, otherwise
// RegularizationRequiredError.
PlateKernelPoint plate_kernel_point(const AtomParams& atom, const MirrorParams& mirror,
                                    double a, double nu, double tol = 1e-10);

// Scan-friendly overload taking the (nu-independent) A coefficients computed
// once by the caller.
PlateKernelPoint plate_kernel_point(const AtomParams& atom, const MirrorParams& mirror,
                                    double a, double nu, double a_par, double a_perp);

double m_parallel(const AtomParams& atom, const MirrorParams& mirror, double a, double nu,
                  double tol = 1e-10);
double m_perp(const AtomParams& atom, const MirrorParams& mirror, double a, double nu,
              double tol = 1e-10);

// Far-plate limit of m_parallel above threshold (the perpendicular kernel
// vanishes there):
//   m_par -> (gamma^2 g^2 / 64 omega_p) k^2 P_xi(k^2 - omega_m^2), k = |nu| - omega_p.
double m_parallel_far_limit(const AtomParams& atom, const MirrorParams& mirror, double nu);

// Small-oscillation action near the plate for continuous even spectra,
//   Im Gamma = (1/2) int dnu/(2pi) [ m_par y_par_sq + m_perp y_perp_sq ].
QuadResult im_gamma_mp_smallosc(const AtomParams& atom, const MirrorParams& mirror, double a,
                                const Integrand& y_par_sq, const Integrand& y_perp_sq,
                                double tol = 1e-8);

// Monochromatic rate per unit time, same A^2/2 line convention as free space:
//   rate = (par_sq/2) m_par(nu0) + (perp_sq/2) m_perp(nu0).
double im_gamma_mp_line(const AtomParams& atom, const MirrorParams& mirror, double a,
                        const LineSpectrum& line, double tol = 1e-10);

}  // namespace dce
