#pragma once

#include "dce/params.hpp"
#include "dce/quad.hpp"
#include "dce/trajectory.hpp"

namespace dce {

// Raised when the combined second-order integrand fails to stay finite at the
// internal q = Omega pole; this can only happen through a transcription bug,
// the analytic sum is regular there.
class SigmaCancellationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Diagnostic split of the renormalized second-order kernel. Only `total` is a
// physics number; sigma1..3 follow a matched symmetric-bracket convention
// documented at sigma_ren().
struct SigmaBreakdown {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double sigma3 = 0.0;
    double total = 0.0;
    double nu_over_omega = 0.0;
};

// First-order small-oscillation emission kernel,
//   m_p(nu) = (g^2 / 12 pi omega_p) theta(|nu| - omega_p) (|nu| - omega_p)^3.
// Strictly zero at and below threshold, even in nu. Dimension mass^3.
double m_p_first_order(const AtomParams& atom, double nu);

// First-order rate for a general isotropic (pre-angular-integrated) spectral
// weight f_sq(p), see f_sq_angular_integrated():
//   Im Gamma / T = (g^2 / 8 omega_p) (1/(2pi)^3) int_0^pmax 4 pi p^2 (1/p) f_sq(p) dp.
// p_max may be +infinity.
QuadResult im_gamma1_general(const AtomParams& atom, const Integrand& f_sq, double p_max,
                             double tol = kDefaultQuadTol);

// Renormalized second-order kernel Sigma_ren / Omega as a function of
// nu/Omega (the normalization plotted in the reference curve).
//
// Below threshold only the pair-creation piece contributes,
//   Sigma1 = int_0^nu q (nu-q)^3 / (q^2 - Omega^2)^2 dq,
// whose pole sits outside the range. Above threshold the three renormalized
// integrands are summed before quadrature so the q = Omega double pole
// cancels pointwise; on [0, nu] the summed integrand reduces exactly to
//   (-q^2 + (3 nu - 2 Omega) q - w^3/(2 Omega) - (3/2) w^2) / (q + Omega)^2,
// with w = nu - Omega, which is what gets integrated there.
//
// Breakdown convention (diagnostics only, matched excision half-width delta):
//   sigma2 = symmetric principal value of the Sigma2 integral (analytically 0),
//   sigma3 = Sigma3 integral with the symmetric bracket (Omega-delta, Omega+delta) excised,
//   sigma1 = total - sigma2 - sigma3  (the bracket is attributed to Sigma1).
SigmaBreakdown sigma_ren(double nu_over_omega, double tol = 1e-10);

// Total-only variant carrying the quadrature error estimate.
QuadResult sigma_ren_total(double nu_over_omega, double tol = 1e-10);

// The combined above-threshold integrand at Omega = 1, evaluated as the
// literal three-term sum (no analytic cancellation). Used by the
// pole-cancellation diagnostics; noisy within ~1e-6 of q = 1.
double sigma_combined_integrand(double q, double nu_over_omega);

// Matched excision half-width used by the sigma_ren breakdown at a given
// nu/Omega (above threshold).
double sigma_bracket_half_width(double nu_over_omega);

// Second-order action for a continuous even spectrum y_sq(nu) = |y~(nu)|^2
// with y~(0) = 0:
//   Im Gamma2 = (g^4 / 24 pi^3) int dnu/(2pi) y_sq(nu) Sigma_ren(nu, Omega),
// evaluated as (g^4 / 24 pi^3) (1/pi) Omega int_0^numax y_sq sigma_ren(nu/Omega) dnu.
QuadResult im_gamma2_smallosc(const AtomParams& atom, const Integrand& y_sq, double nu_max,
                              double tol = 1e-8);

// Monochromatic rates per unit time, line convention A^2/2 (mean-square
// displacement of an oscillation of amplitude A).
double im_gamma1_line(const AtomParams& atom, const LineSpectrum& line);
double im_gamma2_line(const AtomParams& atom, const LineSpectrum& line, double tol = 1e-10);

// Cutoff shift of the oscillator frequency,
//   delta_Omega = -(g^2 / 4 pi^2) Lambda / omega_ren.
double freq_shift(double g, double omega_ren, double cutoff_lambda);

}  // namespace dce
