#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dce {

// Result of any 1-D integration. value is always finite: a NaN/Inf integrand
// raises, it is never returned silently.
struct QuadResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

// Non-convergence after the subdivision budget. Carries the best estimate so
// the caller can inspect how bad things were.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, QuadResult best)
        : std::runtime_error(what), best_(best) {}
    const QuadResult& best_estimate() const { return best_; }

  private:
    QuadResult best_;
};

// Raised when the tail of a semi-infinite integral grows under refinement.
class DivergentIntegralError : public QuadratureError {
  public:
    using QuadratureError::QuadratureError;
};

// Raised by principal_value when the symmetric combination itself diverges
// (double pole or worse).
class NonIntegrableSingularityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Integrand = std::function<double(double)>;

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr int kMaxSubdivisions = 2000;

// Globally adaptive Gauss-Kronrod 7/15 bisection on [lo, hi].
// Convergence target is the absolute-or-relative hybrid
// total_error <= max(tol, tol * |value|).
QuadResult integrate(const Integrand& f, double lo, double hi, double tol = kDefaultQuadTol);

// Same, with interior breakpoints the integrator must honor.
QuadResult integrate_segments(const Integrand& f, const std::vector<double>& points,
                              double tol = kDefaultQuadTol);

// Integral over [lo, inf) through x = lo + t/(1-t). The integrand must be
// absolutely integrable (decay like exp(-c x) or 1/x^2 suffices).
QuadResult integrate_semi_infinite(const Integrand& f, double lo, double tol = kDefaultQuadTol);

// Cauchy principal value across a simple pole at `pole` in (lo, hi), by
// symmetric excision: the largest symmetric window around the pole is
// integrated as g(s) = f(pole+s) + f(pole-s) on (0, delta], the rest directly.
QuadResult principal_value(const Integrand& f, double pole, double lo, double hi,
                           double tol = kDefaultQuadTol);

// Lorentzian approximants of the principal value and of Dirac's delta,
// with width set by the plate dissipation:
//   P_xi(x)     = x / (x^2 + xi^2)
//   delta_xi(x) = (1/pi) xi / (x^2 + xi^2)
// p_xi(x, 0) is the exact 1/x (x != 0); delta_xi(., 0) is not callable --
// exact-delta limits are taken analytically in the kernels.
double p_xi(double x, double xi);
double delta_xi(double x, double xi);

// Sine integral Si(x) = int_0^x sin(t)/t dt, odd-extended for x < 0.
// Series/Pade below x = 4, auxiliary-function asymptotics above; relative
// accuracy ~1e-15 in both branches.
double sine_integral(double x);

}  // namespace dce
