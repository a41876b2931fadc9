#include "dce/friction.hpp"

#include <cmath>

namespace dce {

QuadResult friction_rate(const FrictionQuery& q, double tol) {
    const double m = q.mirror.omega_m, p = q.atom.omega_p;
    const double sum = m + p;
    const double s2 = q.a * q.a * (sum * sum - q.u * q.u * m * m);
    const double pref = q.mirror.gamma * q.mirror.gamma * q.atom.g * q.atom.g * q.a /
                        (32.0 * M_PI * m * p);
    const double two_over_u = 2.0 / q.u;

    auto integrand = [s2, two_over_u](double x) {
        const double d = x * x + s2;
        return std::exp(-two_over_u * std::sqrt(d)) / d;
    };
    QuadResult r = integrate_semi_infinite(integrand, 0.0, tol);
    r.value *= pref;
    r.abs_error_estimate *= pref;
    return r;
}

double friction_asymptotic_slope(double u, double omega_m, double omega_p) {
    const double sum = omega_m + omega_p;
    return -(2.0 / std::abs(u)) * std::sqrt(sum * sum - u * u * omega_m * omega_m);
}

double friction_large_a_log_slope(const FrictionQuery& q, double a_lo, double a_hi) {
    if (!(a_hi > a_lo && a_lo > 0.0))
        throw std::domain_error("friction_large_a_log_slope: need 0 < a_lo < a_hi");

    const double a_mid = 0.5 * (a_lo + a_hi);
    double lr[3];
    const double as[3] = {a_lo, a_mid, a_hi};
    for (int i = 0; i < 3; ++i) {
        FrictionQuery qa = q;
        qa.a = as[i];
        const double r = friction_rate(qa, 1e-12).value;
        if (!(r > 0.0))
            throw std::range_error(
                "friction_large_a_log_slope: rate underflowed to zero at a = " +
                std::to_string(as[i]) + "; lower a");
        lr[i] = std::log(r);
    }

    // fit ln r = c0 + c1 a + cL ln a through the three points and return c1;
    // the ln a term absorbs the Laplace-prefactor drift
    const double l0 = std::log(a_lo), l1 = std::log(a_mid), l2 = std::log(a_hi);
    const double d01 = (lr[1] - lr[0]) / (as[1] - as[0]);
    const double d12 = (lr[2] - lr[1]) / (as[2] - as[1]);
    const double e01 = (l1 - l0) / (as[1] - as[0]);
    const double e12 = (l2 - l1) / (as[2] - as[1]);
    const double c_log = (d12 - d01) / (e12 - e01);
    return d01 - c_log * e01;
}

}  // namespace dce
