#include "dce/plate_response.hpp"

#include <cmath>
#include <vector>

namespace dce {

namespace {

// Decaying branch entering the resonance coefficients: kappa is the decay
// constant (-> sqrt|u| as xi -> 0 on both sides of u = 0), phi the residual
// phase (-> 0). kappa phi = xi/2 and kappa^2 - phi^2 = |u| exactly.
struct DecayPhase {
    double kappa, phi;
};

DecayPhase decay_phase(double u, double xi) {
    const double rho = std::hypot(u, xi);
    const double kappa = std::sqrt(0.5 * (rho + std::abs(u)));
    const double phi = (xi == 0.0 || kappa == 0.0) ? 0.0 : xi / (2.0 * kappa);
    return {kappa, phi};
}

double a_perp_integrand(double u, double xi, double a) {
    const auto [kappa, phi] = decay_phase(u, xi);
    return std::exp(-kappa * a) * std::cos(phi * a);
}

double a_par_integrand(double u, double xi, double a) {
    if (xi == 0.0) return a_perp_integrand(u, xi, a);  // weight u^2/u^2 collapses
    const auto [kappa, phi] = decay_phase(u, xi);
    const double lor = u / (u * u + xi * xi);
    return lor * std::exp(-kappa * a) * (u * std::cos(phi * a) + xi * std::sin(phi * a));
}

QuadResult coeff_a_generic(double xi, double omega_m, double a, double tol,
                           const std::function<double(double)>& integrand) {
    if (!(a > 0.0)) throw std::domain_error("coeff_A: need a > 0");
    if (!(omega_m > 0.0)) throw std::domain_error("coeff_A: need omega_m > 0");
    if (xi < 0.0) throw std::domain_error("coeff_A: need xi >= 0");

    const double lo = -omega_m * omega_m;
    std::vector<double> pts{lo};
    if (xi > 0.0 && 5.0 * xi < -lo) pts.push_back(-5.0 * xi);
    pts.push_back(0.0);

    QuadResult head = integrate_segments(integrand, pts, tol);
    QuadResult tail = integrate_semi_infinite(integrand, 0.0, tol);
    return QuadResult{head.value + tail.value,
                      head.abs_error_estimate + tail.abs_error_estimate,
                      head.evaluations + tail.evaluations};
}

// Shared closed-form threshold coefficient (sin 2x - 2x cos 2x)/(4x^2) with a
// small-x series where the numerator cancels.
double b_perp_impl(double x) {
    if (x < 1e-3) {
        const double x2 = x * x;
        return x * (2.0 / 3.0 + x2 * (-4.0 / 15.0 + x2 * (4.0 / 105.0)));
    }
    return (std::sin(2.0 * x) - 2.0 * x * std::cos(2.0 * x)) / (4.0 * x * x);
}

struct ResonanceFactors {
    double delta;  // delta_xi(nu^2 - M^2), or exact-limit 0 at xi = 0
    double pv;     // P_xi(k^2 - omega_m^2), only meaningful when k > 0
};

ResonanceFactors resonance_factors(const MirrorParams& mirror, double omega_p, double nu) {
    const double m_sum = mirror.omega_m + omega_p;
    const double x_res = nu * nu - m_sum * m_sum;
    const double k = std::abs(nu) - omega_p;
    const double x_thr = k * k - mirror.omega_m * mirror.omega_m;

    ResonanceFactors f{0.0, 0.0};
    if (mirror.xi > 0.0) {
        f.delta = delta_xi(x_res, mirror.xi);
        if (k > 0.0) f.pv = p_xi(x_thr, mirror.xi);
        return f;
    }
    // lossless limit: finite only away from the singular points
    if (x_res == 0.0)
        throw RegularizationRequiredError(
            "plate kernel at the resonance |nu| = omega_m + omega_p needs xi > 0");
    if (k > 0.0) {
        if (x_thr == 0.0)
            throw RegularizationRequiredError(
                "plate kernel at (|nu|-omega_p)^2 = omega_m^2 needs xi > 0");
        f.pv = 1.0 / x_thr;
    }
    return f;
}

PlateKernelPoint kernel_from_coefficients(const AtomParams& atom, const MirrorParams& mirror,
                                          double a, double nu, double a_par, double a_perp) {
    const double g2 = atom.g * atom.g;
    const double c2 = mirror.gamma * mirror.gamma;
    const double wp = atom.omega_p;
    const double wm = mirror.omega_m;
    const double m_sum = wm + wp;
    const double k = std::abs(nu) - wp;

    const ResonanceFactors f = resonance_factors(mirror, wp, nu);

    PlateKernelPoint out;
    out.nu = nu;
    out.resonance_term_parallel = c2 * g2 * m_sum / (16.0 * wp * wm) * f.delta * a_par;
    out.resonance_term_perp = c2 * g2 * m_sum / (32.0 * wp * wm) * f.delta * a_perp;
    if (k > 0.0) {
        const double k2 = k * k;
        out.threshold_term_parallel =
            c2 * g2 / (32.0 * M_PI * wp) * k2 * f.pv * coeff_B_parallel(k * a);
        out.threshold_term_perp =
            -c2 * g2 / (16.0 * M_PI * wp) * k2 * f.pv * coeff_B_perp(k * a);
    }
    out.m_parallel = out.resonance_term_parallel + out.threshold_term_parallel;
    out.m_perp = out.resonance_term_perp + out.threshold_term_perp;
    return out;
}

}  // namespace

std::pair<double, double> alpha_beta(double u, double xi) {
    if (xi < 0.0) throw std::domain_error("alpha_beta: need xi >= 0");
    const double rho = std::hypot(u, xi);
    if (u >= 0.0) {
        const double beta = std::sqrt(0.5 * (rho + u));
        const double alpha = (xi == 0.0 || beta == 0.0) ? 0.0 : xi / (2.0 * beta);
        return {alpha, beta};
    }
    const double alpha = std::sqrt(0.5 * (rho - u));
    const double beta = (xi == 0.0) ? 0.0 : xi / (2.0 * alpha);
    return {alpha, beta};
}

QuadResult coeff_A_parallel(double xi, double omega_m, double a, double tol) {
    return coeff_a_generic(xi, omega_m, a, tol,
                           [xi, a](double u) { return a_par_integrand(u, xi, a); });
}

QuadResult coeff_A_perp(double xi, double omega_m, double a, double tol) {
    return coeff_a_generic(xi, omega_m, a, tol,
                           [xi, a](double u) { return a_perp_integrand(u, xi, a); });
}

double coeff_A_closed_form_xi0(double omega_m, double a) {
    return 2.0 / (a * a) * (2.0 - (1.0 + omega_m * a) * std::exp(-omega_m * a));
}

double coeff_B_perp(double x) {
    if (!(x >= 0.0)) throw std::domain_error("coeff_B_perp: need x >= 0");
    return b_perp_impl(x);
}

double coeff_B_parallel(double x) {
    if (!(x >= 0.0)) throw std::domain_error("coeff_B_parallel: need x >= 0");
    if (x < 1e-3) {
        const double x2 = x * x;
        return x * (4.0 / 3.0 + x2 * (-8.0 / 45.0 + x2 * (8.0 / 525.0)));
    }
    return sine_integral(2.0 * x) - b_perp_impl(x);
}

PlateKernelPoint plate_kernel_point(const AtomParams& atom, const MirrorParams& mirror,
                                    double a, double nu, double tol) {
    if (!(a > 0.0)) throw std::domain_error("plate_kernel_point: need a > 0");
    if (!std::isfinite(nu)) throw std::domain_error("plate_kernel_point: non-finite nu");

    double a_par = 0.0, a_perp = 0.0;
    if (mirror.xi > 0.0) {
        a_par = coeff_A_parallel(mirror.xi, mirror.omega_m, a, tol).value;
        a_perp = coeff_A_perp(mirror.xi, mirror.omega_m, a, tol).value;
    }
    return kernel_from_coefficients(atom, mirror, a, nu, a_par, a_perp);
}

PlateKernelPoint plate_kernel_point(const AtomParams& atom, const MirrorParams& mirror,
                                    double a, double nu, double a_par, double a_perp) {
    if (!(a > 0.0)) throw std::domain_error("plate_kernel_point: need a > 0");
    if (!std::isfinite(nu)) throw std::domain_error("plate_kernel_point: non-finite nu");
    return kernel_from_coefficients(atom, mirror, a, nu, a_par, a_perp);
}

double m_parallel(const AtomParams& atom, const MirrorParams& mirror, double a, double nu,
                  double tol) {
    return plate_kernel_point(atom, mirror, a, nu, tol).m_parallel;
}

double m_perp(const AtomParams& atom, const MirrorParams& mirror, double a, double nu,
              double tol) {
    return plate_kernel_point(atom, mirror, a, nu, tol).m_perp;
}

double m_parallel_far_limit(const AtomParams& atom, const MirrorParams& mirror, double nu) {
    const double k = std::abs(nu) - atom.omega_p;
    if (k <= 0.0) return 0.0;
    const double x_thr = k * k - mirror.omega_m * mirror.omega_m;
    const double pv = (mirror.xi > 0.0) ? p_xi(x_thr, mirror.xi) : 1.0 / x_thr;
    return atom.g * atom.g * mirror.gamma * mirror.gamma / (64.0 * atom.omega_p) * k * k * pv;
}

QuadResult im_gamma_mp_smallosc(const AtomParams& atom, const MirrorParams& mirror, double a,
                                const Integrand& y_par_sq, const Integrand& y_perp_sq,
                                double tol) {
    double a_par = 0.0, a_perp = 0.0;
    if (mirror.xi > 0.0) {
        a_par = coeff_A_parallel(mirror.xi, mirror.omega_m, a, tol * 1e-2).value;
        a_perp = coeff_A_perp(mirror.xi, mirror.omega_m, a, tol * 1e-2).value;
    }
    auto integrand = [&](double nu) {
        const PlateKernelPoint k = kernel_from_coefficients(atom, mirror, a, nu, a_par, a_perp);
        return k.m_parallel * y_par_sq(nu) + k.m_perp * y_perp_sq(nu);
    };

    // breakpoints at the threshold and around the resonance spike
    const double m_sum = mirror.omega_m + atom.omega_p;
    const double width = (mirror.xi > 0.0) ? mirror.xi / (2.0 * m_sum) : 0.0;
    std::vector<double> pts{0.0, atom.omega_p};
    if (width > 0.0) {
        pts.push_back(m_sum - 5.0 * width);
        pts.push_back(m_sum + 5.0 * width);
    } else {
        pts.push_back(m_sum);
    }
    const double far = 2.0 * m_sum;
    pts.push_back(far);

    QuadResult head = integrate_segments(integrand, pts, tol);
    QuadResult tail = integrate_semi_infinite(integrand, far, tol);
    const double pref = 1.0 / (2.0 * M_PI);
    return QuadResult{pref * (head.value + tail.value),
                      pref * (head.abs_error_estimate + tail.abs_error_estimate),
                      head.evaluations + tail.evaluations};
}

double im_gamma_mp_line(const AtomParams& atom, const MirrorParams& mirror, double a,
                        const LineSpectrum& line, double tol) {
    const PlateKernelPoint k = plate_kernel_point(atom, mirror, a, line.nu0, tol);
    return 0.5 * (line.amplitude_par_sq * k.m_parallel + line.amplitude_perp_sq * k.m_perp);
}

}  // namespace dce
