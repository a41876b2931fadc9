#include "dce/free_space.hpp"

#include <algorithm>
#include <cmath>

namespace dce {

namespace {

// Renormalized second-order integrands at Omega = 1, q away from the pole.
// Sigma1: q (nu-q)^3 / (q^2-1)^2 on [0, nu]
// Sigma2: (3/2) w^2 / (q^2-1)               (w = nu - 1)
// Sigma3: -(w^3/2) (q^2+1) / (q^2-1)^2
double sigma1_integrand(double q, double nu) {
    const double d = q * q - 1.0;
    const double r = nu - q;
    return q * r * r * r / (d * d);
}

double sigma23_integrand(double q, double w) {
    const double d = q * q - 1.0;
    return 1.5 * w * w / d - 0.5 * w * w * w * (q * q + 1.0) / (d * d);
}

// The three-term sum on [0, nu] collapses algebraically to a rational
// function that is regular at q = 1:
//   ( -q^2 + (3 nu - 2) q - w^3/2 - (3/2) w^2 ) / (q + 1)^2.
double combined_cancelled(double q, double nu) {
    const double w = nu - 1.0;
    const double num = -q * q + (3.0 * nu - 2.0) * q - 0.5 * w * w * w - 1.5 * w * w;
    const double qp = q + 1.0;
    return num / (qp * qp);
}

// Direct-sum vs cancelled-form consistency probe at q = 1 +- eps. A mismatch
// beyond roundoff can only come from a transcription bug in one of the forms.
void check_pole_cancellation(double nu) {
    const double w = nu - 1.0;
    const double eps = std::min(1e-3, 0.5 * w);
    if (!(eps > 1e-12)) return;
    // magnitude of what cancels, for the roundoff allowance
    const double pole_scale = 0.25 * w * w * w / (eps * eps) + 1.5 * w * w / eps;
    for (const double q : {1.0 - eps, 1.0 + eps}) {
        const double direct = sigma_combined_integrand(q, nu);
        const double stable = combined_cancelled(q, nu);
        const double allow = 1e-9 * (std::abs(stable) + pole_scale) + 1e-12;
        if (!(std::abs(direct - stable) <= allow))
            throw SigmaCancellationError(
                "sigma_ren: combined integrand blows up near q = Omega (direct sum " +
                std::to_string(direct) + " vs cancelled form " + std::to_string(stable) +
                " at nu/Omega = " + std::to_string(nu) + ")");
    }
}

}  // namespace

QuadResult sigma_ren_total(double nu_over_omega, double tol) {
    if (!(nu_over_omega >= 0.0) || !std::isfinite(nu_over_omega))
        throw std::domain_error("sigma_ren: need nu/Omega >= 0 and finite");
    const double nu = nu_over_omega;
    if (nu == 0.0) return QuadResult{};
    if (nu < 1.0) {
        // pole outside the range; integrand steepens near q = nu as nu -> 1
        return integrate([nu](double q) { return sigma1_integrand(q, nu); }, 0.0, nu, tol);
    }
    // threshold and above: cancelled form on [0, nu], plain tail beyond
    const double w = nu - 1.0;
    QuadResult r =
        integrate([nu](double q) { return combined_cancelled(q, nu); }, 0.0, nu, tol);
    if (w > 0.0) {
        check_pole_cancellation(nu);
        std::vector<double> pts{nu};
        if (nu < 2.0) pts.push_back(2.0);
        pts.push_back(std::max(4.0, 2.0 * nu));
        QuadResult head =
            integrate_segments([w](double q) { return sigma23_integrand(q, w); }, pts, tol);
        QuadResult tail = integrate_semi_infinite(
            [w](double q) { return sigma23_integrand(q, w); }, pts.back(), tol);
        r.value += head.value + tail.value;
        r.abs_error_estimate += head.abs_error_estimate + tail.abs_error_estimate;
        r.evaluations += head.evaluations + tail.evaluations;
    }
    return r;
}

double m_p_first_order(const AtomParams& atom, double nu) {
    if (!std::isfinite(nu)) throw std::domain_error("m_p_first_order: non-finite nu");
    const double k = std::abs(nu) - atom.omega_p;
    if (k <= 0.0) return 0.0;
    return atom.g * atom.g / (12.0 * M_PI * atom.omega_p) * k * k * k;
}

QuadResult im_gamma1_general(const AtomParams& atom, const Integrand& f_sq, double p_max,
                             double tol) {
    const double pref =
        atom.g * atom.g / (8.0 * atom.omega_p) * 4.0 * M_PI / std::pow(2.0 * M_PI, 3);
    auto radial = [&f_sq, pref](double p) { return pref * p * f_sq(p); };

    // pre-split so narrow spectral features cannot slip between the nodes of
    // a single opening panel
    if (std::isinf(p_max)) {
        auto g = [&radial](double t) {
            const double om = 1.0 - t;
            return radial(t / om) / (om * om);
        };
        std::vector<double> pts;
        for (int i = 0; i <= 16; ++i) pts.push_back(i / 16.0);
        return integrate_segments(g, pts, tol);
    }
    if (!(p_max > 0.0)) throw std::domain_error("im_gamma1_general: need p_max > 0");
    std::vector<double> pts;
    for (int i = 0; i <= 16; ++i) pts.push_back(p_max * i / 16.0);
    return integrate_segments(radial, pts, tol);
}

double sigma_combined_integrand(double q, double nu_over_omega) {
    const double nu = nu_over_omega;
    double v = 0.0;
    if (q < nu) v += sigma1_integrand(q, nu);
    if (nu > 1.0) v += sigma23_integrand(q, nu - 1.0);
    return v;
}

double sigma_bracket_half_width(double nu_over_omega) {
    const double w = nu_over_omega - 1.0;
    return 0.5 * std::min(1.0, w);
}

SigmaBreakdown sigma_ren(double nu_over_omega, double tol) {
    if (!(nu_over_omega >= 0.0) || !std::isfinite(nu_over_omega))
        throw std::domain_error("sigma_ren: need nu/Omega >= 0 and finite");
    const double nu = nu_over_omega;

    SigmaBreakdown out;
    out.nu_over_omega = nu;
    out.total = sigma_ren_total(nu, tol).value;

    if (nu <= 1.0) {
        out.sigma1 = out.total;
        return out;
    }

    // diagnostics: matched symmetric excision about q = 1
    const double w = nu - 1.0;
    const double h = sigma_bracket_half_width(nu);

    // Sigma2 as a symmetric principal value (analytically zero)
    const double s2_pv =
        principal_value([](double q) { return 1.0 / (q * q - 1.0); }, 1.0, 0.0, 2.0, tol).value +
        integrate_semi_infinite([](double q) { return 1.0 / (q * q - 1.0); }, 2.0, tol).value;
    out.sigma2 = 1.5 * w * w * s2_pv;

    // Sigma3 with the bracket excised
    auto s3_integrand = [w](double q) {
        const double d = q * q - 1.0;
        return -0.5 * w * w * w * (q * q + 1.0) / (d * d);
    };
    double s3 = integrate(s3_integrand, 0.0, 1.0 - h, tol).value;
    s3 += integrate(s3_integrand, 1.0 + h, std::max(4.0, 2.0 * nu), tol).value;
    s3 += integrate_semi_infinite(s3_integrand, std::max(4.0, 2.0 * nu), tol).value;
    out.sigma3 = s3;

    out.sigma1 = out.total - out.sigma2 - out.sigma3;
    return out;
}

QuadResult im_gamma2_smallosc(const AtomParams& atom, const Integrand& y_sq, double nu_max,
                              double tol) {
    if (!(nu_max > 0.0)) throw std::domain_error("im_gamma2_smallosc: need nu_max > 0");
    const double omega = atom.omega_p;
    const double g4 = std::pow(atom.g, 4);
    const double pref = g4 / (24.0 * std::pow(M_PI, 3)) / M_PI * omega;

    auto integrand = [&](double nu) {
        return y_sq(nu) * sigma_ren_total(nu / omega, 1e-8).value;
    };
    std::vector<double> pts{0.0};
    if (omega < nu_max) pts.push_back(omega);  // threshold kink
    pts.push_back(nu_max);
    QuadResult r = integrate_segments(integrand, pts, tol);
    r.value *= pref;
    r.abs_error_estimate *= std::abs(pref);
    return r;
}

double im_gamma1_line(const AtomParams& atom, const LineSpectrum& line) {
    const double amp_sq = line.amplitude_par_sq + line.amplitude_perp_sq;
    return 0.5 * amp_sq * m_p_first_order(atom, line.nu0);
}

double im_gamma2_line(const AtomParams& atom, const LineSpectrum& line, double tol) {
    // no 1/2 here: the second-order action carries none, so the A^2/2 line
    // weight enters both frequency signs and they add up to A^2
    const double amp_sq = line.amplitude_par_sq + line.amplitude_perp_sq;
    const double g4 = std::pow(atom.g, 4);
    return g4 / (24.0 * std::pow(M_PI, 3)) * amp_sq * atom.omega_p *
           sigma_ren_total(line.nu0 / atom.omega_p, tol).value;
}

double freq_shift(double g, double omega_ren, double cutoff_lambda) {
    if (!(omega_ren > 0.0)) throw std::domain_error("freq_shift: need omega_ren > 0");
    if (!(cutoff_lambda > 0.0)) throw std::domain_error("freq_shift: need cutoff_lambda > 0");
    return -(g * g) / (4.0 * M_PI * M_PI) * cutoff_lambda / omega_ren;
}

}  // namespace dce
