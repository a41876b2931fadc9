#include "dce/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

// All integration in this file is fixed-grid Romberg (closed trapezoid
// ladders, or midpoint ladders where an endpoint is singular); nothing here
// calls the adaptive Gauss-Kronrod code the main modules use, and the
// integrands are transcribed afresh.

namespace dce::oracle {

namespace {

using Fn = std::function<double(double)>;

double romberg_closed(const Fn& f, double a, double b, int max_level, double rel_tol = 1e-13) {
    std::vector<std::vector<double>> r(1);
    long n = 1;  // panels at the current level
    double t = 0.5 * (b - a) * (f(a) + f(b));
    r[0].push_back(t);
    for (int k = 1; k <= max_level; ++k) {
        const double spacing = (b - a) / n;
        double sum = 0.0;
        for (long i = 0; i < n; ++i) sum += f(a + spacing * (i + 0.5));
        t = 0.5 * t + 0.5 * spacing * sum;  // nested trapezoid refinement
        n *= 2;
        r.emplace_back();
        r[k].push_back(t);
        for (int j = 1; j <= k; ++j) {
            const double p = std::pow(4.0, j);
            r[k].push_back((p * r[k][j - 1] - r[k - 1][j - 1]) / (p - 1.0));
        }
        if (k >= 4) {
            const double cur = r[k][k], prev = r[k - 1][k - 1];
            if (std::abs(cur - prev) <= rel_tol * std::max(1.0, std::abs(cur))) return cur;
        }
    }
    return r.back().back();
}

// Midpoint-rule ladder (open at both ends), Richardson in h^2. Points do not
// nest under halving, so each level re-evaluates; fine for oracle duty.
double romberg_open(const Fn& f, double a, double b, int max_level, double rel_tol = 1e-13) {
    std::vector<std::vector<double>> r;
    long n = 8;
    for (int k = 0; k <= max_level; ++k) {
        const double h = (b - a) / n;
        double sum = 0.0;
        for (long i = 0; i < n; ++i) sum += f(a + h * (i + 0.5));
        r.emplace_back();
        r[k].push_back(h * sum);
        for (int j = 1; j <= k; ++j) {
            const double p = std::pow(4.0, j);
            r[k].push_back((p * r[k][j - 1] - r[k - 1][j - 1]) / (p - 1.0));
        }
        if (k >= 4) {
            const double cur = r[k][k], prev = r[k - 1][k - 1];
            if (std::abs(cur - prev) <= rel_tol * std::max(1.0, std::abs(cur))) return cur;
        }
        n *= 2;
    }
    return r.back().back();
}

// --- second-order kernel integrands, fresh transcription at Omega = 1 ---

double osigma1(double q, double nu) {
    const double dm = q - 1.0, dp = q + 1.0;
    const double r = nu - q;
    return q * r * r * r / (dm * dm * dp * dp);
}

double osigma2(double q, double w) { return 1.5 * w * w / ((q - 1.0) * (q + 1.0)); }

double osigma3(double q, double w) {
    const double dm = q - 1.0, dp = q + 1.0;
    return -0.5 * w * w * w * (q * q + 1.0) / (dm * dm * dp * dp);
}

double osum(double q, double nu) {
    const double w = nu - 1.0;
    double v = osigma2(q, w) + osigma3(q, w);
    if (q < nu) v += osigma1(q, nu);
    return v;
}

}  // namespace

double rel_diff(double main_value, double oracle_value) {
    return std::abs(main_value - oracle_value) / std::max(std::abs(oracle_value), 1e-300);
}

OracleReport make_report(std::string quantity, double main_value, double oracle_value,
                         std::string method) {
    return OracleReport{std::move(quantity), main_value, oracle_value,
                        rel_diff(main_value, oracle_value), std::move(method)};
}

double oracle_sigma(double nu_over_omega, int grid_n) {
    const double nu = nu_over_omega;
    if (!(nu >= 0.0)) throw std::domain_error("oracle_sigma: need nu/Omega >= 0");
    if (nu == 0.0) return 0.0;
    int levels = 4;
    while ((1L << levels) < grid_n && levels < 22) ++levels;

    if (nu < 1.0)
        return romberg_closed([nu](double q) { return osigma1(q, nu); }, 0.0, nu, levels);

    const double w = nu - 1.0;
    if (w == 0.0) {
        // at threshold the integrand reduces to q(1-q)/(1+q)^2
        return romberg_closed(
            [](double q) { return q * (1.0 - q) / ((1.0 + q) * (1.0 + q)); }, 0.0, 1.0, levels);
    }

    const double h = 0.4 * std::min(1.0, w);
    double total = 0.0;

    // symmetric pairing about the pole; midpoint ladder keeps s = 0 out
    total += romberg_open([nu](double s) { return osum(1.0 + s, nu) + osum(1.0 - s, nu); },
                          0.0, h, 14);
    total += romberg_closed([nu](double q) { return osum(q, nu); }, 0.0, 1.0 - h, levels);
    total += romberg_closed([nu](double q) { return osum(q, nu); }, 1.0 + h, nu, levels);

    const double q_cut = std::max(50.0 * nu, 200.0);
    total += romberg_closed([nu, w](double q) { return osigma2(q, w) + osigma3(q, w); }, nu,
                            q_cut, levels);
    // analytic 1/q^2 and 1/q^4 tail beyond the cut
    total += (1.5 * w * w - 0.5 * w * w * w) / q_cut +
             1.5 * (w * w - w * w * w) / (3.0 * q_cut * q_cut * q_cut);
    return total;
}

namespace {

// resonance-coefficient integrands, transcribed locally
double okappa(double u, double xi) {
    return std::sqrt(0.5 * (std::sqrt(u * u + xi * xi) + std::abs(u)));
}

double oa_par(double u, double xi, double a) {
    const double k = okappa(u, xi);
    const double phi = (xi == 0.0 || k == 0.0) ? 0.0 : xi / (2.0 * k);
    if (xi == 0.0) return std::exp(-k * a);
    return u / (u * u + xi * xi) * std::exp(-k * a) *
           (u * std::cos(phi * a) + xi * std::sin(phi * a));
}

double oa_perp(double u, double xi, double a) {
    const double k = okappa(u, xi);
    const double phi = (xi == 0.0 || k == 0.0) ? 0.0 : xi / (2.0 * k);
    return std::exp(-k * a) * std::cos(phi * a);
}

double oracle_coeff_a(double xi, double omega_m, double a, bool parallel) {
    auto f = [&](double u) { return parallel ? oa_par(u, xi, a) : oa_perp(u, xi, a); };
    // u = -v^2 and u = +v^2 remove the sqrt cusp at u = 0
    const double u_cut = std::pow(70.0 / a, 2);
    double total = romberg_closed(
        [&](double v) { return 2.0 * v * f(-v * v); }, 0.0, omega_m, 18);
    total += romberg_closed(
        [&](double v) { return 2.0 * v * f(v * v); }, 0.0, std::sqrt(u_cut), 18);
    return total;
}

// PV integral (1/pi) int_0^inf cos(q a) / (q^2 - b^2) dq, b > 0. The pure
// pole is split off first: PV int_0^inf dq/(q^2 - b^2) = 0, and what remains,
// [cos(q a) - 1] / (q^2 - b^2), is regular at q -> 0 for any b, so the
// symmetric pairing about q = b plus a truncated exterior stay well
// conditioned even when b is tiny.
double pv_cos_over_pole(double b, double a) {
    auto c = [b, a](double q) {
        return (std::cos(q * a) - 1.0) / ((q - b) * (q + b));
    };
    const double paired =
        romberg_open([&](double s) { return c(b + s) + c(b - s); }, 0.0, b, 10, 1e-11);
    const double q_cut = std::max({80.0 / a, 6.0 * b, 40.0});
    const double exterior = romberg_closed(c, 2.0 * b, q_cut, 14, 1e-11);
    const double d = q_cut * q_cut - b * b;
    // integrated-by-parts tail of the cosine piece, minus the exact tail of
    // the subtracted pole
    const double tail = -std::sin(q_cut * a) / (a * d) +
                        2.0 * q_cut * std::cos(q_cut * a) / (a * a * d * d) -
                        std::log1p(2.0 * b / (q_cut - b)) / (2.0 * b);
    return (paired + exterior + tail) / M_PI;
}

}  // namespace

double oracle_coeff_a_parallel(double xi, double omega_m, double a) {
    return oracle_coeff_a(xi, omega_m, a, true);
}

double oracle_coeff_a_perp(double xi, double omega_m, double a) {
    return oracle_coeff_a(xi, omega_m, a, false);
}

double oracle_plate_point(const AtomParams& atom, const MirrorParams& mirror, double a,
                          double nu) {
    if (!(mirror.xi > 0.0)) throw std::domain_error("oracle_plate_point: needs xi > 0");
    const double wp = atom.omega_p, wm = mirror.omega_m;
    const double m_sum = wm + wp;
    if (std::abs(nu * nu - m_sum * m_sum) < 2.0 * mirror.xi)
        throw std::domain_error(
            "oracle_plate_point: |nu| within two Lorentzian widths of the resonance");

    const double g2 = atom.g * atom.g;
    const double c2 = mirror.gamma * mirror.gamma;

    // resonance piece: delta_xi coefficient with the Romberg-integrated A
    const double x_res = nu * nu - m_sum * m_sum;
    const double dxi = (mirror.xi / M_PI) / (x_res * x_res + mirror.xi * mirror.xi);
    double value =
        c2 * g2 * m_sum / (16.0 * wp * wm) * dxi * oracle_coeff_a_parallel(mirror.xi, wm, a);

    // threshold piece from the unreduced p3/q3 integrals
    const double k = std::abs(nu) - wp;
    if (k > 0.0) {
        const double x_thr = k * k - wm * wm;
        const double pxi = x_thr / (x_thr * x_thr + mirror.xi * mirror.xi);
        auto outer = [&](double p3) {
            return std::cos(p3 * a) * k * (k * k - p3 * p3) * pv_cos_over_pole(p3, a);
        };
        const double inner2d = romberg_open(outer, 0.0, k, 8, 1e-10) / (2.0 * M_PI * M_PI);
        value += -M_PI * c2 * g2 / (4.0 * k * wp) * pxi * inner2d;
    }
    return value;
}

double oracle_friction_2d(const FrictionQuery& q) {
    const double m = q.mirror.omega_m, p = q.atom.omega_p;
    const double b2 = std::pow((m + p) / q.u, 2) - m * m;
    const double b = std::sqrt(b2);
    const double pref = q.mirror.gamma * q.mirror.gamma * q.atom.g * q.atom.g /
                        (32.0 * M_PI * p * m * q.u);
    // factor the floor of the exponent out so deep suppression keeps relative accuracy
    const double floor_exp = 2.0 * q.a * b;
    auto f = [&](double t) {
        const double grow = t * t / (std::sqrt(t * t + b2) + b);  // sqrt(t^2+b^2) - b
        return std::exp(-2.0 * q.a * grow) / (t * t + b2);
    };
    const double cut = std::sqrt(std::pow(b + 37.0 / q.a, 2) - b2);
    return pref * std::exp(-floor_exp) * romberg_closed(f, 0.0, cut, 18);
}

}  // namespace dce::oracle
