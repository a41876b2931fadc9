#include <cmath>
#include <random>

#include "dce/free_space.hpp"
#include "dce/oracle.hpp"
#include "dce/trajectory.hpp"
#include "doctest.h"

using namespace dce;

namespace {

// Closed forms for Sigma_ren/Omega obtained by partial fractions of the
// printed integrands (test-only third route, independent of both the
// adaptive path and the Romberg oracle).
double sigma_closed_below(double nu) {
    const double w = nu - 1.0;
    const double op = 1.0 + nu;
    return -nu - 0.25 * w * w * (1.0 + w) - 0.25 * nu * op * op -
           0.75 * w * w * std::log(1.0 - nu) + 0.75 * op * op * std::log(op);
}

double sigma_closed_above(double nu) {
    const double w = nu - 1.0;
    const double c0 = 1.0 - 3.0 * nu - 0.5 * w * w * w - 1.5 * w * w;
    return -nu + 3.0 * nu * std::log(1.0 + nu) + c0 * nu / (1.0 + nu) +
           0.75 * w * w * std::log((nu + 1.0) / (nu - 1.0)) -
           0.5 * w * w * w * nu / (nu * nu - 1.0);
}

}  // namespace

TEST_CASE("m_p_first_order: threshold behaviour and the 1/(12 pi) point") {
    const AtomParams atom(1.0, 1.0);
    CHECK(m_p_first_order(atom, 0.999) == 0.0);
    CHECK(m_p_first_order(atom, 1.0) == 0.0);
    CHECK(m_p_first_order(atom, -0.5) == 0.0);
    CHECK(std::abs(m_p_first_order(atom, 2.0) - 1.0 / (12.0 * M_PI)) < 1e-16);
    CHECK(std::abs(m_p_first_order(atom, 2.0) - 0.0265258238486492) < 1e-15);
}

TEST_CASE("m_p_first_order: even in nu, C2 contact at threshold, lambda scaling") {
    const AtomParams atom(0.7, 1.3);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    for (int i = 0; i < 50; ++i) {
        const double nu = u(rng);
        CHECK(m_p_first_order(atom, nu) == m_p_first_order(atom, -nu));
    }

    // first and second divided differences vanish with h at the threshold
    const double w = atom.omega_p;
    for (const double h : {1e-3, 1e-4}) {
        const double d1 = (m_p_first_order(atom, w + h) - m_p_first_order(atom, w - h)) / (2 * h);
        const double d2 = (m_p_first_order(atom, w + h) - 2 * m_p_first_order(atom, w) +
                           m_p_first_order(atom, w - h)) /
                          (h * h);
        CHECK(std::abs(d1) < 3.0 * h);  // m' ~ 3 g^2/(12 pi w) h^2 one-sided
        CHECK(std::abs(d2) < 3.0 * h * 6.0);
    }

    // frequencies x lambda, g^2 x lambda => kernel x lambda^3
    const double lam = 1.7;
    const AtomParams scaled(atom.g * std::sqrt(lam), atom.omega_p * lam);
    const double ratio = m_p_first_order(scaled, 2.4 * lam) / m_p_first_order(atom, 2.4);
    CHECK(ratio == doctest::Approx(lam * lam * lam).epsilon(1e-12));
}

TEST_CASE("freq_shift: formula points") {
    CHECK(freq_shift(0.0, 1.0, 10.0) == 0.0);
    CHECK(std::abs(freq_shift(1.0, 1.0, 4.0 * M_PI * M_PI) - (-1.0)) < 1e-15);
    CHECK(std::abs(freq_shift(0.1, 2.0, 100.0) - (-0.0126651479552922)) < 1e-15);
    CHECK_THROWS_AS(freq_shift(1.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("sigma_ren: zero, threshold continuity, frozen values") {
    CHECK(sigma_ren(0.0).total == 0.0);

    // at the threshold the combined integrand reduces to q(1-q)/(1+q)^2,
    // whose integral is 3 ln 2 - 2
    const double at_thr = sigma_ren_total(1.0, 1e-12).value;
    CHECK(std::abs(at_thr - (3.0 * std::log(2.0) - 2.0)) < 1e-10);
    CHECK(std::abs(at_thr - 0.0794415416798359) < 1e-10);

    const double just_below = sigma_ren_total(1.0 - 1e-4, 1e-12).value;
    const double just_above = sigma_ren_total(1.0 + 1e-4, 1e-12).value;
    const double scale = std::abs(sigma_ren_total(1.5, 1e-12).value);
    CHECK(std::abs(just_above - just_below) <= 1e-3 * scale);

    CHECK(std::abs(sigma_ren_total(0.5, 1e-12).value - 0.00168746628751717) < 1e-12);
    CHECK(std::abs(sigma_ren_total(2.0, 1e-12).value - 0.415632948509741) < 1e-10);
}

TEST_CASE("sigma_ren: agrees with the partial-fraction closed forms") {
    for (const double nu : {0.15, 0.5, 0.85}) {
        const double got = sigma_ren_total(nu, 1e-12).value;
        CHECK(got == doctest::Approx(sigma_closed_below(nu)).epsilon(1e-10));
    }
    for (const double nu : {1.3, 2.0, 3.7, 7.0, 40.0}) {
        const double got = sigma_ren_total(nu, 1e-12).value;
        CHECK(got == doctest::Approx(sigma_closed_above(nu)).epsilon(1e-9));
    }
}

TEST_CASE("sigma_ren: breakdown bookkeeping") {
    const SigmaBreakdown below = sigma_ren(0.7, 1e-11);
    CHECK(below.sigma2 == 0.0);
    CHECK(below.sigma3 == 0.0);
    CHECK(below.sigma1 == below.total);

    const SigmaBreakdown above = sigma_ren(2.5, 1e-11);
    CHECK(above.total ==
          doctest::Approx(above.sigma1 + above.sigma2 + above.sigma3).epsilon(1e-12));
    CHECK(std::abs(above.sigma2) < 1e-7);  // symmetric PV of Sigma2 vanishes
    CHECK(above.nu_over_omega == 2.5);
}

TEST_CASE("sigma_ren: combined integrand has a finite pole limit") {
    for (const double nu : {1.5, 2.0, 5.0}) {
        double prev_diff = 1e300;
        for (const double eps : {1e-3, 1e-4, 1e-5}) {
            const double diff = std::abs(sigma_combined_integrand(1.0 + eps, nu) -
                                         sigma_combined_integrand(1.0 - eps, nu));
            CHECK(diff < 0.35 * prev_diff);
            prev_diff = diff;
        }
    }
}

TEST_CASE("sigma_ren vs Romberg oracle") {
    for (const double nu : {0.5, 0.9, 2.0}) {
        const double main = sigma_ren_total(nu, 1e-12).value;
        const double orc = oracle::oracle_sigma(nu, 65536);
        CHECK(oracle::rel_diff(main, orc) < (nu < 1.0 ? 1e-6 : 1e-5));
    }
}

TEST_CASE("im_gamma1_general: zero weight, frozen e^{-p} value") {
    const AtomParams atom(1.0, 1.0);
    CHECK(im_gamma1_general(atom, [](double) { return 0.0; }, 10.0).value == 0.0);

    // (g^2/8)(4pi/(2pi)^3) int p e^{-p} dp = 1/(16 pi^2)
    const double inf = std::numeric_limits<double>::infinity();
    const double got = im_gamma1_general(atom, [](double p) { return std::exp(-p); }, inf).value;
    CHECK(std::abs(got - 1.0 / (16.0 * M_PI * M_PI)) < 1e-12);
    CHECK(std::abs(got - 0.00633257397764611) < 1e-12);
}

TEST_CASE("im_gamma1_general: sub-threshold harmonic motion emits nothing") {
    const AtomParams atom(1.0, 1.0);
    const Trajectory traj = Trajectory::harmonic_line({0.05, 0.0, 0.0}, 0.5, {});
    auto f_sq = [&](double p) { return f_sq_angular_integrated(traj, p, atom.omega_p); };
    CHECK(im_gamma1_general(atom, f_sq, 4.0).value == 0.0);
}

TEST_CASE("monochromatic line rates") {
    const AtomParams atom(1.0, 1.0);
    const LineSpectrum none{2.0, 0.0, 0.0};
    CHECK(im_gamma1_line(atom, none) == 0.0);
    CHECK(im_gamma2_line(atom, none) == 0.0);

    const double amp = 0.02;
    const LineSpectrum line{2.0, amp * amp, 0.0};
    CHECK(im_gamma1_line(atom, line) ==
          doctest::Approx(0.5 * amp * amp * m_p_first_order(atom, 2.0)).epsilon(1e-14));

    const double expect2 = std::pow(atom.g, 4) / (24.0 * std::pow(M_PI, 3)) * amp * amp *
                           sigma_ren_total(2.0, 1e-10).value;
    CHECK(im_gamma2_line(atom, line) == doctest::Approx(expect2).epsilon(1e-10));
}

TEST_CASE("im_gamma2_smallosc: narrow-Gaussian ladder approaches the line rate") {
    const AtomParams atom(1.0, 1.0);
    const double amp = 0.05, nu0 = 0.6;
    const LineSpectrum line{nu0, amp * amp, 0.0};
    const double line_rate = im_gamma2_line(atom, line, 1e-12);

    double prev_err = 1e300;
    for (const double width : {0.05, 0.02, 0.008}) {
        auto y_sq = [&](double nu) {
            const double t = (nu - nu0) / width;
            return 0.5 * amp * amp * 2.0 * M_PI * std::exp(-0.5 * t * t) /
                   (width * std::sqrt(2.0 * M_PI));
        };
        const double v = im_gamma2_smallosc(atom, y_sq, nu0 + 10.0 * width, 1e-9).value;
        const double err = std::abs(v - line_rate) / std::abs(line_rate);
        CHECK(err < prev_err + 1e-6);
        prev_err = err;
    }
    // residual is the O(width^2) sampling bias of sigma around nu0
    CHECK(prev_err < 3e-3);
}

TEST_CASE("im_gamma2_smallosc: zero spectrum and nu0^5 low-frequency scaling") {
    const AtomParams atom(1.0, 1.0);
    CHECK(im_gamma2_smallosc(atom, [](double) { return 0.0; }, 1.0).value == 0.0);

    const LineSpectrum low1{0.02, 1e-4, 0.0};
    const LineSpectrum low2{0.04, 1e-4, 0.0};
    const double r = im_gamma2_line(atom, low2, 1e-12) / im_gamma2_line(atom, low1, 1e-12);
    CHECK(r == doctest::Approx(32.0).epsilon(0.01));  // 2^5 with O(nu^2) corrections
}

TEST_CASE("im_gamma2_line: lambda scaling of the rate") {
    const double lam = 2.3;
    const AtomParams atom(0.8, 1.1);
    const AtomParams scaled(0.8 * std::sqrt(lam), 1.1 * lam);
    const LineSpectrum line{1.9, 0.01, 0.0};
    const LineSpectrum sline{1.9 * lam, 0.01 / (lam * lam), 0.0};
    const double r = im_gamma2_line(scaled, sline, 1e-12) / im_gamma2_line(atom, line, 1e-12);
    CHECK(r == doctest::Approx(lam).epsilon(1e-8));
}
