#include <random>

#include "dce/free_space.hpp"
#include "dce/friction.hpp"
#include "dce/params.hpp"
#include "doctest.h"

using namespace dce;

TEST_CASE("to_dimensionless: ratio examples") {
    const DimensionlessSet d =
        to_dimensionless(AtomParams(1.0, 1.0), MirrorParams(1.0, 2.0, 0.01), 1.0, 3.0);
    CHECK(d.nu_tilde == 3.0);
    CHECK(d.a_tilde == 1.0);
    CHECK(d.omega_m_tilde == 2.0);
    CHECK(d.xi_tilde == 0.01);

    const DimensionlessSet e =
        to_dimensionless(AtomParams(1.0, 2.0), MirrorParams(1.0, 2.0, 0.0), 0.5, 2.0);
    CHECK(e.nu_tilde == 1.0);
    CHECK(e.a_tilde == 1.0);
    CHECK(e.omega_m_tilde == 1.0);
    CHECK(e.xi_tilde == 0.0);

    CHECK(to_dimensionless(AtomParams(1.0, 1.0), MirrorParams(), 1.0, 0.0).nu_tilde == 0.0);
}

TEST_CASE("parameter invariants rejected at construction") {
    CHECK_THROWS_AS(AtomParams(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(AtomParams(1.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(AtomParams(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(MirrorParams(1.0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(MirrorParams(1.0, 1.0, -1e-3), std::domain_error);
    CHECK_THROWS_AS(to_dimensionless(AtomParams(), MirrorParams(), 1.0,
                                     std::numeric_limits<double>::infinity()),
                    std::domain_error);
}

TEST_CASE("scaling covariance on random parameter draws") {
    // frequencies x lambda, lengths x 1/lambda, g^2 x lambda, gamma^2 x
    // lambda^3, xi x lambda^2: kernels reproduce their overall dimension
    std::mt19937 rng(2121);
    std::uniform_real_distribution<double> u(0.3, 3.0), ul(0.5, 4.0), uu(0.1, 0.9);
    for (int i = 0; i < 10; ++i) {
        const double lam = ul(rng);
        const AtomParams atom(u(rng), u(rng));
        const AtomParams satom(atom.g * std::sqrt(lam), atom.omega_p * lam);
        const double nu = atom.omega_p * (1.0 + u(rng));

        // m_p is mass^3
        const double r1 = m_p_first_order(satom, nu * lam) / m_p_first_order(atom, nu);
        CHECK(r1 == doctest::Approx(lam * lam * lam).epsilon(1e-10));

        // friction rate is mass^1
        const MirrorParams mirror(u(rng), u(rng), 0.0);
        const MirrorParams smirror(mirror.gamma * std::pow(lam, 1.5), mirror.omega_m * lam,
                                   0.0);
        const double a = 0.3 + u(rng), speed = uu(rng);
        const FrictionQuery q(atom, mirror, a, speed);
        const FrictionQuery sq(satom, smirror, a / lam, speed);
        const double r2 = friction_rate(sq, 1e-11).value / friction_rate(q, 1e-11).value;
        CHECK(r2 == doctest::Approx(lam).epsilon(1e-8));
    }
}

TEST_CASE("to_dimensionless: round trip is exact to working precision") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        const AtomParams atom(u(rng), u(rng));
        const MirrorParams mirror(u(rng), u(rng), u(rng));
        const double a = u(rng), nu = u(rng);
        const DimensionlessSet d = to_dimensionless(atom, mirror, a, nu);
        CHECK(d.nu_tilde * atom.omega_p == doctest::Approx(nu).epsilon(1e-15));
        CHECK(d.a_tilde / atom.omega_p == doctest::Approx(a).epsilon(1e-15));
        CHECK(d.omega_m_tilde * atom.omega_p == doctest::Approx(mirror.omega_m).epsilon(1e-15));
        CHECK(d.xi_tilde * atom.omega_p * atom.omega_p ==
              doctest::Approx(mirror.xi).epsilon(1e-15));
    }
}
