#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kmsurf/legendre.hpp"
#include "kmsurf/regulator.hpp"

using namespace kmsurf;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("zeta values in the convergent region") {
    CHECK(std::abs(riemann_zeta(2.0) - kPi * kPi / 6.0) < 1e-12);
    CHECK(std::abs(riemann_zeta(3.0) - 1.2020569031595943) < 1e-12);
    CHECK(std::abs(riemann_zeta(4.0) - kPi * kPi * kPi * kPi / 90.0) < 1e-12);
    CHECK(std::abs(riemann_zeta(0.5) - (-1.4603545088095868)) < 1e-10);
    /* sum over half-integers: zeta_H(2, 1/2) = pi^2/2 */
    CHECK(std::abs(hurwitz_zeta(2.0, 0.5) - kPi * kPi / 2.0) < 1e-12);
    CHECK(std::abs(hurwitz_zeta(2.0, 1.0) - riemann_zeta(2.0)) < 1e-13);
    /* shifting the offset drops the leading term */
    CHECK(std::abs(hurwitz_zeta(3.0, 2.0) - (riemann_zeta(3.0) - 1.0)) < 1e-12);
}

TEST_CASE("continued zeta values at non-positive integer arguments") {
    CHECK(std::abs(riemann_zeta(0.0) - (-0.5)) < 1e-14);
    CHECK(std::abs(riemann_zeta(-1.0) - (-1.0 / 12.0)) < 1e-14);
    CHECK(std::abs(riemann_zeta(-3.0) - (1.0 / 120.0)) < 1e-14);
    CHECK(std::abs(riemann_zeta(-2.0)) < 1e-12);
    for (double a : {0.25, 0.5, 1.0, 1.5, 2.5})
        CHECK(std::abs(hurwitz_zeta(0.0, a) - (0.5 - a)) < 1e-12);
    /* zeta_H(-1, a) = -(a^2 - a + 1/6)/2 */
    CHECK(std::abs(hurwitz_zeta(-1.0, 0.5) - 1.0 / 24.0) < 1e-13);
    CHECK(std::abs(hurwitz_zeta(-1.0, 1.0) - (-1.0 / 12.0)) < 1e-13);
    CHECK(std::abs(hurwitz_zeta(-1.0, 2.0) - (-13.0 / 12.0)) < 1e-12);
    /* the damped-sum assignment used by the coincident limits */
    CHECK(std::abs(hurwitz_zeta(0.0, 0.5)) < 1e-13);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(hurwitz_zeta(2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hurwitz_zeta(2.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(hurwitz_zeta(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(riemann_zeta(1.0), std::invalid_argument);
    CHECK_THROWS_AS(delta_eps_torus(0.3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(delta_eps_torus_shifted(0.3, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(SphereKernel(0.1, 2, 1), std::invalid_argument);
}

TEST_CASE("circle kernel: closed form against partial mode sums") {
    for (double theta : {0.0, 0.7, 2.2})
        for (double eps : {1.0, 0.5, 0.25}) {
            CAPTURE(theta);
            CAPTURE(eps);
            const double closed = delta_eps_torus(theta, eps);
            CHECK(std::abs(delta_eps_torus_partial(theta, eps, 200) - closed) < 1e-12);
        }
    /* slow damping needs more modes; the tail is geometric */
    CHECK(std::abs(delta_eps_torus_partial(0.4, 0.05, 400) - delta_eps_torus(0.4, 0.05)) < 1e-12);
}

TEST_CASE("coincident circle kernel equals coth") {
    for (double eps : {2.0, 1.0, 0.5, 0.1, 0.05, 0.01}) {
        CAPTURE(eps);
        const double coth = std::cosh(eps) / std::sinh(eps);
        CHECK(std::abs(delta_eps_torus(0.0, eps) - coth) < 1e-10);
    }
    /* coth(eps) - 1/eps -> 0 linearly, the divergence is pure 1/eps */
    const double eps = 0.01;
    CHECK(std::abs(delta_eps_torus(0.0, eps) - 1.0 / eps - eps / 3.0) < 1e-6);
}

TEST_CASE("half-shifted kernel: scale factor and zero mode") {
    for (double theta : {0.3, 1.1, 2.9})
        for (double eps : {0.2, 0.7}) {
            const double plain = delta_eps_torus(theta, eps);
            CHECK(std::abs(delta_eps_torus_shifted(theta, eps) - std::exp(eps) * plain) <
                  1e-12 * std::abs(plain) + 1e-14);
        }
    /* the angular average picks out the zero mode, weight e^eps */
    for (double eps : {1.0, 0.5, 0.1}) {
        CAPTURE(eps);
        const int n = 4096;
        double avg = 0.0;
        for (int k = 0; k < n; ++k) avg += delta_eps_torus_shifted(2.0 * kPi * k / n, eps);
        avg /= n;
        CHECK(std::abs(avg - std::exp(eps)) < 1e-10);
    }
}

TEST_CASE("assigned coincident values are one mode's worth on both surfaces") {
    CHECK(regularized_delta0_torus() == doctest::Approx(1.0).epsilon(1e-14));
    for (int m : {0, 1, 2, 3}) CHECK(regularized_delta0_sphere(m) == doctest::Approx(1.0).epsilon(1e-14));

    /* quadrature witness for the sphere rule: each degree contributes one
       unit to the weighted coincident sum, independent of the order */
    const auto gl = gauss_legendre(10);
    for (int m : {0, 1, 2})
        for (int l = std::abs(m); l <= 4; ++l) {
            double s = 0.0;
            for (size_t k = 0; k < gl.x.size(); ++k)
                s += 0.5 * gl.w[k] * assoc_q(l, m, gl.x[k]) * assoc_q(l, m, gl.x[k]);
            CHECK(std::abs(s - 1.0) < 1e-13);
        }
}

TEST_CASE("damped sphere kernel smooths each basis mode by its own factor") {
    const double eps = 0.3;
    const int m = 1, lmax = 6;
    const SphereKernel ker(eps, m, lmax);
    const auto gl = gauss_legendre(10);
    for (int lp = 1; lp <= 3; ++lp)
        for (double u : {-0.6, 0.1, 0.8}) {
            double g = 0.0;
            for (size_t k = 0; k < gl.x.size(); ++k)
                g += gl.w[k] * ker.eval(u, gl.x[k]) * assoc_q(lp, m, gl.x[k]);
            const double expect = 2.0 * std::exp(-2.0 * eps * (lp + 0.5)) * assoc_q(lp, m, u);
            CHECK(std::abs(g - expect) < 1e-12);
        }
    /* at eps = 0 the kernel reproduces polynomials of the truncated span */
    const SphereKernel repro(0.0, 0, 5);
    for (double u : {-0.4, 0.25}) {
        double g = 0.0;
        for (size_t k = 0; k < gl.x.size(); ++k)
            g += gl.w[k] * repro.eval(u, gl.x[k]) * assoc_q(3, 0, gl.x[k]);
        CHECK(std::abs(g - 2.0 * assoc_q(3, 0, u)) < 1e-12);
    }
}
