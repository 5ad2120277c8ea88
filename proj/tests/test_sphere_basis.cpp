#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <set>

#include "kmsurf/legendre.hpp"
#include "kmsurf/triple_coeffs.hpp"

using namespace kmsurf;

namespace {

/* composite Simpson on [-1,1]; deliberately not the Gauss rule under test */
double simpson(const std::function<double(double)>& f, int n) {
    const double h = 2.0 / n;
    double s = f(-1.0) + f(1.0);
    for (int k = 1; k < n; ++k) s += f(-1.0 + k * h) * (k % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("five-point Gauss rule matches the classical nodes and weights") {
    const auto gl = gauss_legendre(5);
    REQUIRE(gl.x.size() == 5);
    REQUIRE(gl.w.size() == 5);
    const double x2 = 0.5384693101056831, x4 = 0.9061798459386640;
    const double w0 = 0.5688888888888889, w2 = 0.47862867049936647, w4 = 0.23692688505618908;
    CHECK(std::abs(gl.x[0] + x4) < 1e-14);
    CHECK(std::abs(gl.x[1] + x2) < 1e-14);
    CHECK(std::abs(gl.x[2]) < 1e-14);
    CHECK(std::abs(gl.x[3] - x2) < 1e-14);
    CHECK(std::abs(gl.x[4] - x4) < 1e-14);
    CHECK(std::abs(gl.w[0] - w4) < 1e-14);
    CHECK(std::abs(gl.w[1] - w2) < 1e-14);
    CHECK(std::abs(gl.w[2] - w0) < 1e-14);
    CHECK(std::abs(gl.w[3] - w2) < 1e-14);
    CHECK(std::abs(gl.w[4] - w4) < 1e-14);
}

TEST_CASE("Gauss rules: weight sums, symmetry, polynomial exactness") {
    for (int K = 1; K <= 10; ++K) {
        CAPTURE(K);
        const auto gl = gauss_legendre(K);
        double sum = 0.0;
        for (double w : gl.w) sum += w;
        CHECK(std::abs(sum - 2.0) < 1e-13);
        for (int i = 0; i + 1 < K; ++i) CHECK(gl.x[i] < gl.x[i + 1]);
        for (int i = 0; i < K; ++i) {
            CHECK(std::abs(gl.x[i] + gl.x[K - 1 - i]) < 1e-14);
            CHECK(std::abs(gl.w[i] - gl.w[K - 1 - i]) < 1e-14);
        }
    }
    /* K points integrate monomials up to degree 2K-1, and not beyond */
    const auto gl = gauss_legendre(4);
    for (int j = 0; j <= 7; ++j) {
        double q = 0.0;
        for (size_t i = 0; i < gl.x.size(); ++i) q += gl.w[i] * std::pow(gl.x[i], j);
        const double exact = (j % 2 == 0) ? 2.0 / (j + 1) : 0.0;
        CHECK(std::abs(q - exact) < 1e-14);
    }
    double q8 = 0.0;
    for (size_t i = 0; i < gl.x.size(); ++i) q8 += gl.w[i] * std::pow(gl.x[i], 8);
    CHECK(std::abs(q8 - 2.0 / 9.0) > 1e-6);
}

TEST_CASE("Legendre polynomials: closed forms and exact coefficients") {
    for (double u : {-0.9, -0.3, 0.0, 0.4, 0.77, 1.0}) {
        CHECK(std::abs(legendre_eval(0, u) - 1.0) < 1e-15);
        CHECK(std::abs(legendre_eval(1, u) - u) < 1e-15);
        CHECK(std::abs(legendre_eval(2, u) - (1.5 * u * u - 0.5)) < 1e-14);
        CHECK(std::abs(legendre_eval(3, u) - (2.5 * u * u * u - 1.5 * u)) < 1e-14);
    }
    const auto c4 = legendre_coeffs(4); /* (35 u^4 - 30 u^2 + 3)/8, ascending */
    REQUIRE(c4.size() == 5);
    CHECK(c4[0] == Rat(3, 8));
    CHECK(c4[1] == Rat(0));
    CHECK(c4[2] == Rat(-15, 4));
    CHECK(c4[3] == Rat(0));
    CHECK(c4[4] == Rat(35, 8));
    const auto c1 = legendre_coeffs(1);
    REQUIRE(c1.size() == 2);
    CHECK(c1[0] == Rat(0));
    CHECK(c1[1] == Rat(1));
}

TEST_CASE("orthonormalised basis: norms and orthogonality against Simpson") {
    for (int l = 0; l <= 4; ++l)
        for (int m = 0; m <= l; ++m) {
            CAPTURE(l);
            CAPTURE(m);
            const double nrm =
                simpson([&](double u) { return assoc_q(l, m, u) * assoc_q(l, m, u); }, 4000);
            CHECK(std::abs(nrm - 2.0) < 1e-9);
            for (int l2 = m; l2 < l; ++l2) {
                const double cross =
                    simpson([&](double u) { return assoc_q(l, m, u) * assoc_q(l2, m, u); }, 4000);
                CHECK(std::abs(cross) < 1e-9);
            }
        }
}

TEST_CASE("negative orders flip by (-1)^m and carry no extra phase") {
    for (int l = 0; l <= 4; ++l)
        for (int m = 1; m <= l; ++m)
            for (double u : {-0.81, -0.2, 0.33, 0.96}) {
                const double sign = (m % 2 == 0) ? 1.0 : -1.0;
                CHECK(std::abs(assoc_q(l, -m, u) - sign * assoc_q(l, m, u)) < 1e-13);
            }
    /* positive at the equator for (1,1): no alternating-sign convention */
    CHECK(std::abs(assoc_q(1, 1, 0.0) - std::sqrt(1.5)) < 1e-14);
    CHECK(assoc_q(1, 1, 0.0) > 0.0);
    CHECK(std::abs(assoc_q(1, 0, 0.4) - std::sqrt(3.0) * 0.4) < 1e-14);
}

TEST_CASE("pinned product coefficients") {
    CHECK(std::abs(triple_coeff(1, 0, 1, 0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(triple_coeff(1, 0, 1, 0, 2) - 2.0 / std::sqrt(5.0)) < 1e-12);
    CHECK(std::abs(triple_coeff(1, 1, 1, -1, 2) - 1.0 / std::sqrt(5.0)) < 1e-12);
    CHECK(std::abs(triple_coeff(1, 1, 1, -1, 0) - (-1.0)) < 1e-12);
    /* parity: an odd total degree integrates to zero */
    CHECK(std::abs(triple_coeff(1, 0, 1, 0, 1)) < 1e-12);
    CHECK(std::abs(triple_coeff(2, 0, 1, 0, 2)) < 1e-12);
}

TEST_CASE("product coefficients are symmetric under factor swap") {
    for (int l1 = 0; l1 <= 3; ++l1)
        for (int m1 = -l1; m1 <= l1; ++m1)
            for (int l2 = 0; l2 <= 3; ++l2)
                for (int m2 = -l2; m2 <= l2; ++m2)
                    for (int l3 = std::abs(m1 + m2); l3 <= l1 + l2; ++l3)
                        CHECK(std::abs(triple_coeff(l1, m1, l2, m2, l3) -
                                       triple_coeff(l2, m2, l1, m1, l3)) < 1e-12);
}

TEST_CASE("basis products expand exactly within the finite support") {
    const int lmax = 4;
    for (int l1 = 0; l1 <= lmax; ++l1)
        for (int m1 = -l1; m1 <= l1; ++m1)
            for (int l2 = 0; l2 <= lmax; ++l2)
                for (int m2 = -l2; m2 <= l2; ++m2) {
                    const auto terms = expand_product(l1, m1, l2, m2);
                    const int m3 = m1 + m2;
                    std::set<int> seen;
                    for (const auto& [l3, c] : terms) {
                        CHECK(l3 >= std::abs(m3));
                        CHECK(l3 <= l1 + l2);
                        CHECK(std::abs(c) > 1e-14);
                        CHECK(seen.insert(l3).second);
                    }
                    for (double u : {-0.77, 0.13, 0.58}) {
                        double lhs = assoc_q(l1, m1, u) * assoc_q(l2, m2, u);
                        for (const auto& [l3, c] : terms) lhs -= c * assoc_q(l3, m3, u);
                        CHECK(std::abs(lhs) < 1e-10);
                    }
                }
    /* the top-degree coefficient never vanishes */
    CHECK(std::abs(triple_coeff(2, 1, 1, 1, 3)) > 1e-3);
    CHECK(std::abs(triple_coeff(3, 0, 2, 0, 5)) > 1e-3);
    /* the degree-0 pair is trivial: Q00 Q00 = Q00 */
    const auto t00 = expand_product(0, 0, 0, 0);
    REQUIRE(t00.size() == 1);
    CHECK(t00[0].first == 0);
    CHECK(std::abs(t00[0].second - 1.0) < 1e-13);
}
