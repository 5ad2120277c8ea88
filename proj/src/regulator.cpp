#include "kmsurf/regulator.hpp"

#include <cmath>
#include <stdexcept>

#include "kmsurf/legendre.hpp"

namespace kmsurf {

namespace {
/* B_2 .. B_16 */
constexpr double kBernoulli[] = {1.0 / 6.0,   -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
                                 5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};
}  // namespace

double hurwitz_zeta(double s, double a) {
    if (a <= 0.0) throw std::invalid_argument("Hurwitz zeta needs a > 0");
    if (s == 1.0) throw std::invalid_argument("Hurwitz zeta pole at s = 1");
    constexpr int N = 12;
    double sum = 0.0;
    for (int k = 0; k < N; ++k) sum += std::pow(k + a, -s);
    const double na = N + a;
    sum += std::pow(na, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(na, -s);
    /* sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * (N+a)^{-s-2j+1}; at
       non-positive integer s the Pochhammer factor kills the series exactly */
    double poch = s;            /* (s)_{2j-1}, started at j = 1 */
    double fact = 2.0;          /* (2j)! */
    double pw = std::pow(na, -s - 1.0);
    for (int j = 1; j <= 8; ++j) {
        sum += kBernoulli[j - 1] / fact * poch * pw;
        poch *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        pw /= na * na;
    }
    return sum;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

double delta_eps_torus(double theta, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("regulator eps must be positive");
    const double q = std::exp(-2.0 * eps);
    return (1.0 - q * q) / (1.0 - 2.0 * q * std::cos(theta) + q * q);
}

double delta_eps_torus_shifted(double theta, double eps) {
    return std::exp(eps) * delta_eps_torus(theta, eps);
}

double delta_eps_torus_partial(double theta, double eps, int mmax) {
    if (eps <= 0.0) throw std::invalid_argument("regulator eps must be positive");
    double sum = 1.0;
    for (int m = 1; m <= mmax; ++m)
        sum += 2.0 * std::cos(m * theta) * std::exp(-2.0 * eps * m);
    return sum;
}

double regularized_delta0_torus() {
    /* zero mode of the half-shifted sum -> 1 as eps -> 0; the m >= 1 tail
       sum e^{-2 eps (m - 1/2)} is assigned its zeta value at eps = 0 */
    const double zero_mode = 1.0;
    const double tail = 2.0 * hurwitz_zeta(0.0, 0.5);
    return zero_mode + tail;
}

double regularized_delta0_sphere(int) { return 1.0; }

SphereKernel::SphereKernel(double eps_, int m_, int lmax_) : eps(eps_), m(m_), lmax(lmax_) {
    if (eps < 0.0) throw std::invalid_argument("regulator eps must be non-negative");
    if (lmax < std::abs(m)) throw std::invalid_argument("kernel truncation below |m|");
}

double SphereKernel::eval(double u, double v) const {
    double sum = 0.0;
    for (int l = std::abs(m); l <= lmax; ++l)
        sum += std::exp(-2.0 * eps * (l + 0.5)) * assoc_q(l, m, u) * assoc_q(l, m, v);
    return sum;
}

}  // namespace kmsurf
