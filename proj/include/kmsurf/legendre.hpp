#pragma once

#include <vector>

#include "kmsurf/algebra.hpp"

namespace kmsurf {

struct GaussLegendre {
    std::vector<double> x; /* nodes in (-1,1), ascending */
    std::vector<double> w; /* weights, sum = 2 */
};

/* K-point rule, exact for polynomial integrands of degree <= 2K-1 */
GaussLegendre gauss_legendre(int K);

/* exact rational coefficients of the Legendre polynomial, ascending powers */
std::vector<Rat> legendre_coeffs(int ell);

double legendre_eval(int ell, double u);

/* Orthonormalised associated Legendre function without the Condon-Shortley
 * phase:
 *   Q_{l,m}(u) = sqrt((2l+1)(l-m)!/(l+m)!) (1-u^2)^{m/2} d^m P_l(u),  m >= 0
 *   Q_{l,-m}(u) = (-1)^m Q_{l,m}(u)
 * so that integral of Q_{l,m} Q_{l',m} over [-1,1] is 2 delta_{l,l'}. */
double assoc_q(int ell, int m, double u);

}  // namespace kmsurf
