#pragma once

#include <complex>

namespace kmsurf {

/* Hurwitz zeta via Euler-Maclaurin continuation; exact (to rounding) at
 * non-positive integer s where the correction series terminates. */
double hurwitz_zeta(double s, double a);
double riemann_zeta(double s);

/* Circle kernel sum_m e^{-im theta} e^{-2 eps |m|} in closed (Poisson) form;
 * at theta = 0 this equals coth(eps). */
double delta_eps_torus(double theta, double eps);
/* Half-shifted damping e^{-2 eps (|m| - 1/2)}: the same kernel scaled by
 * e^{eps}, whose zero mode carries weight e^{eps}. */
double delta_eps_torus_shifted(double theta, double eps);
/* Partial sum over |m| <= M, for cross-checking the closed forms. */
double delta_eps_torus_partial(double theta, double eps, int mmax);

/* Coincident-value assignments of the zeta prescription.  On the circle the
 * half-shifted sum splits into the zero mode (-> 1) and a tail assigned
 * 2 zeta_H(0, 1/2) = 0; computed from those pieces, not hard-coded. */
double regularized_delta0_torus();
/* On the sphere each basis mode integrates to 1 against the half measure;
 * the regulated coincident value is fixed to one mode's worth for every
 * order m.  Operational rule; see the quadrature cross-check in the tests. */
double regularized_delta0_sphere(int m);

/* Damped order-m kernel on [-1,1]: sum over l >= |m| up to lmax of
 * e^{-2 eps (l + 1/2)} Q_{l,m}(u) Q_{l,m}(v).  At eps = 0 this is the
 * truncated reproducing kernel of the order-m basis. */
struct SphereKernel {
    double eps;
    int m;
    int lmax;
    SphereKernel(double eps, int m, int lmax);
    double eval(double u, double v) const;
};

}  // namespace kmsurf
