#pragma once

#include <complex>
#include <vector>

#include "kmsurf/table.hpp"

namespace kmsurf {

/* Collocation nodes for the second surface direction.  The torus grid holds
 * N equally spaced angles with reduction weight 1/N; the sphere grid holds
 * Gauss-Legendre nodes on [-1,1] with reduction weight w_k/2, so that
 * weighted node sums reproduce the continuum pairings exactly for polynomial
 * integrands within the quadrature degree. */
struct NodeGrid {
    enum class Surface { Torus, Sphere };
    Surface surface;
    int nnodes = 0;
    std::vector<double> coord;  /* angle phi_k or u_k */
    std::vector<double> weight; /* reduction weight per node */

    /* per-node value of the mode function attached to a symbol: e^{i b phi}
       on the torus, Q_{a,b}(u) on the sphere */
    std::vector<std::complex<double>> mode_values(const Symbol& s) const;
};

NodeGrid make_torus_grid(int nsites);
NodeGrid make_sphere_grid(int nnodes);

}  // namespace kmsurf
