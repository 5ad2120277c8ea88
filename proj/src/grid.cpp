#include "kmsurf/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "kmsurf/legendre.hpp"

namespace kmsurf {

NodeGrid make_torus_grid(int nsites) {
    if (nsites < 1) throw std::invalid_argument("torus grid needs >= 1 node");
    NodeGrid g;
    g.surface = NodeGrid::Surface::Torus;
    g.nnodes = nsites;
    g.coord.resize(nsites);
    g.weight.assign(nsites, 1.0 / nsites);
    const double step = 2.0 * M_PI / nsites;
    for (int k = 0; k < nsites; ++k) g.coord[k] = step * k;
    return g;
}

NodeGrid make_sphere_grid(int nnodes) {
    if (nnodes < 1) throw std::invalid_argument("sphere grid needs >= 1 node");
    NodeGrid g;
    g.surface = NodeGrid::Surface::Sphere;
    g.nnodes = nnodes;
    const auto gl = gauss_legendre(nnodes);
    g.coord = gl.x;
    g.weight.resize(nnodes);
    for (int k = 0; k < nnodes; ++k) g.weight[k] = 0.5 * gl.w[k];
    return g;
}

std::vector<std::complex<double>> NodeGrid::mode_values(const Symbol& s) const {
    std::vector<std::complex<double>> v(nnodes);
    if (surface == Surface::Torus) {
        for (int k = 0; k < nnodes; ++k) {
            const double ph = s.b * coord[k];
            v[k] = {std::cos(ph), std::sin(ph)};
        }
    } else {
        for (int k = 0; k < nnodes; ++k) v[k] = assoc_q(s.a, s.b, coord[k]);
    }
    return v;
}

}  // namespace kmsurf
