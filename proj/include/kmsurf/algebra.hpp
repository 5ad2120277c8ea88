#pragma once
/* Simply laced root systems (A, D, E) with roots normalised to alpha.alpha = 2.
 *
 * The simple roots are the unit vectors of the coordinate basis and the
 * bilinear form is the Cartan matrix, which for this normalisation equals the
 * Gram matrix of the simple roots.  Every root then has integer coordinates,
 * including the E series where no small integer ambient embedding exists.
 * Weight-lattice points have rational coordinates over the same basis; their
 * integer fundamental-weight coordinates convert through the inverse Cartan
 * matrix, kept exact as rationals.
 */

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace kmsurf {

using Rat = boost::rational<long long>;
using IVec = std::vector<long long>;

enum class Series { A, D, E };

struct SimplyLacedAlgebra {
    Series series;
    int rank = 0;
    std::string name;

    std::vector<IVec> cartan;              // rank x rank, integer
    std::vector<std::vector<Rat>> cartan_inv;
    std::vector<IVec> roots;               // all roots, lexicographically sorted
    std::vector<std::vector<double>> chol; // upper triangular R with R^T R = C
    int root_coord_bound = 0;              // max |coordinate| over all roots

    /* inner product of two root-lattice points (integer) */
    long long pair_rr(const IVec& a, const IVec& b) const;
    /* coordinates of a root-lattice point in an orthonormal frame of the
       Cartan subalgebra (columns of the Cholesky factor) */
    std::vector<double> ortho(const IVec& a) const;
    bool is_root(const IVec& a) const;
    int n_roots() const { return static_cast<int>(roots.size()); }
};

SimplyLacedAlgebra make_algebra(Series s, int rank);
SimplyLacedAlgebra make_algebra(const std::string& name);

/* A point of the root or weight lattice: exact rational coordinates over the
   simple-root basis. */
struct LatticeVector {
    std::vector<Rat> coords;

    static LatticeVector zero(int rank);
    static LatticeVector from_root_coords(const IVec& a);
    /* integer coordinates over the fundamental-weight basis */
    static LatticeVector from_weight_coords(const SimplyLacedAlgebra& g, const IVec& w);

    std::vector<Rat> weight_coords(const SimplyLacedAlgebra& g) const; // C * coords
    bool in_root_lattice() const;
    bool is_zero() const;
};

Rat inner(const SimplyLacedAlgebra& g, const LatticeVector& x, const LatticeVector& y);
/* root . lattice point; integer for weight-lattice points by construction */
Rat pair_root(const SimplyLacedAlgebra& g, const IVec& alpha, const LatticeVector& lam);
std::vector<double> ortho(const SimplyLacedAlgebra& g, const LatticeVector& x);

}  // namespace kmsurf
