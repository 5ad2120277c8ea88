#pragma once

#include <map>
#include <vector>

#include "kmsurf/algebra.hpp"
#include "kmsurf/cocycle.hpp"
#include "kmsurf/matrix.hpp"

namespace kmsurf {

/* Truncated charged Fock space: oscillator occupancies of total level <= L
 * over rank colours, tensored with root-lattice momenta in a coordinate box.
 * States are orthonormal; the oscillator normalisation is
 *   a^i_{-m}|n> = sqrt(m(n+1))|n+1>,  a^i_m|n> = sqrt(m n)|n-1>,  m >= 1
 * so [a^i_m, a^j_n] = m delta^{ij} delta_{m+n}. */
struct FockBasis {
    const SimplyLacedAlgebra* alg = nullptr;
    int level_max = 0;
    int mom_bound = 0;

    /* occupancy slot = colour * level_max + (mode - 1); sorted by (level, lex) */
    std::vector<std::vector<uint8_t>> occs;
    std::vector<int> occ_level;
    std::map<std::vector<uint8_t>, long long> occ_index;
    std::vector<IVec> moms; /* lex order over the box, mixed-radix indexable */
    long long n_occ = 0, n_mom = 0, dim = 0;

    static FockBasis build(const SimplyLacedAlgebra& g, int level_max, int mom_bound);

    long long mom_index(const IVec& m) const; /* -1 outside the box */
    long long index(long long mi, long long oi) const { return mi * n_occ + oi; }
    long long vacuum() const;
    int level_of(long long state) const { return occ_level[state % n_occ]; }
    const IVec& mom_of(long long state) const { return moms[state / n_occ]; }
};

/* single oscillator a^colour_m on the occupancy factor (momentum ignored);
 * m < 0 creates, m > 0 annihilates; creator columns that would exceed the
 * level cutoff are unsafe */
OperatorMatrix occ_oscillator(const FockBasis& b, int colour, int m);

/* alpha . a_m = sum_i (R alpha)_i a^i_m on the occupancy factor */
OperatorMatrix occ_alpha_osc(const FockBasis& b, const IVec& alpha, int m);

/* block-diagonal lift of an occupancy-space operator to the full space */
OperatorMatrix lift(const FockBasis& b, const OperatorMatrix& occ_op);

/* diagonal alpha . p (integer eigenvalues alpha . lambda) */
OperatorMatrix alpha_momentum_diag(const FockBasis& b, const IVec& alpha);

/* diagonal p^colour in the orthonormal frame */
OperatorMatrix momentum_component_diag(const FockBasis& b, int colour);

/* |lambda> -> eps(alpha, lambda) |lambda + alpha>; columns pushed out of the
 * momentum box are unsafe */
OperatorMatrix shift_op(const FockBasis& b, const CocycleTable& eps, const IVec& alpha);

}  // namespace kmsurf
