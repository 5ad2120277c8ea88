#pragma once
/* Bimultiplicative 2-cocycle sign function on a finite root-lattice window,
 * plus the diagonal gauge that enforces the inversion identities
 * eps(alpha,-alpha) = 1, eps(alpha,beta) = eps(-beta,-alpha) = eps(-alpha,alpha+beta).
 *
 * eps(alpha,beta) = (-1)^{B(alpha,beta)} with B(alpha_i,alpha_j) = alpha_i.alpha_j
 * for i > j, B(alpha_i,alpha_i) = 1, 0 for i < j.  Gauging multiplies by
 * eta(alpha) eta(beta) eta(alpha+beta); the two-term identities are gauge
 * invariant, the inversion identities fix eta up to sign choices on +/- orbits.
 */

#include "kmsurf/algebra.hpp"
#include "kmsurf/exec.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace kmsurf {

struct CocycleTable {
    const SimplyLacedAlgebra* alg = nullptr;
    int rank = 0;
    int bound = 0;         // window: all integer vectors with |a_i| <= bound
    long long npoints = 0; // (2*bound+1)^rank
    std::vector<IVec> bmat;
    bool gauged = false;
    std::vector<uint8_t> eta_bits; // log_{-1} eta per window point, gauged only

    bool in_window(const IVec& a) const;
    long long index_of(const IVec& a) const; // -1 if outside
    IVec point_at(long long idx) const;

    /* parity of the bilinear form a^T B b (before gauge) */
    int bilinear_bit(const IVec& a, const IVec& b) const;
    /* sign in {+1,-1}; requires a, b in window, and a+b in window once gauged */
    int epsilon(const IVec& a, const IVec& b) const;
    int eta(const IVec& a) const; // +1/-1, identity before gauging
};

CocycleTable make_cocycle_table(const SimplyLacedAlgebra& g, int bound);

/* Solve for eta on the window (eta_0 = 1, free signs pinned deterministically).
   Throws std::runtime_error naming the violated condition if none exists. */
void gauge_fix(CocycleTable& t);

struct CocycleCheck {
    bool ok = true;
    std::string violated;       // description of first failing identity
    long long pairs_checked = 0;
    long long triples_checked = 0;
};

/* Exhaustive window scans.  The two-term set covers
   eps(a,b)eps(b,a) = (-1)^{a.b + (a.a)(b.b)} and the cocycle identity
   eps(a,b)eps(a+b,c) = eps(a,b+c)eps(b,c); the gauged set adds
   eps(0,a) = eps(a,0) = eps(a,-a) = 1, eps(a,b) = eps(-b,-a) = eps(-a,a+b),
   plus bimultiplicativity for ungauged tables. */
CocycleCheck check_cocycle_identities(const CocycleTable& t, ExecPolicy policy = ExecPolicy::Parallel);

void write_cocycle_csv(const CocycleTable& t, std::ostream& os);

}  // namespace kmsurf
