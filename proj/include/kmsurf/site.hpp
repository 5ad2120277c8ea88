#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kmsurf/cocycle.hpp"
#include "kmsurf/fock.hpp"
#include "kmsurf/matrix.hpp"
#include "kmsurf/report.hpp"

namespace kmsurf {

struct SiteConfig {
    std::string algebra = "A1";
    int level_max = 3; /* oscillator level cutoff L */
    int mom_bound = 2; /* momentum box half-width in root coordinates */
    ExecPolicy policy = ExecPolicy::Parallel;
};

/* One copy of the level-1 lattice construction on a truncated space, with
 * cached mode matrices:
 *   heisenberg(mu, m) : mu . a_m  (mu . p at m = 0), mu in the root lattice
 *   vertex(alpha, m)  : coefficient of z^{-m} in the normal-ordered
 *                       exponential times shift times z^{alpha . p},
 *                       alpha a root (alpha^2 = 2)
 *   virasoro(m)       : sum_i (1/2) :a^i a^i: modes with a^i_0 = p^i
 * Mode matrices are exact on their safe columns. */
class Site {
  public:
    explicit Site(const SiteConfig& cfg);

    const SiteConfig& config() const { return cfg_; }
    const SimplyLacedAlgebra& algebra() const { return alg_; }
    const FockBasis& basis() const { return basis_; }
    const CocycleTable& cocycle() const { return cocycle_; }
    ExecPolicy policy() const { return cfg_.policy; }

    const OperatorMatrix& heisenberg(const IVec& mu, int m);
    const OperatorMatrix& vertex(const IVec& alpha, int m);
    const OperatorMatrix& virasoro(int m);

  private:
    const OperatorMatrix& osc_full(int colour, int m);
    /* degree components of the annihilator/creator exponentials for alpha,
       on the occupancy factor */
    const std::pair<std::vector<OperatorMatrix>, std::vector<OperatorMatrix>>& polys(
        const IVec& alpha);

    SiteConfig cfg_;
    SimplyLacedAlgebra alg_;
    FockBasis basis_;
    CocycleTable cocycle_;
    std::map<std::pair<IVec, int>, OperatorMatrix> heis_cache_;
    std::map<std::pair<IVec, int>, OperatorMatrix> vertex_cache_;
    std::map<std::pair<int, int>, OperatorMatrix> osc_cache_;
    std::map<int, OperatorMatrix> vir_cache_;
    std::map<IVec, std::pair<std::vector<OperatorMatrix>, std::vector<OperatorMatrix>>>
        poly_cache_;
};

/* Exhaustive single-site relation check: oscillator/momentum brackets, vertex
 * brackets by root pairing, mixing with the quadratic modes, adjointness, and
 * the pinned vacuum expectations.  Mode indices run over |m| <= mrange. */
Report verify_site_algebra(Site& site, int mrange, double tol);

}  // namespace kmsurf
