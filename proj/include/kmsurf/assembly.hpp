#pragma once

#include "kmsurf/grid.hpp"
#include "kmsurf/report.hpp"
#include "kmsurf/site.hpp"
#include "kmsurf/table.hpp"

namespace kmsurf {

/* Verify the double-index algebra in the node-diagonal model: a generator
 * with surface label s acts on Fock x nodes as (mode values of s at node k)
 * times the single-circle mode matrix, block diagonal over nodes.  For every
 * generator pair the commutator minus the tabulated right-hand side must be
 * a multiple gamma_k of the identity at each node (exactly, on safe columns);
 * gamma_k is measured, compared with the tabulated central coefficient times
 * the product of mode values, and its weighted node sum must reproduce the
 * reduced (continuum) central term.
 *
 * tol bounds the node-local residuals, tol_central the measured-vs-expected
 * central comparisons including the weighted reduction. */
Report verify_torus_algebra(Site& site, int nsites, int mrange, double tol, double tol_central);
/* nnodes = 0 picks 2*lmax + 2; fewer than lmax + 1 nodes cannot integrate the
 * degree-2*lmax reductions exactly and is rejected */
Report verify_sphere_algebra(Site& site, int lmax, double tol, double tol_central,
                             int nnodes = 0);

}  // namespace kmsurf
