#pragma once

#include <string>

#include "kmsurf/exec.hpp"
#include "kmsurf/report.hpp"

namespace kmsurf {

/* Flat run configuration shared by all subcommands; each run uses the subset
 * it needs and echoes it into the report metadata. */
struct RunConfig {
    std::string algebra = "A1";
    int level_max = 3;   /* oscillator level cutoff */
    int mrange = 2;      /* z-mode range */
    int nsites = 3;      /* circle node count */
    int lmax = 3;        /* Legendre degree cutoff */
    int grid_nodes = 0;  /* sphere quadrature nodes, 0 picks 2*lmax + 2 */
    int mom_bound = 2;   /* momentum window bound */
    int window = 3;      /* sign-table window bound */
    int prange = 2;      /* circle-mode range for the exact Jacobi sweep */
    double tol = 1e-10;         /* node-local tolerance, circle nodes */
    double tol_sphere = 1e-8;   /* node-local tolerance, Legendre nodes */
    double tol_central = 1e-10; /* central terms and weighted reductions */
    bool parallel = true;
    bool timestamp = true;
    std::string surface = "torus"; /* jacobi sweep target: torus|sphere|both */

    ExecPolicy policy() const { return parallel ? ExecPolicy::Parallel : ExecPolicy::Serial; }
};

Report run_verify_cocycle(const RunConfig& rc);
Report run_verify_site(const RunConfig& rc);
Report run_verify_torus(const RunConfig& rc);
Report run_verify_sphere(const RunConfig& rc);
Report run_verify_regularization(const RunConfig& rc);
Report run_jacobi(const RunConfig& rc);

/* basis-product linearisation coefficients, all degrees <= lmax,
 * rows (l1,m1,l2,m2,l3,m3,value) */
std::string coeffs_csv(int lmax);
std::string coeffs_json(int lmax, bool timestamp);
std::string coeffs_table(int lmax);

}  // namespace kmsurf
