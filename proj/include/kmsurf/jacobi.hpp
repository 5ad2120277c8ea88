#pragma once

#include "kmsurf/exec.hpp"
#include "kmsurf/report.hpp"
#include "kmsurf/table.hpp"

namespace kmsurf {

/* Jacobi identity sweeps over the abstract structure constants, including the
 * central terms (the central element commutes with everything).  The torus
 * sweep is exact rational arithmetic with unbounded indices (modulus 0) over
 * |z-mode| <= mrange, |circle mode| <= prange; any non-vanishing triple is a
 * violation.  The sphere sweep accumulates in floating point over degrees
 * <= lmax and bounds the largest surviving coefficient. */
Report check_torus_jacobi(const SimplyLacedAlgebra& g, int mrange, int prange,
                          ExecPolicy policy = ExecPolicy::Parallel);
Report check_sphere_jacobi(const SimplyLacedAlgebra& g, int lmax, double tol,
                           ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace kmsurf
