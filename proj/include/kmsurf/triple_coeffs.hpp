#pragma once

#include <utility>
#include <vector>

namespace kmsurf {

/* Product linearisation for the orthonormalised Legendre basis:
 *   Q_{l1,m1} Q_{l2,m2} = sum_{l3} c(l1,m1,l2,m2; l3) Q_{l3,m1+m2}
 * with l3 running from |m1+m2| to l1+l2.  Values are cached process-wide;
 * lookups are thread safe. */
double triple_coeff(int l1, int m1, int l2, int m2, int l3);

/* all (l3, c) with c != 0 up to drop_tol */
std::vector<std::pair<int, double>> expand_product(int l1, int m1, int l2, int m2,
                                                   double drop_tol = 1e-14);

}  // namespace kmsurf
