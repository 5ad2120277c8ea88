#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "kmsurf/exec.hpp"

namespace kmsurf {

using Cplx = std::complex<double>;

/* Sparse square matrix stored by column, acting on a truncated state space.
 * Truncation makes some columns of an operator unreliable: applying the
 * operator to that basis state would leave the retained space.  Each column
 * carries a safety flag; products and sums propagate the flags so that any
 * entry read from a safe column is exact, never silently truncated. */
struct OperatorMatrix {
    long long dim = 0;
    std::vector<std::vector<std::pair<long long, Cplx>>> cols;
    std::vector<uint8_t> safe;

    static OperatorMatrix zero(long long dim, bool all_safe = true);
    static OperatorMatrix identity(long long dim);
    static OperatorMatrix diagonal(const std::vector<Cplx>& d);

    /* build stage: entries may arrive unsorted and duplicated */
    void insert(long long row, long long col, Cplx v);
    /* sort columns, merge duplicates, drop exact zeros */
    void finalize();

    Cplx entry(long long row, long long col) const;
    long long nnz() const;
    long long n_safe() const;
    /* largest |entry| over safe columns */
    double max_abs_on_safe() const;

    OperatorMatrix& operator*=(Cplx s);
};

/* C = A B; column j of C is safe iff column j of B is safe and every state
 * reached by B from j lies in a safe column of A. */
OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b,
                        ExecPolicy policy = ExecPolicy::Parallel);

/* sum of coeff * matrix; safety is the conjunction per column */
OperatorMatrix lincomb(const std::vector<std::pair<Cplx, const OperatorMatrix*>>& terms);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b,
                          ExecPolicy policy = ExecPolicy::Parallel);

/* max |A - B| over columns safe in both */
double diff_max(const OperatorMatrix& a, const OperatorMatrix& b);

/* max |conj(A[t,s]) - B[s,t]| over s safe in A, t safe in B; zero iff B
 * represents the adjoint of A on the trustworthy block */
double adjoint_residual(const OperatorMatrix& a, const OperatorMatrix& b);

}  // namespace kmsurf
