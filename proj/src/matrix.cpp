#include "kmsurf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kmsurf {

OperatorMatrix OperatorMatrix::zero(long long dim, bool all_safe) {
    OperatorMatrix m;
    m.dim = dim;
    m.cols.resize(dim);
    m.safe.assign(dim, all_safe ? 1 : 0);
    return m;
}

OperatorMatrix OperatorMatrix::identity(long long dim) {
    OperatorMatrix m = zero(dim);
    for (long long j = 0; j < dim; ++j) m.cols[j].push_back({j, Cplx(1.0, 0.0)});
    return m;
}

OperatorMatrix OperatorMatrix::diagonal(const std::vector<Cplx>& d) {
    OperatorMatrix m = zero(static_cast<long long>(d.size()));
    for (long long j = 0; j < m.dim; ++j)
        if (d[j] != Cplx(0.0, 0.0)) m.cols[j].push_back({j, d[j]});
    return m;
}

void OperatorMatrix::insert(long long row, long long col, Cplx v) {
    cols[col].push_back({row, v});
}

void OperatorMatrix::finalize() {
    for (auto& c : cols) {
        std::sort(c.begin(), c.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<std::pair<long long, Cplx>> merged;
        merged.reserve(c.size());
        for (const auto& e : c) {
            if (!merged.empty() && merged.back().first == e.first)
                merged.back().second += e.second;
            else
                merged.push_back(e);
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const auto& e) { return e.second == Cplx(0.0, 0.0); }),
                     merged.end());
        c = std::move(merged);
    }
}

Cplx OperatorMatrix::entry(long long row, long long col) const {
    const auto& c = cols[col];
    auto it = std::lower_bound(c.begin(), c.end(), row,
                               [](const auto& e, long long r) { return e.first < r; });
    if (it != c.end() && it->first == row) return it->second;
    return {0.0, 0.0};
}

long long OperatorMatrix::nnz() const {
    long long n = 0;
    for (const auto& c : cols) n += static_cast<long long>(c.size());
    return n;
}

long long OperatorMatrix::n_safe() const {
    long long n = 0;
    for (uint8_t s : safe) n += s;
    return n;
}

double OperatorMatrix::max_abs_on_safe() const {
    double m = 0.0;
    for (long long j = 0; j < dim; ++j) {
        if (!safe[j]) continue;
        for (const auto& e : cols[j]) m = std::max(m, std::abs(e.second));
    }
    return m;
}

OperatorMatrix& OperatorMatrix::operator*=(Cplx s) {
    for (auto& c : cols)
        for (auto& e : c) e.second *= s;
    return *this;
}

OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b, ExecPolicy policy) {
    if (a.dim != b.dim) throw std::invalid_argument("matrix dimension mismatch");
    const long long n = a.dim;
    OperatorMatrix c = OperatorMatrix::zero(n);

#ifdef _OPENMP
#pragma omp parallel if (policy == ExecPolicy::Parallel)
#endif
    {
        std::vector<Cplx> scratch(n, Cplx(0.0, 0.0));
        std::vector<long long> touched;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 8)
#endif
        for (long long j = 0; j < n; ++j) {
            bool ok = b.safe[j] != 0;
            touched.clear();
            for (const auto& [r, bv] : b.cols[j]) {
                ok = ok && a.safe[r];
                for (const auto& [r2, av] : a.cols[r]) {
                    if (scratch[r2] == Cplx(0.0, 0.0)) touched.push_back(r2);
                    scratch[r2] += av * bv;
                }
            }
            std::sort(touched.begin(), touched.end());
            auto& out = c.cols[j];
            out.reserve(touched.size());
            for (long long r : touched) {
                if (scratch[r] != Cplx(0.0, 0.0)) out.push_back({r, scratch[r]});
                scratch[r] = Cplx(0.0, 0.0);
            }
            c.safe[j] = ok ? 1 : 0;
        }
    }
    (void)policy;
    return c;
}

OperatorMatrix lincomb(const std::vector<std::pair<Cplx, const OperatorMatrix*>>& terms) {
    if (terms.empty()) throw std::invalid_argument("lincomb of nothing");
    const long long n = terms.front().second->dim;
    OperatorMatrix c = OperatorMatrix::zero(n);
    for (const auto& [coeff, m] : terms)
        if (m->dim != n) throw std::invalid_argument("matrix dimension mismatch");
    for (long long j = 0; j < n; ++j) {
        bool ok = true;
        for (const auto& [coeff, m] : terms) {
            ok = ok && m->safe[j];
            for (const auto& [r, v] : m->cols[j]) c.cols[j].push_back({r, coeff * v});
        }
        c.safe[j] = ok ? 1 : 0;
    }
    c.finalize();
    return c;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b, ExecPolicy policy) {
    OperatorMatrix ab = multiply(a, b, policy);
    OperatorMatrix ba = multiply(b, a, policy);
    return lincomb({{Cplx(1.0, 0.0), &ab}, {Cplx(-1.0, 0.0), &ba}});
}

double diff_max(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("matrix dimension mismatch");
    double m = 0.0;
    for (long long j = 0; j < a.dim; ++j) {
        if (!a.safe[j] || !b.safe[j]) continue;
        const auto& ca = a.cols[j];
        const auto& cb = b.cols[j];
        size_t ia = 0, ib = 0;
        while (ia < ca.size() || ib < cb.size()) {
            if (ib >= cb.size() || (ia < ca.size() && ca[ia].first < cb[ib].first))
                m = std::max(m, std::abs(ca[ia++].second));
            else if (ia >= ca.size() || cb[ib].first < ca[ia].first)
                m = std::max(m, std::abs(cb[ib++].second));
            else {
                m = std::max(m, std::abs(ca[ia].second - cb[ib].second));
                ++ia, ++ib;
            }
        }
    }
    return m;
}

double adjoint_residual(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("matrix dimension mismatch");
    /* rows of B over its safe columns, i.e. a sparse conjugate transpose */
    std::vector<std::vector<std::pair<long long, Cplx>>> badj(b.dim);
    for (long long t = 0; t < b.dim; ++t) {
        if (!b.safe[t]) continue;
        for (const auto& [s, v] : b.cols[t]) badj[s].push_back({t, std::conj(v)});
    }
    double m = 0.0;
    for (long long s = 0; s < a.dim; ++s) {
        if (!a.safe[s]) continue;
        const auto& ca = a.cols[s]; /* entries (t, A[t,s]), t ascending */
        const auto& cb = badj[s];   /* entries (t, conj(B[s,t])), t ascending */
        size_t ia = 0, ib = 0;
        while (ia < ca.size() || ib < cb.size()) {
            if (ia < ca.size() && !b.safe[ca[ia].first]) {
                ++ia;
                continue;
            }
            if (ib >= cb.size() || (ia < ca.size() && ca[ia].first < cb[ib].first))
                m = std::max(m, std::abs(ca[ia++].second));
            else if (ia >= ca.size() || cb[ib].first < ca[ia].first)
                m = std::max(m, std::abs(cb[ib++].second));
            else {
                m = std::max(m, std::abs(ca[ia].second - cb[ib].second));
                ++ia, ++ib;
            }
        }
    }
    return m;
}

}  // namespace kmsurf
