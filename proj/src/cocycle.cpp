#include "kmsurf/cocycle.hpp"

#include <fmt/format.h>

#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kmsurf {

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

/* dense bitset over window points */
struct Bits {
    std::vector<uint64_t> w;
    explicit Bits(long long n = 0) : w((n + 63) / 64, 0) {}
    void set(long long i, int v) { w[i >> 6] |= (uint64_t(v & 1) << (i & 63)); }
    int get(long long i) const { return (w[i >> 6] >> (i & 63)) & 1; }
};

/* bit alpha of result = bit (alpha + d) of src; out-of-range bits read 0 */
Bits shifted(const Bits& src, long long d, long long n) {
    Bits r(n);
    const long long nw = static_cast<long long>(src.w.size());
    if (d >= 0) {
        const long long wo = d >> 6;
        const int bo = d & 63;
        for (long long i = 0; i < nw; ++i) {
            uint64_t lo = (i + wo < nw) ? src.w[i + wo] : 0;
            uint64_t hi = (i + wo + 1 < nw) ? src.w[i + wo + 1] : 0;
            r.w[i] = bo ? ((lo >> bo) | (hi << (64 - bo))) : lo;
        }
    } else {
        const long long s = -d;
        const long long wo = s >> 6;
        const int bo = s & 63;
        for (long long i = 0; i < nw; ++i) {
            uint64_t hi = (i - wo >= 0) ? src.w[i - wo] : 0;
            uint64_t lo = (i - wo - 1 >= 0) ? src.w[i - wo - 1] : 0;
            r.w[i] = bo ? ((hi << bo) | (lo >> (64 - bo))) : hi;
        }
    }
    return r;
}

}  // namespace

bool CocycleTable::in_window(const IVec& a) const {
    for (long long c : a)
        if (c < -bound || c > bound) return false;
    return true;
}

long long CocycleTable::index_of(const IVec& a) const {
    if (!in_window(a)) return -1;
    long long idx = 0;
    const long long radix = 2 * bound + 1;
    for (int i = 0; i < rank; ++i) idx = idx * radix + (a[i] + bound);
    return idx;
}

IVec CocycleTable::point_at(long long idx) const {
    IVec a(rank);
    const long long radix = 2 * bound + 1;
    for (int i = rank - 1; i >= 0; --i) {
        a[i] = idx % radix - bound;
        idx /= radix;
    }
    return a;
}

int CocycleTable::bilinear_bit(const IVec& a, const IVec& b) const {
    long long s = 0;
    for (int i = 0; i < rank; ++i) {
        long long row = 0;
        for (int j = 0; j < rank; ++j) row += bmat[i][j] * b[j];
        s += a[i] * row;
    }
    return static_cast<int>(s & 1);
}

int CocycleTable::epsilon(const IVec& a, const IVec& b) const {
    long long ia = index_of(a), ib = index_of(b);
    if (ia < 0 || ib < 0) throw std::domain_error("cocycle query outside lattice window");
    int bit = bilinear_bit(a, b);
    if (gauged) {
        IVec s(rank);
        for (int i = 0; i < rank; ++i) s[i] = a[i] + b[i];
        long long is = index_of(s);
        if (is < 0) throw std::domain_error("cocycle query: sum outside gauged window");
        bit ^= eta_bits[ia] ^ eta_bits[ib] ^ eta_bits[is];
    }
    return bit ? -1 : 1;
}

int CocycleTable::eta(const IVec& a) const {
    long long ia = index_of(a);
    if (ia < 0) throw std::domain_error("eta query outside lattice window");
    if (!gauged) return 1;
    return eta_bits[ia] ? -1 : 1;
}

CocycleTable make_cocycle_table(const SimplyLacedAlgebra& g, int bound) {
    if (bound < 1) throw std::invalid_argument("cocycle window bound must be >= 1");
    CocycleTable t;
    t.alg = &g;
    t.rank = g.rank;
    t.bound = bound;
    t.npoints = ipow(2 * bound + 1, g.rank);
    t.bmat.assign(g.rank, IVec(g.rank, 0));
    for (int i = 0; i < g.rank; ++i) {
        t.bmat[i][i] = 1;
        for (int j = 0; j < i; ++j) t.bmat[i][j] = g.cartan[i][j];
    }
    return t;
}

void gauge_fix(CocycleTable& t) {
    t.eta_bits.assign(t.npoints, 0);
    /* eps'(a,-a) = eta_a eta_{-a} eps(a,-a) with eta_0 = 1: pick eta = +1 on
       the lexicographically positive representative of each +/- orbit and
       put the whole correction on the negative.  Negation is index reversal
       in the odd-radix window. */
    for (long long i = 0; i < t.npoints / 2; ++i) {
        long long ni = t.npoints - 1 - i;
        IVec a = t.point_at(ni); /* second half holds the lex-positive points */
        IVec na = t.point_at(i);
        t.eta_bits[ni] = 0;
        t.eta_bits[i] = static_cast<uint8_t>(t.bilinear_bit(a, na) & 1);
    }
    t.eta_bits[t.npoints / 2] = 0; /* center = origin */
    t.gauged = true;
    for (long long i = 0; i < t.npoints; ++i) {
        IVec a = t.point_at(i);
        IVec na(t.rank);
        for (int k = 0; k < t.rank; ++k) na[k] = -a[k];
        if (t.epsilon(a, na) != 1)
            throw std::runtime_error(
                fmt::format("gauge fixing failed: eps(a,-a) != 1 at window point {}", i));
    }
}

CocycleCheck check_cocycle_identities(const CocycleTable& t, ExecPolicy policy) {
    CocycleCheck res;
    const long long n = t.npoints;
    if (n > 20000)
        throw std::invalid_argument("identity scan window too large (needs O(n^2) bit storage)");
    const long long nw = (n + 63) / 64;
    const long long d0 = t.index_of(IVec(t.rank, 0));

    /* per-column data: bit(alpha, b) over alpha, validity mask (alpha+b in
       window), index offset, and the mod-2 pairing parity of alpha.b */
    std::vector<Bits> col(n, Bits(0)), mask(n, Bits(0)), pairp(n, Bits(0));
    std::vector<long long> doff(n);
    std::vector<IVec> pts(n);
    for (long long i = 0; i < n; ++i) pts[i] = t.point_at(i);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (policy == ExecPolicy::Parallel)
#endif
    for (long long b = 0; b < n; ++b) {
        Bits c(n), m(n), p(n);
        const IVec& vb = pts[b];
        IVec bb(t.rank, 0); /* B vb and C vb for fast row evaluation */
        IVec cb(t.rank, 0);
        for (int i = 0; i < t.rank; ++i)
            for (int j = 0; j < t.rank; ++j) {
                bb[i] += t.bmat[i][j] * vb[j];
                cb[i] += t.alg->cartan[i][j] * vb[j];
            }
        for (long long a = 0; a < n; ++a) {
            const IVec& va = pts[a];
            long long sb = 0, sp = 0;
            bool inw = true;
            for (int i = 0; i < t.rank; ++i) {
                sb += va[i] * bb[i];
                sp += va[i] * cb[i];
                long long s = va[i] + vb[i];
                inw = inw && (s >= -t.bound && s <= t.bound);
            }
            int bit = static_cast<int>(sb & 1);
            if (t.gauged) {
                if (inw) {
                    long long sidx = a + (b - d0); /* no digit overflow inside window */
                    bit ^= t.eta_bits[a] ^ t.eta_bits[b] ^ t.eta_bits[sidx];
                } else {
                    bit = 0; /* masked out below */
                }
            }
            c.set(a, bit);
            m.set(a, inw ? 1 : 0);
            p.set(a, static_cast<int>(sp & 1));
        }
        col[b] = std::move(c);
        mask[b] = std::move(m);
        pairp[b] = std::move(p);
        doff[b] = b - d0;
    }

    std::string violated;
    long long pairs = 0, triples = 0;

    /* two-term identities, direct pair loops */
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : pairs) if (policy == ExecPolicy::Parallel)
#endif
    for (long long b = 0; b < n; ++b) {
        std::string bad;
        const IVec& vb = pts[b];
        IVec nvb(t.rank);
        for (int k = 0; k < t.rank; ++k) nvb[k] = -vb[k];
        const long long nb = n - 1 - b;
        for (long long a = 0; a < n; ++a) {
            if (t.gauged && !mask[b].get(a)) continue;
            ++pairs;
            const long long na = n - 1 - a;
            /* eps(a,b)eps(b,a) = (-1)^{a.b} (norms are even) */
            int lhs = col[b].get(a) ^ col[a].get(b);
            if (lhs != pairp[b].get(a)) {
                bad = fmt::format("eps(a,b)eps(b,a) != (-1)^(a.b) at ({},{})", a, b);
                break;
            }
            if (t.gauged) {
                /* eps(a,b) = eps(-b,-a) */
                if (col[b].get(a) != col[na].get(nb)) {
                    bad = fmt::format("eps(a,b) != eps(-b,-a) at ({},{})", a, b);
                    break;
                }
                /* eps(a,b) = eps(-a,a+b) */
                long long sidx = a + doff[b];
                if (col[b].get(a) != col[sidx].get(na)) {
                    bad = fmt::format("eps(a,b) != eps(-a,a+b) at ({},{})", a, b);
                    break;
                }
            }
        }
        if (!bad.empty()) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (violated.empty()) violated = bad;
        }
    }

    if (t.gauged && violated.empty()) {
        const long long z = d0;
        for (long long a = 0; a < n && violated.empty(); ++a) {
            if (col[a].get(z) != 0) violated = fmt::format("eps(0,a) != 1 at a={}", a);
            else if (col[z].get(a) != 0) violated = fmt::format("eps(a,0) != 1 at a={}", a);
            else if (col[n - 1 - a].get(a) != 0) violated = fmt::format("eps(a,-a) != 1 at a={}", a);
        }
    }

    if (!t.gauged && violated.empty()) {
        /* bimultiplicativity, vectorised: col_{b+b'} = col_b ^ col_{b'} and the
           shifted first-argument version */
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (policy == ExecPolicy::Parallel)
#endif
        for (long long b = 0; b < n; ++b) {
            std::string bad;
            for (long long b2 = 0; b2 < n && bad.empty(); ++b2) {
                if (!mask[b2].get(b)) continue; /* b+b2 outside window */
                long long sidx = b + doff[b2];
                for (long long w = 0; w < nw; ++w)
                    if (col[sidx].w[w] != (col[b].w[w] ^ col[b2].w[w])) {
                        bad = fmt::format("eps(a,b+b') != eps(a,b)eps(a,b') at columns ({},{})", b, b2);
                        break;
                    }
                /* eps(a+b',b) = eps(a,b)eps(b',b) on valid alpha */
                Bits sh = shifted(col[b], doff[b2], n);
                uint64_t broadcast = col[b].get(b2) ? ~0ull : 0ull;
                for (long long w = 0; w < nw; ++w) {
                    uint64_t diff = (sh.w[w] ^ col[b].w[w] ^ broadcast) & mask[b2].w[w];
                    if (diff) {
                        bad = fmt::format("eps(a+a',b) != eps(a,b)eps(a',b) at columns ({},{})", b, b2);
                        break;
                    }
                }
            }
            if (!bad.empty()) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (violated.empty()) violated = bad;
            }
        }
    }

    if (violated.empty()) {
        /* cocycle identity eps(a,b)eps(a+b,c) = eps(a,b+c)eps(b,c), exhaustive
           over window triples with all partial sums in window */
        long long tripcount = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : tripcount) if (policy == ExecPolicy::Parallel)
#endif
        for (long long b = 0; b < n; ++b) {
            std::string bad;
            for (long long c = 0; c < n && bad.empty(); ++c) {
                if (!mask[c].get(b)) continue; /* b+c outside window */
                long long bc = b + doff[c];
                uint64_t broadcast = col[c].get(b) ? ~0ull : 0ull;
                Bits sh = shifted(col[c], doff[b], n);
                for (long long w = 0; w < nw; ++w) {
                    uint64_t elig = mask[b].w[w] & mask[bc].w[w];
                    uint64_t diff = (col[b].w[w] ^ sh.w[w] ^ col[bc].w[w] ^ broadcast) & elig;
                    tripcount += __builtin_popcountll(elig);
                    if (diff) {
                        long long a = w * 64 + __builtin_ctzll(diff);
                        bad = fmt::format("cocycle identity fails at triple ({},{},{})", a, b, c);
                        break;
                    }
                }
            }
            if (!bad.empty()) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (violated.empty()) violated = bad;
            }
        }
        triples = tripcount;
    }

    res.ok = violated.empty();
    res.violated = violated;
    res.pairs_checked = pairs;
    res.triples_checked = triples;
    return res;
}

void write_cocycle_csv(const CocycleTable& t, std::ostream& os) {
    for (int i = 0; i < t.rank; ++i) os << fmt::format("alpha_{},", i + 1);
    for (int i = 0; i < t.rank; ++i) os << fmt::format("beta_{},", i + 1);
    os << "sign\n";
    for (long long a = 0; a < t.npoints; ++a) {
        IVec va = t.point_at(a);
        for (long long b = 0; b < t.npoints; ++b) {
            IVec vb = t.point_at(b);
            if (t.gauged) {
                IVec s(t.rank);
                bool inw = true;
                for (int k = 0; k < t.rank; ++k) {
                    s[k] = va[k] + vb[k];
                    inw = inw && (s[k] >= -t.bound && s[k] <= t.bound);
                }
                if (!inw) continue;
            }
            for (long long c : va) os << c << ',';
            for (long long c : vb) os << c << ',';
            os << t.epsilon(va, vb) << '\n';
        }
    }
}

}  // namespace kmsurf
