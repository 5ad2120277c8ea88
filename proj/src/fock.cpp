#include "kmsurf/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace kmsurf {

FockBasis FockBasis::build(const SimplyLacedAlgebra& g, int level_max, int mom_bound) {
    if (level_max < 0 || mom_bound < 0) throw std::invalid_argument("negative truncation");
    if (level_max > 250) throw std::invalid_argument("level cutoff too large for occupancy bytes");
    FockBasis b;
    b.alg = &g;
    b.level_max = level_max;
    b.mom_bound = mom_bound;

    const int nslots = g.rank * level_max;
    std::vector<uint8_t> cur(nslots, 0);
    std::function<void(int, int)> rec = [&](int slot, int budget) {
        if (slot == nslots) {
            b.occs.push_back(cur);
            return;
        }
        const int mode = slot % level_max + 1;
        for (int c = 0; c * mode <= budget; ++c) {
            cur[slot] = static_cast<uint8_t>(c);
            rec(slot + 1, budget - c * mode);
        }
        cur[slot] = 0;
    };
    if (nslots == 0)
        b.occs.push_back({});
    else
        rec(0, level_max);

    auto level = [&](const std::vector<uint8_t>& o) {
        int l = 0;
        for (int s = 0; s < nslots; ++s) l += o[s] * (s % level_max + 1);
        return l;
    };
    std::sort(b.occs.begin(), b.occs.end(), [&](const auto& x, const auto& y) {
        int lx = level(x), ly = level(y);
        return lx != ly ? lx < ly : x < y;
    });
    b.n_occ = static_cast<long long>(b.occs.size());
    b.occ_level.resize(b.n_occ);
    for (long long i = 0; i < b.n_occ; ++i) {
        b.occ_level[i] = level(b.occs[i]);
        b.occ_index[b.occs[i]] = i;
    }

    const long long radix = 2 * mom_bound + 1;
    long long nm = 1;
    for (int i = 0; i < g.rank; ++i) nm *= radix;
    b.n_mom = nm;
    b.moms.reserve(nm);
    for (long long idx = 0; idx < nm; ++idx) {
        IVec m(g.rank);
        long long t = idx;
        for (int i = g.rank - 1; i >= 0; --i) {
            m[i] = t % radix - mom_bound;
            t /= radix;
        }
        b.moms.push_back(std::move(m));
    }
    b.dim = b.n_mom * b.n_occ;
    if (b.dim > 2000000) throw std::invalid_argument("truncated space too large");
    return b;
}

long long FockBasis::mom_index(const IVec& m) const {
    long long idx = 0;
    const long long radix = 2 * mom_bound + 1;
    for (int i = 0; i < alg->rank; ++i) {
        if (m[i] < -mom_bound || m[i] > mom_bound) return -1;
        idx = idx * radix + (m[i] + mom_bound);
    }
    return idx;
}

long long FockBasis::vacuum() const {
    return index(mom_index(IVec(alg->rank, 0)), 0);
}

OperatorMatrix occ_oscillator(const FockBasis& b, int colour, int m) {
    if (m == 0) throw std::invalid_argument("oscillator mode must be nonzero");
    OperatorMatrix op = OperatorMatrix::zero(b.n_occ);
    const int L = b.level_max;
    for (long long j = 0; j < b.n_occ; ++j) {
        if (m < 0) {
            const int n = -m;
            if (b.occ_level[j] + n > L) {
                op.safe[j] = 0; /* includes modes beyond the cutoff: n > L */
                continue;
            }
            std::vector<uint8_t> o = b.occs[j];
            const int slot = colour * L + (n - 1);
            const int cnt = o[slot];
            o[slot] = static_cast<uint8_t>(cnt + 1);
            op.insert(b.occ_index.at(o), j, std::sqrt(double(n) * (cnt + 1)));
        } else {
            if (m > L) continue; /* annihilates everything in the basis */
            const int slot = colour * L + (m - 1);
            const int cnt = b.occs[j][slot];
            if (cnt == 0) continue;
            std::vector<uint8_t> o = b.occs[j];
            o[slot] = static_cast<uint8_t>(cnt - 1);
            op.insert(b.occ_index.at(o), j, std::sqrt(double(m) * cnt));
        }
    }
    op.finalize();
    return op;
}

OperatorMatrix occ_alpha_osc(const FockBasis& b, const IVec& alpha, int m) {
    std::vector<double> oa = ortho(*b.alg, LatticeVector::from_root_coords(alpha));
    std::vector<std::pair<Cplx, const OperatorMatrix*>> terms;
    std::vector<OperatorMatrix> mats;
    mats.reserve(b.alg->rank);
    for (int i = 0; i < b.alg->rank; ++i) mats.push_back(occ_oscillator(b, i, m));
    for (int i = 0; i < b.alg->rank; ++i) terms.push_back({Cplx(oa[i], 0.0), &mats[i]});
    return lincomb(terms);
}

OperatorMatrix lift(const FockBasis& b, const OperatorMatrix& occ_op) {
    if (occ_op.dim != b.n_occ) throw std::invalid_argument("occupancy operator size mismatch");
    OperatorMatrix op = OperatorMatrix::zero(b.dim);
    for (long long mi = 0; mi < b.n_mom; ++mi)
        for (long long oj = 0; oj < b.n_occ; ++oj) {
            const long long j = b.index(mi, oj);
            op.safe[j] = occ_op.safe[oj];
            for (const auto& [oi, v] : occ_op.cols[oj]) op.cols[j].push_back({b.index(mi, oi), v});
        }
    return op;
}

OperatorMatrix alpha_momentum_diag(const FockBasis& b, const IVec& alpha) {
    std::vector<Cplx> d(b.dim);
    LatticeVector av = LatticeVector::from_root_coords(alpha);
    for (long long mi = 0; mi < b.n_mom; ++mi) {
        Rat val = inner(*b.alg, av, LatticeVector::from_root_coords(b.moms[mi]));
        double dv = boost::rational_cast<double>(val);
        for (long long oj = 0; oj < b.n_occ; ++oj) d[b.index(mi, oj)] = dv;
    }
    return OperatorMatrix::diagonal(d);
}

OperatorMatrix momentum_component_diag(const FockBasis& b, int colour) {
    std::vector<Cplx> d(b.dim);
    for (long long mi = 0; mi < b.n_mom; ++mi) {
        double dv = ortho(*b.alg, LatticeVector::from_root_coords(b.moms[mi]))[colour];
        for (long long oj = 0; oj < b.n_occ; ++oj) d[b.index(mi, oj)] = dv;
    }
    return OperatorMatrix::diagonal(d);
}

OperatorMatrix shift_op(const FockBasis& b, const CocycleTable& eps, const IVec& alpha) {
    OperatorMatrix op = OperatorMatrix::zero(b.dim);
    for (long long mi = 0; mi < b.n_mom; ++mi) {
        IVec target = b.moms[mi];
        for (int i = 0; i < b.alg->rank; ++i) target[i] += alpha[i];
        const long long ti = b.mom_index(target);
        const double sign = (ti >= 0) ? eps.epsilon(alpha, b.moms[mi]) : 0.0;
        for (long long oj = 0; oj < b.n_occ; ++oj) {
            const long long j = b.index(mi, oj);
            if (ti < 0) {
                op.safe[j] = 0;
                continue;
            }
            op.cols[j].push_back({b.index(ti, oj), Cplx(sign, 0.0)});
        }
    }
    return op;
}

}  // namespace kmsurf
