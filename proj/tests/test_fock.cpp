#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "kmsurf/fock.hpp"

using namespace kmsurf;

namespace {

/* coin-counting DP over slots (colour, mode), weighted sum <= L; written
   independently of the recursive enumeration inside FockBasis::build */
long long count_occupancies(int rank, int L) {
    std::vector<long long> ways(L + 1, 0);
    ways[0] = 1;
    for (int colour = 0; colour < rank; ++colour)
        for (int mode = 1; mode <= L; ++mode)
            for (int lev = mode; lev <= L; ++lev) ways[lev] += ways[lev - mode];
    long long total = 0;
    for (long long w : ways) total += w;
    return total;
}

}  // namespace

TEST_CASE("state counts match a partition-counting oracle") {
    const auto a1 = make_algebra("A1");
    for (int L = 0; L <= 6; ++L) {
        const auto b = FockBasis::build(a1, L, 0);
        CHECK(b.n_occ == count_occupancies(1, L));
        CHECK(b.n_mom == 1);
        CHECK(b.dim == b.n_occ);
    }
    const auto a2 = make_algebra("A2");
    for (int L = 0; L <= 4; ++L)
        CHECK(FockBasis::build(a2, L, 0).n_occ == count_occupancies(2, L));
    const auto a3 = make_algebra("A3");
    CHECK(FockBasis::build(a3, 3, 0).n_occ == count_occupancies(3, 3));

    const auto b = FockBasis::build(a2, 3, 2);
    CHECK(b.n_mom == 25);
    CHECK(b.dim == b.n_occ * 25);
    for (int lev : b.occ_level) CHECK(lev <= 3);
}

TEST_CASE("vacuum and momentum-box indexing") {
    const auto g = make_algebra("A2");
    const auto b = FockBasis::build(g, 2, 1);
    const long long v0 = b.vacuum();
    CHECK(b.level_of(v0) == 0);
    CHECK(b.mom_of(v0) == IVec{0, 0});
    for (long long mi = 0; mi < b.n_mom; ++mi) CHECK(b.mom_index(b.moms[mi]) == mi);
    CHECK(b.mom_index({2, 0}) == -1);
    CHECK(b.mom_index({0, -2}) == -1);
    CHECK(b.index(b.mom_index({0, 0}), 0) == v0);
    /* states sorted by level within the occupancy factor: index 0 is empty */
    CHECK(b.occ_level[0] == 0);
}

TEST_CASE("oscillator modes satisfy [a_m, a_n] = m delta_{m+n} on safe columns") {
    const auto g = make_algebra("A2");
    const auto b = FockBasis::build(g, 3, 0);
    const OperatorMatrix zero = OperatorMatrix::zero(b.n_occ);
    for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2)
            for (int m : {-3, -2, -1, 1, 2, 3})
                for (int n : {-3, -2, -1, 1, 2, 3}) {
                    CAPTURE(c1);
                    CAPTURE(m);
                    CAPTURE(n);
                    const auto comm =
                        commutator(occ_oscillator(b, c1, m), occ_oscillator(b, c2, n));
                    if (c1 == c2 && m + n == 0) {
                        OperatorMatrix expect = OperatorMatrix::identity(b.n_occ);
                        expect *= Cplx(double(m), 0.0);
                        CHECK(diff_max(comm, expect) < 1e-12);
                    } else {
                        CHECK(diff_max(comm, zero) < 1e-12);
                    }
                }
}

TEST_CASE("annihilators above the cutoff vanish exactly and stay safe") {
    const auto g = make_algebra("A1");
    const auto b = FockBasis::build(g, 3, 0);
    for (int m : {4, 5, 9}) {
        const auto op = occ_oscillator(b, 0, m);
        CHECK(op.nnz() == 0);
        CHECK(op.n_safe() == b.n_occ);
    }
}

TEST_CASE("creator columns are safe exactly when the image stays below cutoff") {
    const auto g = make_algebra("A2");
    const auto b = FockBasis::build(g, 3, 0);
    for (int m = 1; m <= 3; ++m) {
        const auto op = occ_oscillator(b, 1, -m);
        for (long long j = 0; j < b.n_occ; ++j)
            CHECK(bool(op.safe[j]) == (b.occ_level[j] + m <= 3));
    }
}

TEST_CASE("oscillator matrix elements carry sqrt(m (n+1)) amplitudes") {
    const auto g = make_algebra("A1");
    const auto b = FockBasis::build(g, 4, 0);
    for (int m = 1; m <= 2; ++m) {
        const auto cre = occ_oscillator(b, 0, -m);
        for (int n = 0; m * (n + 1) <= 4; ++n) {
            std::vector<uint8_t> from(4, 0), to(4, 0);
            from[m - 1] = static_cast<uint8_t>(n);
            to[m - 1] = static_cast<uint8_t>(n + 1);
            const auto src = b.occ_index.at(from), dst = b.occ_index.at(to);
            CHECK(std::abs(cre.entry(dst, src).real() - std::sqrt(double(m) * (n + 1))) < 1e-13);
        }
    }
    /* adjoint pairs close on the truncation */
    for (int m = 1; m <= 4; ++m)
        CHECK(adjoint_residual(occ_oscillator(b, 0, -m), occ_oscillator(b, 0, m)) < 1e-13);
}

TEST_CASE("colour-blind combinations act through the orthonormal frame") {
    const auto g = make_algebra("A2");
    const auto b = FockBasis::build(g, 2, 0);
    const IVec alpha = {1, 0};
    const auto direct = occ_alpha_osc(b, alpha, -1);
    /* alpha . a_m = sum_i (R alpha)_i a^i_m */
    const auto r = g.ortho(alpha);
    std::vector<std::pair<Cplx, const OperatorMatrix*>> terms;
    const auto o0 = occ_oscillator(b, 0, -1), o1 = occ_oscillator(b, 1, -1);
    terms.push_back({Cplx(r[0], 0.0), &o0});
    terms.push_back({Cplx(r[1], 0.0), &o1});
    CHECK(diff_max(direct, lincomb(terms)) < 1e-13);
}

TEST_CASE("momentum diagonals expose exact eigenvalues") {
    const auto g = make_algebra("A2");
    const auto b = FockBasis::build(g, 1, 1);
    const IVec alpha = {1, 0};
    const auto diag = alpha_momentum_diag(b, alpha);
    for (long long s = 0; s < b.dim; ++s) {
        const double expect = double(g.pair_rr(alpha, b.mom_of(s)));
        CHECK(std::abs(diag.entry(s, s).real() - expect) < 1e-14);
    }
    for (int colour = 0; colour < 2; ++colour) {
        const auto pc = momentum_component_diag(b, colour);
        for (long long s = 0; s < b.dim; ++s) {
            const auto frame = g.ortho(b.mom_of(s));
            CHECK(std::abs(pc.entry(s, s).real() - frame[colour]) < 1e-13);
        }
    }
}

TEST_CASE("lattice shifts carry the gauged sign and flag box exits") {
    const auto g = make_algebra("A2");
    const auto b = FockBasis::build(g, 1, 1);
    auto eps = make_cocycle_table(g, 1 + g.root_coord_bound);
    gauge_fix(eps);
    const IVec alpha = {1, 0};
    const auto sh = shift_op(b, eps, alpha);
    for (long long mi = 0; mi < b.n_mom; ++mi) {
        const IVec& lam = b.moms[mi];
        IVec out(2);
        for (int i = 0; i < 2; ++i) out[i] = lam[i] + alpha[i];
        const long long col = b.index(mi, 0);
        if (b.mom_index(out) < 0) {
            CHECK_FALSE(sh.safe[col]);
        } else {
            REQUIRE(sh.safe[col]);
            const long long row = b.index(b.mom_index(out), 0);
            CHECK(std::abs(sh.entry(row, col).real() - double(eps.epsilon(alpha, lam))) < 1e-14);
        }
    }
    /* occupancies ride along unchanged */
    CHECK(sh.nnz() >= b.n_occ);
}

TEST_CASE("lift places an occupancy operator on every momentum block") {
    const auto g = make_algebra("A1");
    const auto b = FockBasis::build(g, 2, 1);
    const auto occ = occ_oscillator(b, 0, -1);
    const auto full = lift(b, occ);
    CHECK(full.dim == b.dim);
    for (long long mi = 0; mi < b.n_mom; ++mi)
        for (long long oi = 0; oi < b.n_occ; ++oi)
            for (long long oj = 0; oj < b.n_occ; ++oj)
                CHECK(full.entry(b.index(mi, oi), b.index(mi, oj)) == occ.entry(oi, oj));
    /* no cross-momentum leakage */
    CHECK(full.nnz() == occ.nnz() * b.n_mom);
}

TEST_CASE("construction guards") {
    const auto g = make_algebra("A1");
    CHECK_THROWS_AS(FockBasis::build(g, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(FockBasis::build(g, 251, 0), std::invalid_argument);
    CHECK_THROWS_AS(FockBasis::build(g, 30, 40), std::invalid_argument); /* dim over budget */
    const auto b = FockBasis::build(g, 2, 0);
    CHECK_THROWS_AS(occ_oscillator(b, 0, 0), std::invalid_argument);
}
