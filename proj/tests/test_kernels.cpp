#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "kmsurf/cocycle.hpp"
#include "kmsurf/matrix.hpp"
#include "kmsurf/site.hpp"

using namespace kmsurf;

namespace {

OperatorMatrix random_matrix(long long dim, int max_per_col, uint32_t seed,
                             double unsafe_frac) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long long> row(0, dim - 1);
    std::uniform_int_distribution<int> count(0, max_per_col);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::bernoulli_distribution unsafe(unsafe_frac);
    OperatorMatrix m = OperatorMatrix::zero(dim);
    for (long long j = 0; j < dim; ++j) {
        const int k = count(rng);
        for (int t = 0; t < k; ++t) m.insert(row(rng), j, Cplx(val(rng), val(rng)));
        if (unsafe(rng)) m.safe[j] = 0;
    }
    m.finalize();
    return m;
}

/* same stored representation, not merely same values */
bool identical(const OperatorMatrix& a, const OperatorMatrix& b) {
    return a.dim == b.dim && a.safe == b.safe && a.cols == b.cols;
}

std::vector<std::vector<Cplx>> densify(const OperatorMatrix& m) {
    std::vector<std::vector<Cplx>> d(m.dim, std::vector<Cplx>(m.dim, Cplx(0.0, 0.0)));
    for (long long j = 0; j < m.dim; ++j)
        for (const auto& [r, v] : m.cols[j]) d[r][j] = v;
    return d;
}

}  // namespace

TEST_CASE("finalize sorts, merges duplicates and drops exact zeros") {
    OperatorMatrix m = OperatorMatrix::zero(3);
    m.insert(2, 0, Cplx(1.0, 0.0));
    m.insert(0, 0, Cplx(0.5, -1.0));
    m.insert(2, 0, Cplx(2.0, 1.0));
    m.insert(1, 1, Cplx(4.0, 0.0));
    m.insert(1, 1, Cplx(-4.0, 0.0));
    m.finalize();
    CHECK(m.nnz() == 2);
    CHECK(m.cols[0].size() == 2);
    CHECK(m.cols[0][0].first == 0);
    CHECK(m.cols[0][1].first == 2);
    CHECK(m.entry(2, 0) == Cplx(3.0, 1.0));
    CHECK(m.entry(0, 0) == Cplx(0.5, -1.0));
    CHECK(m.entry(1, 1) == Cplx(0.0, 0.0));
    CHECK(m.cols[1].empty());
}

TEST_CASE("constructors and scalar scaling") {
    const auto id = OperatorMatrix::identity(4);
    CHECK(id.nnz() == 4);
    CHECK(id.n_safe() == 4);
    for (long long j = 0; j < 4; ++j) CHECK(id.entry(j, j) == Cplx(1.0, 0.0));

    auto d = OperatorMatrix::diagonal({Cplx(1.0, 0.0), Cplx(0.0, 0.0), Cplx(0.0, 2.0)});
    CHECK(d.dim == 3);
    CHECK(d.nnz() == 2);
    CHECK(d.entry(2, 2) == Cplx(0.0, 2.0));
    d *= Cplx(0.0, 1.0);
    CHECK(d.entry(0, 0) == Cplx(0.0, 1.0));
    CHECK(d.entry(2, 2) == Cplx(-2.0, 0.0));
    CHECK(d.max_abs_on_safe() == doctest::Approx(2.0));
}

TEST_CASE("sparse product matches a dense reference") {
    const auto a = random_matrix(30, 5, 11u, 0.2);
    const auto b = random_matrix(30, 5, 12u, 0.2);
    const auto c = multiply(a, b);
    const auto da = densify(a);
    const auto db = densify(b);
    for (long long i = 0; i < 30; ++i)
        for (long long j = 0; j < 30; ++j) {
            Cplx s(0.0, 0.0);
            for (long long k = 0; k < 30; ++k) s += da[i][k] * db[k][j];
            CHECK(std::abs(c.entry(i, j) - s) < 1e-14);
        }
    CHECK_THROWS_AS(multiply(a, random_matrix(29, 3, 1u, 0.0)), std::invalid_argument);
}

TEST_CASE("serial and parallel products are bitwise identical") {
    for (uint32_t seed : {101u, 202u, 303u}) {
        const auto a = random_matrix(173, 6, seed, 0.15);
        const auto b = random_matrix(173, 6, seed + 7, 0.15);
        const auto cs = multiply(a, b, ExecPolicy::Serial);
        const auto cp = multiply(a, b, ExecPolicy::Parallel);
        CHECK(identical(cs, cp));
        CHECK(diff_max(cs, cp) == 0.0);
        CHECK(identical(commutator(a, b, ExecPolicy::Serial),
                        commutator(a, b, ExecPolicy::Parallel)));
    }
}

TEST_CASE("product safety is the conjunction over reached columns") {
    /* B col 0 reaches row 1 whose column is unsafe in A; col 1 is empty and
       safe; col 2 is unsafe at the source */
    OperatorMatrix a = OperatorMatrix::zero(3);
    a.insert(0, 1, Cplx(2.0, 0.0));
    a.insert(2, 1, Cplx(0.0, 1.0));
    a.finalize();
    a.safe = {1, 0, 1};

    OperatorMatrix b = OperatorMatrix::zero(3);
    b.insert(1, 0, Cplx(3.0, 0.0));
    b.insert(0, 2, Cplx(1.0, 0.0));
    b.finalize();
    b.safe = {1, 1, 0};

    const auto c = multiply(a, b);
    CHECK(c.safe == std::vector<uint8_t>{0, 1, 0});
    /* values are still computed on unsafe columns */
    CHECK(c.entry(0, 0) == Cplx(6.0, 0.0));
    CHECK(c.entry(2, 0) == Cplx(0.0, 3.0));
    CHECK(c.cols[1].empty());
}

TEST_CASE("product entries that cancel exactly are not stored") {
    OperatorMatrix a = OperatorMatrix::zero(2);
    a.insert(0, 0, Cplx(1.0, 0.0));
    a.insert(1, 0, Cplx(1.0, 0.0));
    a.insert(0, 1, Cplx(1.0, 0.0));
    a.insert(1, 1, Cplx(-1.0, 0.0));
    a.finalize();
    OperatorMatrix b = OperatorMatrix::zero(2);
    b.insert(0, 0, Cplx(1.0, 0.0));
    b.insert(1, 0, Cplx(1.0, 0.0));
    b.finalize();
    const auto c = multiply(a, b);
    CHECK(c.cols[0].size() == 1);
    CHECK(c.entry(0, 0) == Cplx(2.0, 0.0));
    CHECK(c.entry(1, 0) == Cplx(0.0, 0.0));
}

TEST_CASE("linear combinations cancel exactly and intersect safety") {
    const auto a = random_matrix(40, 4, 5u, 0.0);
    const auto z = lincomb({{Cplx(2.0, 0.0), &a}, {Cplx(-2.0, 0.0), &a}});
    CHECK(z.nnz() == 0);
    CHECK(z.n_safe() == 40);

    auto u = a;
    u.safe[7] = 0;
    const auto s = lincomb({{Cplx(1.0, 0.0), &a}, {Cplx(1.0, 0.0), &u}});
    CHECK(s.safe[7] == 0);
    CHECK(s.n_safe() == 39);
    CHECK(s.entry(0, 3) == a.entry(0, 3) * Cplx(2.0, 0.0));

    CHECK_THROWS_AS(lincomb({}), std::invalid_argument);
    const auto small = random_matrix(10, 2, 1u, 0.0);
    CHECK_THROWS_AS(lincomb({{Cplx(1.0, 0.0), &a}, {Cplx(1.0, 0.0), &small}}),
                    std::invalid_argument);
}

TEST_CASE("difference norm ignores columns unsafe on either side") {
    OperatorMatrix a = OperatorMatrix::zero(2);
    a.insert(0, 0, Cplx(1.0, 0.0));
    a.insert(0, 1, Cplx(5.0, 0.0));
    a.finalize();
    OperatorMatrix b = OperatorMatrix::zero(2);
    b.insert(0, 0, Cplx(1.0, 0.0));
    b.insert(1, 1, Cplx(-9.0, 0.0));
    b.finalize();

    b.safe = {1, 0};
    CHECK(diff_max(a, b) == 0.0);
    b.safe = {1, 1};
    a.safe = {1, 0};
    CHECK(diff_max(a, b) == 0.0);
    a.safe = {1, 1};
    CHECK(diff_max(a, b) == doctest::Approx(9.0));
    /* entries missing on one side count at full magnitude */
    a.cols[0].clear();
    CHECK(diff_max(a, b) >= 1.0);
}

TEST_CASE("adjoint residual detects hermiticity violations on trusted blocks") {
    OperatorMatrix a = OperatorMatrix::zero(3);
    a.insert(1, 0, Cplx(2.0, 1.0));
    a.finalize();
    OperatorMatrix b = OperatorMatrix::zero(3);
    b.insert(0, 1, Cplx(2.0, -1.0));
    b.finalize();
    CHECK(adjoint_residual(a, b) == 0.0);

    auto bad = b;
    bad.cols[1][0].second = Cplx(2.0, -1.5);
    CHECK(adjoint_residual(a, bad) == doctest::Approx(0.5));

    /* the mirror entry lives in an unsafe column of b: nothing to compare */
    auto blind = b;
    blind.cols[1].clear();
    blind.safe[1] = 0;
    CHECK(adjoint_residual(a, blind) == 0.0);
    /* same missing entry in a safe column is a genuine mismatch */
    auto hole = b;
    hole.cols[1].clear();
    CHECK(adjoint_residual(a, hole) == doctest::Approx(std::abs(Cplx(2.0, 1.0))));
}

TEST_CASE("mode matrices agree bitwise across execution policies") {
    SiteConfig cs{"A2", 2, 1, ExecPolicy::Serial};
    SiteConfig cp = cs;
    cp.policy = ExecPolicy::Parallel;
    Site ss(cs), sp(cp);
    const IVec a{1, 0}, b{0, 1};
    CHECK(identical(ss.vertex(a, 1), sp.vertex(a, 1)));
    CHECK(identical(ss.vertex(a, -1), sp.vertex(a, -1)));
    CHECK(identical(ss.vertex(b, 0), sp.vertex(b, 0)));
    CHECK(identical(ss.virasoro(2), sp.virasoro(2)));
    CHECK(identical(ss.heisenberg(a, -1), sp.heisenberg(a, -1)));
    CHECK(identical(commutator(ss.vertex(a, 1), ss.vertex(b, -1), ExecPolicy::Serial),
                    commutator(sp.vertex(a, 1), sp.vertex(b, -1), ExecPolicy::Parallel)));
}

TEST_CASE("cocycle identity scan agrees across execution policies") {
    const auto g2 = make_algebra("A2");
    auto raw = make_cocycle_table(g2, 4);
    const auto rs = check_cocycle_identities(raw, ExecPolicy::Serial);
    const auto rp = check_cocycle_identities(raw, ExecPolicy::Parallel);
    CHECK(rs.ok == rp.ok);
    CHECK(rs.ok);
    CHECK(rs.violated == rp.violated);
    CHECK(rs.pairs_checked == rp.pairs_checked);
    CHECK(rs.triples_checked == rp.triples_checked);

    const auto g3 = make_algebra("A3");
    auto gauged = make_cocycle_table(g3, 2);
    gauge_fix(gauged);
    const auto gs = check_cocycle_identities(gauged, ExecPolicy::Serial);
    const auto gp = check_cocycle_identities(gauged, ExecPolicy::Parallel);
    CHECK(gs.ok == gp.ok);
    CHECK(gs.ok);
    CHECK(gs.pairs_checked == gp.pairs_checked);
    CHECK(gs.triples_checked == gp.triples_checked);
}
