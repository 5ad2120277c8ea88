#include "kmsurf/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace kmsurf {

namespace {

/* Dynkin diagram edges, Bourbaki numbering (0-based here).  D_r attaches the
   fork node r-1 to r-3; E_r attaches node 1 to the chain at node 3. */
std::vector<std::pair<int, int>> dynkin_edges(Series s, int r) {
    std::vector<std::pair<int, int>> e;
    switch (s) {
        case Series::A:
            for (int i = 0; i + 1 < r; ++i) e.push_back({i, i + 1});
            break;
        case Series::D:
            for (int i = 0; i + 2 < r; ++i) e.push_back({i, i + 1});
            e.push_back({r - 3, r - 1});
            break;
        case Series::E:
            e = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}};
            if (r >= 7) e.push_back({5, 6});
            if (r == 8) e.push_back({6, 7});
            break;
    }
    return e;
}

std::vector<std::vector<Rat>> invert_rational(const std::vector<IVec>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = Rat(m[i][j]);
        a[i][n + i] = Rat(1);
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != Rat(0)) { piv = i; break; }
        if (piv < 0) throw std::runtime_error("singular Cartan matrix");
        std::swap(a[c], a[piv]);
        Rat d = a[c][c];
        for (int j = 0; j < 2 * n; ++j) a[c][j] /= d;
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c] == Rat(0)) continue;
            Rat f = a[i][c];
            for (int j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

std::vector<std::vector<double>> cholesky_upper(const std::vector<IVec>& c) {
    const int n = static_cast<int>(c.size());
    /* compute lower L with L L^T = C, return R = L^T */
    std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = static_cast<double>(c[i][j]);
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= 0) throw std::runtime_error("Cartan matrix not positive definite");
                l[i][j] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) r[j][i] = l[i][j];
    return r;
}

}  // namespace

long long SimplyLacedAlgebra::pair_rr(const IVec& a, const IVec& b) const {
    long long s = 0;
    for (int i = 0; i < rank; ++i) {
        long long row = 0;
        for (int j = 0; j < rank; ++j) row += cartan[i][j] * b[j];
        s += a[i] * row;
    }
    return s;
}

std::vector<double> SimplyLacedAlgebra::ortho(const IVec& a) const {
    std::vector<double> v(rank, 0.0);
    for (int i = 0; i < rank; ++i) {
        double s = 0;
        for (int j = i; j < rank; ++j) s += chol[i][j] * static_cast<double>(a[j]);
        v[i] = s;
    }
    return v;
}

bool SimplyLacedAlgebra::is_root(const IVec& a) const {
    return std::binary_search(roots.begin(), roots.end(), a);
}

SimplyLacedAlgebra make_algebra(Series s, int rank) {
    const bool ok = (s == Series::A && rank >= 1) || (s == Series::D && rank >= 3) ||
                    (s == Series::E && rank >= 6 && rank <= 8);
    if (!ok) throw std::invalid_argument("unsupported series/rank combination");

    SimplyLacedAlgebra g;
    g.series = s;
    g.rank = rank;
    g.name = std::string(1, s == Series::A ? 'A' : (s == Series::D ? 'D' : 'E')) +
             std::to_string(rank);

    g.cartan.assign(rank, IVec(rank, 0));
    for (int i = 0; i < rank; ++i) g.cartan[i][i] = 2;
    for (auto [i, j] : dynkin_edges(s, rank)) {
        g.cartan[i][j] = -1;
        g.cartan[j][i] = -1;
    }
    g.cartan_inv = invert_rational(g.cartan);
    g.chol = cholesky_upper(g.cartan);

    /* roots = closure of the simple roots under simple reflections,
       s_i(b) = b - (C b)_i e_i */
    std::set<IVec> seen;
    std::vector<IVec> queue;
    for (int i = 0; i < rank; ++i) {
        IVec e(rank, 0);
        e[i] = 1;
        seen.insert(e);
        queue.push_back(e);
    }
    while (!queue.empty()) {
        IVec b = queue.back();
        queue.pop_back();
        for (int i = 0; i < rank; ++i) {
            long long ci = 0;
            for (int j = 0; j < rank; ++j) ci += g.cartan[i][j] * b[j];
            IVec nb = b;
            nb[i] -= ci;
            if (seen.insert(nb).second) queue.push_back(nb);
        }
    }
    /* reflections of roots stay roots and every root is W-conjugate to a
       simple one, so the closure is exactly the root set (negatives included
       via s_i(alpha_i) = -alpha_i chains) */
    for (const auto& b : seen) {
        IVec neg(rank);
        for (int i = 0; i < rank; ++i) neg[i] = -b[i];
        if (!seen.count(neg)) throw std::runtime_error("root closure not symmetric");
    }
    g.roots.assign(seen.begin(), seen.end());
    std::sort(g.roots.begin(), g.roots.end());
    for (const auto& a : g.roots) {
        if (g.pair_rr(a, a) != 2) throw std::runtime_error("non-norm-2 vector in root closure");
        for (long long c : a) g.root_coord_bound = std::max<int>(g.root_coord_bound, static_cast<int>(std::llabs(c)));
    }
    return g;
}

SimplyLacedAlgebra make_algebra(const std::string& name) {
    if (name.size() < 2) throw std::invalid_argument("algebra name must look like A2, D4, E8");
    char c = name[0];
    Series s;
    if (c == 'A' || c == 'a') s = Series::A;
    else if (c == 'D' || c == 'd') s = Series::D;
    else if (c == 'E' || c == 'e') s = Series::E;
    else throw std::invalid_argument("unknown series letter in '" + name + "'");
    int rank = 0;
    try {
        rank = std::stoi(name.substr(1));
    } catch (...) {
        throw std::invalid_argument("bad rank in algebra name '" + name + "'");
    }
    return make_algebra(s, rank);
}

LatticeVector LatticeVector::zero(int rank) {
    LatticeVector v;
    v.coords.assign(rank, Rat(0));
    return v;
}

LatticeVector LatticeVector::from_root_coords(const IVec& a) {
    LatticeVector v;
    v.coords.reserve(a.size());
    for (long long c : a) v.coords.push_back(Rat(c));
    return v;
}

LatticeVector LatticeVector::from_weight_coords(const SimplyLacedAlgebra& g, const IVec& w) {
    if (static_cast<int>(w.size()) != g.rank) throw std::invalid_argument("weight coordinate size mismatch");
    LatticeVector v;
    v.coords.assign(g.rank, Rat(0));
    for (int i = 0; i < g.rank; ++i)
        for (int j = 0; j < g.rank; ++j) v.coords[i] += g.cartan_inv[i][j] * Rat(w[j]);
    return v;
}

std::vector<Rat> LatticeVector::weight_coords(const SimplyLacedAlgebra& g) const {
    std::vector<Rat> w(g.rank, Rat(0));
    for (int i = 0; i < g.rank; ++i)
        for (int j = 0; j < g.rank; ++j) w[i] += Rat(g.cartan[i][j]) * coords[j];
    return w;
}

bool LatticeVector::in_root_lattice() const {
    for (const Rat& c : coords)
        if (c.denominator() != 1) return false;
    return true;
}

bool LatticeVector::is_zero() const {
    for (const Rat& c : coords)
        if (c != Rat(0)) return false;
    return true;
}

Rat inner(const SimplyLacedAlgebra& g, const LatticeVector& x, const LatticeVector& y) {
    Rat s(0);
    for (int i = 0; i < g.rank; ++i) {
        Rat row(0);
        for (int j = 0; j < g.rank; ++j) row += Rat(g.cartan[i][j]) * y.coords[j];
        s += x.coords[i] * row;
    }
    return s;
}

Rat pair_root(const SimplyLacedAlgebra& g, const IVec& alpha, const LatticeVector& lam) {
    return inner(g, LatticeVector::from_root_coords(alpha), lam);
}

std::vector<double> ortho(const SimplyLacedAlgebra& g, const LatticeVector& x) {
    std::vector<double> v(g.rank, 0.0);
    for (int i = 0; i < g.rank; ++i) {
        double s = 0;
        for (int j = i; j < g.rank; ++j)
            s += g.chol[i][j] * boost::rational_cast<double>(x.coords[j]);
        v[i] = s;
    }
    return v;
}

}  // namespace kmsurf
