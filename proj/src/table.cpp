#include "kmsurf/table.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "kmsurf/triple_coeffs.hpp"

namespace kmsurf {

namespace {

IVec add(const IVec& x, const IVec& y) {
    IVec s(x.size());
    for (size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
    return s;
}

long long pairing(const SimplyLacedAlgebra& g, const IVec& a, const IVec& b) {
    Rat r = inner(g, LatticeVector::from_root_coords(a), LatticeVector::from_root_coords(b));
    if (r.denominator() != 1) throw std::logic_error("non-integral pairing");
    return r.numerator();
}

std::string coords_str(const IVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += fmt::format("{}{}", i ? "," : "", v[i]);
    return s + ")";
}

}  // namespace

Symbol Symbol::heis(IVec mu, int a, int b) { return Symbol{SymKind::H, std::move(mu), a, b}; }
Symbol Symbol::vert(IVec alpha, int a, int b) {
    return Symbol{SymKind::E, std::move(alpha), a, b};
}
Symbol Symbol::vir(int a, int b) { return Symbol{SymKind::L, {}, a, b}; }

std::string Symbol::str() const {
    switch (kind) {
        case SymKind::H: return fmt::format("H{}[{},{}]", coords_str(label), a, b);
        case SymKind::E: return fmt::format("E{}[{},{}]", coords_str(label), a, b);
        default: return fmt::format("L[{},{}]", a, b);
    }
}

bool operator<(const Symbol& x, const Symbol& y) {
    auto tx = std::tie(x.kind, x.label, x.a, x.b);
    auto ty = std::tie(y.kind, y.label, y.a, y.b);
    return tx < ty;
}
bool operator==(const Symbol& x, const Symbol& y) {
    return x.kind == y.kind && x.label == y.label && x.a == y.a && x.b == y.b;
}

TorusTable::TorusTable(const SimplyLacedAlgebra& g, int modulus)
    : alg_(&g), modulus_(modulus), cocycle_(make_cocycle_table(g, 2 * g.root_coord_bound)) {
    if (modulus < 0) throw std::invalid_argument("modulus must be non-negative");
    gauge_fix(cocycle_);
}

int TorusTable::wrap(int p) const {
    if (modulus_ == 0) return p;
    int r = p % modulus_;
    return r < 0 ? r + modulus_ : r;
}

TorusBracket TorusTable::bracket(const Symbol& x, const Symbol& y) const {
    const SimplyLacedAlgebra& g = *alg_;
    TorusBracket out;
    const int m = x.a, n = y.a;
    const int pq = wrap(x.b + y.b);
    out.first_delta = (m + n) == 0;
    out.second_delta = wrap(x.b + y.b) == 0;

    auto H = [&](IVec mu, Rat c) {
        if (c != Rat(0)) out.terms.push_back({Symbol::heis(std::move(mu), m + n, pq), c});
    };
    auto E = [&](IVec al, Rat c) {
        if (c != Rat(0)) out.terms.push_back({Symbol::vert(std::move(al), m + n, pq), c});
    };

    if (x.kind == SymKind::H && y.kind == SymKind::H) {
        out.central_core = Rat(m) * Rat(pairing(g, x.label, y.label));
    } else if (x.kind == SymKind::H && y.kind == SymKind::E) {
        E(y.label, Rat(pairing(g, x.label, y.label)));
    } else if (x.kind == SymKind::E && y.kind == SymKind::H) {
        E(x.label, Rat(-pairing(g, y.label, x.label)));
    } else if (x.kind == SymKind::E && y.kind == SymKind::E) {
        const long long ab = pairing(g, x.label, y.label);
        if (ab == -2) {
            H(x.label, Rat(1));
            out.central_core = Rat(m);
        } else if (ab == -1) {
            E(add(x.label, y.label), Rat(cocycle_.epsilon(x.label, y.label)));
        }
    } else if (x.kind == SymKind::L && y.kind == SymKind::H) {
        H(y.label, Rat(-n));
    } else if (x.kind == SymKind::H && y.kind == SymKind::L) {
        H(x.label, Rat(m));
    } else if (x.kind == SymKind::L && y.kind == SymKind::E) {
        E(y.label, Rat(-n));
    } else if (x.kind == SymKind::E && y.kind == SymKind::L) {
        E(x.label, Rat(m));
    } else { /* L, L */
        if (m != n) out.terms.push_back({Symbol::vir(m + n, pq), Rat(m - n)});
        out.central_core = Rat(g.rank, 12) * Rat(m) * Rat(1LL * m * m - 1);
    }
    return out;
}

SphereTable::SphereTable(const SimplyLacedAlgebra& g)
    : alg_(&g), cocycle_(make_cocycle_table(g, 2 * g.root_coord_bound)) {
    gauge_fix(cocycle_);
}

SphereBracket SphereTable::bracket(const Symbol& x, const Symbol& y) const {
    const SimplyLacedAlgebra& g = *alg_;
    SphereBracket out;
    const int l1 = x.a, m1 = x.b, l2 = y.a, m2 = y.b;
    const int m3 = m1 + m2;
    out.first_delta = m3 == 0;
    const double sign_m1 = (m1 & 1) ? -1.0 : 1.0;
    const double dl = (l1 == l2 && out.first_delta) ? 1.0 : 0.0;

    auto expand = [&](SymKind kind, const IVec& label, double c) {
        if (c == 0.0) return;
        for (const auto& [l3, cv] : expand_product(l1, m1, l2, m2)) {
            Symbol s = kind == SymKind::H   ? Symbol::heis(label, l3, m3)
                       : kind == SymKind::E ? Symbol::vert(label, l3, m3)
                                            : Symbol::vir(l3, m3);
            out.terms.push_back({std::move(s), c * cv});
        }
    };

    if (x.kind == SymKind::H && y.kind == SymKind::H) {
        out.central_core = m1 * double(pairing(g, x.label, y.label));
        out.central_reduced = out.central_core * sign_m1 * dl;
    } else if (x.kind == SymKind::H && y.kind == SymKind::E) {
        expand(SymKind::E, y.label, double(pairing(g, x.label, y.label)));
    } else if (x.kind == SymKind::E && y.kind == SymKind::H) {
        expand(SymKind::E, x.label, -double(pairing(g, y.label, x.label)));
    } else if (x.kind == SymKind::E && y.kind == SymKind::E) {
        const long long ab = pairing(g, x.label, y.label);
        if (ab == -2) {
            expand(SymKind::H, x.label, 1.0);
            out.central_core = m1;
            out.central_reduced = m1 * sign_m1 * dl;
        } else if (ab == -1) {
            expand(SymKind::E, add(x.label, y.label), double(cocycle_.epsilon(x.label, y.label)));
        }
    } else if (x.kind == SymKind::L && y.kind == SymKind::H) {
        expand(SymKind::H, y.label, double(-m2));
    } else if (x.kind == SymKind::H && y.kind == SymKind::L) {
        expand(SymKind::H, x.label, double(m1));
    } else if (x.kind == SymKind::L && y.kind == SymKind::E) {
        expand(SymKind::E, y.label, double(-m2));
    } else if (x.kind == SymKind::E && y.kind == SymKind::L) {
        expand(SymKind::E, x.label, double(m1));
    } else {
        expand(SymKind::L, {}, double(m1 - m2));
        out.central_core = g.rank / 12.0 * m1 * (1.0 * m1 * m1 - 1.0);
        out.central_reduced = out.central_core * sign_m1 * dl;
    }
    return out;
}

namespace {

/* Independent single-circle reference: the standard level-1 current algebra
 * plus Virasoro with c = rank, written directly from the defining relations.
 * Only the z-mode index exists here. */
struct RefTerm {
    Symbol sym; /* b index unused (0) */
    Rat coeff;
};
struct RefBracket {
    std::vector<RefTerm> terms;
    Rat central = Rat(0);
};

RefBracket ref_bracket(const SimplyLacedAlgebra& g, const CocycleTable& eps, const Symbol& x,
                       const Symbol& y) {
    RefBracket out;
    const int m = x.a, n = y.a;
    auto term = [&](SymKind k, IVec label, Rat c) {
        if (c != Rat(0))
            out.terms.push_back({k == SymKind::H   ? Symbol::heis(std::move(label), m + n, 0)
                                 : k == SymKind::E ? Symbol::vert(std::move(label), m + n, 0)
                                                   : Symbol::vir(m + n, 0),
                                 c});
    };
    if (x.kind == SymKind::H && y.kind == SymKind::H) {
        if (m + n == 0) out.central = Rat(m) * Rat(pairing(g, x.label, y.label));
    } else if (x.kind == SymKind::H && y.kind == SymKind::E) {
        term(SymKind::E, y.label, Rat(pairing(g, x.label, y.label)));
    } else if (x.kind == SymKind::E && y.kind == SymKind::H) {
        term(SymKind::E, x.label, Rat(-pairing(g, x.label, y.label)));
    } else if (x.kind == SymKind::E && y.kind == SymKind::E) {
        const long long ab = pairing(g, x.label, y.label);
        if (ab == -2) {
            term(SymKind::H, x.label, Rat(1));
            if (m + n == 0) out.central = Rat(m);
        } else if (ab == -1) {
            term(SymKind::E, add(x.label, y.label), Rat(eps.epsilon(x.label, y.label)));
        }
    } else if (x.kind == SymKind::L && y.kind == SymKind::H) {
        term(SymKind::H, y.label, Rat(-n));
    } else if (x.kind == SymKind::H && y.kind == SymKind::L) {
        term(SymKind::H, x.label, Rat(m));
    } else if (x.kind == SymKind::L && y.kind == SymKind::E) {
        term(SymKind::E, y.label, Rat(-n));
    } else if (x.kind == SymKind::E && y.kind == SymKind::L) {
        term(SymKind::E, x.label, Rat(m));
    } else {
        if (m != n) term(SymKind::L, {}, Rat(m - n));
        if (m + n == 0) out.central = Rat(g.rank, 12) * Rat(m) * Rat(1LL * m * m - 1);
    }
    return out;
}

std::vector<Symbol> symbol_pool(const SimplyLacedAlgebra& g, int mrange, int b) {
    std::vector<Symbol> pool;
    for (int m = -mrange; m <= mrange; ++m) {
        for (int i = 0; i < g.rank; ++i) {
            IVec e(g.rank, 0);
            e[i] = 1;
            pool.push_back(Symbol::heis(std::move(e), m, b));
        }
        for (const IVec& alpha : g.roots) pool.push_back(Symbol::vert(alpha, m, b));
        pool.push_back(Symbol::vir(m, b));
    }
    return pool;
}

}  // namespace

Report torus_zero_mode_embedding(const SimplyLacedAlgebra& g, int mrange) {
    TorusTable table(g, 0);
    CocycleTable eps = make_cocycle_table(g, 2 * g.root_coord_bound);
    gauge_fix(eps);
    Report rep;
    rep.title = "zero-circle-mode sector vs single-circle algebra";
    rep.meta["algebra"] = g.name;
    rep.meta["mrange"] = fmt::format("{}", mrange);

    std::vector<Symbol> pool = symbol_pool(g, mrange, 0);
    long long pairs = 0, bad = 0;
    std::string witness;
    for (const Symbol& x : pool)
        for (const Symbol& y : pool) {
            ++pairs;
            TorusBracket tb = table.bracket(x, y);
            RefBracket rb = ref_bracket(g, eps, x, y);
            bool ok = tb.central() == rb.central && tb.terms.size() == rb.terms.size();
            if (ok) {
                auto sorted_t = tb.terms;
                auto sorted_r = rb.terms;
                auto cmp_t = [](const TorusTerm& u, const TorusTerm& v) { return u.sym < v.sym; };
                auto cmp_r = [](const RefTerm& u, const RefTerm& v) { return u.sym < v.sym; };
                std::sort(sorted_t.begin(), sorted_t.end(), cmp_t);
                std::sort(sorted_r.begin(), sorted_r.end(), cmp_r);
                for (size_t i = 0; i < sorted_t.size(); ++i)
                    ok = ok && sorted_t[i].sym == sorted_r[i].sym &&
                         sorted_t[i].coeff == sorted_r[i].coeff;
            }
            if (!ok) {
                ++bad;
                if (witness.empty()) witness = fmt::format("[{}, {}]", x.str(), y.str());
            }
        }
    RelationRecord rec;
    rec.id = fmt::format("all {} zero-mode pairs match the single-circle constants", pairs);
    rec.family = "embedding";
    rec.residual = static_cast<double>(bad);
    rec.tol = 0.5; /* exact rational comparison: any mismatch counts 1 */
    rec.pass = bad == 0;
    if (!witness.empty()) rec.id += " (first mismatch " + witness + ")";
    rec.values["pairs"] = static_cast<double>(pairs);
    rec.values["mismatches"] = static_cast<double>(bad);
    rep.records.push_back(std::move(rec));
    return rep;
}

Report sphere_minimal_sector_leak(const SimplyLacedAlgebra& g) {
    Report rep;
    rep.title = "minimal-degree sector on the sphere is not a subalgebra";
    rep.meta["algebra"] = g.name;
    /* the would-be counterpart of the zero-mode sector: degree <= 1 labels;
       their bracket produces a degree-2 component */
    const double c2 = triple_coeff(1, 1, 1, -1, 2);
    RelationRecord rec;
    rec.id = "Q(1,1) Q(1,-1) has a degree-2 component";
    rec.family = "embedding";
    rec.residual = std::abs(c2) > 0.1 ? 0.0 : 1.0;
    rec.tol = 0.5;
    rec.pass = std::abs(c2) > 0.1;
    rec.values["coefficient"] = c2;
    rec.values["expected_magnitude_at_least"] = 0.1;
    rep.records.push_back(std::move(rec));
    return rep;
}

}  // namespace kmsurf
