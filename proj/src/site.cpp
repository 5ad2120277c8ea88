#include "kmsurf/site.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace kmsurf {

namespace {

std::string coords_str(const IVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += fmt::format("{}{}", i ? "," : "", v[i]);
    return s + ")";
}

long long exact_pairing(const SimplyLacedAlgebra& g, const IVec& a, const IVec& b) {
    Rat r = inner(g, LatticeVector::from_root_coords(a), LatticeVector::from_root_coords(b));
    if (r.denominator() != 1) throw std::logic_error("non-integral root pairing");
    return r.numerator();
}

}  // namespace

Site::Site(const SiteConfig& cfg)
    : cfg_(cfg),
      alg_(make_algebra(cfg.algebra)),
      basis_(FockBasis::build(alg_, cfg.level_max, cfg.mom_bound)),
      cocycle_(make_cocycle_table(alg_, cfg.mom_bound + alg_.root_coord_bound)) {
    gauge_fix(cocycle_);
}

const OperatorMatrix& Site::osc_full(int colour, int m) {
    auto key = std::make_pair(colour, m);
    auto it = osc_cache_.find(key);
    if (it == osc_cache_.end())
        it = osc_cache_.emplace(key, lift(basis_, occ_oscillator(basis_, colour, m))).first;
    return it->second;
}

const OperatorMatrix& Site::heisenberg(const IVec& mu, int m) {
    auto key = std::make_pair(mu, m);
    auto it = heis_cache_.find(key);
    if (it != heis_cache_.end()) return it->second;
    OperatorMatrix op = OperatorMatrix::zero(basis_.dim);
    if (m == 0) {
        op = alpha_momentum_diag(basis_, mu);
    } else {
        std::vector<double> oa = ortho(alg_, LatticeVector::from_root_coords(mu));
        std::vector<std::pair<Cplx, const OperatorMatrix*>> terms;
        for (int i = 0; i < alg_.rank; ++i) terms.push_back({Cplx(oa[i], 0.0), &osc_full(i, m)});
        op = lincomb(terms);
    }
    return heis_cache_.emplace(key, std::move(op)).first->second;
}

const std::pair<std::vector<OperatorMatrix>, std::vector<OperatorMatrix>>& Site::polys(
    const IVec& alpha) {
    auto it = poly_cache_.find(alpha);
    if (it != poly_cache_.end()) return it->second;
    const int L = cfg_.level_max;
    std::vector<OperatorMatrix> F, G;
    F.push_back(OperatorMatrix::identity(basis_.n_occ));
    G.push_back(OperatorMatrix::identity(basis_.n_occ));
    std::vector<OperatorMatrix> ann, cre;
    for (int k = 1; k <= L; ++k) {
        ann.push_back(occ_alpha_osc(basis_, alpha, k));
        cre.push_back(occ_alpha_osc(basis_, alpha, -k));
    }
    for (int d = 1; d <= L; ++d) {
        std::vector<OperatorMatrix> fparts, gparts;
        std::vector<std::pair<Cplx, const OperatorMatrix*>> fterms, gterms;
        fparts.reserve(d);
        gparts.reserve(d);
        for (int k = 1; k <= d; ++k) {
            fparts.push_back(multiply(ann[k - 1], F[d - k], cfg_.policy));
            gparts.push_back(multiply(cre[k - 1], G[d - k], cfg_.policy));
        }
        for (int k = 1; k <= d; ++k) {
            fterms.push_back({Cplx(-1.0 / d, 0.0), &fparts[k - 1]});
            gterms.push_back({Cplx(+1.0 / d, 0.0), &gparts[k - 1]});
        }
        F.push_back(lincomb(fterms));
        G.push_back(lincomb(gterms));
    }
    return poly_cache_.emplace(alpha, std::make_pair(std::move(F), std::move(G))).first->second;
}

const OperatorMatrix& Site::vertex(const IVec& alpha, int m) {
    auto key = std::make_pair(alpha, m);
    auto it = vertex_cache_.find(key);
    if (it != vertex_cache_.end()) return it->second;
    if (exact_pairing(alg_, alpha, alpha) != 2)
        throw std::invalid_argument("vertex label must be a root (norm 2)");

    const int L = cfg_.level_max;
    const auto& [F, G] = polys(alpha);
    OperatorMatrix op = OperatorMatrix::zero(basis_.dim);
    for (long long mi = 0; mi < basis_.n_mom; ++mi) {
        const IVec& lam = basis_.moms[mi];
        const long long adl = exact_pairing(alg_, alpha, lam);
        IVec target = lam;
        for (int i = 0; i < alg_.rank; ++i) target[i] += alpha[i];
        const long long ti = basis_.mom_index(target);
        const double sign = cocycle_.epsilon(alpha, lam);
        for (long long oj = 0; oj < basis_.n_occ; ++oj) {
            const long long j = basis_.index(mi, oj);
            const long long lout = basis_.occ_level[oj] - m - adl - 1;
            if (lout < 0) continue; /* exact zero column */
            if (lout > L || ti < 0) {
                op.safe[j] = 0;
                continue;
            }
            const long long ls = basis_.occ_level[oj];
            for (long long dm = std::max(0LL, ls - lout); dm <= ls; ++dm) {
                const long long dp = dm + (lout - ls);
                for (const auto& [o2, fv] : F[dm].cols[oj])
                    for (const auto& [o3, gv] : G[dp].cols[o2])
                        op.insert(basis_.index(ti, o3), j, sign * fv * gv);
            }
        }
    }
    op.finalize();
    return vertex_cache_.emplace(key, std::move(op)).first->second;
}

const OperatorMatrix& Site::virasoro(int m) {
    auto it = vir_cache_.find(m);
    if (it != vir_cache_.end()) return it->second;
    const int L = cfg_.level_max;
    const int r = alg_.rank;
    OperatorMatrix op = OperatorMatrix::zero(basis_.dim);

    if (m == 0) {
        std::vector<Cplx> d(basis_.dim);
        for (long long mi = 0; mi < basis_.n_mom; ++mi) {
            LatticeVector lv = LatticeVector::from_root_coords(basis_.moms[mi]);
            double p2 = boost::rational_cast<double>(inner(alg_, lv, lv));
            for (long long oj = 0; oj < basis_.n_occ; ++oj)
                d[basis_.index(mi, oj)] = 0.5 * p2 + basis_.occ_level[oj];
        }
        op = OperatorMatrix::diagonal(d);
    } else {
        std::vector<OperatorMatrix> parts;
        /* zero-mode cross terms p . a_m; momentum diagonals commute with
           oscillators, so the product order is immaterial */
        for (int i = 0; i < r; ++i)
            parts.push_back(
                multiply(momentum_component_diag(basis_, i), osc_full(i, m), cfg_.policy));
        if (m > 0) {
            for (int n = 1; n <= m - 1; ++n)
                for (int i = 0; i < r; ++i) {
                    OperatorMatrix t =
                        multiply(osc_full(i, m - n), osc_full(i, n), cfg_.policy);
                    t *= Cplx(0.5, 0.0);
                    parts.push_back(std::move(t));
                }
            for (int v = m + 1; v <= L; ++v)
                for (int i = 0; i < r; ++i)
                    parts.push_back(multiply(osc_full(i, m - v), osc_full(i, v), cfg_.policy));
        } else {
            const int mu = -m;
            for (int n = 1; n <= mu - 1; ++n)
                for (int i = 0; i < r; ++i) {
                    OperatorMatrix t =
                        multiply(osc_full(i, -n), osc_full(i, -(mu - n)), cfg_.policy);
                    t *= Cplx(0.5, 0.0);
                    parts.push_back(std::move(t));
                }
            for (int v = 1; v <= L; ++v)
                for (int i = 0; i < r; ++i)
                    parts.push_back(
                        multiply(osc_full(i, -(v + mu)), osc_full(i, v), cfg_.policy));
        }
        std::vector<std::pair<Cplx, const OperatorMatrix*>> terms;
        for (const auto& p : parts) terms.push_back({Cplx(1.0, 0.0), &p});
        op = lincomb(terms);
    }
    return vir_cache_.emplace(m, std::move(op)).first->second;
}

Report verify_site_algebra(Site& site, int mrange, double tol) {
    const SimplyLacedAlgebra& g = site.algebra();
    const ExecPolicy pol = site.policy();
    const long long dim = site.basis().dim;
    Report rep;
    rep.title = "single-site algebra";
    rep.meta["algebra"] = g.name;
    rep.meta["level_max"] = fmt::format("{}", site.config().level_max);
    rep.meta["mom_bound"] = fmt::format("{}", site.config().mom_bound);
    rep.meta["mrange"] = fmt::format("{}", mrange);

    std::vector<IVec> simple;
    for (int i = 0; i < g.rank; ++i) {
        IVec e(g.rank, 0);
        e[i] = 1;
        simple.push_back(e);
    }
    std::vector<int> modes;
    for (int m = -mrange; m <= mrange; ++m) modes.push_back(m);

    auto add = [&](std::string id, std::string family, double resid,
                   std::map<std::string, double> values = {}) {
        RelationRecord rec;
        rec.id = std::move(id);
        rec.family = std::move(family);
        rec.residual = resid;
        rec.tol = tol;
        rec.pass = resid < tol;
        rec.values = std::move(values);
        rep.records.push_back(std::move(rec));
    };

    /* [mu.a_m, nu.a_n] = m (mu.nu) delta_{m+n} */
    for (const IVec& mu : simple)
        for (const IVec& nu : simple) {
            double worst = 0.0;
            for (int m : modes)
                for (int n : modes) {
                    OperatorMatrix lhs =
                        commutator(site.heisenberg(mu, m), site.heisenberg(nu, n), pol);
                    OperatorMatrix rhs = OperatorMatrix::zero(dim);
                    if (m + n == 0) {
                        double c = m * static_cast<double>(exact_pairing(g, mu, nu));
                        rhs = OperatorMatrix::identity(dim);
                        rhs *= Cplx(c, 0.0);
                    }
                    worst = std::max(worst, diff_max(lhs, rhs));
                }
            add(fmt::format("[H{}_m, H{}_n] all |m|,|n|<={}", coords_str(mu), coords_str(nu),
                            mrange),
                "HH", worst);
        }

    /* [mu.a_m, E_{alpha,n}] = (mu.alpha) E_{alpha,m+n} */
    for (const IVec& mu : simple)
        for (const IVec& alpha : g.roots) {
            double worst = 0.0;
            for (int m : modes)
                for (int n : modes) {
                    OperatorMatrix lhs =
                        commutator(site.heisenberg(mu, m), site.vertex(alpha, n), pol);
                    OperatorMatrix rhs = site.vertex(alpha, m + n);
                    rhs *= Cplx(static_cast<double>(exact_pairing(g, mu, alpha)), 0.0);
                    worst = std::max(worst, diff_max(lhs, rhs));
                }
            add(fmt::format("[H{}_m, E{}_n] all |m|,|n|<={}", coords_str(mu), coords_str(alpha),
                            mrange),
                "HE", worst);
        }

    /* [E_{alpha,m}, E_{beta,n}] by pairing class */
    for (const IVec& alpha : g.roots)
        for (const IVec& beta : g.roots) {
            const long long ab = exact_pairing(g, alpha, beta);
            double worst = 0.0;
            for (int m : modes)
                for (int n : modes) {
                    OperatorMatrix lhs =
                        commutator(site.vertex(alpha, m), site.vertex(beta, n), pol);
                    OperatorMatrix rhs = OperatorMatrix::zero(dim);
                    if (ab == -2) {
                        OperatorMatrix h = site.heisenberg(alpha, m + n);
                        OperatorMatrix id = OperatorMatrix::identity(dim);
                        id *= Cplx(m + n == 0 ? double(m) : 0.0, 0.0);
                        rhs = lincomb({{Cplx(1.0, 0.0), &h}, {Cplx(1.0, 0.0), &id}});
                    } else if (ab == -1) {
                        IVec sum(g.rank);
                        for (int i = 0; i < g.rank; ++i) sum[i] = alpha[i] + beta[i];
                        rhs = site.vertex(sum, m + n);
                        rhs *= Cplx(double(site.cocycle().epsilon(alpha, beta)), 0.0);
                    }
                    worst = std::max(worst, diff_max(lhs, rhs));
                }
            add(fmt::format("[E{}_m, E{}_n] all |m|,|n|<={}", coords_str(alpha),
                            coords_str(beta), mrange),
                fmt::format("EE{}", ab), worst);
        }

    /* [L_m, mu.a_n] = -n mu.a_{m+n} */
    for (const IVec& mu : simple) {
        double worst = 0.0;
        for (int m : modes)
            for (int n : modes) {
                OperatorMatrix lhs = commutator(site.virasoro(m), site.heisenberg(mu, n), pol);
                OperatorMatrix rhs = site.heisenberg(mu, m + n);
                rhs *= Cplx(double(-n), 0.0);
                worst = std::max(worst, diff_max(lhs, rhs));
            }
        add(fmt::format("[L_m, H{}_n] all |m|,|n|<={}", coords_str(mu), mrange), "LH", worst);
    }

    /* [L_m, E_{alpha,n}] = -n E_{alpha,m+n} */
    for (const IVec& alpha : g.roots) {
        double worst = 0.0;
        for (int m : modes)
            for (int n : modes) {
                OperatorMatrix lhs = commutator(site.virasoro(m), site.vertex(alpha, n), pol);
                OperatorMatrix rhs = site.vertex(alpha, m + n);
                rhs *= Cplx(double(-n), 0.0);
                worst = std::max(worst, diff_max(lhs, rhs));
            }
        add(fmt::format("[L_m, E{}_n] all |m|,|n|<={}", coords_str(alpha), mrange), "LE", worst);
    }

    /* [L_m, L_n] = (m-n) L_{m+n} + (r/12) m(m^2-1) delta_{m+n} */
    {
        double worst = 0.0;
        for (int m : modes)
            for (int n : modes) {
                OperatorMatrix lhs = commutator(site.virasoro(m), site.virasoro(n), pol);
                OperatorMatrix l = site.virasoro(m + n);
                l *= Cplx(double(m - n), 0.0);
                OperatorMatrix id = OperatorMatrix::identity(dim);
                double c = (m + n == 0) ? g.rank / 12.0 * m * (m * m - 1.0) : 0.0;
                id *= Cplx(c, 0.0);
                OperatorMatrix rhs = lincomb({{Cplx(1.0, 0.0), &l}, {Cplx(1.0, 0.0), &id}});
                worst = std::max(worst, diff_max(lhs, rhs));
            }
        add(fmt::format("[L_m, L_n] all |m|,|n|<={}", mrange), "LL", worst);
    }

    /* adjointness on the trustworthy block */
    {
        double worst = 0.0;
        for (const IVec& mu : simple)
            for (int m : modes)
                worst = std::max(
                    worst, adjoint_residual(site.heisenberg(mu, m), site.heisenberg(mu, -m)));
        add("H(mu,m)^+ = H(mu,-m)", "adjoint", worst);
        worst = 0.0;
        for (const IVec& alpha : g.roots) {
            IVec neg(g.rank);
            for (int i = 0; i < g.rank; ++i) neg[i] = -alpha[i];
            for (int m : modes)
                worst = std::max(worst,
                                 adjoint_residual(site.vertex(alpha, m), site.vertex(neg, -m)));
        }
        add("E(alpha,m)^+ = E(-alpha,-m)", "adjoint", worst);
        worst = 0.0;
        for (int m : modes)
            worst = std::max(worst, adjoint_residual(site.virasoro(m), site.virasoro(-m)));
        add("L_m^+ = L_{-m}", "adjoint", worst);
    }

    /* pinned vacuum expectations; an unsafe vacuum column means the
       truncation is too small to support the check and is reported as such */
    {
        const long long v0 = site.basis().vacuum();
        IVec alpha(g.rank, 0), neg(g.rank, 0);
        alpha[0] = 1;
        neg[0] = -1;
        OperatorMatrix c1 = commutator(site.vertex(alpha, 1), site.vertex(neg, -1), pol);
        double ee = c1.entry(v0, v0).real();
        add(fmt::format("<0|[E{}_1, E{}_-1]|0> = 1", coords_str(alpha), coords_str(neg)),
            "central", c1.safe[v0] ? std::abs(ee - 1.0) : 1.0 / 0.0,
            {{"measured", ee}, {"expected", 1.0}, {"vacuum_column_safe", double(c1.safe[v0])}});
        OperatorMatrix c2 = commutator(site.virasoro(2), site.virasoro(-2), pol);
        double ll = c2.entry(v0, v0).real();
        add("<0|[L_2, L_-2]|0> = r/2", "central",
            c2.safe[v0] ? std::abs(ll - g.rank / 2.0) : 1.0 / 0.0,
            {{"measured", ll},
             {"expected", g.rank / 2.0},
             {"vacuum_column_safe", double(c2.safe[v0])}});
    }

    return rep;
}

}  // namespace kmsurf
