#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <fmt/format.h>

#include "kmsurf/cocycle.hpp"
#include "kmsurf/matrix.hpp"
#include "kmsurf/site.hpp"

using namespace kmsurf;

namespace {

template <class F>
double timed(F&& f, int reps) {
    using clock = std::chrono::steady_clock;
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock::now();
        f();
        const auto t1 = clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    std::string algebra = argc > 1 ? argv[1] : "A3";
    const int reps = argc > 2 ? std::atoi(argv[2]) : 3;

    fmt::print("kernel benchmark, algebra {}, best of {}\n", algebra, reps);
    fmt::print("{:<34} {:>12} {:>12} {:>8}\n", "kernel", "serial [s]", "parallel [s]", "speedup");

    {
        SimplyLacedAlgebra g = make_algebra(algebra);
        CocycleTable t = make_cocycle_table(g, 3);
        gauge_fix(t);
        CocycleCheck cs, cp;
        const double ts = timed([&] { cs = check_cocycle_identities(t, ExecPolicy::Serial); }, reps);
        const double tp =
            timed([&] { cp = check_cocycle_identities(t, ExecPolicy::Parallel); }, reps);
        fmt::print("{:<34} {:>12.4f} {:>12.4f} {:>8.2f}\n",
                   fmt::format("sign-identity scan, {} pts", t.npoints), ts, tp, ts / tp);
        if (cs.ok != cp.ok || cs.pairs_checked != cp.pairs_checked ||
            cs.triples_checked != cp.triples_checked) {
            fmt::print(stderr, "MISMATCH between serial and parallel scan results\n");
            return 1;
        }
    }

    {
        SiteConfig cfg;
        cfg.algebra = algebra;
        cfg.level_max = 3;
        cfg.mom_bound = 1;
        Site site(cfg);
        IVec alpha(site.algebra().rank, 0);
        alpha[0] = 1;
        IVec nalpha(site.algebra().rank, 0);
        nalpha[0] = -1;
        const OperatorMatrix& a = site.vertex(alpha, 1);
        const OperatorMatrix& b = site.vertex(nalpha, -1);
        OperatorMatrix rs, rp;
        const double ts = timed([&] { rs = commutator(a, b, ExecPolicy::Serial); }, reps);
        const double tp = timed([&] { rp = commutator(a, b, ExecPolicy::Parallel); }, reps);
        fmt::print("{:<34} {:>12.4f} {:>12.4f} {:>8.2f}\n",
                   fmt::format("mode commutator, dim {}", site.basis().dim), ts, tp, ts / tp);
        if (diff_max(rs, rp) != 0.0) {
            fmt::print(stderr, "MISMATCH between serial and parallel products\n");
            return 1;
        }
    }

    fmt::print("serial and parallel kernels agree bitwise\n");
    return 0;
}
