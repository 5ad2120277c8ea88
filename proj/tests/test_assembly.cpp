#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kmsurf/assembly.hpp"

using namespace kmsurf;

namespace {

Site make_site(const std::string& algebra, int level_max, int mom_bound) {
    SiteConfig cfg;
    cfg.algebra = algebra;
    cfg.level_max = level_max;
    cfg.mom_bound = mom_bound;
    return Site(cfg);
}

const RelationRecord* find_prefix(const Report& r, const std::string& prefix) {
    for (const auto& rec : r.records)
        if (rec.id.rfind(prefix, 0) == 0) return &rec;
    return nullptr;
}

}  // namespace

TEST_CASE("circle-pair algebra on one to four nodes, with central linearity") {
    Site site = make_site("A1", 3, 2);
    for (int nsites = 1; nsites <= 4; ++nsites) {
        CAPTURE(nsites);
        const Report rep = verify_torus_algebra(site, nsites, 2, 1e-10, 1e-10);
        CHECK(rep.all_pass());
        CHECK(rep.meta.at("nodes") == std::to_string(nsites));
        CHECK(rep.meta.at("algebra") == "A1");

        /* the measured node sum grows linearly with the node count while the
           weighted reduction stays at the continuum value */
        const struct {
            const char* prefix;
            double core;
        } pinned[] = {{"momentum pair, conserving", 2.0},
                      {"charge pair, conserving", 1.0},
                      {"quadratic pair, conserving", 0.5}};
        for (const auto& p : pinned) {
            CAPTURE(p.prefix);
            const auto* rec = find_prefix(rep, p.prefix);
            REQUIRE(rec != nullptr);
            CHECK(rec->family == "central");
            CHECK(rec->values.at("safe_cols") > 0);
            CHECK(std::abs(rec->values.at("core") - p.core) < 1e-12);
            CHECK(std::abs(rec->values.at("measured_sum_re") - p.core * nsites) < 1e-10);
            CHECK(std::abs(rec->values.at("expected_sum") - p.core * nsites) < 1e-12);
            CHECK(std::abs(rec->values.at("measured_sum_im")) < 1e-10);
            CHECK(std::abs(rec->values.at("reduced_measured_re") - p.core) < 1e-10);
            CHECK(std::abs(rec->values.at("reduced_expected") - p.core) < 1e-12);
        }
        if (nsites >= 2) {
            const auto* nc = find_prefix(rep, "charge pair, non-conserving");
            REQUIRE(nc != nullptr);
            CHECK(std::abs(nc->values.at("measured_sum_re")) < 1e-10);
            CHECK(nc->values.at("expected_sum") == 0.0);
        }
    }
}

TEST_CASE("circle-pair family sweeps stay exact for rank two") {
    Site site = make_site("A2", 2, 1);
    const Report rep = verify_torus_algebra(site, 2, 1, 1e-10, 1e-10);
    CHECK(rep.all_pass());
    for (const char* fam : {"HH", "HE", "EE", "LH", "LE", "LL"}) {
        CAPTURE(fam);
        bool found = false;
        for (const auto& rec : rep.records)
            if (rec.family == fam && rec.values.count("pairs")) {
                found = true;
                CHECK(rec.values.at("no_safe_pairs") == 0.0);
                CHECK(rec.values.at("min_safe_cols") >= 1.0);
                CHECK(rec.values.at("pairs") > 0.0);
            }
        CHECK(found);
    }
}

TEST_CASE("truncation starvation is counted, not silently passed") {
    /* at level cutoff 3 the extreme quadratic pairs have no safe columns;
       the sweep reports them per family instead of faking a residual */
    Site site = make_site("A1", 3, 2);
    const Report rep = verify_torus_algebra(site, 3, 2, 1e-10, 1e-10);
    CHECK(rep.all_pass());
    double no_safe = 0.0, pairs = 0.0;
    for (const auto& rec : rep.records)
        if (rec.values.count("no_safe_pairs")) {
            no_safe += rec.values.at("no_safe_pairs");
            pairs += rec.values.at("pairs");
        }
    CHECK(no_safe > 0.0);
    CHECK(no_safe < 0.05 * pairs);
}

TEST_CASE("sphere algebra at degree two, including the degree-mismatch reduction") {
    Site site = make_site("A1", 4, 3);
    const Report rep = verify_sphere_algebra(site, 2, 1e-8, 1e-10);
    CHECK(rep.all_pass());
    CHECK(rep.meta.at("algebra") == "A1");

    const struct {
        const char* prefix;
        double reduced;
    } pinned[] = {{"momentum pair, matched degrees", -2.0},
                  {"charge pair, matched degrees", -1.0},
                  {"quadratic pair, matched degrees", 0.5},
                  {"momentum pair, mismatched degrees", 0.0}};
    for (const auto& p : pinned) {
        CAPTURE(p.prefix);
        const auto* rec = find_prefix(rep, p.prefix);
        REQUIRE(rec != nullptr);
        CHECK(rec->family == "central");
        CHECK(rec->values.at("safe_cols") > 0);
        CHECK(std::abs(rec->values.at("reduced_measured_re") - p.reduced) < 1e-10);
        CHECK(std::abs(rec->values.at("reduced_expected") - p.reduced) < 1e-12);
    }

    for (const char* fam : {"HH", "HE", "EE", "LH", "LE", "LL"}) {
        CAPTURE(fam);
        for (const auto& rec : rep.records)
            if (rec.family == fam && rec.values.count("pairs"))
                CHECK(rec.values.at("no_safe_pairs") == 0.0);
    }
}

TEST_CASE("sphere algebra for rank two at degree one") {
    Site site = make_site("A2", 2, 2);
    const Report rep = verify_sphere_algebra(site, 1, 1e-8, 1e-10);
    CHECK(rep.all_pass());
    const auto* rec = find_prefix(rep, "charge pair, matched degrees");
    REQUIRE(rec != nullptr);
    CHECK(std::abs(rec->values.at("reduced_measured_re") - (-1.0)) < 1e-10);
}

TEST_CASE("node count is a free parameter above the quadrature threshold") {
    Site site = make_site("A1", 4, 3);
    const Report dense = verify_sphere_algebra(site, 2, 1e-8, 1e-10, 8);
    const Report sparse = verify_sphere_algebra(site, 2, 1e-8, 1e-10, 3);
    CHECK(dense.all_pass());
    CHECK(sparse.all_pass());
    /* the weighted reductions agree across grids */
    for (const char* prefix : {"momentum pair, matched degrees", "quadratic pair, matched degrees"}) {
        const auto* a = find_prefix(dense, prefix);
        const auto* b = find_prefix(sparse, prefix);
        REQUIRE(a != nullptr);
        REQUIRE(b != nullptr);
        CHECK(std::abs(a->values.at("reduced_measured_re") - b->values.at("reduced_measured_re")) <
              1e-10);
    }
    CHECK_THROWS_AS(verify_sphere_algebra(site, 2, 1e-8, 1e-10, 2), std::invalid_argument);
}
