#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "kmsurf/report.hpp"
#include "kmsurf/runner.hpp"

namespace {

using namespace kmsurf;

std::string render(const Report& rep, const std::string& format) {
    if (format == "json") return render_json(rep);
    if (format == "csv") return render_csv(rep);
    return render_table(rep);
}

bool write_out(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
        return true;
    }
    std::ofstream os(path);
    if (!os) {
        std::fprintf(stderr, "error: cannot open output path %s\n", path.c_str());
        return false;
    }
    os << text;
    return static_cast<bool>(os);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "oscillator realisations of current and quadratic algebras on the circle pair and the "
        "sphere; every bracket is rebuilt from truncated mode matrices and checked against the "
        "tabulated structure constants"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "kmsurf 0.1.0");
    app.set_config("--config", "", "flat key=value config file; command line and environment win");
    app.allow_config_extras(CLI::config_extras_mode::error);

    RunConfig rc;
    std::string format = "table";
    std::string out_path;
    bool no_timestamp = false;
    bool serial = false;
    std::string report_path;
    bool cfg_level = false, cfg_mom = false;

    /* Config keys are flat, so every tunable gets a hidden top-level mirror.
       Mirror callbacks run before subcommand option callbacks, which keeps the
       precedence config < environment < command line. */
    auto hidden = [](CLI::Option* o) { o->group(""); };
    hidden(app.add_option("--algebra", rc.algebra));
    hidden(app.add_option("--window", rc.window));
    hidden(app.add_option_function<int>("--level", [&](int v) {
        rc.level_max = v;
        cfg_level = true;
    }));
    hidden(app.add_option("--modes", rc.mrange));
    hidden(app.add_option_function<int>("--mom-bound", [&](int v) {
        rc.mom_bound = v;
        cfg_mom = true;
    }));
    hidden(app.add_option("--sites", rc.nsites));
    hidden(app.add_option("--lmax", rc.lmax));
    hidden(app.add_option("--grid", rc.grid_nodes));
    hidden(app.add_option("--prange", rc.prange));
    hidden(app.add_option_function<double>("--tol", [&](double v) {
        rc.tol = v;
        rc.tol_sphere = v;
    }));
    hidden(app.add_option("--tol-central", rc.tol_central));
    hidden(app.add_option("--surface", rc.surface)
               ->check(CLI::IsMember({"torus", "sphere", "both"})));
    hidden(app.add_option("--format", format)->check(CLI::IsMember({"json", "csv", "table"})));
    hidden(app.add_option("--out", out_path));
    hidden(app.add_flag("--no-timestamp", no_timestamp));
    hidden(app.add_flag("--serial", serial));

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json|csv|table")
            ->check(CLI::IsMember({"json", "csv", "table"}))
            ->envname("KMSURF_FORMAT");
        sub->add_option("--out", out_path, "write output to this path instead of stdout")
            ->envname("KMSURF_OUT");
        sub->add_flag("--no-timestamp", no_timestamp, "omit the timestamp, byte-stable output")
            ->envname("KMSURF_NO_TIMESTAMP");
    };
    auto add_algebra = [&](CLI::App* sub) {
        sub->add_option("--algebra", rc.algebra, "series and rank: A1, A2, A3, D4, E6, ...")
            ->envname("KMSURF_ALGEBRA");
        sub->add_flag("--serial", serial, "single-threaded kernels")->envname("KMSURF_SERIAL");
    };

    CLI::App* verify = app.add_subcommand("verify", "run one relation-checking suite");
    verify->require_subcommand(1);
    verify->fallthrough();

    CLI::App* vc = verify->add_subcommand("cocycle", "sign-function identities on a window");
    vc->fallthrough();
    add_algebra(vc);
    add_output(vc);
    vc->add_option("--window", rc.window, "coordinate window bound")->envname("KMSURF_WINDOW");

    CLI::App* vs = verify->add_subcommand("site", "single-circle mode algebra on the truncation");
    vs->fallthrough();
    add_algebra(vs);
    add_output(vs);
    vs->add_option("--level", rc.level_max, "oscillator level cutoff")->envname("KMSURF_LEVEL");
    vs->add_option("--modes", rc.mrange, "z-mode range")->envname("KMSURF_MODES");
    vs->add_option("--mom-bound", rc.mom_bound, "momentum window bound")
        ->envname("KMSURF_MOM_BOUND");
    vs->add_option("--tol", rc.tol, "residual tolerance")->envname("KMSURF_TOL");

    CLI::App* vt = verify->add_subcommand("torus", "double-index algebra on circle nodes");
    vt->fallthrough();
    add_algebra(vt);
    add_output(vt);
    vt->add_option("--sites", rc.nsites, "node count N")->envname("KMSURF_SITES");
    vt->add_option("--modes", rc.mrange, "z-mode range")->envname("KMSURF_MODES");
    vt->add_option("--level", rc.level_max, "oscillator level cutoff")->envname("KMSURF_LEVEL");
    vt->add_option("--mom-bound", rc.mom_bound, "momentum window bound")
        ->envname("KMSURF_MOM_BOUND");
    vt->add_option("--tol", rc.tol, "node-local residual tolerance")->envname("KMSURF_TOL");
    vt->add_option("--tol-central", rc.tol_central, "central-term tolerance")
        ->envname("KMSURF_TOL_CENTRAL");

    CLI::App* vp = verify->add_subcommand("sphere", "double-index algebra on Legendre nodes");
    vp->fallthrough();
    add_algebra(vp);
    add_output(vp);
    vp->add_option("--lmax", rc.lmax, "degree cutoff")->envname("KMSURF_LMAX");
    vp->add_option("--grid", rc.grid_nodes, "quadrature node count, 0 = 2*lmax+2")
        ->envname("KMSURF_GRID");
    CLI::Option* vp_level =
        vp->add_option("--level", rc.level_max, "oscillator level cutoff, default 2*lmax");
    CLI::Option* vp_mom =
        vp->add_option("--mom-bound", rc.mom_bound, "momentum window bound, default 3");
    vp->add_option("--tol", rc.tol_sphere, "node-local residual tolerance")
        ->envname("KMSURF_TOL");
    vp->add_option("--tol-central", rc.tol_central, "reduction tolerance")
        ->envname("KMSURF_TOL_CENTRAL");

    CLI::App* vr = verify->add_subcommand("regularization",
                                          "zeta assignments and damped coincident kernels");
    vr->fallthrough();
    add_output(vr);

    CLI::App* jc = app.add_subcommand("jacobi", "Jacobi identity sweep over the abstract tables");
    jc->fallthrough();
    add_algebra(jc);
    add_output(jc);
    jc->add_option("--surface", rc.surface, "torus|sphere|both")
        ->check(CLI::IsMember({"torus", "sphere", "both"}))
        ->envname("KMSURF_SURFACE");
    jc->add_option("--modes", rc.mrange, "z-mode range, exact sweep")->envname("KMSURF_MODES");
    jc->add_option("--prange", rc.prange, "circle-mode range, exact sweep")
        ->envname("KMSURF_PRANGE");
    jc->add_option("--lmax", rc.lmax, "degree cutoff, sphere sweep")->envname("KMSURF_LMAX");
    jc->add_option("--tol", rc.tol_sphere, "sphere sweep tolerance")->envname("KMSURF_TOL");

    CLI::App* co = app.add_subcommand("coeffs", "export basis-product coefficients");
    co->fallthrough();
    add_output(co);
    co->add_option("--lmax", rc.lmax, "degree cutoff")->envname("KMSURF_LMAX");

    CLI::App* rp = app.add_subcommand("report", "re-render a saved JSON report");
    rp->fallthrough();
    add_output(rp);
    rp->add_option("input", report_path, "saved JSON report")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    rc.timestamp = !no_timestamp;
    rc.parallel = !serial;

    try {
        std::string text;
        bool fail = false;
        if (verify->got_subcommand(vc)) {
            const Report r = run_verify_cocycle(rc);
            text = render(r, format);
            fail = !r.all_pass();
        } else if (verify->got_subcommand(vs)) {
            const Report r = run_verify_site(rc);
            text = render(r, format);
            fail = !r.all_pass();
        } else if (verify->got_subcommand(vt)) {
            const Report r = run_verify_torus(rc);
            text = render(r, format);
            fail = !r.all_pass();
        } else if (verify->got_subcommand(vp)) {
            if (!*vp_level && !cfg_level) rc.level_max = 2 * rc.lmax;
            if (!*vp_mom && !cfg_mom) rc.mom_bound = 3;
            const Report r = run_verify_sphere(rc);
            text = render(r, format);
            fail = !r.all_pass();
        } else if (verify->got_subcommand(vr)) {
            const Report r = run_verify_regularization(rc);
            text = render(r, format);
            fail = !r.all_pass();
        } else if (app.got_subcommand(jc)) {
            const Report r = run_jacobi(rc);
            text = render(r, format);
            fail = !r.all_pass();
        } else if (app.got_subcommand(co)) {
            text = format == "json"  ? coeffs_json(rc.lmax, rc.timestamp)
                   : format == "csv" ? coeffs_csv(rc.lmax)
                                     : coeffs_table(rc.lmax);
        } else if (app.got_subcommand(rp)) {
            std::ifstream is(report_path);
            if (!is) throw std::runtime_error("cannot read " + report_path);
            std::stringstream ss;
            ss << is.rdbuf();
            const Report r = parse_report_json(ss.str());
            text = render(r, format);
            fail = !r.all_pass();
        }
        if (!write_out(text, out_path)) return 2;
        return fail ? 1 : 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
