#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bitension/run.hpp"

namespace {

using bitension::RunConfig;

void add_geometry_options(CLI::App* cmd, RunConfig& cfg, bool with_q) {
    cmd->add_option("--p", cfg.p, "dimension of the first factor sphere")->required();
    if (with_q) cmd->add_option("--q", cfg.q, "dimension of the second factor sphere");
    cmd->add_option("--c", cfg.c, "first semi-axis")->required();
    cmd->add_option("--d", cfg.d, "second semi-axis")->required();
}

void add_numeric_options(CLI::App* cmd, RunConfig& cfg, std::string& scheme) {
    cmd->add_option("--h1", cfg.numeric.h1, "first-derivative step (angle units)");
    cmd->add_option("--h2", cfg.numeric.h2, "second-derivative outer step");
    cmd->add_option("--scheme", scheme, "central_2nd_order or central_4th_order");
    cmd->add_option("--seed", cfg.seed, "seed of the counter-based generator");
    cmd->add_option("--tol", cfg.tol, "classification tolerance on closed-form scalars");
    cmd->add_option("--samples", cfg.samples, "random check points / sweep rows");
}

void add_radii_options(CLI::App* cmd, RunConfig& cfg, double& a_opt, double& b_opt,
                       double& t_opt) {
    cmd->add_option("--a", a_opt, "radius of the first factor");
    cmd->add_option("--b", b_opt, "radius (or height) of the second factor");
    cmd->add_option("--t", t_opt, "constraint-curve angle: a = c cos t, b = d sin t");
    cmd->add_option("--locus", cfg.locus, "minimal or biharmonic");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "bitension: constructs product-sphere immersions into ellipsoids, evaluates their "
        "tension and bitension fields by closed forms and by an independent finite-difference "
        "pipeline, and classifies the minimal / proper-biharmonic radii"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string scheme = "central_4th_order";
    std::string out_path;
    double a_opt = -1.0, b_opt = -1000.0, t_opt = -1000.0;

    CLI::App* t1 = app.add_subcommand("verify-theorem1",
                                      "check the minimal and proper-biharmonic torus radii");
    add_geometry_options(t1, cfg, true);
    add_numeric_options(t1, cfg, scheme);

    CLI::App* t2 = app.add_subcommand(
        "verify-theorem2", "check the equator and the proper-biharmonic hypersphere radii");
    add_geometry_options(t2, cfg, false);
    add_numeric_options(t2, cfg, scheme);

    CLI::App* t3 = app.add_subcommand(
        "verify-composition",
        "check a minimal inner immersion composed with a biharmonic inclusion");
    add_geometry_options(t3, cfg, true);
    add_numeric_options(t3, cfg, scheme);
    t3->add_option("--inner", cfg.inner,
                   "identity | great_sphere:m | clifford_pair:m1,m2")
        ->required();
    t3->add_option("--inner2", cfg.inner2, "second inner map (torus compositions)");

    CLI::App* cl = app.add_subcommand("classify", "classify one immersion configuration");
    add_geometry_options(cl, cfg, true);
    add_numeric_options(cl, cfg, scheme);
    add_radii_options(cl, cfg, a_opt, b_opt, t_opt);

    CLI::App* sw = app.add_subcommand("sweep", "tabulate the constraint curve");
    add_geometry_options(sw, cfg, true);
    add_numeric_options(sw, cfg, scheme);
    sw->add_option("--output", cfg.output, "json or csv");

    CLI::App* bt = app.add_subcommand("bitension", "full bitension report at one point");
    add_geometry_options(bt, cfg, true);
    add_numeric_options(bt, cfg, scheme);
    add_radii_options(bt, cfg, a_opt, b_opt, t_opt);
    bt->add_option("--angles", cfg.angles, "evaluation chart angles");

    for (CLI::App* cmd : {t1, t2, t3, cl, sw, bt}) {
        cmd->add_option("--path", out_path, "write the report here instead of stdout");
    }

    CLI11_PARSE(app, argc, argv);

    cfg.command = app.get_subcommands().front()->get_name();
    if (scheme == "central_2nd_order") {
        cfg.numeric.scheme = bitension::FdScheme::central_2nd_order;
    } else if (scheme == "central_4th_order") {
        cfg.numeric.scheme = bitension::FdScheme::central_4th_order;
    } else {
        std::fprintf(stderr, "unknown scheme '%s'\n", scheme.c_str());
        return 1;
    }
    if (a_opt >= 0.0) cfg.a = a_opt;
    if (b_opt > -999.0) cfg.b = b_opt;
    if (t_opt > -999.0) cfg.t = t_opt;
    if (const char* env_tol = std::getenv("BITENSION_TOL")) {
        if (app.get_subcommands().front()->count("--tol") == 0) cfg.tol = std::atof(env_tol);
    }

    const bitension::RunResult res = bitension::run(cfg);
    if (!res.message.empty()) std::fprintf(stderr, "%s\n", res.message.c_str());
    if (!res.artifact.empty()) {
        if (out_path.empty()) {
            std::fputs(res.artifact.c_str(), stdout);
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::fprintf(stderr, "cannot open '%s' for writing\n", out_path.c_str());
                return 1;
            }
            out << res.artifact;
        }
    }
    return res.exit_code;
}
