#include <iostream>

#include "CLI11.hpp"

#include "fskel/cli.hpp"

int main(int argc, char** argv) {
    using namespace fskel::cli;
    CLI::App app{"Neighbor graphs, Hata graphs and skeletons of planar self-similar sets"};
    app.require_subcommand(1);
    const double eps = default_eps();

    AnalyzeArgs analyze;
    analyze.eps = eps;
    auto* a = app.add_subcommand("analyze", "neighbor graph, finite type status and Hata connectivity");
    a->add_option("file", analyze.file, "IFS document (JSON)")->required();
    a->add_option("--cap", analyze.cap, "maximum number of neighbor maps to explore");
    a->add_option("--eps", analyze.eps, "tolerance (default 1e-9 or $FRACTAL_SKELETON_EPS)");
    a->add_flag("--json", analyze.json, "machine-readable output");
    a->add_option("--dstar-horizon", analyze.dstar_horizon, "generations of D* to enumerate");
    a->add_option("--dstar-bound", analyze.dstar_bound, "norm bound for D* elements");

    SkeletonArgs skeleton;
    skeleton.eps = eps;
    auto* s = app.add_subcommand("skeleton", "construct and verify a skeleton");
    s->add_option("file", skeleton.file, "IFS document (JSON)")->required();
    s->add_option("--spanning", skeleton.spanning, "spanning graph: tree or full")->check(CLI::IsMember({"tree", "full"}));
    s->add_option("--policy", skeleton.policy, "walk policy: self-loop, shortest, or cycle:<labels>");
    s->add_option("--cap", skeleton.cap, "maximum number of neighbor maps to explore");
    s->add_option("--eps", skeleton.eps, "tolerance");
    s->add_flag("--json", skeleton.json, "print the JSON report");
    s->add_option("-o,--out", skeleton.out, "write the JSON report to this file");

    VerifyArgs verify;
    verify.eps = eps;
    auto* v = app.add_subcommand("verify", "check both skeleton axioms for a point set");
    v->add_option("file", verify.file, "IFS document (JSON)")->required();
    v->add_option("--points", verify.points, "JSON list of [x, y] or a skeleton report")->required();
    v->add_option("--eps", verify.eps, "tolerance");
    v->add_flag("--json", verify.json, "machine-readable output");

    RenderArgs render;
    render.eps = eps;
    auto* r = app.add_subcommand("render", "draw attractor samples (and a skeleton) as SVG");
    r->add_option("file", render.file, "IFS document (JSON)")->required();
    r->add_option("--depth", render.depth, "word length of the attractor samples");
    r->add_flag("--skeleton", render.skeleton, "overlay a constructed skeleton");
    r->add_option("--svg", render.svg, "output file (stdout if omitted)");

    ExportDotArgs dot;
    dot.eps = eps;
    auto* d = app.add_subcommand("export-dot", "write the neighbor or Hata graph in DOT");
    d->add_option("file", dot.file, "IFS document (JSON)")->required();
    d->add_option("--graph", dot.graph, "neighbor or hata")->check(CLI::IsMember({"neighbor", "hata"}));
    d->add_option("--out", dot.out, "output file (stdout if omitted)");
    d->add_option("--cap", dot.cap, "maximum number of neighbor maps to explore");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    if (*a) return run_analyze(analyze, std::cout, std::cerr);
    if (*s) return run_skeleton(skeleton, std::cout, std::cerr);
    if (*v) return run_verify(verify, std::cout, std::cerr);
    if (*r) return run_render(render, std::cout, std::cerr);
    return run_export_dot(dot, std::cout, std::cerr);
}
