#include "fskel/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fskel/error.hpp"
#include "fskel/io.hpp"

namespace fskel::cli {

using nlohmann::json;

double default_eps() {
    if (const char* env = std::getenv(kEpsEnv)) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
    }
    return kDefaultEps;
}

namespace {

std::string edges_text(const HataGraph& h) {
    std::string s;
    for (auto [i, j] : h.edges) s += (s.empty() ? "" : " ") + std::string("{") + std::to_string(i) + "," + std::to_string(j) + "}";
    return s.empty() ? "(none)" : s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << content;
}

// Maps library errors onto exit codes; everything else propagates.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError& e) {
        err << "error: invalid input at " << e.what() << "\n";
        return kExitParse;
    } catch (const InconclusiveError& e) {
        err << e.what() << "\n";
        return kExitInconclusive;
    } catch (const NotConnectedError& e) {
        err << e.what() << "\n";
        return kExitFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailed;
    }
}

}  // namespace

int run_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Ifs ifs = parse_ifs_file(args.file);
        const NeighborGraph graph = build_neighbor_graph(ifs, {args.cap, args.eps, std::nullopt});

        json report{{"name", ifs.name()},
                    {"maps", ifs.size()},
                    {"mode", to_string(graph.mode())},
                    {"status", to_string(graph.status())},
                    {"vertices", graph.vertices().size()},
                    {"edges", graph.edges().size()}};

        std::optional<DStarEvidence> dstar;
        const double bound = args.dstar_bound.value_or(2.0 * graph.ball().radius);
        if (detect_single_matrix(ifs, args.eps)) {
            dstar = dstar_discreteness_check(ifs, args.dstar_horizon, bound);
            report["dstar"] = {{"horizon", args.dstar_horizon},
                               {"bound", bound},
                               {"min_gap", dstar->min_gap},
                               {"count", dstar->count}};
        }

        int code = kExitOk;
        std::ostringstream text;
        if (graph.status() == GraphStatus::CapExceeded) {
            report["inconclusive"] = true;
            text << "inconclusive: neighbor-map cap exceeded (" << graph.vertices().size() << " vertices explored, cap "
                 << args.cap << ")\n";
            code = kExitInconclusive;
        } else {
            const HataGraph h = hata_graph(ifs, graph);
            const bool connected = is_connected(h);
            json edges = json::array();
            for (const auto& e : graph.edges()) edges.push_back({{"from", e.from}, {"to", e.to}, {"label", to_string(e.label)}});
            report["neighbor_edges"] = std::move(edges);
            report["hata_edges"] = to_json(h);
            report["connected"] = connected;
            text << "finite type; |Δ| = " << graph.vertices().size() << " vertices, " << graph.edges().size()
                 << " edges; Hata edges = " << edges_text(h) << "; " << (connected ? "connected" : "disconnected")
                 << "\n";
            if (!connected) code = kExitFailed;
        }
        if (dstar)
            text << "D* evidence: min gap " << dstar->min_gap << " over " << dstar->count << " elements (horizon "
                 << args.dstar_horizon << ", |b| <= " << bound << ")\n";

        if (args.json)
            out << report.dump(2) << "\n";
        else
            out << text.str();
        return code;
    });
}

int run_skeleton(const SkeletonArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Ifs ifs = parse_ifs_file(args.file);
        SkeletonOptions opts;
        if (args.spanning == "tree")
            opts.spanning = SpanningMode::Tree;
        else if (args.spanning == "full")
            opts.spanning = SpanningMode::Full;
        else
            throw ParseError("--spanning must be 'tree' or 'full'");
        opts.policy = parse_walk_policy(args.policy);
        opts.neighbor = {args.cap, args.eps, std::nullopt};
        opts.eps = args.eps;
        const Skeleton sk = build_skeleton(ifs, opts);
        const json report = to_json(sk, args.eps);
        if (!args.out.empty()) write_file(args.out, report.dump(2) + "\n");
        if (args.json) {
            out << report.dump(2) << "\n";
        } else {
            out << "skeleton with " << sk.points.size() << " points (Hata edges " << edges_text(sk.hata)
                << "; spanning " << edges_text(sk.spanning) << ")\n";
            for (const auto& p : sk.pairs)
                out << "  pair {" << p.edge.first << "," << p.edge.second << "}: " << p.omega.to_string() << " , "
                    << p.gamma.to_string() << "\n";
            out.precision(12);
            for (std::size_t k = 0; k < sk.points.size(); ++k)
                out << "  a_" << (k + 1) << " = (" << sk.points[k].x << ", " << sk.points[k].y << ")  "
                    << sk.codings[k].front().to_string() << "\n";
            out << "  stability residual " << sk.report.stability_residual << ", H(A) connected\n";
        }
        return static_cast<int>(kExitOk);
    });
}

int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Ifs ifs = parse_ifs_file(args.file);
        const auto points = parse_points_file(args.points);
        const SkeletonReport r = verify_skeleton(ifs, points, args.eps);
        if (args.json) {
            out << to_json(r, args.eps).dump(2) << "\n";
        } else {
            out << (r.passed() ? "pass" : "fail") << "\n";
            out << "  stability: " << (r.stable ? "ok" : "FAILED") << " (max residual " << r.stability_residual
                << ", eps " << args.eps << ")\n";
            out << "  Hata graph H(A): " << edges_text(r.hata) << " -> " << (r.connected ? "connected" : "NOT connected")
                << "\n";
            if (r.singleton_attractor) out << "  note: a one-point skeleton forces the attractor to be that point\n";
        }
        return static_cast<int>(r.passed() ? kExitOk : kExitFailed);
    });
}

int run_render(const RenderArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Ifs ifs = parse_ifs_file(args.file);
        std::vector<Point> marks;
        if (args.skeleton) {
            SkeletonOptions opts;
            opts.eps = args.eps;
            opts.neighbor.eps = args.eps;
            marks = build_skeleton(ifs, opts).points;
        }
        const std::string svg = render_svg(ifs, {args.depth, 800.0}, marks);
        if (args.svg.empty())
            out << svg;
        else
            write_file(args.svg, svg);
        return static_cast<int>(kExitOk);
    });
}

int run_export_dot(const ExportDotArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Ifs ifs = parse_ifs_file(args.file);
        const NeighborGraph graph = build_neighbor_graph(ifs, {args.cap, args.eps, std::nullopt});
        std::string dot;
        if (args.graph == "neighbor") {
            if (graph.status() != GraphStatus::FiniteType) throw InconclusiveError("inconclusive: neighbor-map cap exceeded");
            dot = neighbor_graph_dot(ifs, graph);
        } else if (args.graph == "hata") {
            dot = hata_graph_dot(ifs, hata_graph(ifs, graph));
        } else {
            throw ParseError("--graph must be 'neighbor' or 'hata'");
        }
        if (args.out.empty())
            out << dot;
        else
            write_file(args.out, dot);
        return static_cast<int>(kExitOk);
    });
}

}  // namespace fskel::cli
