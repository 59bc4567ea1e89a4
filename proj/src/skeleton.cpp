#include "fskel/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fskel/error.hpp"

namespace fskel {

BifurcationPair walk_to_codings(const Ifs& ifs, const NeighborGraph& graph, Letter i, Letter j, const EpWalk& walk) {
    if (i > j) std::swap(i, j);
    const auto forward_start = graph.find_basic(ifs, j, i);  // S_i^{-1} o S_j
    const auto backward_start = graph.find_basic(ifs, i, j); // S_j^{-1} o S_i
    Letter inverse_letter = 0, forward_letter = 0;
    if (forward_start && *forward_start == walk.start) {
        inverse_letter = i;
        forward_letter = j;
    } else if (backward_start && *backward_start == walk.start) {
        inverse_letter = j;
        forward_letter = i;
    } else {
        throw ValidationError("walk.start", "walk does not start at a basic neighbor map of the edge");
    }

    Word inv_pre{inverse_letter}, fwd_pre{forward_letter}, inv_cyc, fwd_cyc;
    auto read = [](const std::vector<NeighborEdge>& edges, Word& inv, Word& fwd) {
        for (const auto& e : edges) {
            if (e.label.inverse_side != 0) inv.push_back(e.label.inverse_side);
            if (e.label.forward_side != 0) fwd.push_back(e.label.forward_side);
        }
    };
    read(walk.path, inv_pre, fwd_pre);
    read(walk.cycle, inv_cyc, fwd_cyc);
    if (inv_cyc.empty() || fwd_cyc.empty())
        throw DegenerateCycleError("cycle extends only one side of the neighbor map");

    EpCoding inv(std::move(inv_pre), std::move(inv_cyc));
    EpCoding fwd(std::move(fwd_pre), std::move(fwd_cyc));
    const bool inverse_is_i = inverse_letter == i;
    BifurcationPair pair{{i, j}, inverse_is_i ? inv : fwd, inverse_is_i ? fwd : inv, {}};
    pair.point = pi_eval(ifs, pair.omega);
    return pair;
}

BifurcationPair bifurcation_pair(const Ifs& ifs, const NeighborGraph& graph, Letter i, Letter j,
                                 const WalkPolicy& policy) {
    if (graph.status() != GraphStatus::FiniteType)
        throw InconclusiveError("neighbor-map cap exceeded; no bifurcation pair search");
    if (i > j) std::swap(i, j);
    auto start = graph.find_basic(ifs, j, i);
    if (!start) start = graph.find_basic(ifs, i, j);
    if (!start)
        throw NoWalkError("edge {" + std::to_string(i) + "," + std::to_string(j) + "} is not in the Hata graph");
    return walk_to_codings(ifs, graph, i, j, find_ep_walk(graph, *start, policy));
}

SkeletonReport verify_skeleton(const Ifs& ifs, std::span<const Point> points, double eps) {
    SkeletonReport report;
    report.hata.n = ifs.size();
    if (points.empty()) return report;

    std::vector<std::vector<Point>> images(ifs.size());
    for (std::size_t k = 0; k < ifs.size(); ++k)
        for (const auto& a : points) images[k].push_back(ifs.maps()[k](a));

    for (const auto& a : points) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& img : images)
            for (const auto& b : img) best = std::min(best, distance(a, b));
        report.stability_residual = std::max(report.stability_residual, best);
    }
    report.stable = report.stability_residual <= eps;

    for (std::size_t a = 0; a < ifs.size(); ++a) {
        for (std::size_t b = a + 1; b < ifs.size(); ++b) {
            bool touch = false;
            for (const auto& p : images[a]) {
                for (const auto& q : images[b])
                    if (distance(p, q) <= eps) {
                        touch = true;
                        break;
                    }
                if (touch) break;
            }
            if (touch) report.hata.add_edge(static_cast<Letter>(a + 1), static_cast<Letter>(b + 1));
        }
    }
    report.connected = is_connected(report.hata);
    report.singleton_attractor = points.size() == 1 && report.passed();
    return report;
}

bool verify_iteration_invariance(const Ifs& ifs, std::span<const Point> points, int n, double eps) {
    return verify_skeleton(iterate_ifs(ifs, n), points, eps).passed();
}

bool check_zipper(const Ifs& ifs, std::span<const Point> vertices, std::span<const int> signature, double eps) {
    const std::size_t n = ifs.size();
    if (vertices.size() != n + 1) throw ValidationError("vertices", "a zipper needs N + 1 vertices");
    if (signature.size() != n) throw ValidationError("signature", "a zipper needs N signs");
    const Point first = vertices.front();
    const Point last = vertices.back();
    for (std::size_t k = 0; k < n; ++k) {
        const auto& m = ifs.maps()[k];
        Point lo = vertices[k], hi = vertices[k + 1];
        if (signature[k] == -1) std::swap(lo, hi);
        else if (signature[k] != 1) throw ValidationError("signature", "signs must be +1 or -1");
        if (distance(m(first), lo) > eps || distance(m(last), hi) > eps) return false;
    }
    const Point ends[2] = {first, last};
    return verify_skeleton(ifs, ends, eps).passed();
}

Skeleton build_skeleton(const Ifs& ifs, const SkeletonOptions& options) {
    const NeighborGraph graph = build_neighbor_graph(ifs, options.neighbor);
    if (graph.status() != GraphStatus::FiniteType)
        throw InconclusiveError("inconclusive: neighbor-map cap exceeded");

    Skeleton sk;
    sk.neighbor_vertices = graph.vertices().size();
    sk.neighbor_edges = graph.edges().size();
    sk.hata = hata_graph(ifs, graph);
    sk.spanning = spanning_graph(sk.hata, options.spanning);

    for (auto [i, j] : sk.spanning.edges) sk.pairs.push_back(bifurcation_pair(ifs, graph, i, j, options.policy));

    const double dedup = 1e-7 * graph.ball().radius;
    auto add = [&](const EpCoding& c) {
        const Point p = pi_eval(ifs, c);
        for (std::size_t k = 0; k < sk.points.size(); ++k) {
            if (distance(sk.points[k], p) <= dedup) {
                auto& cs = sk.codings[k];
                if (std::find(cs.begin(), cs.end(), c) == cs.end()) cs.push_back(c);
                return;
            }
        }
        sk.points.push_back(p);
        sk.codings.push_back({c});
    };
    // sigma^k for k >= 1 of both codings; the common point pi(omega) itself is
    // the image S_i(pi(sigma omega)) and is not needed in A
    for (const auto& pair : sk.pairs) {
        for (const auto& c : orbit(shift(pair.omega))) add(c);
        for (const auto& c : orbit(shift(pair.gamma))) add(c);
    }

    sk.report = verify_skeleton(ifs, sk.points, options.eps);
    if (!sk.report.passed())
        throw Error("constructed point set failed skeleton verification (residual " +
                    std::to_string(sk.report.stability_residual) + ")");
    return sk;
}

}  // namespace fskel
