#include "fskel/neighbor.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "fskel/error.hpp"

namespace fskel {

std::string to_string(EdgeLabel label) {
    auto side = [](Letter k) { return k == 0 ? std::string("ε") : std::to_string(k); };
    return "(" + side(label.inverse_side) + "," + side(label.forward_side) + ")";
}

std::string to_string(GraphStatus status) {
    return status == GraphStatus::FiniteType ? "finite-type" : "cap-exceeded";
}

std::string to_string(NeighborMode mode) { return mode == NeighborMode::Uniform ? "uniform" : "general"; }

// ---------------------------------------------------------------------------
// MapTable

namespace {

bool close_maps(const Similitude& a, const Similitude& b, double quantum, double linear_quantum) {
    return a.reflect() == b.reflect() && std::abs(a.multiplier() - b.multiplier()) <= 2.0 * linear_quantum &&
           distance(a.translation(), b.translation()) <= 2.0 * quantum;
}

}  // namespace

std::optional<std::size_t> MapTable::find(const Similitude& f) const {
    const double scaled[4] = {f.multiplier().real() / linear_quantum_, f.multiplier().imag() / linear_quantum_,
                              f.translation().x / quantum_, f.translation().y / quantum_};
    std::array<std::int64_t, 4> base{}, alt{};
    unsigned near_mask = 0;
    for (int k = 0; k < 4; ++k) {
        base[k] = std::llround(scaled[k]);
        const double frac = scaled[k] - static_cast<double>(base[k]);
        alt[k] = base[k] + (frac > 0 ? 1 : -1);
        if (std::fabs(frac) > 0.25) near_mask |= 1u << k;
    }
    // probe the home cell plus every neighbouring cell a rounding could have split into
    for (unsigned mask = 0; mask < 16; ++mask) {
        if ((mask & ~near_mask) != 0) continue;
        MapKey key;
        key.reflect = f.reflect();
        for (int k = 0; k < 4; ++k) key.cells[k] = (mask >> k) & 1u ? alt[k] : base[k];
        auto it = index_.find(key);
        if (it != index_.end() && close_maps(maps_[it->second], f, quantum_, linear_quantum_)) return it->second;
    }
    return std::nullopt;
}

std::pair<std::size_t, bool> MapTable::insert(const Similitude& f) {
    if (auto hit = find(f)) return {*hit, false};
    const std::size_t idx = maps_.size();
    maps_.push_back(f);
    index_.emplace(canonical_key(f, quantum_, linear_quantum_), idx);
    return {idx, true};
}

// ---------------------------------------------------------------------------
// NeighborGraph

NeighborGraph::NeighborGraph(GraphStatus status, NeighborMode mode, BoundingBall ball, double quantum,
                             std::vector<NeighborVertex> vertices, std::vector<NeighborEdge> edges)
    : status_(status),
      mode_(mode),
      ball_(ball),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      table_(quantum) {
    for (const auto& v : vertices_) table_.insert(v.map);
    std::sort(edges_.begin(), edges_.end(), [](const NeighborEdge& a, const NeighborEdge& b) {
        return std::tie(a.from, a.label, a.to) < std::tie(b.from, b.label, b.to);
    });
    out_begin_.assign(vertices_.size() + 1, 0);
    for (const auto& e : edges_) ++out_begin_[e.from + 1];
    std::partial_sum(out_begin_.begin(), out_begin_.end(), out_begin_.begin());
}

std::span<const NeighborEdge> NeighborGraph::out_edges(std::size_t v) const {
    return std::span<const NeighborEdge>(edges_).subspan(out_begin_[v], out_begin_[v + 1] - out_begin_[v]);
}

std::optional<std::size_t> NeighborGraph::find_basic(const Ifs& ifs, Letter i, Letter j) const {
    return find(compose(ifs.inverse_at_letter(j), ifs.at_letter(i)));
}

// ---------------------------------------------------------------------------
// Operations

std::vector<NeighborVertex> basic_neighbor_maps(const Ifs& ifs, double quantum) {
    std::vector<NeighborVertex> out;
    MapTable table(quantum);
    const auto n = static_cast<Letter>(ifs.size());
    for (Letter i = 1; i <= n; ++i) {
        for (Letter j = 1; j <= n; ++j) {
            if (i == j) continue;
            const Similitude h = compose(ifs.inverse_at_letter(j), ifs.at_letter(i));
            if (!table.insert(h).second) continue;
            out.push_back({h, canonical_key(h, quantum), {i}, {j}, true});
        }
    }
    return out;
}

bool is_feasible(const Ifs& ifs, const Similitude& h) {
    const double r = ifs.min_ratio();
    return r < h.scale() && h.scale() <= 1.0 / r;
}

std::vector<Successor> successors(const Ifs& ifs, const NeighborVertex& v, NeighborMode mode, double quantum) {
    std::vector<Successor> out;
    const auto n = static_cast<Letter>(ifs.size());
    auto emit = [&](EdgeLabel label, Similitude g) {
        if (!is_feasible(ifs, g)) return;
        NeighborVertex next{g, canonical_key(g, quantum), v.forward_word, v.inverse_word, false};
        if (label.forward_side != 0) next.forward_word.push_back(label.forward_side);
        if (label.inverse_side != 0) next.inverse_word.push_back(label.inverse_side);
        out.push_back({label, std::move(next)});
    };
    if (mode == NeighborMode::Uniform) {
        out.reserve(static_cast<std::size_t>(n * n));
        for (Letter j = 1; j <= n; ++j) {
            const Similitude left = compose(ifs.inverse_at_letter(j), v.map);
            for (Letter i = 1; i <= n; ++i) emit({j, i}, compose(left, ifs.at_letter(i)));
        }
    } else {
        for (Letter i = 1; i <= n; ++i) emit({0, i}, compose(v.map, ifs.at_letter(i)));
        for (Letter i = 1; i <= n; ++i) emit({i, 0}, compose(ifs.inverse_at_letter(i), v.map));
    }
    return out;
}

bool ball_overlap_prune(const Similitude& h, const BoundingBall& ball, double slack) {
    return distance(h(ball.center), ball.center) <= (1.0 + h.scale()) * ball.radius + slack;
}

NeighborGraph build_neighbor_graph(const Ifs& ifs, const NeighborOptions& options) {
    const BoundingBall ball = bounding_ball(ifs);
    const double quantum = options.eps * ball.radius;
    const double slack = quantum;
    const NeighborMode mode =
        options.mode.value_or(is_uniform_ratio(ifs, options.eps) ? NeighborMode::Uniform : NeighborMode::General);

    MapTable table(quantum);
    std::vector<NeighborVertex> verts;
    std::vector<NeighborEdge> raw;
    std::deque<std::size_t> queue;

    for (auto& b : basic_neighbor_maps(ifs, quantum)) {
        if (!ball_overlap_prune(b.map, ball, slack)) continue;
        table.insert(b.map);
        verts.push_back(std::move(b));
        queue.push_back(verts.size() - 1);
    }

    GraphStatus status = GraphStatus::FiniteType;
    while (!queue.empty() && status == GraphStatus::FiniteType) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (auto& s : successors(ifs, verts[v], mode, quantum)) {
            if (!ball_overlap_prune(s.vertex.map, ball, slack)) continue;
            auto [idx, fresh] = table.insert(s.vertex.map);
            if (fresh) {
                verts.push_back(std::move(s.vertex));
                queue.push_back(idx);
            }
            raw.push_back({v, idx, s.label});
            if (verts.size() > options.max_vertices) {
                status = GraphStatus::CapExceeded;
                break;
            }
        }
    }

    std::vector<bool> alive(verts.size(), true);
    if (status == GraphStatus::FiniteType) {
        // Drop vertices without an infinite continuation: repeatedly remove out-degree 0.
        std::vector<std::size_t> out_degree(verts.size(), 0);
        std::vector<std::vector<std::size_t>> preds(verts.size());
        for (const auto& e : raw) {
            ++out_degree[e.from];
            preds[e.to].push_back(e.from);
        }
        std::vector<std::size_t> dead;
        for (std::size_t v = 0; v < verts.size(); ++v)
            if (out_degree[v] == 0) dead.push_back(v);
        while (!dead.empty()) {
            const std::size_t v = dead.back();
            dead.pop_back();
            alive[v] = false;
            for (std::size_t p : preds[v])
                if (--out_degree[p] == 0) dead.push_back(p);
        }
    }

    std::vector<std::size_t> order;
    for (std::size_t v = 0; v < verts.size(); ++v)
        if (alive[v]) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return verts[a].key < verts[b].key; });
    std::vector<std::size_t> remap(verts.size(), SIZE_MAX);
    std::vector<NeighborVertex> kept;
    kept.reserve(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        remap[order[k]] = k;
        kept.push_back(std::move(verts[order[k]]));
    }
    std::vector<NeighborEdge> edges;
    for (const auto& e : raw)
        if (alive[e.from] && alive[e.to]) edges.push_back({remap[e.from], remap[e.to], e.label});
    return NeighborGraph(status, mode, ball, quantum, std::move(kept), std::move(edges));
}

bool edge_consistent(const Ifs& ifs, const NeighborGraph& graph, const NeighborEdge& edge, double eps) {
    Similitude g = graph.vertices().at(edge.from).map;
    if (edge.label.forward_side != 0) g = compose(g, ifs.at_letter(edge.label.forward_side));
    if (edge.label.inverse_side != 0) g = compose(ifs.inverse_at_letter(edge.label.inverse_side), g);
    return approx_eq(g, graph.vertices().at(edge.to).map, eps);
}

DStarEvidence dstar_discreteness_check(const Ifs& ifs, int horizon, double bound) {
    const auto form = detect_single_matrix(ifs);
    if (!form) throw NotSingleMatrixError();
    if (horizon < 1) throw ValidationError("horizon", "must be positive");

    std::vector<Point> diffs;
    double max_diff = 0.0;
    for (const auto& a : form->digits)
        for (const auto& b : form->digits) {
            diffs.push_back(a - b);
            max_diff = std::max(max_diff, (a - b).norm());
        }
    const Similitude expand = inverse(form->linear);
    const double rho = expand.scale();
    // Elements of norm <= reach only ever arise from predecessors of norm <= reach.
    const double reach = std::max(bound, max_diff / (rho - 1.0)) * (1.0 + 1e-12);
    const double quantum = 1e-9 * std::max(1.0, reach);

    MapTable seen(quantum);
    auto admit = [&](Point p, std::vector<Point>& into) {
        if (p.norm() > reach) return;
        if (seen.insert(Similitude(1.0, 0.0, false, p)).second) into.push_back(p);
    };

    std::vector<Point> all;
    for (const auto& d : diffs) admit(d, all);
    for (int n = 2; n <= horizon; ++n) {
        std::vector<Point> fresh;
        const std::size_t current = all.size();
        for (std::size_t k = 0; k < current; ++k) {
            const Point base = expand.apply_linear(all[k]);
            for (const auto& d : diffs) admit(d + base, fresh);
        }
        if (fresh.empty()) break;
        all.insert(all.end(), fresh.begin(), fresh.end());
    }

    std::vector<Point> within;
    for (const auto& p : all)
        if (p.norm() <= bound) within.push_back(p);
    DStarEvidence out{std::numeric_limits<double>::infinity(), within.size()};
    std::sort(within.begin(), within.end(), [](Point a, Point b) { return a.x < b.x; });
    for (std::size_t a = 0; a < within.size(); ++a)
        for (std::size_t b = a + 1; b < within.size() && within[b].x - within[a].x < out.min_gap; ++b)
            out.min_gap = std::min(out.min_gap, distance(within[a], within[b]));
    return out;
}

}  // namespace fskel
