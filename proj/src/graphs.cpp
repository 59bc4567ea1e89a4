#include "fskel/graphs.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <optional>

#include "fskel/error.hpp"

namespace fskel {

void HataGraph::add_edge(Letter i, Letter j) {
    if (i == j) return;
    edges.insert(std::minmax(i, j));
}

bool HataGraph::has_edge(Letter i, Letter j) const { return edges.count(std::minmax(i, j)) > 0; }

std::vector<Letter> HataGraph::neighbors(Letter i) const {
    std::vector<Letter> out;
    for (auto [a, b] : edges) {
        if (a == i) out.push_back(b);
        if (b == i) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

HataGraph hata_graph(const Ifs& ifs, const NeighborGraph& graph) {
    if (graph.status() != GraphStatus::FiniteType)
        throw InconclusiveError("neighbor-map cap exceeded; Hata graph undetermined");
    HataGraph h{ifs.size(), {}};
    const auto n = static_cast<Letter>(ifs.size());
    for (Letter i = 1; i <= n; ++i)
        for (Letter j = 1; j <= n; ++j)
            if (i != j && graph.find_basic(ifs, i, j)) h.add_edge(i, j);
    return h;
}

namespace {

// BFS from vertex 1 in ascending neighbor order; returns the tree edges.
std::vector<std::pair<Letter, Letter>> bfs_tree(const HataGraph& h, std::vector<bool>& seen) {
    std::vector<std::pair<Letter, Letter>> tree;
    seen.assign(h.n + 1, false);
    if (h.n == 0) return tree;
    std::deque<Letter> queue{1};
    seen[1] = true;
    while (!queue.empty()) {
        const Letter v = queue.front();
        queue.pop_front();
        for (Letter w : h.neighbors(v)) {
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = true;
            tree.emplace_back(v, w);
            queue.push_back(w);
        }
    }
    return tree;
}

}  // namespace

bool is_connected(const HataGraph& h) {
    std::vector<bool> seen;
    return bfs_tree(h, seen).size() + 1 == h.n || h.n <= 1;
}

HataGraph spanning_graph(const HataGraph& h, SpanningMode mode) {
    std::vector<bool> seen;
    const auto tree = bfs_tree(h, seen);
    if (tree.size() + 1 != h.n) throw NotConnectedError();
    if (mode == SpanningMode::Full) return h;
    HataGraph out{h.n, {}};
    for (auto [a, b] : tree) out.add_edge(a, b);
    return out;
}

WalkPolicy parse_walk_policy(const std::string& text) {
    if (text == "self-loop") return WalkPolicy::self_loop_first();
    if (text == "shortest") return WalkPolicy::shortest_cycle();
    const std::string prefix = "cycle:";
    if (text.rfind(prefix, 0) != 0) throw ParseError("unknown walk policy '" + text + "'");
    std::vector<EdgeLabel> labels;
    std::string_view rest(text);
    rest.remove_prefix(prefix.size());
    auto number = [&](std::string_view s) {
        int v = -1;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size() || v < 0)
            throw ParseError("invalid letter '" + std::string(s) + "' in walk policy");
        return v;
    };
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        std::string_view tok = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        EdgeLabel label;
        if (auto slash = tok.find('/'); slash != std::string_view::npos) {
            label = {number(tok.substr(0, slash)), number(tok.substr(slash + 1))};
        } else if (tok.size() == 2) {
            label = {number(tok.substr(0, 1)), number(tok.substr(1, 1))};
        } else {
            throw ParseError("walk label '" + std::string(tok) + "' must be two digits or 'a/b'");
        }
        labels.push_back(label);
    }
    if (labels.empty()) throw ParseError("empty cycle in walk policy");
    return WalkPolicy::named_cycle(std::move(labels));
}

namespace {

// BFS order over vertices reachable from start, with the tree edge that
// discovered each one. Out-edges are visited in (label, target) order.
struct BfsResult {
    std::vector<std::size_t> order;
    std::vector<std::optional<NeighborEdge>> parent;
};

BfsResult bfs(const NeighborGraph& g, std::size_t start) {
    BfsResult r;
    r.parent.assign(g.vertices().size(), std::nullopt);
    std::vector<bool> seen(g.vertices().size(), false);
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        r.order.push_back(v);
        for (const auto& e : g.out_edges(v)) {
            if (seen[e.to]) continue;
            seen[e.to] = true;
            r.parent[e.to] = e;
            queue.push_back(e.to);
        }
    }
    return r;
}

std::vector<NeighborEdge> path_to(const BfsResult& r, std::size_t start, std::size_t target) {
    std::vector<NeighborEdge> path;
    for (std::size_t v = target; v != start; v = r.parent[v]->from) path.push_back(*r.parent[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

// Shortest closed walk through v, or empty if v lies on no cycle.
std::vector<NeighborEdge> shortest_cycle_through(const NeighborGraph& g, std::size_t v) {
    for (const auto& e : g.out_edges(v))
        if (e.to == v) return {e};
    const BfsResult r = bfs(g, v);
    // first BFS-ordered vertex with an edge back to v closes the shortest cycle
    for (std::size_t u : r.order) {
        for (const auto& e : g.out_edges(u)) {
            if (e.to != v) continue;
            auto cycle = path_to(r, v, u);
            cycle.push_back(e);
            return cycle;
        }
    }
    return {};
}

// Follows `labels` from v; returns the edges when every label exists and the
// walk closes at v.
std::optional<std::vector<NeighborEdge>> follow_labels(const NeighborGraph& g, std::size_t v,
                                                       const std::vector<EdgeLabel>& labels, std::size_t rotation) {
    std::vector<NeighborEdge> out;
    std::size_t cur = v;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const EdgeLabel want = labels[(rotation + k) % labels.size()];
        auto edges = g.out_edges(cur);
        auto it = std::find_if(edges.begin(), edges.end(), [&](const NeighborEdge& e) { return e.label == want; });
        if (it == edges.end()) return std::nullopt;
        out.push_back(*it);
        cur = it->to;
    }
    if (cur != v) return std::nullopt;
    return out;
}

}  // namespace

EpWalk find_ep_walk(const NeighborGraph& graph, std::size_t start, const WalkPolicy& policy) {
    if (start >= graph.vertices().size()) throw NoWalkError("start vertex is not in the neighbor graph");
    const BfsResult r = bfs(graph, start);

    if (policy.kind == WalkPolicy::Kind::SelfLoopFirst) {
        for (std::size_t v : r.order) {
            for (const auto& e : graph.out_edges(v))
                if (e.to == v) return {start, path_to(r, start, v), {e}};
        }
        // no self-loop reachable: fall through to the nearest cycle
    }

    if (policy.kind == WalkPolicy::Kind::NamedCycle) {
        if (policy.cycle.empty()) throw NoWalkError("named cycle is empty");
        for (std::size_t v : r.order)
            for (std::size_t rot = 0; rot < policy.cycle.size(); ++rot)
                if (auto cyc = follow_labels(graph, v, policy.cycle, rot))
                    return {start, path_to(r, start, v), std::move(*cyc)};
        throw NoWalkError("named cycle is not reachable from the start vertex");
    }

    for (std::size_t v : r.order) {
        auto cyc = shortest_cycle_through(graph, v);
        if (!cyc.empty()) return {start, path_to(r, start, v), std::move(cyc)};
    }
    throw NoWalkError("no cycle reachable from the start vertex");
}

bool validate_walk(const Ifs& ifs, const NeighborGraph& graph, const EpWalk& walk, double eps) {
    if (walk.cycle.empty()) return false;
    std::size_t cur = walk.start;
    for (const auto* part : {&walk.path, &walk.cycle}) {
        for (const auto& e : *part) {
            if (e.from != cur || !edge_consistent(ifs, graph, e, eps)) return false;
            cur = e.to;
        }
    }
    return cur == walk.cycle_entry() && walk.cycle.front().from == walk.cycle_entry();
}

}  // namespace fskel
