#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fskel/ifs.hpp"
#include "fskel/neighbor.hpp"

namespace fskel {

// Undirected graph on the maps S_1..S_n; edges are stored as (i, j) with i < j.
struct HataGraph {
    std::size_t n = 0;
    std::set<std::pair<Letter, Letter>> edges;

    void add_edge(Letter i, Letter j);
    bool has_edge(Letter i, Letter j) const;
    std::vector<Letter> neighbors(Letter i) const;
};

// Edge {i, j} iff the basic map S_j^{-1} o S_i survives in the neighbor graph.
// Throws InconclusiveError when the graph hit its vertex cap.
HataGraph hata_graph(const Ifs& ifs, const NeighborGraph& graph);

bool is_connected(const HataGraph& h);

enum class SpanningMode { Tree, Full };

// Tree: BFS tree from vertex 1 visiting neighbors in ascending order. Full: h
// itself. Throws NotConnectedError.
HataGraph spanning_graph(const HataGraph& h, SpanningMode mode = SpanningMode::Tree);

struct WalkPolicy {
    enum class Kind { SelfLoopFirst, ShortestCycle, NamedCycle };

    Kind kind = Kind::SelfLoopFirst;
    std::vector<EdgeLabel> cycle;  // NamedCycle only: labels of a closed walk, any rotation

    static WalkPolicy self_loop_first() { return {}; }
    static WalkPolicy shortest_cycle() { return {Kind::ShortestCycle, {}}; }
    static WalkPolicy named_cycle(std::vector<EdgeLabel> labels) { return {Kind::NamedCycle, std::move(labels)}; }
};

// Parses "self-loop", "shortest" or "cycle:32,31,21" (labels as two digits, or
// "a/b" when a letter exceeds 9).
WalkPolicy parse_walk_policy(const std::string& text);

// A path followed by a cycle that returns to the path's last vertex.
struct EpWalk {
    std::size_t start = 0;
    std::vector<NeighborEdge> path;
    std::vector<NeighborEdge> cycle;

    std::size_t cycle_entry() const { return path.empty() ? start : path.back().to; }
};

// Throws NoWalkError when no qualifying walk leaves `start`.
EpWalk find_ep_walk(const NeighborGraph& graph, std::size_t start, const WalkPolicy& policy);

// Chaining, closure of the cycle, and per-edge map consistency.
bool validate_walk(const Ifs& ifs, const NeighborGraph& graph, const EpWalk& walk, double eps);

}  // namespace fskel
