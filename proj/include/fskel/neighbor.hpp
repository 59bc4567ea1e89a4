#pragma once

// Neighbor maps h = S_J^{-1} o S_I and the neighbor graph on those whose image
// of the attractor meets the attractor.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fskel/geometry.hpp"
#include "fskel/ifs.hpp"
#include "fskel/symbolic.hpp"

namespace fskel {

// Edge label (a, b): the walk step S_a^{-1} o h o S_b. Letter 0 stands for the
// empty word, so (a, 0) is S_a^{-1} o h and (0, b) is h o S_b. The first
// component always extends the inverse-side word J, the second the
// forward-side word I.
struct EdgeLabel {
    Letter inverse_side = 0;
    Letter forward_side = 0;

    friend auto operator<=>(const EdgeLabel&, const EdgeLabel&) = default;
    friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

std::string to_string(EdgeLabel label);

enum class NeighborMode { Uniform, General };

struct NeighborVertex {
    Similitude map;
    MapKey key;
    Word forward_word;  // I
    Word inverse_word;  // J
    bool basic = false;
};

struct NeighborEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    EdgeLabel label;

    friend bool operator==(const NeighborEdge&, const NeighborEdge&) = default;
};

enum class GraphStatus { FiniteType, CapExceeded };

std::string to_string(GraphStatus status);
std::string to_string(NeighborMode mode);

struct NeighborOptions {
    std::size_t max_vertices = 20'000;
    // Relative tolerance: keys use a translation quantum of eps * radius.
    double eps = 1e-9;
    // Forced mode; by default uniform mode is used iff all ratios agree.
    std::optional<NeighborMode> mode;
};

// Hashed store of similitudes that merges maps lying within the key quantum,
// including pairs that straddle a grid-cell boundary.
class MapTable {
public:
    MapTable(double quantum, double linear_quantum = kDefaultLinearQuantum)
        : quantum_(quantum), linear_quantum_(linear_quantum) {}

    std::optional<std::size_t> find(const Similitude& f) const;
    // Returns the index and whether a new entry was created.
    std::pair<std::size_t, bool> insert(const Similitude& f);

    std::size_t size() const { return maps_.size(); }
    const Similitude& operator[](std::size_t k) const { return maps_[k]; }
    double quantum() const { return quantum_; }

private:
    double quantum_;
    double linear_quantum_;
    std::vector<Similitude> maps_;
    std::unordered_map<MapKey, std::size_t, MapKeyHash> index_;
};

class NeighborGraph {
public:
    NeighborGraph(GraphStatus status, NeighborMode mode, BoundingBall ball, double quantum,
                  std::vector<NeighborVertex> vertices, std::vector<NeighborEdge> edges);

    GraphStatus status() const { return status_; }
    NeighborMode mode() const { return mode_; }
    const BoundingBall& ball() const { return ball_; }
    double quantum() const { return table_.quantum(); }

    const std::vector<NeighborVertex>& vertices() const { return vertices_; }
    const std::vector<NeighborEdge>& edges() const { return edges_; }
    // Edges leaving v, ordered by label then target.
    std::span<const NeighborEdge> out_edges(std::size_t v) const;

    std::optional<std::size_t> find(const Similitude& h) const { return table_.find(h); }
    // Vertex of the basic map S_j^{-1} o S_i, if it survived.
    std::optional<std::size_t> find_basic(const Ifs& ifs, Letter i, Letter j) const;

private:
    GraphStatus status_;
    NeighborMode mode_;
    BoundingBall ball_;
    std::vector<NeighborVertex> vertices_;
    std::vector<NeighborEdge> edges_;
    std::vector<std::size_t> out_begin_;
    MapTable table_;
};

// S_j^{-1} o S_i for all i != j, deduplicated, witness (I, J) = (i, j).
std::vector<NeighborVertex> basic_neighbor_maps(const Ifs& ifs, double quantum);

// r_* < scale(h) <= 1 / r_*
bool is_feasible(const Ifs& ifs, const Similitude& h);

struct Successor {
    EdgeLabel label;
    NeighborVertex vertex;
};

// Uniform mode: the N^2 maps S_j^{-1} o h o S_i labelled (j, i). General mode:
// h o S_i labelled (0, i) and S_i^{-1} o h labelled (i, 0). Infeasible
// candidates are dropped. Keys are computed with `quantum`.
std::vector<Successor> successors(const Ifs& ifs, const NeighborVertex& v, NeighborMode mode,
                                  double quantum);

// Necessary condition for h(K) meeting K when K lies in the ball.
bool ball_overlap_prune(const Similitude& h, const BoundingBall& ball, double slack);

NeighborGraph build_neighbor_graph(const Ifs& ifs, const NeighborOptions& options = {});

// Recomposes the source map along the edge label and compares with the target.
bool edge_consistent(const Ifs& ifs, const NeighborGraph& graph, const NeighborEdge& edge, double eps);

struct DStarEvidence {
    double min_gap = 0.0;
    std::size_t count = 0;
};

// Elements sum_{k<n} (rM)^{-k} x_k, x_k in D - D, n <= horizon, of norm <= bound.
// Throws NotSingleMatrixError.
DStarEvidence dstar_discreteness_check(const Ifs& ifs, int horizon, double bound);

}  // namespace fskel
