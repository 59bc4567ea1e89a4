#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fskel/graphs.hpp"
#include "fskel/ifs.hpp"
#include "fskel/neighbor.hpp"
#include "fskel/symbolic.hpp"

namespace fskel {

// Two eventually periodic codings of one point, starting with the letters of
// the Hata edge {i, j}.
struct BifurcationPair {
    std::pair<Letter, Letter> edge;  // (i, j) with i < j
    EpCoding omega;                  // starts with i
    EpCoding gamma;                  // starts with j
    Point point;                     // pi(omega)
};

// Reads the labels of a walk from S_a^{-1} o S_b (with {a, b} = {i, j}) into
// the codings a A0 (A1)^inf and b B0 (B1)^inf. Throws DegenerateCycleError
// when the cycle extends only one side and ValidationError when the walk does
// not start at a basic map of the edge.
BifurcationPair walk_to_codings(const Ifs& ifs, const NeighborGraph& graph, Letter i, Letter j, const EpWalk& walk);

// Walks from S_i^{-1} o S_j for i < j, falling back to S_j^{-1} o S_i.
BifurcationPair bifurcation_pair(const Ifs& ifs, const NeighborGraph& graph, Letter i, Letter j,
                                 const WalkPolicy& policy);

struct SkeletonReport {
    bool stable = false;
    double stability_residual = 0.0;  // max over a of min_{j, a'} |S_j(a') - a|
    HataGraph hata;                   // H(A)
    bool connected = false;
    // |A| = 1 passing both axioms, which forces the attractor to be that point.
    bool singleton_attractor = false;

    bool passed() const { return stable && connected; }
};

SkeletonReport verify_skeleton(const Ifs& ifs, std::span<const Point> points, double eps);

// verify_skeleton against the n-th iterate of the IFS.
bool verify_iteration_invariance(const Ifs& ifs, std::span<const Point> points, int n, double eps);

// Checks S_j(x_0, x_N) = (x_{j-1}, x_j) for sign +1 and (x_j, x_{j-1}) for -1,
// then that {x_0, x_N} is a skeleton.
bool check_zipper(const Ifs& ifs, std::span<const Point> vertices, std::span<const int> signature, double eps);

struct SkeletonOptions {
    SpanningMode spanning = SpanningMode::Tree;
    WalkPolicy policy;
    NeighborOptions neighbor;
    double eps = 1e-9;
};

struct Skeleton {
    std::vector<Point> points;
    std::vector<std::vector<EpCoding>> codings;  // provenance, parallel to points
    std::vector<BifurcationPair> pairs;          // one per spanning edge, in edge order
    HataGraph hata;                              // H(K)
    HataGraph spanning;                          // R
    SkeletonReport report;                       // verification of `points`
    std::size_t neighbor_vertices = 0;
    std::size_t neighbor_edges = 0;
};

// Neighbor graph, Hata graph and spanning graph R, a bifurcation pair per edge
// of R, then A = pi of the shifted orbits of every pair. Throws
// InconclusiveError when the neighbor graph hits its cap and NotConnectedError
// when the Hata graph is disconnected.
Skeleton build_skeleton(const Ifs& ifs, const SkeletonOptions& options = {});

}  // namespace fskel
