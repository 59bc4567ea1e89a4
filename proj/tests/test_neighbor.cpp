#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "doctest.h"

#include "corpus.hpp"
#include "fskel/error.hpp"
#include "fskel/neighbor.hpp"

using namespace fskel;

namespace {

using LabeledEdge = std::tuple<std::size_t, EdgeLabel, std::size_t>;

std::set<LabeledEdge> edge_set(const NeighborGraph& g) {
    std::set<LabeledEdge> out;
    for (const auto& e : g.edges()) out.insert({e.from, e.label, e.to});
    return out;
}

std::size_t vertex_of(const NeighborGraph& g, const Similitude& h) {
    auto v = g.find(h);
    REQUIRE(v);
    return *v;
}

}  // namespace

TEST_CASE("edge labels print with an epsilon for the empty side") {
    CHECK(to_string(EdgeLabel{3, 1}) == "(3,1)");
    CHECK(to_string(EdgeLabel{0, 2}) == "(ε,2)");
    CHECK(to_string(EdgeLabel{12, 0}) == "(12,ε)");
}

TEST_CASE("basic neighbor maps") {
    const auto ter = corpus::terdragon();
    const auto basic = basic_neighbor_maps(ter, 1e-9);
    CHECK(basic.size() == 6);
    for (const auto& v : basic) {
        REQUIRE(v.forward_word.size() == 1);
        REQUIRE(v.inverse_word.size() == 1);
        CHECK(v.basic);
        const auto expected = compose(ter.inverse_at_letter(v.inverse_word[0]), ter.at_letter(v.forward_word[0]));
        CHECK(approx_eq(v.map, expected, 1e-12));
        CHECK(is_feasible(ter, v.map));
    }
    // translations by digit differences: every nonzero vector of {-2..2}^2
    CHECK(basic_neighbor_maps(corpus::carpet(), 1e-9).size() == 24);
}

TEST_CASE("feasibility bounds the scale") {
    const auto ter = corpus::terdragon();
    CHECK(is_feasible(ter, Similitude::identity()));
    CHECK_FALSE(is_feasible(ter, Similitude(1.0 / 3.0, 0, false, {})));
    CHECK_FALSE(is_feasible(ter, Similitude(3.0, 0, false, {})));
    const auto mixed = corpus::mixed_interval();
    CHECK(is_feasible(mixed, Similitude(4.0, 0, false, {})));
    CHECK(is_feasible(mixed, Similitude(1.0 / 3.0, 0, false, {})));
    CHECK_FALSE(is_feasible(mixed, Similitude(0.25, 0, false, {})));
}

TEST_CASE("ball pruning") {
    const BoundingBall ball{{0, 0}, 1.0};
    CHECK(ball_overlap_prune(Similitude(0.5, 0, false, {1.4, 0}), ball, 0.0));
    CHECK_FALSE(ball_overlap_prune(Similitude(0.5, 0, false, {1.6, 0}), ball, 0.0));
    CHECK(ball_overlap_prune(Similitude(0.5, 0, false, {1.6, 0}), ball, 0.2));
}

TEST_CASE("terdragon successors of S_2^{-1} o S_3") {
    const auto ter = corpus::terdragon();
    const auto ball = bounding_ball(ter);
    const Similitude f1 = compose(ter.inverse_at_letter(2), ter.at_letter(3));
    const Similitude f2 = compose(ter.inverse_at_letter(1), ter.at_letter(3));
    NeighborVertex v{f1, canonical_key(f1, 1e-9), {3}, {2}, true};
    const auto next = successors(ter, v, NeighborMode::Uniform, 1e-9);
    CHECK(next.size() == 9);
    bool loop = false, to_f2 = false;
    for (const auto& s : next) {
        if (!ball_overlap_prune(s.vertex.map, ball, 1e-9 * ball.radius)) continue;
        CHECK(s.vertex.forward_word.size() == 2);
        if (s.label == EdgeLabel{3, 1}) loop = approx_eq(s.vertex.map, f1, 1e-12);
        if (s.label == EdgeLabel{3, 2}) to_f2 = approx_eq(s.vertex.map, f2, 1e-12);
    }
    CHECK(loop);
    CHECK(to_f2);
}

TEST_CASE("terdragon neighbor graph matches the published edge list") {
    const auto ter = corpus::terdragon();
    const auto g = build_neighbor_graph(ter);
    REQUIRE(g.status() == GraphStatus::FiniteType);
    CHECK(g.mode() == NeighborMode::Uniform);
    REQUIRE(g.vertices().size() == 6);
    REQUIRE(g.edges().size() == 12);

    auto f = [&](Letter j, Letter i) { return vertex_of(g, compose(ter.inverse_at_letter(j), ter.at_letter(i))); };
    const std::size_t f1 = f(2, 3), f2 = f(1, 3), f3 = f(1, 2), f4 = f(2, 1), f5 = f(3, 1), f6 = f(3, 2);
    const std::set<LabeledEdge> expected = {
        {f1, {3, 1}, f1}, {f1, {3, 2}, f2}, {f2, {2, 1}, f2}, {f2, {3, 1}, f3},
        {f3, {2, 3}, f3}, {f3, {2, 1}, f6}, {f6, {1, 3}, f6}, {f6, {2, 3}, f5},
        {f5, {1, 2}, f5}, {f5, {1, 3}, f4}, {f4, {3, 2}, f4}, {f4, {1, 2}, f1},
    };
    CHECK(edge_set(g) == expected);
    CHECK(g.find_basic(ter, 3, 2) == f1);
}

TEST_CASE("neighbor graph invariants over the corpus") {
    for (const auto& ifs : corpus::property_corpus()) {
        CAPTURE(ifs.name());
        const auto g = build_neighbor_graph(ifs);
        REQUIRE(g.status() == GraphStatus::FiniteType);
        const double eps = 1e-9 * g.ball().radius;

        for (std::size_t v = 0; v < g.vertices().size(); ++v) {
            const auto& vert = g.vertices()[v];
            CHECK(!g.out_edges(v).empty());
            CHECK(is_feasible(ifs, vert.map));
            CHECK(ball_overlap_prune(vert.map, g.ball(), eps));
            // the witness words recompose to the vertex map
            const auto witness = compose(inverse(word_map(ifs, vert.inverse_word)), word_map(ifs, vert.forward_word));
            CHECK(approx_eq(witness, vert.map, 1e-9));
            // h(K) meets K iff h^{-1}(K) meets K
            CHECK(g.find(inverse(vert.map)));
            for (std::size_t u = 0; u < v; ++u)
                CHECK_FALSE(approx_eq(g.vertices()[u].map, vert.map, 1e-6));
        }

        const auto edges = edge_set(g);
        for (const auto& e : g.edges()) {
            CHECK(edge_consistent(ifs, g, e, 1e-9));
            const auto from = g.find(inverse(g.vertices()[e.from].map));
            const auto to = g.find(inverse(g.vertices()[e.to].map));
            REQUIRE(from);
            REQUIRE(to);
            CHECK(edges.count({*from, EdgeLabel{e.label.forward_side, e.label.inverse_side}, *to}) == 1);
        }
        for (std::size_t v = 0; v < g.vertices().size(); ++v)
            for (const auto& e : g.out_edges(v)) CHECK(e.from == v);
    }
}

TEST_CASE("neighbor graph construction is deterministic") {
    for (const auto& ifs : corpus::property_corpus()) {
        const auto a = build_neighbor_graph(ifs);
        const auto b = build_neighbor_graph(ifs);
        REQUIRE(a.vertices().size() == b.vertices().size());
        for (std::size_t v = 0; v < a.vertices().size(); ++v) CHECK(a.vertices()[v].key == b.vertices()[v].key);
        CHECK(a.edges() == b.edges());
    }
}

TEST_CASE("carpet basic vertices are the touching sub-square pairs") {
    const auto carpet = corpus::carpet();
    const auto g = build_neighbor_graph(carpet);
    REQUIRE(g.status() == GraphStatus::FiniteType);
    for (Letter i = 1; i <= 8; ++i)
        for (Letter j = 1; j <= 8; ++j) {
            if (i == j) continue;
            const auto d = corpus::kCarpetDigits[static_cast<std::size_t>(i - 1)] -
                           corpus::kCarpetDigits[static_cast<std::size_t>(j - 1)];
            const bool touching = std::max(std::fabs(d.real()), std::fabs(d.imag())) <= 1.0;
            CHECK(g.find_basic(carpet, i, j).has_value() == touching);
        }
}

TEST_CASE("non-uniform ratios use the general rule") {
    const auto mixed = corpus::mixed_interval();
    const auto g = build_neighbor_graph(mixed);
    REQUIRE(g.status() == GraphStatus::FiniteType);
    CHECK(g.mode() == NeighborMode::General);
    CHECK(g.find_basic(mixed, 1, 2));
    CHECK(g.find_basic(mixed, 2, 1));
    CHECK(g.find_basic(mixed, 2, 3));
    CHECK_FALSE(g.find_basic(mixed, 1, 3));
    for (const auto& e : g.edges()) {
        CHECK((e.label.inverse_side == 0) != (e.label.forward_side == 0));
        CHECK(edge_consistent(mixed, g, e, 1e-9));
    }
}

TEST_CASE("incommensurable ratios are not of finite type") {
    NeighborOptions o;
    o.max_vertices = 2000;
    CHECK(build_neighbor_graph(corpus::incommensurable_interval(), o).status() == GraphStatus::CapExceeded);
}

TEST_CASE("kenyon exceeds the vertex cap") {
    const auto g = build_neighbor_graph(corpus::kenyon());
    CHECK(g.status() == GraphStatus::CapExceeded);
    CHECK(to_string(g.status()) == "cap-exceeded");
    NeighborOptions small;
    small.max_vertices = 50;
    CHECK(build_neighbor_graph(corpus::terdragon(), small).status() == GraphStatus::FiniteType);
    small.max_vertices = 3;
    CHECK(build_neighbor_graph(corpus::terdragon(), small).status() == GraphStatus::CapExceeded);
}

TEST_CASE("D* discreteness evidence") {
    const auto ter = dstar_discreteness_check(corpus::terdragon(), 6, 4.0);
    CHECK(ter.count > 1);
    CHECK(ter.min_gap >= 1.0 - 1e-9);
    const auto carpet = dstar_discreteness_check(corpus::carpet(), 4, 3.0);
    CHECK(carpet.min_gap >= 1.0 - 1e-9);
    CHECK_THROWS_AS(dstar_discreteness_check(corpus::mixed_interval(), 4, 2.0), NotSingleMatrixError);
}
