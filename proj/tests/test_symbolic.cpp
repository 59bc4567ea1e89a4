#include <cmath>
#include <random>

#include "doctest.h"

#include "corpus.hpp"
#include "fskel/error.hpp"
#include "fskel/skeleton.hpp"
#include "fskel/symbolic.hpp"

using namespace fskel;
using corpus::cd;

namespace {

// Fixed point of the affine map S_w computed in complex arithmetic.
cd complex_period_point(const std::vector<std::pair<cd, cd>>& maps, const Word& w) {
    cd a = 1.0, b = 0.0;
    for (Letter k : w) {
        auto [l, t] = maps[static_cast<std::size_t>(k - 1)];
        b = a * t + b;
        a = a * l;
    }
    return b / (1.0 - a);
}

EpCoding random_coding(std::mt19937_64& rng, int letters) {
    std::uniform_int_distribution<int> letter(1, letters), len(0, 4), plen(1, 4);
    Word pre(static_cast<std::size_t>(len(rng))), period(static_cast<std::size_t>(plen(rng)));
    for (auto& a : pre) a = letter(rng);
    for (auto& a : period) a = letter(rng);
    return EpCoding(pre, period);
}

}  // namespace

TEST_CASE("words") {
    CHECK(word_to_string({3, 2, 1}) == "321");
    CHECK(word_to_string({}) == "");
    CHECK(word_to_string({12, 3}) == "12.3.");
    CHECK(parse_word("321") == Word{3, 2, 1});
    CHECK(parse_word("12.3.") == Word{12, 3});
    CHECK_THROWS_AS(parse_word("1x"), ParseError);

    const auto ter = corpus::terdragon();
    CHECK(approx_eq(word_map(ter, {}), Similitude::identity(), 0.0));
    CHECK(approx_eq(word_map(ter, {2, 1}), compose(ter.at_letter(2), ter.at_letter(1)), 1e-15));
}

TEST_CASE("canonical form of eventually periodic codings") {
    const EpCoding a({1}, {2, 2});
    CHECK(a.preperiod() == Word{1});
    CHECK(a.period() == Word{2});

    const EpCoding b({1, 2}, {1, 2});
    CHECK(b.preperiod().empty());
    CHECK(b.period() == Word{1, 2});

    CHECK(EpCoding({1}, {2, 1}) == EpCoding({}, {1, 2}));
    CHECK(EpCoding({3, 1}, {2, 1, 2, 1}) == EpCoding({3}, {1, 2}));
    CHECK_FALSE(EpCoding({1}, {2}) == EpCoding({2}, {1}));

    CHECK_THROWS_AS(EpCoding({1}, {}), ValidationError);
    CHECK_THROWS_AS(EpCoding({0}, {1}), ValidationError);
}

TEST_CASE("shift and prepend") {
    CHECK(shift(EpCoding({1}, {2})) == EpCoding({}, {2}));
    CHECK(shift(EpCoding({}, {1, 2})) == EpCoding({}, {2, 1}));
    // 3 followed by (322113) is the purely periodic (332211)
    const auto p = prepend(3, EpCoding({}, {3, 2, 2, 1, 1, 3}));
    CHECK(p == EpCoding({}, {3, 3, 2, 2, 1, 1}));
    CHECK(p.to_string() == "(332211)");
    CHECK(prepend(1, EpCoding({}, {2})).to_string() == "1(2)");

    std::mt19937_64 rng(11);
    for (int k = 0; k < 500; ++k) {
        const auto c = random_coding(rng, 4);
        CHECK(shift(prepend(3, c)) == c);
        CHECK(prepend(c.first(), shift(c)) == c);
        for (std::size_t n = 0; n < 12; ++n) CHECK(shift(c).at(n) == c.at(n + 1));
    }
}

TEST_CASE("orbit") {
    const auto orb = orbit(EpCoding({1}, {2, 3}));
    REQUIRE(orb.size() == 3);
    CHECK(orb[0].to_string() == "1(23)");
    CHECK(orb[1].to_string() == "(23)");
    CHECK(orb[2].to_string() == "(32)");
    CHECK(orbit(EpCoding({}, {2})).size() == 1);
}

TEST_CASE("text form round trip") {
    CHECK(EpCoding::parse("1(2)") == EpCoding({1}, {2}));
    CHECK(EpCoding::parse("(332211)").period() == Word{3, 3, 2, 2, 1, 1});
    CHECK(EpCoding({12}, {3, 4}).to_string() == "12.(3.4.)");
    CHECK(EpCoding::parse("12.(3.4.)") == EpCoding({12}, {3, 4}));
    CHECK_THROWS_AS(EpCoding::parse("12"), ParseError);
    CHECK_THROWS_AS(EpCoding::parse("1()"), ParseError);
    CHECK_THROWS_AS(EpCoding::parse("(1"), ParseError);
    std::mt19937_64 rng(12);
    for (int k = 0; k < 300; ++k) {
        const auto c = random_coding(rng, k % 2 ? 4 : 14);
        CHECK(EpCoding::parse(c.to_string()) == c);
    }
}

TEST_CASE("pi on the unit interval") {
    const auto ifs = corpus::unit_interval();
    CHECK(distance(pi_eval(ifs, EpCoding({}, {1})), {0, 0}) < 1e-15);
    CHECK(distance(pi_eval(ifs, EpCoding({}, {2})), {1, 0}) < 1e-15);
    CHECK(distance(pi_eval(ifs, EpCoding({1}, {2})), {0.5, 0}) < 1e-15);
    CHECK(distance(pi_eval(ifs, EpCoding({2}, {1})), {0.5, 0}) < 1e-15);
    CHECK(distance(pi_eval(ifs, EpCoding({}, {1, 2})), {1.0 / 3.0, 0}) < 1e-15);
    CHECK_THROWS_AS(pi_eval(ifs, EpCoding({3}, {1})), ValidationError);
}

TEST_CASE("pi on the terdragon") {
    const auto ifs = corpus::terdragon();
    const cd l = corpus::kTerdragonLambda, w = corpus::kOmega;
    const std::vector<std::pair<cd, cd>> maps = {{l, 1.0}, {l, w}, {l, w * w}};
    const Word period = {3, 3, 2, 2, 1, 1};
    const Point p = pi_eval(ifs, EpCoding({}, period));
    CHECK(distance(p, Point::from_complex(complex_period_point(maps, period))) < 1e-13);
    CHECK(p.x == doctest::Approx(-15.0 / 14.0));
    CHECK(p.y == doctest::Approx(-11.0 * corpus::kSqrt3 / 14.0));
    const Point q = pi_eval(ifs, EpCoding({}, {1, 3, 3, 2, 2, 1}));
    CHECK(q.x == doctest::Approx(6.0 / 7.0));
    CHECK(q.y == doctest::Approx(-4.0 * corpus::kSqrt3 / 7.0));
    // one point, two codings
    CHECK(distance(pi_eval(ifs, EpCoding({2}, period)), pi_eval(ifs, EpCoding({3}, {2, 1, 1, 3, 3, 2}))) < 1e-13);
    CHECK(distance(pi_eval(ifs, EpCoding({}, {1})), {1.5, corpus::kSqrt3 / 2}) < 1e-14);
    CHECK(distance(pi_eval(ifs, EpCoding({1}, {2})), {0, 0}) < 1e-14);
}

TEST_CASE("pi intertwines the shift with the maps") {
    std::mt19937_64 rng(13);
    for (const auto& ifs : corpus::property_corpus()) {
        const int n = static_cast<int>(ifs.size());
        const double radius = bounding_ball(ifs).radius;
        for (int k = 0; k < 100; ++k) {
            const auto c = random_coding(rng, n);
            const Point x = pi_eval(ifs, c);
            CHECK(distance(ifs.at_letter(c.first())(pi_eval(ifs, shift(c))), x) <= 1e-12 * (1 + radius));
            const Letter a = 1 + k % n;
            CHECK(distance(pi_eval(ifs, prepend(a, c)), ifs.at_letter(a)(x)) <= 1e-12 * (1 + radius));
            CHECK(bounding_ball(ifs).contains(x, 1e-9));
        }
    }
}

TEST_CASE("codings recovered from a stable set") {
    const auto interval = corpus::unit_interval();
    const std::vector<Point> ends = {{0, 0}, {1, 0}};
    CHECK(ep_coding_of_point(interval, ends, {0, 0}, 1e-9) == EpCoding({}, {1}));
    CHECK(ep_coding_of_point(interval, ends, {1, 0}, 1e-9) == EpCoding({}, {2}));
    CHECK_THROWS_AS(ep_coding_of_point(interval, ends, {0.5, 0}, 1e-9), NotStableError);
    const std::vector<Point> not_stable = {{0, 0}, {0.25, 0}};
    CHECK_THROWS_AS(ep_coding_of_point(interval, not_stable, {0.25, 0}, 1e-9), NotStableError);

    for (const auto& ifs : {corpus::terdragon(), corpus::four_tile_star(), corpus::carpet()}) {
        const auto sk = build_skeleton(ifs);
        const double tol = 1e-9 * bounding_ball(ifs).radius;
        for (const auto& a : sk.points) {
            const auto c = ep_coding_of_point(ifs, sk.points, a, tol);
            CHECK(distance(pi_eval(ifs, c), a) <= 1e-9);
        }
    }
}
