#include "doctest.h"

#include <algorithm>
#include <random>

#include "pcl/geom.hpp"
#include "pcl/linalg.hpp"

using namespace pcl;

namespace {

Point P(long x, long y) { return Point{rat(x), rat(y)}; }

Point random_point(std::mt19937_64& g, std::size_t d, long range, long den) {
    std::vector<Rational> c;
    for (std::size_t k = 0; k < d; ++k) c.push_back(rat(static_cast<long>(g() % (2 * range * den + 1)) - range * den, den));
    return Point(std::move(c));
}

// Pythagoras on squared lengths, independent of the dot-product apex test.
std::optional<Point> pythagoras_apex(const Point& x, const Point& y, const Point& z) {
    Rational a = norm2(y - z), b = norm2(x - z), c = norm2(x - y);
    if (a == 0 || b == 0 || c == 0) return std::nullopt;
    if (a + b == c) return z;
    if (a + c == b) return y;
    if (b + c == a) return x;
    return std::nullopt;
}

}  // namespace

TEST_CASE("rationals parse, canonicalize and format") {
    CHECK(format_rational(parse_rational("6/8")) == "3/4");
    CHECK(format_rational(parse_rational("-0.25")) == "-1/4");
    CHECK(format_rational(parse_rational("3")) == "3/1");
    CHECK(format_rational(rat(-32, 4)) == "-8/1");
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK_THROWS_AS(rat(1, 0), PreconditionError);
}

TEST_CASE("orientation") {
    CHECK(orientation(P(0, 0), P(1, 0), P(0, 1)) == 1);
    CHECK(orientation(P(0, 0), P(1, 0), P(2, 0)) == 0);
    CHECK(orientation(P(0, 0), P(0, 1), P(1, 0)) == -1);
    CHECK_THROWS_AS(orientation(Point{1, 2, 3}, Point{0, 0, 0}, Point{1, 1, 1}), DimensionError);
    CHECK_THROWS_AS(orientation(P(0, 0), Point{1, 2, 3}, P(1, 1)), DimensionError);
}

TEST_CASE("orientation flips under swapping the last two points") {
    std::mt19937_64 g(11);
    for (int i = 0; i < 1000; ++i) {
        Point p = random_point(g, 2, 4, 3), q = random_point(g, 2, 4, 3), r = random_point(g, 2, 4, 3);
        CHECK(orientation(p, q, r) == -orientation(p, r, q));
    }
}

TEST_CASE("right triples") {
    auto a = is_right_triple(P(0, 0), P(1, 0), P(0, 1));
    REQUIRE(a);
    CHECK(a->apex_point() == P(0, 0));
    CHECK_FALSE(is_right_triple(P(0, 0), P(1, 0), P(2, 0)));
    auto b = is_right_triple(P(0, 0), P(5, 0), P(1, 2));
    REQUIRE(b);
    CHECK(b->apex_point() == P(1, 2));
    CHECK_FALSE(is_right_triple(P(0, 0), P(0, 0), P(1, 1)));
    CHECK_FALSE(is_right_triple(P(0, 0), P(2, 0), P(1, 1)) == std::nullopt);
}

TEST_CASE("right triple apex agrees with the Pythagorean oracle and is symmetric") {
    std::mt19937_64 g(12);
    int found = 0;
    for (int i = 0; i < 3000; ++i) {
        std::size_t d = 2 + i % 2;
        Point x = random_point(g, d, 3, 1), y = random_point(g, d, 3, 1), z = random_point(g, d, 3, 1);
        auto rt = is_right_triple(x, y, z);
        auto oracle = pythagoras_apex(x, y, z);
        bool collinear = parallel(y - x, z - x);
        if (collinear) {
            CHECK_FALSE(rt);
            continue;
        }
        REQUIRE(bool(rt) == bool(oracle));
        if (!rt) continue;
        ++found;
        CHECK(rt->apex_point() == *oracle);
        for (auto perm : {std::array<int, 3>{1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}}) {
            Point pts[3] = {x, y, z};
            auto r2 = is_right_triple(pts[perm[0]], pts[perm[1]], pts[perm[2]]);
            REQUIRE(r2);
            CHECK(r2->apex_point() == rt->apex_point());
        }
        Point shift = random_point(g, d, 5, 7);
        Rational k = rat(static_cast<long>(g() % 9) + 1, 4);
        auto r3 = is_right_triple(k * x + shift, k * y + shift, k * z + shift);
        REQUIRE(r3);
        CHECK(r3->apex_point() == k * rt->apex_point() + shift);
    }
    CHECK(found > 50);
}

TEST_CASE("perpendicular foot") {
    auto f = perpendicular_foot(P(1, 1), {P(0, 0), P(2, 0)});
    CHECK(f.point == P(1, 0));
    CHECK(f.within);
    f = perpendicular_foot(P(5, 1), {P(0, 0), P(2, 0)});
    CHECK(f.point == P(5, 0));
    CHECK_FALSE(f.within);
    f = perpendicular_foot(P(0, 0), {P(1, -1), P(1, 1)});
    CHECK(f.point == P(1, 0));
    CHECK(f.within);
    CHECK_THROWS_AS(perpendicular_foot(P(0, 0), {P(1, 1), P(1, 1)}), PreconditionError);
}

TEST_CASE("pair frame classification") {
    PairFrame f(P(0, 0), P(2, 0));
    auto c = classify_pair_frame(f, P(1, 1));
    CHECK(c.on_L);
    CHECK(c.sphere_side == SphereSide::on);
    CHECK(c.in_W);
    c = classify_pair_frame(f, P(0, 3));
    CHECK(c.on_H_xy);
    CHECK(c.in_W);
    c = classify_pair_frame(f, P(0, 0));
    CHECK_FALSE(c.in_W);
    CHECK(c.is_x);
    c = classify_pair_frame(f, P(1, 0));
    CHECK(c.sphere_side == SphereSide::inside);
    c = classify_pair_frame(f, P(5, 5));
    CHECK(c.sphere_side == SphereSide::outside);
    CHECK_FALSE(c.in_W);
}

TEST_CASE("sphere locus matches right triples with apex at the query point") {
    std::mt19937_64 g(13);
    for (int i = 0; i < 1000; ++i) {
        std::size_t d = 2 + i % 2;
        Point x = random_point(g, d, 2, 1), y = random_point(g, d, 2, 1), q = random_point(g, d, 2, 1);
        if (x == y) continue;
        auto c = classify_pair_frame(PairFrame(x, y), q);
        auto rt = is_right_triple(x, y, q);
        bool apex_q = rt && rt->apex_point() == q;
        bool degenerate = q == x || q == y;
        CHECK((c.sphere_side == SphereSide::on && !degenerate) == apex_q);
    }
}

TEST_CASE("directions canonicalize") {
    CHECK(Direction(P(-3, -4)) == Direction(P(3, 4)));
    CHECK(Direction(Point{rat(3, 2), rat(2)}).vector() == P(3, 4));
    CHECK(Direction(P(0, -2)).vector() == P(0, 1));
    CHECK(Direction(P(3, 4)).perpendicular() == Direction(P(-4, 3)));
}

TEST_CASE("staircases") {
    std::vector<Point> axis{P(0, 0), P(1, 0), P(1, 1), P(2, 1)};
    CHECK(is_staircase_wrt(axis, Direction(P(1, 0))));
    std::vector<Point> back{P(0, 0), P(1, 0), P(1, 1), P(2, 1), P(2, 0)};
    CHECK_FALSE(is_staircase_wrt(back, Direction(P(1, 0))));
    // the second edge (-7, 3) is not parallel to (-4, 3)
    std::vector<Point> literal{P(0, 0), P(3, 4), P(-4, 7)};
    CHECK_FALSE(is_staircase_wrt(literal, Direction(P(3, 4))));
    std::vector<Point> rotated{P(0, 0), P(3, 4), P(-1, 7)};
    CHECK(is_staircase_wrt(rotated, Direction(P(3, 4))));
    for (auto* path : {&axis, &back, &literal, &rotated}) {
        std::vector<Point> rev(path->rbegin(), path->rend());
        for (const Point& u : {P(1, 0), P(3, 4), P(1, 1)})
            CHECK(is_staircase_wrt(*path, Direction(u)) == is_staircase_wrt(rev, Direction(u)));
    }
}

TEST_CASE("segment intersection") {
    auto i = segments_intersect({P(0, 0), P(2, 2)}, {P(0, 2), P(2, 0)});
    CHECK(i.kind == Intersection::Kind::point);
    CHECK(i.p == P(1, 1));
    CHECK(segments_intersect({P(0, 0), P(1, 0)}, {P(2, 0), P(3, 0)}).kind == Intersection::Kind::empty);
    i = segments_intersect({P(0, 0), P(2, 0)}, {P(1, 0), P(3, 0)});
    CHECK(i.kind == Intersection::Kind::segment);
    CHECK(i.p == P(1, 0));
    CHECK(i.q == P(2, 0));
}

TEST_CASE("point on segment") {
    CHECK(point_on_segment(P(1, 0), {P(0, 0), P(2, 0)}));
    CHECK_FALSE(point_on_segment(P(0, 0), {P(0, 0), P(2, 0)}, true));
    CHECK(point_on_segment(P(0, 0), {P(0, 0), P(2, 0)}));
    CHECK_FALSE(point_on_segment(P(1, 1), {P(0, 0), P(2, 0)}));
    CHECK(point_on_segment(Point{1, 1, 1}, {Point{0, 0, 0}, Point{2, 2, 2}}, true));
}

TEST_CASE("hyperplane hits") {
    auto h = hyperplane_hits(P(1, 0), P(1, 0), {P(0, 0), P(4, 0)});
    REQUIRE(h.size() == 1);
    CHECK(h[0] == rat(1, 4));
    CHECK(hyperplane_hits(P(1, 0), P(9, 0), {P(0, 0), P(4, 0)}).empty());
    CHECK(hyperplane_hits(P(0, 1), P(0, 0), {P(0, 0), P(4, 0)}).size() == 2);
}

TEST_CASE("linear algebra") {
    Matrix a{{rat(1), rat(2)}, {rat(3), rat(4)}};
    auto x = solve(a, {rat(5), rat(6)});
    REQUIRE(x);
    CHECK((*x)[0] == rat(-4));
    CHECK((*x)[1] == rat(9, 2));
    CHECK(rank({{rat(1), rat(2)}, {rat(2), rat(4)}}) == 1);
    CHECK_FALSE(solve({{rat(1), rat(2)}, {rat(2), rat(4)}}, {rat(1), rat(1)}));
    auto ns = null_space({{rat(1), rat(1), rat(1)}}, 3);
    CHECK(ns.size() == 2);
    for (const auto& v : ns) CHECK(v[0] + v[1] + v[2] == 0);
}
