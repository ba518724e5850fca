#include "doctest.h"

#include <random>

#include "pcl/set_model.hpp"

using namespace pcl;

namespace {

Point P(const Rational& x, const Rational& y) { return Point{x, y}; }

std::vector<Point> unit_square() { return {P(0, 0), P(1, 0), P(1, 1), P(0, 1)}; }
std::vector<Point> lshape() { return {P(0, 0), P(2, 0), P(2, 1), P(1, 1), P(1, 2), P(0, 2)}; }

GeoSet square_boundary() { return make_closed_curve(unit_square()); }

Point random_point(std::mt19937_64& g, long lo, long hi, long den) {
    auto c = [&] { return rat(static_cast<long>(g() % static_cast<unsigned long>((hi - lo) * den + 1)) + lo * den, den); };
    Rational x = c();
    return P(x, c());
}

// Even-odd ray casting with explicit boundary test, independent of locate().
int oracle_location(const std::vector<Point>& ring, const Point& p) {
    std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i)
        if (point_on_segment(p, {ring[i], ring[(i + 1) % n]})) return 0;
    bool in = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        if ((a[1] > p[1]) != (b[1] > p[1])) {
            Rational x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if (x > p[0]) in = !in;
        }
    }
    return in ? 1 : -1;
}

}  // namespace

TEST_CASE("membership") {
    GeoSet sq = closed_polygon(unit_square());
    CHECK(member(sq, P(rat(1, 2), rat(1, 2))));
    CHECK(member(sq, P(0, 0)));
    GeoSet punctured = puncture(sq, P(rat(1, 2), rat(1, 2)));
    CHECK_FALSE(member(punctured, P(rat(1, 2), rat(1, 2))));
    GeoSet open = open_polygon(unit_square());
    CHECK_FALSE(member(open, P(0, rat(1, 2))));
    CHECK(member(open, P(rat(1, 3), rat(1, 2))));
    CHECK_THROWS_AS(member(sq, Point{1, 1, 1}), DimensionError);
}

TEST_CASE("membership agrees with a ray-casting oracle") {
    std::mt19937_64 g(21);
    GeoSet closed = closed_polygon(lshape());
    GeoSet open = open_polygon(lshape());
    for (int i = 0; i < 2000; ++i) {
        Point p = random_point(g, -1, 3, 4);
        int loc = oracle_location(lshape(), p);
        CHECK(member(closed, p) == (loc >= 0));
        CHECK(member(open, p) == (loc > 0));
    }
}

TEST_CASE("segment containment") {
    GeoSet sq = closed_polygon(unit_square());
    CHECK(segment_in_set(sq, P(0, 0), P(1, 1)).inside);
    GeoSet punctured = puncture(sq, P(rat(1, 2), rat(1, 2)));
    auto t = segment_in_set(punctured, P(rat(1, 4), rat(1, 2)), P(rat(3, 4), rat(1, 2)));
    CHECK_FALSE(t.inside);
    REQUIRE(t.evidence);
    CHECK(*t.evidence == P(rat(1, 2), rat(1, 2)));
    auto b = segment_in_set(square_boundary(), P(0, 0), P(1, 1));
    CHECK_FALSE(b.inside);
    REQUIRE(b.evidence);
    CHECK(point_on_segment(*b.evidence, {P(0, 0), P(1, 1)}));
    CHECK_FALSE(member(square_boundary(), *b.evidence));
    CHECK_THROWS_AS(segment_in_set(sq, P(0, 0), P(0, 0)), PreconditionError);
    CHECK_THROWS_AS(segment_in_set(sq, P(0, 0), P(5, 5)), PreconditionError);
}

TEST_CASE("segment containment is symmetric and its evidence verifies") {
    std::mt19937_64 g(22);
    std::vector<GeoSet> sets{closed_polygon(lshape()), open_polygon(lshape()),
                             puncture(closed_polygon(lshape()), P(rat(1, 2), rat(1, 2))),
                             puncture(closed_polygon(lshape()), Segment{P(rat(1, 4), rat(1, 4)), P(rat(3, 4), rat(1, 2))}),
                             square_boundary()};
    for (const GeoSet& s : sets) {
        std::vector<Point> pts;
        while (pts.size() < 40) {
            Point p = random_point(g, 0, 2, 4);
            if (member(s, p)) pts.push_back(p);
        }
        if (s.is<SegmentComplex>())
            for (long k = 0; k < 8; ++k) pts.push_back(P(rat(k, 8), 0));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (pts[i] == pts[j]) continue;
                auto a = segment_in_set(s, pts[i], pts[j]);
                auto b = segment_in_set(s, pts[j], pts[i]);
                CHECK(a.inside == b.inside);
                if (!a.inside) {
                    CHECK(point_on_segment(*a.evidence, {pts[i], pts[j]}));
                    CHECK_FALSE(member(s, *a.evidence));
                }
            }
    }
}

TEST_CASE("convex regions contain all their chords") {
    std::mt19937_64 g(23);
    GeoSet hex = closed_polygon({P(0, 0), P(4, 0), P(6, 2), P(4, 4), P(0, 4), P(-2, 2)});
    std::vector<Point> pts;
    while (pts.size() < 60) {
        Point p = random_point(g, -2, 6, 2);
        if (member(hex, p)) pts.push_back(p);
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] != pts[j]) CHECK(segment_in_set(hex, pts[i], pts[j]).inside);
}

TEST_CASE("closure and interior") {
    GeoSet open = open_polygon(unit_square());
    GeoSet cl = closure_of(open);
    CHECK(member(cl, P(0, 0)));
    CHECK(cl.get<PolygonalRegion>()->outer.all_included());
    GeoSet punctured = puncture(closed_polygon(unit_square()), P(rat(1, 2), rat(1, 2)));
    CHECK(closure_of(punctured).get<PolygonalRegion>()->excluded_points.empty());
    CHECK(closure_of(square_boundary()).is<SegmentComplex>());

    auto in = interior_of(closed_polygon(unit_square()));
    REQUIRE(in);
    CHECK(in->get<PolygonalRegion>()->outer.all_excluded());
    auto in2 = interior_of(punctured);
    REQUIRE(in2);
    CHECK(in2->get<PolygonalRegion>()->excluded_points.size() == 1);
    CHECK_FALSE(interior_of(square_boundary()));
}

TEST_CASE("closure is extensive and closure of interior restores a closed region") {
    std::mt19937_64 g(24);
    GeoSet closed = closed_polygon(lshape());
    GeoSet sets[] = {open_polygon(lshape()), puncture(closed, P(rat(1, 2), rat(1, 2))), closed};
    auto regular = closure_of(*interior_of(closed));
    for (int i = 0; i < 1000; ++i) {
        Point p = random_point(g, -1, 3, 8);
        for (const GeoSet& s : sets)
            if (member(s, p)) CHECK(member(closure_of(s), p));
        CHECK(member(regular, p) == member(closed, p));
    }
}

TEST_CASE("punctures") {
    GeoSet sq = closed_polygon(unit_square());
    CHECK(puncture(sq, P(rat(1, 2), rat(1, 2))).get<PolygonalRegion>()->excluded_points.size() == 1);
    GeoSet slit = puncture(sq, Segment{P(rat(1, 4), rat(1, 2)), P(rat(3, 4), rat(1, 2))});
    CHECK(slit.get<PolygonalRegion>()->excluded_segments.size() == 1);
    CHECK_FALSE(member(slit, P(rat(1, 2), rat(1, 2))));
    CHECK_THROWS_AS(puncture(sq, P(7, 7)), PreconditionError);
}

TEST_CASE("connected components") {
    PolygonalRegion r = closed_polygon(unit_square());
    r.isolated_points.push_back(P(5, 5));
    auto cs = connected_components(r);
    CHECK(cs.size() == 2);
    CHECK(std::count_if(cs.begin(), cs.end(), [](const Component& c) { return c.kind == Component::Kind::singleton; }) == 1);

    CompositeSet two;
    two.parts.push_back(closed_polygon(unit_square()));
    two.parts.push_back(closed_polygon({P(3, 0), P(4, 0), P(4, 1), P(3, 1)}));
    CHECK(connected_components(GeoSet(two)).size() == 2);
    CHECK(connected_components(square_boundary()).size() == 1);
}

TEST_CASE("simple connectivity") {
    GeoSet sq = closed_polygon(unit_square());
    CHECK(is_simply_connected(sq));
    CHECK_FALSE(is_simply_connected(puncture(sq, P(rat(1, 2), rat(1, 2)))));
    CHECK_FALSE(is_simply_connected(square_boundary()));
    CHECK(is_simply_connected(make_arc({P(0, 0), P(1, 0), P(1, 1)})));
    // a slit that reaches the boundary keeps the region simply connected
    CHECK(is_simply_connected(puncture(sq, Segment{P(0, rat(1, 2)), P(rat(1, 2), rat(1, 2))})));
    CHECK_FALSE(is_simply_connected(puncture(sq, Segment{P(rat(1, 4), rat(1, 2)), P(rat(1, 2), rat(1, 2))})));
    PolygonalRegion r = closed_polygon(unit_square());
    r.isolated_points.push_back(P(5, 5));
    CHECK_THROWS_AS(is_simply_connected(r), PreconditionError);
}

TEST_CASE("local nonconvexity points") {
    CHECK(local_nonconvexity_points(closed_polygon(unit_square())).empty());
    auto b = local_nonconvexity_points(closed_polygon(lshape()));
    REQUIRE(b.size() == 1);
    CHECK(b[0] == P(1, 1));
    PolygonalRegion holed = closed_polygon({P(0, 0), P(6, 0), P(6, 6), P(0, 6)});
    std::vector<Point> hole{P(2, 2), P(4, 2), P(4, 4), P(2, 4)};
    holed.holes.push_back(Ring::with_boundary(hole, true));
    auto hb = local_nonconvexity_points(holed);
    std::sort(hole.begin(), hole.end());
    CHECK(hb == hole);
    CHECK_THROWS_AS(local_nonconvexity_points(open_polygon(lshape())), PreconditionError);
}

TEST_CASE("validation rejects malformed sets") {
    CHECK_THROWS_AS(closed_polygon({P(0, 0), P(1, 1), P(1, 0), P(0, 1)}), PreconditionError);
    CHECK_THROWS_AS(make_arc({P(0, 0), P(2, 0), P(1, 0)}), PreconditionError);
    CHECK_THROWS_AS(make_complex({Segment{P(0, 0), P(0, 0)}}), PreconditionError);
    CHECK_THROWS_AS(make_polytope_diff(2, {{P(1, 0), 1}, {P(-1, 0), 1}, {P(0, 1), 1}, {P(0, -1), 1}},
                                       {{P(1, 0), 2}, {P(-1, 0), 0}, {P(0, 1), 0}, {P(0, -1), 0}}),
                    PreconditionError);
}

TEST_CASE("tiling subsets normalize") {
    TilingSubset t;
    t.family = TilingFamily::square;
    t.pieces.push_back({TilingLine{0, 1}, {{rat(0), rat(1)}}});
    t.pieces.push_back({TilingLine{0, 1}, {{rat(1), rat(2)}}});
    auto n = normalized(t);
    REQUIRE(n.pieces.size() == 1);
    REQUIRE(n.pieces[0].intervals.size() == 1);
    CHECK(n.pieces[0].intervals[0].second == rat(2));
    CHECK_FALSE(tiling_line_valid(TilingFamily::trihexagonal, TilingLine{0, 2}));
    CHECK(tiling_line_valid(TilingFamily::trihexagonal, TilingLine{2, 3}));
    CHECK_FALSE(tiling_line_valid(TilingFamily::square, TilingLine{2, 0}));
}
