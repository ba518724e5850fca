#include "doctest.h"

#include <random>

#include "pcl/characterizations.hpp"

using namespace pcl;

namespace {

Point P(const Rational& x, const Rational& y) { return Point{x, y}; }
GeoSet staircase3() { return make_arc({P(0, 0), P(1, 0), P(1, 1), P(2, 1)}); }
GeoSet square_boundary() { return make_closed_curve({P(0, 0), P(1, 0), P(1, 1), P(0, 1)}); }

TilingPiece piece(int dir, long offset, long lo, long hi) { return {TilingLine{dir, offset}, {{rat(lo), rat(hi)}}}; }

// Collinearity-run count by direct cross products, independent of the decomposition.
std::size_t runs_oracle(const std::vector<Point>& path, bool closed) {
    std::size_t n = path.size(), breaks = 0;
    for (std::size_t i = 1; i <= (closed ? n : n - 2); ++i) {
        const Point& a = path[(i + n - 1) % n];
        const Point& b = path[i % n];
        const Point& c = path[(i + 1) % n];
        if (cross(b - a, c - b) != 0) ++breaks;
    }
    return closed ? breaks : breaks + 1;
}

}  // namespace

TEST_CASE("maximal segment decomposition of arcs") {
    CHECK(arc_max_segment_decomposition(make_arc({P(0, 0), P(1, 0), P(2, 0)})).segments.size() == 1);
    CHECK(arc_max_segment_decomposition(staircase3()).segments.size() == 3);
    auto d = arc_max_segment_decomposition(make_arc({P(0, 0), P(1, 0), P(1, 1)}));
    CHECK(d.segments.size() == 2);
    CHECK(d.vertex_count == 3);
    CHECK_THROWS_AS(arc_max_segment_decomposition(square_boundary()), PreconditionError);
}

TEST_CASE("decomposition matches a cross-product oracle on random polylines") {
    std::mt19937_64 g(31);
    int tried = 0;
    while (tried < 200) {
        std::vector<Point> path{P(0, 0)};
        for (int i = 0; i < 6; ++i) {
            long dx = static_cast<long>(g() % 3), dy = static_cast<long>(g() % 3) - 1;
            if (dx == 0 && dy == 0) dx = 1;
            path.push_back(path.back() + P(dx + 1, dy));
        }
        GeoSet a;
        try {
            a = make_arc(path);
        } catch (const PreconditionError&) {
            continue;
        }
        ++tried;
        std::size_t k = arc_max_segment_decomposition(a).segments.size();
        CHECK(k == runs_oracle(path, false));
        for (std::size_t m = 2; m <= 9; ++m) CHECK(arc_pm_exact(a, m) == (k <= m - 1));
    }
}

TEST_CASE("arc characterization") {
    CHECK(arc_pm_exact(staircase3(), 4));
    CHECK_FALSE(arc_pm_exact(staircase3(), 3));
    CHECK(arc_pm_exact(make_arc({P(0, 0), P(3, 1)}), 2));
}

TEST_CASE("closed curve characterization") {
    GeoSet tri = make_closed_curve({P(0, 0), P(4, 0), P(1, 2)});
    CHECK(closed_curve_pm_exact(tri, 3));
    CHECK_FALSE(closed_curve_pm_exact(square_boundary(), 3));
    CHECK(closed_curve_pm_exact(square_boundary(), 4));
    Witness w = closed_curve_midpoint_witness(square_boundary());
    CHECK(w.points.size() == 4);
    CHECK(verify_witness(square_boundary(), w));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) CHECK_FALSE(segment_in_set(square_boundary(), w.points[i], w.points[j]).inside);
    GeoSet collinear = make_closed_curve({P(0, 0), P(1, 0), P(2, 0), P(2, 2), P(0, 2)});
    CHECK(closed_curve_decomposition(collinear).vertex_count == 4);
    CHECK(closed_curve_decomposition(collinear).vertex_count ==
          runs_oracle({P(0, 0), P(1, 0), P(2, 0), P(2, 2), P(0, 2)}, true));
    CHECK_THROWS_AS(closed_curve_pm_exact(staircase3(), 3), PreconditionError);
}

TEST_CASE("arc midpoint witness refutes P_k for k maximal segments") {
    GeoSet a = staircase3();
    Witness w = arc_midpoint_witness(a, 3);
    CHECK(w.points.size() == 3);
    CHECK(verify_witness(a, w));
}

TEST_CASE("tiling decision") {
    TilingSubset one{TilingFamily::square, {piece(0, 0, 0, 2)}};
    CHECK(tiling_3pc_exact(one));
    TilingSubset two{TilingFamily::triangular, {piece(0, 0, 0, 1), piece(2, 4, 0, 1)}};
    CHECK(tiling_3pc_exact(two));
    TilingSubset three{TilingFamily::square, {piece(0, 0, 0, 1), piece(0, 2, 0, 1), piece(0, 4, 0, 1)}};
    CHECK_FALSE(tiling_3pc_exact(three));
    // two collinear intervals that do not touch are two pieces of one line
    TilingSubset gap{TilingFamily::square, {piece(1, 0, 0, 1), piece(1, 0, 2, 3)}};
    CHECK(tiling_3pc_exact(gap));
    TilingSubset gap3{TilingFamily::square, {piece(1, 0, 0, 1), piece(1, 0, 2, 3), piece(0, 4, 0, 1)}};
    CHECK_FALSE(tiling_3pc_exact(gap3));
}

TEST_CASE("double right-3-point region decisions") {
    std::vector<Point> sq{P(0, 0), P(1, 0), P(1, 1), P(0, 1)};
    CHECK(*region_double_right3_exact(open_polygon(sq)));
    CHECK(*region_double_right3_exact(puncture(open_polygon(sq), P(rat(1, 2), rat(1, 2)))));
    GeoSet two_points = puncture(puncture(open_polygon(sq), P(rat(1, 2), rat(1, 2))), P(rat(1, 4), rat(1, 4)));
    CHECK_FALSE(*region_double_right3_exact(two_points));
    CHECK_FALSE(*region_double_right3_exact(closed_polygon({P(0, 0), P(2, 0), P(2, 1), P(1, 1), P(1, 2), P(0, 2)})));
    CHECK(*region_double_right3_exact(closed_polygon(sq)));
    CHECK_FALSE(region_double_right3_exact(puncture(closed_polygon(sq), P(rat(1, 2), rat(1, 2)))));
    CHECK_FALSE(region_double_right3_exact(square_boundary()));
}

TEST_CASE("staircase direction") {
    auto a = find_staircase_direction(make_arc({P(0, 0), P(1, 0), P(1, 1), P(2, 1), P(2, 2)}));
    CHECK(a.right_triples_present);
    REQUIRE(a.direction);
    CHECK((*a.direction == Direction(P(1, 0)) || *a.direction == Direction(P(0, 1))));
    CHECK(a.subpath.size() == 5);
    auto r = find_staircase_direction(make_arc({P(0, 0), P(3, 4), P(-1, 7), P(2, 11)}));
    REQUIRE(r.direction);
    CHECK((*r.direction == Direction(P(3, 4)) || *r.direction == Direction(P(-4, 3))));
    CHECK(is_staircase_wrt(r.subpath, *r.direction));
    CHECK_FALSE(find_staircase_direction(make_arc({P(0, 0), P(5, 2)})).right_triples_present);
}

TEST_CASE("adjacent right triples") {
    GeoSet s = staircase3();
    CHECK(adjacent_right_triples_staircase(s, P(0, 0), P(1, 0), P(1, 1), P(2, 1)));
    // the same points on an arc without the edge cd
    GeoSet u = make_arc({P(0, 0), P(1, 0), P(1, 1), P(1, 2), P(2, 2), P(2, 1)});
    CHECK_FALSE(adjacent_right_triples_staircase(u, P(0, 0), P(1, 0), P(1, 1), P(2, 1)));
    GeoSet back = make_arc({P(0, 0), P(1, 0), P(1, 1), P(0, 1)});
    CHECK_FALSE(adjacent_right_triples_staircase(back, P(0, 0), P(1, 0), P(1, 1), P(0, 1)));
    CHECK_THROWS_AS(adjacent_right_triples_staircase(s, P(0, 0), P(1, 0), P(2, 1), P(1, 1)), PreconditionError);
}

TEST_CASE("right triples on closed curves") {
    RightTriple sq = find_right_triple_on_closed_curve(square_boundary());
    CHECK(is_right_triple(sq.x, sq.y, sq.z));
    GeoSet tri = make_closed_curve({P(0, 0), P(4, 0), P(1, 2)});
    RightTriple t = find_right_triple_on_closed_curve(tri);
    CHECK(is_right_triple(t.x, t.y, t.z));
    for (int i = 0; i < 3; ++i) CHECK(member(tri, t.at(i)));
    GeoSet obtuse = make_closed_curve({P(0, 0), P(6, 0), P(7, 3), P(2, 2)});
    RightTriple o = find_right_triple_on_closed_curve(obtuse);
    CHECK(is_right_triple(o.x, o.y, o.z));
    for (int i = 0; i < 3; ++i) CHECK(member(obtuse, o.at(i)));
}

TEST_CASE("closed curves lack the right-3-point property") {
    for (const GeoSet& c : std::vector<GeoSet>{square_boundary(), make_closed_curve({P(0, 0), P(4, 0), P(1, 2)}),
                            make_closed_curve({P(0, 0), P(3, 0), P(3, 1), P(2, 1), P(2, 2), P(1, 2), P(1, 3), P(0, 3)}),
                            make_closed_curve({Point{0, 0, 0}, Point{2, 0, 0}, Point{2, 2, 1}, Point{0, 1, 2}})}) {
        Witness w = refute_right3_on_closed_curve(c);
        CHECK(w.property == Property::right3);
        CHECK(verify_witness(c, w));
    }
    GeoSet sq = square_boundary();
    auto rt = is_right_triple(P(rat(1, 2), 0), P(1, rat(1, 2)), P(rat(1, 2), 1));
    REQUIRE(rt);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) CHECK_FALSE(segment_in_set(sq, rt->at(i), rt->at(j)).inside);
}

TEST_CASE("P_3 witnesses across holes") {
    PolygonalRegion r = closed_polygon({P(0, 0), P(6, 0), P(6, 6), P(0, 6)});
    r.holes.push_back(Ring::with_boundary({P(2, 2), P(4, 2), P(4, 4), P(2, 4)}, true));
    Witness w = p3_witness_across_hole(r);
    CHECK(w.property == Property::pm);
    CHECK(w.m == 3);
    CHECK(verify_witness(r, w));
    PolygonalRegion tiny = closed_polygon({P(0, 0), P(6, 0), P(6, 6), P(0, 6)});
    tiny.holes.push_back(Ring::with_boundary({P(3, 3), P(3 + rat(1, 64), 3), P(3 + rat(1, 64), 3 + rat(1, 64)), P(3, 3 + rat(1, 64))}, true));
    CHECK(verify_witness(tiny, p3_witness_across_hole(tiny)));
    CHECK_THROWS_AS(p3_witness_across_hole(closed_polygon({P(0, 0), P(1, 0), P(0, 1)})), PreconditionError);
    CHECK_THROWS_AS(p3_witness_across_hole(puncture(closed_polygon({P(0, 0), P(4, 0), P(0, 4)}), P(1, 1))),
                    PreconditionError);
}

TEST_CASE("segment complement bipartition") {
    auto [c1, c2] = bipartition_segment_complement(1, Segment{Point{rat(0)}, Point{rat(1)}});
    CHECK(c1.contains(Point{rat(-1)}));
    CHECK_FALSE(c1.contains(Point{rat(2)}));
    CHECK(c2.contains(Point{rat(2)}));
    CHECK_FALSE(c1.contains(Point{rat(1, 2)}));
    CHECK_FALSE(c2.contains(Point{rat(1, 2)}));

    auto [d1, d2] = bipartition_segment_complement(2, Segment{P(0, 0), P(1, 0)});
    CHECK(d1.contains(P(5, 1)));
    CHECK(d2.contains(P(5, 0)));
    CHECK(d1.contains(P(-3, 0)));
    CHECK(d2.contains(P(0, -1)));
    CHECK_FALSE(d1.contains(P(rat(1, 2), 0)));
    CHECK_FALSE(d2.contains(P(rat(1, 2), 0)));
}

TEST_CASE("bipartition cells are disjoint, cover the complement and are midpoint convex") {
    std::mt19937_64 g(32);
    auto pt = [&](std::size_t d) {
        std::vector<Rational> c;
        for (std::size_t k = 0; k < d; ++k) c.push_back(rat(static_cast<long>(g() % 17) - 8, 4));
        return Point(std::move(c));
    };
    for (std::size_t d = 1; d <= 3; ++d) {
        Point a = pt(d), b = pt(d);
        if (a == b) continue;
        Segment s{a, b};
        auto [c1, c2] = bipartition_segment_complement(d, s);
        std::vector<Point> in1, in2;
        for (int i = 0; i < 1500; ++i) {
            Point x = i % 4 == 0 ? lerp(a, b, rat(static_cast<long>(g() % 25) - 8, 8)) : pt(d);
            int count = c1.contains(x) + c2.contains(x);
            CHECK(count == (point_on_segment(x, s) ? 0 : 1));
            if (count == 1) (c1.contains(x) ? in1 : in2).push_back(x);
        }
        for (const auto* cell : {&in1, &in2})
            for (std::size_t i = 0; i + 1 < cell->size() && i < 300; ++i) {
                Point m = midpoint((*cell)[i], (*cell)[i + 1]);
                CHECK((cell == &in1 ? c1.contains(m) : c2.contains(m)));
            }
    }
}

TEST_CASE("halfspace cover of a polytope difference") {
    auto hs = [](long a, long b, long c) { return Halfspace{P(a, b), rat(c)}; };
    PolytopeDiff p = make_polytope_diff(2, {hs(1, 0, 2), hs(-1, 0, 2), hs(0, 1, 2), hs(0, -1, 2)},
                                        {hs(1, 0, 1), hs(-1, 0, 1), hs(0, 1, 1), hs(0, -1, 1)});
    auto cells = halfspace_cover(p);
    REQUIRE(cells.size() == 4);
    CHECK(cells[0].contains(P(rat(3, 2), 0)));
    std::size_t hits = 0;
    for (const auto& c : cells) hits += c.contains(P(0, 0));
    CHECK(hits == 0);
    hits = 0;
    for (const auto& c : cells) hits += c.contains(P(rat(3, 2), 0));
    CHECK(hits == 1);
    for (const auto& c : cells) CHECK_FALSE(c.contains(P(1, 0)));
    for (const auto& c : cells) CHECK_FALSE(c.contains(P(3, 0)));
}

TEST_CASE("linear conditions and lexicographic chains") {
    LinearCondition lc{P(1, 1), rat(1), LinearCondition::Rel::lt};
    CHECK(lc.holds(P(0, 0)));
    CHECK_FALSE(lc.holds(P(1, 0)));
    LexChain ch{{P(0, 1)}, P(0, 0), 1, LinearCondition{P(1, 0), rat(0), LinearCondition::Rel::lt}};
    CHECK(ch.holds(P(3, 1)));
    CHECK(ch.holds(P(-1, 0)));
    CHECK_FALSE(ch.holds(P(1, 0)));
    CHECK_FALSE(ch.holds(P(0, -1)));
}
