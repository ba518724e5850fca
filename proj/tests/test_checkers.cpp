#include "doctest.h"

#include "pcl/characterizations.hpp"
#include "pcl/checkers.hpp"
#include "pcl/json_io.hpp"

using namespace pcl;

namespace {

Point P(const Rational& x, const Rational& y) { return Point{x, y}; }

std::vector<Point> unit_square() { return {P(0, 0), P(1, 0), P(1, 1), P(0, 1)}; }
std::vector<Point> lshape() { return {P(0, 0), P(2, 0), P(2, 1), P(1, 1), P(1, 2), P(0, 2)}; }
GeoSet square_minus_center() { return puncture(closed_polygon(unit_square()), P(rat(1, 2), rat(1, 2))); }

// Checks the witness format from first principles with member and segment_in_set.
bool independently_valid(const GeoSet& s, const Witness& w) {
    for (const Point& p : w.points)
        if (!member(s, p)) return false;
    std::size_t failing = 0;
    for (std::size_t i = 0; i < w.points.size(); ++i)
        for (std::size_t j = i + 1; j < w.points.size(); ++j)
            if (!segment_in_set(s, w.points[i], w.points[j]).inside) ++failing;
    std::size_t pairs = w.points.size() * (w.points.size() - 1) / 2;
    switch (w.property) {
        case Property::pm: return w.points.size() == w.m && failing == pairs;
        case Property::right3: return w.points.size() == 3 && is_right_triple(w.points[0], w.points[1], w.points[2]) && failing == 3;
        case Property::double_right3:
            return w.points.size() == 3 && is_right_triple(w.points[0], w.points[1], w.points[2]) && failing >= 2;
        case Property::starshaped: {
            if (!w.center || !member(s, *w.center) || w.points.size() + 1 != w.m) return false;
            for (const Point& p : w.points)
                if (segment_in_set(s, *w.center, p).inside) return false;
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("budgets validate and scale") {
    SearchBudget b;
    CHECK(b.max_probe_points == 512);
    CHECK(b.max_structured == 64);
    CHECK(b.max_tuples == 200000);
    SearchBudget s = b.scaled(10);
    CHECK(s.max_probe_points == 5120);
    CHECK(s.max_tuples == 2000000);
    b.max_tuples = 0;
    CHECK_THROWS_AS(b.validate(), PreconditionError);
}

TEST_CASE("P_m on the punctured square") {
    SearchBudget b;
    CHECK(is_holds_exact(check_pm(closed_polygon(unit_square()), 2, b)));
    Verdict v = check_pm(square_minus_center(), 2, b);
    REQUIRE(is_refuted(v));
    const Witness& w = witness_of(v);
    CHECK(verify_witness(square_minus_center(), w));
    CHECK(independently_valid(square_minus_center(), w));
    REQUIRE(w.failing.size() == 1);
    CHECK(w.failing[0].evidence == P(rat(1, 2), rat(1, 2)));
    CHECK(is_unrefuted(check_pm(square_minus_center(), 3, b)));
    CHECK_THROWS_AS(check_pm(square_minus_center(), 1, b), PreconditionError);
}

TEST_CASE("the stated P_2 pair across the puncture is a witness") {
    Witness w = make_pm_witness(square_minus_center(), {P(rat(1, 4), rat(1, 2)), P(rat(3, 4), rat(1, 2))});
    CHECK(verify_witness(square_minus_center(), w));
    CHECK(w.failing[0].evidence == P(rat(1, 2), rat(1, 2)));
}

TEST_CASE("right-3-point checks") {
    SearchBudget b;
    CHECK_FALSE(is_refuted(check_right3(closed_polygon({P(0, 0), P(4, 0), P(5, 3), P(1, 4)}), b)));
    GeoSet boundary = make_closed_curve(unit_square());
    Verdict v = check_right3(boundary, b);
    REQUIRE(is_refuted(v));
    CHECK(independently_valid(boundary, witness_of(v)));
    // the documented triple is a valid witness as well
    auto rt = is_right_triple(P(rat(1, 2), 0), P(1, rat(1, 2)), P(rat(1, 2), 1));
    REQUIRE(rt);
    CHECK(rt->apex_point() == P(1, rat(1, 2)));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) CHECK_FALSE(segment_in_set(boundary, rt->at(i), rt->at(j)).inside);
    CHECK_FALSE(is_refuted(check_right3(make_arc({P(0, 0), P(1, 0), P(1, 1)}), b)));
}

TEST_CASE("double right-3-point checks") {
    SearchBudget b;
    GeoSet open_punctured = puncture(open_polygon(unit_square()), P(rat(1, 2), rat(1, 2)));
    Verdict v = check_double_right3(open_punctured, b);
    REQUIRE(is_holds_exact(v));
    CHECK(std::get<HoldsExact>(v).reason == "open-convex-minus-point");
    GeoSet l = closed_polygon(lshape());
    Verdict lv = check_double_right3(l, b);
    REQUIRE(is_refuted(lv));
    CHECK(independently_valid(l, witness_of(lv)));
    CHECK(is_unrefuted(check_double_right3(make_complex({Segment{P(0, 0), P(3, 1)}}), b)));
}

TEST_CASE("reflex-corner construction refutes non-convex regions") {
    for (const auto& ring : {lshape(), std::vector<Point>{P(rat(-23, 3), rat(-5, 4)), P(-7, -4), P(-7, 4), P(-8, 0)}}) {
        GeoSet s = closed_polygon(ring);
        auto w = double_right3_witness_at_reflex(s);
        REQUIRE(w);
        CHECK(independently_valid(s, *w));
    }
    CHECK_FALSE(double_right3_witness_at_reflex(closed_polygon(unit_square())));
}

TEST_CASE("kernel membership") {
    SearchBudget b;
    GeoSet sq = closed_polygon(unit_square());
    CHECK(is_holds_exact(kernel_m_membership(sq, P(rat(1, 3), rat(1, 2)), 2, b)));
    GeoSet l = closed_polygon(lshape());
    CHECK(is_unrefuted(kernel_m_membership(l, P(1, 1), 2, b)));
    Verdict v = kernel_m_membership(l, P(2, 0), 2, b);
    REQUIRE(is_refuted(v));
    CHECK(independently_valid(l, witness_of(v)));
    // (0, 2) is one of the points (2, 0) cannot see
    CHECK_FALSE(segment_in_set(l, P(2, 1), P(1, 2)).inside);
    CHECK_THROWS_AS(kernel_m_membership(l, P(5, 5), 2, b), PreconditionError);
}

TEST_CASE("m-starshapedness") {
    SearchBudget b;
    StarshapedReport c = check_starshaped_m(closed_polygon(unit_square()), 2, b);
    CHECK(is_holds_exact(c.verdict));
    REQUIRE(c.candidate);

    PolygonalRegion r = closed_polygon({P(0, 0), P(4, 0), P(4, 4), P(0, 4)});
    r.isolated_points.push_back(P(7, 2));
    StarshapedReport plus = check_starshaped_m(r, 3, b);
    CHECK_FALSE(is_refuted(plus.verdict));
    REQUIRE(plus.candidate);
    CHECK(member(r, *plus.candidate));

    CompositeSet two;
    two.parts.push_back(closed_polygon({P(0, 0), P(2, 0), P(2, 2), P(0, 2)}));
    two.parts.push_back(closed_polygon({P(5, 0), P(7, 0), P(7, 2), P(5, 2)}));
    StarshapedReport none = check_starshaped_m(two, 3, b);
    CHECK(is_refuted(none.verdict));
    CHECK_FALSE(none.candidate);
    for (const Witness& w : none.candidate_refutations) CHECK(independently_valid(two, w));
}

TEST_CASE("exact polygon kernel") {
    auto sq = polygon_kernel_exact(closed_polygon(unit_square()));
    CHECK(sq.size() == 4);
    auto k = polygon_kernel_exact(closed_polygon(lshape()));
    REQUIRE(k.size() == 4);
    for (const Point& v : {P(0, 0), P(1, 0), P(1, 1), P(0, 1)}) CHECK(std::find(k.begin(), k.end(), v) != k.end());
    // half-plane oracle: kernel points see every vertex
    GeoSet l = closed_polygon(lshape());
    for (const Point& x : {P(rat(1, 2), rat(1, 2)), P(rat(1, 4), rat(3, 4))})
        for (const Point& v : lshape())
            if (x != v) CHECK(segment_in_set(l, x, v).inside);
    std::vector<Point> spiral{P(0, 0), P(6, 0), P(6, 6), P(1, 6), P(1, 2), P(4, 2), P(4, 4), P(3, 4), P(3, 3), P(2, 3), P(2, 5), P(5, 5), P(5, 1), P(0, 1)};
    GeoSet sp = closed_polygon(spiral);
    CHECK(polygon_kernel_exact(sp).empty());
    CHECK_THROWS_AS(polygon_kernel_exact(square_minus_center()), PreconditionError);
}

TEST_CASE("position tests") {
    auto a = position_tests({P(0, 0), P(1, 0), P(0, 1)});
    CHECK(a.general_position);
    CHECK(a.convex_position);
    CHECK_FALSE(position_tests({P(0, 0), P(1, 0), P(2, 0)}).general_position);
    auto c = position_tests({P(0, 0), P(4, 0), P(0, 4), P(1, 1)});
    CHECK(c.general_position);
    CHECK_FALSE(c.convex_position);
}

TEST_CASE("restricting a P_m witness gives a P_k witness") {
    GeoSet boundary = make_closed_curve({P(0, 0), P(4, 0), P(4, 4), P(0, 4)});
    Verdict v = check_pm(boundary, 4, SearchBudget{});
    REQUIRE(is_refuted(v));
    const Witness& w = witness_of(v);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) {
            Witness r = restrict_pm_witness(w, {a, b});
            CHECK(r.m == 2);
            CHECK(verify_witness(boundary, r));
        }
    Witness three = restrict_pm_witness(w, {0, 1, 3});
    CHECK(verify_witness(boundary, three));
}

TEST_CASE("right-3 witnesses are P_3 witnesses; double right-3 witnesses have a failing side") {
    GeoSet boundary = make_closed_curve({P(0, 0), P(3, 0), P(3, 2), P(0, 2)});
    Verdict v = check_right3(boundary, SearchBudget{});
    REQUIRE(is_refuted(v));
    Witness w = witness_of(v);
    Witness as_pm = make_pm_witness(boundary, w.points);
    CHECK(verify_witness(boundary, as_pm));
    Verdict d = check_double_right3(closed_polygon(lshape()), SearchBudget{});
    REQUIRE(is_refuted(d));
    CHECK(witness_of(d).failing.size() >= 1);
}

TEST_CASE("tampered witnesses are rejected") {
    Verdict v = check_pm(square_minus_center(), 2, SearchBudget{});
    REQUIRE(is_refuted(v));
    Witness w = witness_of(v);
    w.points[1] = P(rat(1, 4), rat(1, 4));
    CHECK_FALSE(verify_witness(square_minus_center(), w));
    Witness w2 = witness_of(v);
    w2.failing[0].evidence = P(rat(1, 3), rat(1, 2));
    CHECK_FALSE(verify_witness(square_minus_center(), w2));
}

TEST_CASE("searches replay identically") {
    SearchBudget b;
    b.seed = 42;
    GeoSet l = closed_polygon(lshape());
    auto a = verdict_to_json(check_pm(l, 2, b)).dump();
    auto c = verdict_to_json(check_pm(l, 2, b)).dump();
    CHECK(a == c);
    CHECK(generate_probes(l, b) == generate_probes(l, b));
    b.seed = 43;
    CHECK(structured_probes(l, b) == structured_probes(l, SearchBudget{}));
}

TEST_CASE("exact claims survive a 10x search") {
    SearchBudget b;
    GeoSet sq = closed_polygon({P(0, 0), P(3, 0), P(4, 2), P(1, 3)});
    REQUIRE(is_holds_exact(check_pm(sq, 2, b)));
    CHECK_FALSE(is_refuted(search_pm(sq, 2, b.scaled(10))));
    GeoSet open_punctured = puncture(open_polygon(unit_square()), P(rat(1, 2), rat(1, 3)));
    REQUIRE(is_holds_exact(check_double_right3(open_punctured, b)));
    SearchContext ctx(open_punctured, b.scaled(10));
    CHECK_FALSE(is_refuted(search_right_triples(ctx, 2)));
}
