#include "doctest.h"

#include "pcl/json_io.hpp"
#include "pcl/svg.hpp"

using namespace pcl;

namespace {

Point P(const Rational& x, const Rational& y) { return Point{x, y}; }

std::vector<GeoSet> samples() {
    std::vector<GeoSet> out;
    for (Family f : all_families())
        for (std::uint64_t seed = 0; seed < 4; ++seed) out.push_back(generate(GenSpec{f, {}, seed}).set);
    return out;
}

}  // namespace

TEST_CASE("rationals and points encode exactly") {
    CHECK(rational_to_json(rat(-3, 4)) == "-3/4");
    CHECK(rational_from_json(Json("6/8")) == rat(3, 4));
    CHECK(rational_from_json(Json(2)) == rat(2));
    CHECK(point_from_json(point_to_json(P(rat(1, 3), rat(-7, 2)))) == P(rat(1, 3), rat(-7, 2)));
    CHECK_THROWS_AS(rational_from_json(Json("1/0")), Error);
    CHECK_THROWS_AS(point_from_json(Json::array()), FormatError);
}

TEST_CASE("sets round-trip through JSON for every family") {
    for (const GeoSet& s : samples()) {
        Json j = set_to_json(s);
        CHECK(j["schema"] == kSchema);
        GeoSet back = set_from_json(parse_json_text(j.dump()));
        CHECK(set_to_json(back).dump() == j.dump());
        CHECK(back.class_name() == s.class_name());
    }
}

TEST_CASE("set parsing validates") {
    Json bad = set_to_json(closed_polygon({P(0, 0), P(1, 0), P(1, 1), P(0, 1)}));
    bad["schema"] = "pcl/0";
    CHECK_THROWS_AS(set_from_json(bad), FormatError);
    Json bow = set_to_json(closed_polygon({P(0, 0), P(1, 0), P(1, 1), P(0, 1)}));
    bow.erase("schema");
    CHECK_THROWS_AS(set_from_json(bow), FormatError);
}

TEST_CASE("malformed JSON reports a byte position") {
    try {
        parse_json_text("{\"schema\": \"pcl/1\", ");
        FAIL("expected a parse error");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
}

TEST_CASE("witnesses, budgets and spec round-trip") {
    Witness w;
    w.property = Property::pm;
    w.m = 2;
    w.points = {P(rat(1, 4), rat(1, 2)), P(rat(3, 4), rat(1, 2))};
    w.failing.push_back(FailingSegment{w.points[0], w.points[1], P(rat(1, 2), rat(1, 2))});
    Json j = witness_to_json(w);
    CHECK(witness_to_json(witness_from_json(j)) == j);
    SearchBudget b = SearchBudget{}.scaled(3);
    b.seed = 77;
    CHECK(budget_to_json(budget_from_json(budget_to_json(b))) == budget_to_json(b));
    GenSpec g{Family::union_pair, {{"m", 3}, {"n", 2}}, 9};
    CHECK(genspec_from_json(genspec_to_json(g)) == g);
}

TEST_CASE("verdict JSON carries the kind") {
    CHECK(verdict_to_json(HoldsExact{"convex"})["verdict"] == "holds_exact");
    CHECK(verdict_to_json(Unrefuted{SearchBudget{}})["verdict"] == "unrefuted");
}

TEST_CASE("svg output is deterministic and planar only") {
    GeoSet l = closed_polygon({P(0, 0), P(2, 0), P(2, 1), P(1, 1), P(1, 2), P(0, 2)});
    Witness w;
    w.property = Property::pm;
    w.m = 2;
    w.points = {P(2, rat(1, 2)), P(rat(1, 2), 2)};
    w.failing.push_back(FailingSegment{w.points[0], w.points[1], P(rat(5, 4), rat(5, 4))});
    std::string a = render_svg(l, w);
    CHECK(a == render_svg(l, w));
    CHECK(a.rfind("<?xml", 0) == 0);
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a != render_svg(l));
    CHECK(render_svg(make_closed_curve({P(0, 0), P(1, 0), P(1, 1), P(0, 1)})).find("<line") != std::string::npos);
    for (const GeoSet& s : samples()) {
        if (s.dim() == 2)
            CHECK(render_svg(s) == render_svg(s));
        else
            CHECK_THROWS_AS(render_svg(s), DimensionError);
    }
    CHECK_THROWS_AS(render_svg(make_polytope_diff(3,
                                                  {{Point{1, 0, 0}, 4}, {Point{-1, 0, 0}, 4}, {Point{0, 1, 0}, 4},
                                                   {Point{0, -1, 0}, 4}, {Point{0, 0, 1}, 4}, {Point{0, 0, -1}, 4}},
                                                  {{Point{1, 0, 0}, 1}, {Point{-1, 0, 0}, 1}, {Point{0, 1, 0}, 1},
                                                   {Point{0, -1, 0}, 1}, {Point{0, 0, 1}, 1}, {Point{0, 0, -1}, 1}})),
                    DimensionError);
}
