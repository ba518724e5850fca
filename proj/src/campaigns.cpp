#include "pcl/campaigns.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "pcl/characterizations.hpp"
#include "pcl/linalg.hpp"

namespace pcl {

namespace {

SearchBudget pinned(std::size_t structured, std::size_t random, std::size_t tuples) {
    SearchBudget b;
    b.max_structured = structured;
    b.max_probe_points = random;
    b.max_tuples = tuples;
    return b;
}

SearchBudget seeded(SearchBudget b, std::uint64_t seed) {
    b.seed = seed;
    return b;
}

InstanceResult begin(std::size_t index, std::uint64_t seed) {
    InstanceResult r;
    r.index = index;
    r.instance_seed = seed;
    return r;
}

InstanceResult& failed(InstanceResult& r, const std::string& msg) {
    r.outcome = "failure";
    r.failure = msg;
    return r;
}

Instance make(Family f, std::map<std::string, long> params, std::uint64_t seed, InstanceResult& r) {
    GenSpec g{f, std::move(params), seed};
    r.spec = g;
    Instance inst = generate(g);
    r.set = inst.set;
    return inst;
}

std::string verdict_brief(const Verdict& v) { return verdict_kind(v); }

// Convexity of a simple polygon: every vertex on one side of every edge line.
bool convex_oracle(const std::vector<Point>& ring) {
    std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        bool pos = false, neg = false;
        for (const Point& v : ring) {
            int o = sign(cross(b - a, v - a));
            pos = pos || o > 0;
            neg = neg || o < 0;
        }
        if (pos && neg) return false;
    }
    return true;
}

// Reflex vertices of a simple polygon from the shoelace orientation.
std::vector<Point> reflex_oracle(const std::vector<Point>& ring) {
    std::size_t n = ring.size();
    Rational area = 0;
    for (std::size_t i = 0; i < n; ++i) area += ring[i][0] * ring[(i + 1) % n][1] - ring[(i + 1) % n][0] * ring[i][1];
    int orient = sign(area);
    std::vector<Point> out;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = ring[(i + n - 1) % n];
        const Point& v = ring[i];
        const Point& q = ring[(i + 1) % n];
        if (sign(cross(v - p, q - v)) == -orient) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Point grid_point(Rng& rng, std::size_t d, long lo, long hi, long den) {
    std::vector<Rational> c;
    for (std::size_t k = 0; k < d; ++k) c.push_back(rat(rng.range(lo * den, hi * den), den));
    return Point(std::move(c));
}

std::optional<std::string> witness_check(const GeoSet& s, const Verdict& v, const char* what) {
    if (!is_refuted(v)) return std::string(what) + " was not refuted (" + verdict_kind(v) + ")";
    std::string problem = witness_problem(s, witness_of(v));
    if (!problem.empty()) return std::string(what) + " witness does not verify: " + problem;
    return std::nullopt;
}

// ---- 1: arcs ----

std::optional<std::string> arc_property(const GeoSet& a, const SearchBudget& b, std::string* outcome) {
    std::size_t k = arc_max_segment_decomposition(a).segments.size();
    SearchContext base(a, b), wide(a, b.scaled(10));
    std::size_t refuted = 0, unrefuted = 0;
    for (std::size_t m = 2; m <= 9; ++m) {
        bool exact = arc_pm_exact(a, m);
        if (exact != (k <= m - 1)) return "arc_pm_exact disagrees with the segment count at m=" + std::to_string(m);
        Verdict dispatched = check_pm(a, m, b);
        if (exact) {
            if (!is_holds_exact(dispatched)) return "check_pm did not dispatch to the exact decision at m=" + std::to_string(m);
            Verdict v = search_pm(wide, m);
            if (is_refuted(v)) return "exact-true arc refuted by search at m=" + std::to_string(m);
            ++unrefuted;
        } else {
            if (auto e = witness_check(a, dispatched, "check_pm")) return *e + " at m=" + std::to_string(m);
            Verdict v = search_pm(base, m);
            if (auto e = witness_check(a, v, "search")) return *e + " at m=" + std::to_string(m);
            ++refuted;
        }
    }
    if (outcome) *outcome = "k=" + std::to_string(k);
    return std::nullopt;
}

InstanceResult run_arc_pm(std::size_t index, std::uint64_t seed, const SearchBudget& b) {
    InstanceResult r = begin(index, seed);
    long k = 2 + static_cast<long>(index % 7);
    Family f = index % 3 == 2 ? Family::zigzag_arc : Family::staircase_arc;
    Instance inst = make(f, {{"edges", k}, {"subdivide", 1}, {"rotated", static_cast<long>(index % 3 == 1)}}, seed, r);
    if (auto e = arc_property(inst.set, seeded(b, seed), &r.outcome)) return failed(r, *e);
    if (*inst.truth.pm_holds != static_cast<std::size_t>(k) + 1) return failed(r, "ground truth tag mismatch");
    return r;
}

// ---- 2: closed curves ----

std::optional<std::string> closed_pm_property(const GeoSet& c, const SearchBudget& b) {
    std::size_t m = closed_curve_decomposition(c).vertex_count;
    for (std::size_t n = m; n <= m + 2; ++n)
        if (!closed_curve_pm_exact(c, n)) return "closed_pm(" + std::to_string(n) + ") is false with " + std::to_string(m) + " vertices";
    if (m > 1 && closed_curve_pm_exact(c, m - 1)) return "closed_pm(m-1) is true";
    Witness w = closed_curve_midpoint_witness(c);
    if (w.points.size() != m) return "midpoint witness has the wrong size";
    if (std::string p = witness_problem(c, w); !p.empty()) return "midpoint witness does not verify: " + p;
    if (auto e = witness_check(c, check_pm(c, m, b), "check_pm(m)")) return e;
    if (is_refuted(search_pm(c, m + 1, b.scaled(10)))) return "P_{m+1} refuted at 10x budget";
    return std::nullopt;
}

InstanceResult run_closed_pm(std::size_t index, std::uint64_t seed, const SearchBudget& b) {
    InstanceResult r = begin(index, seed);
    long n = 3 + static_cast<long>(index % 6);
    long dim = index % 4 == 3 ? 3 : 2;
    Instance inst = make(Family::closed_polyline, {{"n", n}, {"dim", dim}}, seed, r);
    if (auto e = closed_pm_property(inst.set, seeded(b, seed))) return failed(r, *e);
    r.outcome = "d=" + std::to_string(dim);
    return r;
}

// ---- 3: unions ----

InstanceResult run_union(std::size_t index, std::uint64_t seed, const SearchBudget& b) {
    InstanceResult r = begin(index, seed);
    long m = 2 + static_cast<long>(index % 3), n = 2 + static_cast<long>((index / 3) % 2);
    Instance inst = make(Family::union_pair, {{"m", m}, {"n", n}}, seed, r);
    std::size_t k = *inst.truth.pm_holds;
    Verdict v = check_pm(inst.set, k, seeded(b, seed));
    if (is_refuted(v)) {
        r.witness = witness_of(v);
        return failed(r, "union refuted for P_" + std::to_string(k));
    }
    r.outcome = verdict_brief(v);
    return r;
}

std::optional<std::string> union_recheck(const GeoSet& s, const SearchBudget& b) {
    // the part counts are not recoverable from a shrunk set, so reuse the
    // weakest claim that any failure must still violate
    std::size_t k = 0;
    if (const auto* c = s.get<CompositeSet>()) k = c->parts.size() + 1;
    if (k == 0) return std::nullopt;
    if (is_refuted(check_pm(s, k, b))) return "refuted";
    return std::nullopt;
}

// ---- 4: punctures ----

std::optional<std::string> puncture_property(const GeoSet& s, const SearchBudget& b) {
    if (is_refuted(check_pm(s, 3, b))) return "P_3 refuted";
    if (auto e = witness_check(s, check_pm(s, 2, b), "P_2")) return e;
    return std::nullopt;
}

InstanceResult run_puncture(std::size_t index, std::uint64_t seed, const SearchBudget& b) {
    InstanceResult r = begin(index, seed);
    bool slit = index % 2 == 1;
    long open = static_cast<long>((index / 2) % 2);
    Instance inst = make(slit ? Family::slit_convex : Family::punctured_convex, {{"n", 4 + static_cast<long>(index % 5)}, {"open", open}}, seed, r);
    if (auto e = puncture_property(inst.set, seeded(b, seed))) return failed(r, *e);
    r.outcome = std::string(slit ? "segment" : "point") + (open ? "/open" : "/closed");
    return r;
}

// ---- 5: polytope differences ----

bool in_polytope(const std::vector<Halfspace>& hs, const Point& x) {
    return std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) { return h.contains(x); });
}

std::optional<std::string> polytope_property(const GeoSet& s, const SearchBudget& b, std::uint64_t seed) {
    const PolytopeDiff& p = *s.get<PolytopeDiff>();
    std::size_t m = p.A.size();
    auto cells = halfspace_cover(p);
    if (cells.size() != m) return "cover has the wrong number of cells";
    Rng rng(seed);
    auto cells_containing = [&](const Point& x) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].contains(x)) out.push_back(i);
        return out;
    };
    auto classify = [&](const Point& x, bool& in_a) -> std::optional<std::string> {
        in_a = in_polytope(p.A, x);
        if (in_a == member(s, x)) return "membership of Q \\ A disagrees with the halfspaces at " + to_string(x);
        auto hit = cells_containing(x);
        if (in_a && !hit.empty()) return "a point of A lies in a cell: " + to_string(x);
        if (!in_a && hit.empty()) return "a point of Q \\ A lies in no cell: " + to_string(x);
        return std::nullopt;
    };
    // points of A as random convex combinations of its vertices
    for (std::size_t i = 0; i < 1000; ++i) {
        Point x = Point::zero(p.dim);
        Rational total = 0;
        for (const Point& v : p.a_vertices) {
            Rational w = rng.range(0, 16);
            x = x + w * v;
            total += w;
        }
        if (total == 0) x = p.a_vertices[i % p.a_vertices.size()];
        else x = Rational(Rational(1) / total) * x;
        bool in_a = false;
        if (auto e = classify(x, in_a)) return e;
        if (!in_a) return "convex combination of the vertices of A left A: " + to_string(x);
    }
    std::vector<Point> diff_points;
    for (std::size_t tries = 0; diff_points.size() < 1000 && tries < 100000; ++tries) {
        Point x = Point::zero(p.dim);
        for (std::size_t k = 0; k < p.dim; ++k) x[k] = rat(rng.range(-512, 512), 128);
        bool in_a = false;
        if (auto e = classify(x, in_a)) return e;
        if (!in_a) diff_points.push_back(x);
    }
    if (diff_points.size() < 1000) return "sampling did not reach 1000 points of Q \\ A";
    // any m + 1 points of Q \ A have two in a common cell, whose chord stays in Q \ A
    for (std::size_t round = 0; round < 20; ++round) {
        std::vector<Point> pick;
        for (std::size_t i = 0; i <= m; ++i) pick.push_back(diff_points[static_cast<std::size_t>(rng.range(0, 999))]);
        bool found = false;
        for (std::size_t i = 0; i < pick.size() && !found; ++i)
            for (std::size_t j = i + 1; j < pick.size() && !found; ++j) {
                if (pick[i] == pick[j]) {
                    found = true;
                    break;
                }
                auto ci = cells_containing(pick[i]), cj = cells_containing(pick[j]);
                bool share = std::any_of(ci.begin(), ci.end(), [&](std::size_t c) { return std::find(cj.begin(), cj.end(), c) != cj.end(); });
                if (share) {
                    if (!segment_in_set(s, pick[i], pick[j]).inside) return "chord inside one cell leaves Q \\ A";
                    found = true;
                }
            }
        if (!found) return "pigeonhole failed: no two of m+1 points share a cell";
    }
    if (is_refuted(check_pm(s, m + 1, b))) return "check_pm(m+1) refuted";
    if (is_refuted(search_pm(s, m + 1, b))) return "search refuted P_{m+1}";
    return std::nullopt;
}

InstanceResult run_polytope(std::size_t index, std::uint64_t seed, const SearchBudget& b) {
    InstanceResult r = begin(index, seed);
    long d = index % 2 == 0 ? 2 : 3;
    long m = d == 2 ? 3 + static_cast<long>((index / 2) % 4) : 4 + static_cast<long>((index / 2) % 3);
    Instance inst = make(Family::polytope_diff, {{"dim", d}, {"facets", m}}, seed, r);
    if (auto e = polytope_property(inst.set, seeded(b, seed), seed)) return failed(r, *e);
    r.outcome = "d=" + std::to_string(d);
    return r;
}

// ---- 6: segment complement bipartition ----

InstanceResult run_bipartition(std::size_t index, std::uint64_t seed, const SearchBudget&) {
    InstanceResult r = begin(index, seed);
    Rng rng(seed);
    std::size_t d = 1 + index % 3;
    Point a = grid_point(rng, d, -4, 4, 8), c = a;
    while (c == a) c = grid_point(rng, d, -4, 4, 8);
    Segment s{a, c};
    auto [first, second] = bipartition_segment_complement(d, s);
    const ConvexCell* cells[2] = {&first, &second};
    Point u = c - a;
    std::vector<Point> plane;
    if (d == 3) {
        Matrix row{{first.chain->normals[0][0], first.chain->normals[0][1], first.chain->normals[0][2]}};
        for (const auto& v : null_space(row, 3)) plane.push_back(Point(v));
    }
    std::vector<Point> in_cell[2];
    for (std::size_t i = 0; i < 10000; ++i) {
        Point x;
        switch (i % 3) {
            case 0: x = grid_point(rng, d, -6, 6, 8); break;
            case 1: x = a + rat(rng.range(-16, 24), 8) * u; break;
            default:
                if (plane.empty())
                    x = a + rat(rng.range(-16, 24), 8) * u;
                else
                    x = a + rat(rng.range(-16, 16), 8) * plane[0] + rat(rng.range(-16, 16), 8) * plane[1];
        }
        int count = 0;
        for (int k = 0; k < 2; ++k)
            if (cells[k]->contains(x)) {
                ++count;
                in_cell[k].push_back(x);
            }
        bool on = point_on_segment(x, s);
        if (on && count != 0) return failed(r, "point of the segment lies in a cell: " + to_string(x));
        if (!on && count != 1) return failed(r, "point off the segment lies in " + std::to_string(count) + " cells: " + to_string(x));
    }
    for (int k = 0; k < 2; ++k) {
        if (in_cell[k].empty()) return failed(r, "a cell received no probes");
        for (std::size_t i = 0; i < 1000; ++i) {
            const Point& p = in_cell[k][static_cast<std::size_t>(rng.range(0, static_cast<long>(in_cell[k].size()) - 1))];
            const Point& q = in_cell[k][static_cast<std::size_t>(rng.range(0, static_cast<long>(in_cell[k].size()) - 1))];
            if (!cells[k]->contains(midpoint(p, q))) return failed(r, "cell is not midpoint convex at " + to_string(midpoint(p, q)));
        }
    }
    r.outcome = "d=" + std::to_string(d);
    return r;
}

// ---- 7: right triples on closed curves ----

std::optional<std::string> closed_right3_property(const GeoSet& c) {
    RightTriple rt = find_right_triple_on_closed_curve(c);
    if (!is_right_triple(rt.x, rt.y, rt.z)) return "returned triple is not right";
    for (int i = 0; i < 3; ++i)
        if (!member(c, rt.at(i))) return "returned triple leaves the curve";
    Witness w = refute_right3_on_closed_curve(c);
    if (w.property != Property::right3) return "refutation has the wrong property";
    if (std::string p = witness_problem(c, w); !p.empty()) return "refutation does not verify: " + p;
    return std::nullopt;
}

InstanceResult run_closed_right3(std::size_t index, std::uint64_t seed, const SearchBudget&) {
    InstanceResult r = begin(index, seed);
    GeoSet c;
    if (index % 5 == 4) {
        Instance inst = make(Family::lshape, {{"variant", static_cast<long>(index % 3)}}, seed, r);
        c = make_closed_curve(inst.set.get<PolygonalRegion>()->outer.vertices);
        r.set = c;
        r.outcome = "rectilinear";
    } else {
        long dim = index % 3 == 2 ? 3 : 2;
        Instance inst = make(Family::closed_polyline, {{"n", 3 + static_cast<long>(index % 10)}, {"dim", dim}}, seed, r);
        c = inst.set;
        r.outcome = "d=" + std::to_string(dim);
    }
    try {
        if (auto e = closed_right3_property(c)) return failed(r, *e);
    } catch (const InternalError& e) {
        return failed(r, e.what());
    }
    return r;
}

// ---- 8: closed regions with interior ----

std::optional<std::string> closed_double_property(const GeoSet& s, const SearchBudget& b, std::string* outcome) {
    const PolygonalRegion& reg = *s.get<PolygonalRegion>();
    auto exact = region_double_right3_exact(s);
    if (!exact) return "no exact decision for a closed continuum";
    bool convex = reg.holes.empty() && convex_oracle(reg.outer.vertices);
    if (*exact != convex) return std::string("exact decision ") + (*exact ? "true" : "false") + " for a " + (convex ? "convex" : "non-convex") + " polygon";
    if (!*exact) {
        // the pinned budget first, then the full default budget
        Verdict v = check_double_right3(s, b);
        if (!is_refuted(v)) v = check_double_right3(s, seeded(SearchBudget{}, b.seed));
        if (auto e = witness_check(s, v, "double_right3")) return e;
    }
    if (outcome) *outcome = convex ? "convex" : "non-convex/refuted";
    return std::nullopt;
}

InstanceResult run_closed_double(std::size_t index, std::uint64_t seed, const SearchBudget& b) {
    InstanceResult r = begin(index, seed);
    Instance inst;
    switch (index % 8) {
        case 0: inst = make(Family::convex_polygon, {{"n", 3 + static_cast<long>(index % 7)}}, seed, r); break;
        case 1: inst = make(Family::lshape, {{"variant", static_cast<long>((index / 8) % 3)}}, seed, r); break;
        case 2: inst = make(Family::dented_polygon, {{"n", 4 + static_cast<long>(index % 5)}}, seed, r); break;
        case 3:
        case 4: {
            Rng rng(seed);
            GenSpec g{Family::closed_polyline, {{"n", 4 + static_cast<long>(index % 6)}}, seed};
            r.spec = g;
            inst.set = closed_polygon(generate(g).set.get<SegmentComplex>()->path);
            r.set = inst.set;
            break;
        }
        case 5: inst = make(Family::spiral, {{"scale", 1 + static_cast<long>(index % 2)}}, seed, r); break;
        case 6: inst = make(Family::holed_region, {{"holes", 1 + static_cast<long>(index % 2)}}, seed, r); break;
        default: inst = make(Family::convex_polygon, {{"n", 4 + static_cast<long>(index % 5)}, {"scale", 3}}, seed, r); break;
    }
    if (auto e = closed_double_property(inst.set, seeded(b, seed), &r.outcome)) return failed(r, *e);
    return r;
}

// ---- 9 and 10: open regions ----

Instance open_instance(std::size_t index, std::uint64_t seed, InstanceResult& r) {
    switch (index % 3) {
        case 0: return make(Family::convex_polygon, {{"n", 3 + static_cast<long>(index % 6)}, {"open", 1}}, seed, r);
        case 1: return make(Family::punctured_convex, {{"n", 4 + static_cast<long>(index % 5)}, {"open", 1}}, seed, r);
        default: return make(Family::lshape, {{"variant", static_cast<long>((index / 3) % 3)}, {"open", 1}}, seed, r);
    }
}

std::optional<std::string> open_double_property(const GeoSet& s, const SearchBudget& b, bool expect, std::string* outcome) {
    auto exact = region_double_right3_exact(s);
    if (!exact) return "no exact decision for an open region";
    if (*exact != expect) return std::string("exact decision ") + (*exact ? "true" : "false") + " disagrees with the family";
    if (*exact) {
        SearchContext ctx(s, b.scaled(10));
        Verdict v = search_right_triples(ctx, 2);
        if (is_refuted(v)) return "exact-true open region refuted at 10x budget";
        if (!is_holds_exact(check_double_right3(s, b))) return "check_double_right3 did not dispatch to the exact decision";
    } else {
        SearchContext ctx(s, b);
        if (auto e = witness_check(s, search_right_triples(ctx, 2), "double_right3 search")) return e;
    }
    if (outcome) *outcome = *exact ? "exact-true/unrefuted" : "exact-false/refuted";
    return std::nullopt;
}

InstanceResult run_open_double(std::size_t index, std::uint64_t seed, const SearchBudget& b) {
    InstanceResult r = begin(index, seed);
    Instance inst = open_instance(index, seed, r);
    if (auto e = open_double_property(inst.set, seeded(b, seed), index % 3 != 2, &r.outcome)) return failed(r, *e);
    return r;
}

InstanceResult run_inheritance(std::size_t index, std::uint64_t seed, const SearchBudget&) {
    InstanceResult r = begin(index, seed);
    Instance inst = open_instance(index, seed, r);
    auto exact = region_double_right3_exact(inst.set);
    if (!exact || !*exact) {
        r.outcome = "not exact-true (skipped)";
        return r;
    }
    GeoSet cl = closure_of(inst.set);
    auto cl_exact = region_double_right3_exact(cl);
    if (!cl_exact || !*cl_exact) return failed(r, "closure fails the closed-region decision");
    auto in = interior_of(inst.set);
    if (!in) return failed(r, "interior is empty");
    auto in_exact = region_double_right3_exact(*in);
    if (!in_exact || !*in_exact) return failed(r, "interior fails the open-region decision");
    r.outcome = "closure and interior pass";
    return r;
}

// ---- 11: local nonconvexity points ----

std::optional<std::string> nonconvexity_property(const GeoSet& s, const SearchBudget& b, std::string* outcome) {
    if (is_refuted(search_pm(s, 3, b))) {
        if (outcome) *outcome = "P_3 refuted (filtered)";
        return std::nullopt;
    }
    std::vector<Point> bs = local_nonconvexity_points(s);
    if (bs != reflex_oracle(s.get<PolygonalRegion>()->outer.vertices)) return "B_S differs from the reflex vertices";
    std::vector<Point> kernel = polygon_kernel_exact(s);
    for (const Point& x : bs) {
        if (is_refuted(kernel_m_membership(s, x, 2, b))) return "a point of B_S is refuted as a kernel point: " + to_string(x);
        bool in_kernel = kernel.size() >= 3   ? in_convex_ring(kernel, x)
                         : kernel.size() == 2 ? point_on_segment(x, {kernel[0], kernel[1]})
                         : kernel.size() == 1 ? kernel[0] == x
                                              : false;
        if (!in_kernel) return "a point of B_S lies outside the exact kernel: " + to_string(x);
    }
    PositionReport pos = position_tests(bs);
    if (!pos.general_position) return "B_S is not in general position";
    if (!pos.convex_position) return "B_S is not in convex position";
    if (outcome) *outcome = "|B_S|=" + std::to_string(bs.size());
    return std::nullopt;
}

InstanceResult run_nonconvexity(std::size_t index, std::uint64_t seed, const SearchBudget& b) {
    InstanceResult r = begin(index, seed);
    Instance inst = index % 2 == 0 ? make(Family::dented_polygon, {{"n", 4 + static_cast<long>(index % 6)}}, seed, r)
                                   : make(Family::lshape, {{"variant", static_cast<long>((index / 2) % 3)}}, seed, r);
    if (auto e = nonconvexity_property(inst.set, seeded(b, seed), &r.outcome)) return failed(r, *e);
    return r;
}

// ---- 12: holes ----

std::optional<std::string> holed_property(const GeoSet& s) {
    Witness w = p3_witness_across_hole(s);
    if (w.property != Property::pm || w.m != 3) return "witness is not a P_3 witness";
    if (std::string p = witness_problem(s, w); !p.empty()) return "witness does not verify: " + p;
    return std::nullopt;
}

InstanceResult run_holed(std::size_t index, std::uint64_t seed, const SearchBudget&) {
    InstanceResult r = begin(index, seed);
    Instance inst = make(Family::holed_region, {{"holes", 1 + static_cast<long>(index % 2)}, {"n", 4 + static_cast<long>(index % 6)}}, seed, r);
    try {
        if (auto e = holed_property(inst.set)) return failed(r, *e);
    } catch (const Error& e) {
        return failed(r, e.what());
    }
    r.outcome = "holes=" + std::to_string(inst.set.get<PolygonalRegion>()->holes.size());
    return r;
}

// ---- 13: tilings ----

struct TilingCase {
    TilingFamily family;
    std::vector<TilingPiece> pieces;
};

std::vector<TilingPiece> patch_edges(TilingFamily f) {
    std::vector<TilingPiece> out;
    int dirs = f == TilingFamily::square ? 2 : 3;
    for (int dir = 0; dir < dirs; ++dir)
        for (long c = 0; c <= 4; ++c) {
            if (f == TilingFamily::trihexagonal && c % 2 == 0) continue;
            for (long t = 0; t < 4; ++t) out.push_back({TilingLine{dir, c}, {{Rational(t), Rational(t + 1)}}});
        }
    return out;
}

const std::vector<TilingCase>& tiling_cases() {
    static const std::vector<TilingCase> cases = [] {
        std::vector<TilingCase> out;
        for (TilingFamily f : {TilingFamily::square, TilingFamily::triangular, TilingFamily::trihexagonal}) {
            auto edges = patch_edges(f);
            std::size_t n = edges.size();
            for (std::size_t i = 0; i < n; ++i) {
                out.push_back({f, {edges[i]}});
                for (std::size_t j = i + 1; j < n; ++j) {
                    out.push_back({f, {edges[i], edges[j]}});
                    for (std::size_t k = j + 1; k < n; ++k) out.push_back({f, {edges[i], edges[j], edges[k]}});
                }
            }
        }
        return out;
    }();
    return cases;
}

InstanceResult run_tiling(std::size_t index, std::uint64_t seed, const SearchBudget&) {
    InstanceResult r = begin(index, seed);
    const auto& cases = tiling_cases();
    if (index >= cases.size()) {
        r.outcome = "out of range";
        return r;
    }
    TilingSubset ts{cases[index].family, cases[index].pieces};
    GeoSet s = ts;
    r.set = s;
    std::vector<Point> probes;
    for (const TilingPiece& p : ts.pieces)
        for (const auto& [lo, hi] : p.intervals) {
            probes.push_back(p.line.at(lo));
            probes.push_back(p.line.at(hi));
            probes.push_back(p.line.at((lo + hi) / 2));
        }
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    std::size_t n = probes.size();
    std::vector<std::vector<char>> bad(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) bad[i][j] = bad[j][i] = !segment_in_set(s, probes[i], probes[j]).inside;
    bool refuted = false;
    for (std::size_t i = 0; i < n && !refuted; ++i)
        for (std::size_t j = i + 1; j < n && !refuted; ++j)
            if (bad[i][j])
                for (std::size_t k = j + 1; k < n && !refuted; ++k) refuted = bad[i][k] && bad[j][k];
    bool exact = tiling_3pc_exact(ts);
    if (exact == refuted) return failed(r, std::string("tiling_3pc_exact is ") + (exact ? "true" : "false") + " but brute force " + (refuted ? "refutes" : "does not refute") + " P_3");
    static const char* names[] = {"square", "triangular", "trihexagonal"};
    r.outcome = std::string(names[static_cast<int>(ts.family)]) + (exact ? "/P_3" : "/not P_3");
    return r;
}

// ---- 14: staircases ----

InstanceResult run_staircase(std::size_t index, std::uint64_t seed, const SearchBudget& b) {
    InstanceResult r = begin(index, seed);
    long k = 2 + static_cast<long>(index % 5);
    if (index % 3 < 2) {
        bool rotated = index % 3 == 1;
        Instance inst = make(Family::staircase_arc, {{"edges", k}, {"rotated", rotated}}, seed, r);
        const auto& path = inst.set.get<SegmentComplex>()->path;
        StaircaseReport rep = find_staircase_direction(inst.set);
        if (!rep.right_triples_present) return failed(r, "no right triples reported on a staircase");
        if (!rep.direction) return failed(r, "no staircase direction recovered");
        Direction u(path[1] - path[0]);
        if (!(*rep.direction == u || *rep.direction == u.perpendicular())) return failed(r, "recovered direction is not the staircase frame");
        if (!is_staircase_wrt(rep.subpath, *rep.direction)) return failed(r, "reported subpath is not a staircase");
        if (rep.subpath != path) return failed(r, "reported subpath is not the whole staircase");
        if (k >= 3 && !adjacent_right_triples_staircase(inst.set, path[0], path[1], path[2], path[3]))
            return failed(r, "adjacent right triples on a staircase are not reported as a staircase");
        r.outcome = rotated ? "rotated staircase" : "axis staircase";
        return r;
    }
    Instance inst = make(Family::zigzag_arc, {{"edges", k}}, seed, r);
    StaircaseReport rep = find_staircase_direction(inst.set);
    Verdict v = check_double_right3(inst.set, seeded(b, seed));
    if (is_refuted(v)) {
        if (std::string p = witness_problem(inst.set, witness_of(v)); !p.empty()) return failed(r, "witness does not verify: " + p);
        r.outcome = "zigzag/refuted";
    } else if (!rep.right_triples_present) {
        r.outcome = "zigzag/no right triples";
    } else if (rep.direction && is_staircase_wrt(rep.subpath, *rep.direction)) {
        r.outcome = "zigzag/staircase";
    } else {
        return failed(r, "unrefuted arc with right triples and no staircase");
    }
    return r;
}

// ---- shrinking ----

Rational halve_denominator(const Rational& c) {
    Integer den = c.get_den();
    if (den == 1) return c;
    Integer half = den / 2;
    Rational scaled = c * Rational(half);
    Integer rounded;
    Rational shifted = scaled + rat(1, 2);
    mpz_fdiv_q(rounded.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    Rational out(rounded, half);
    out.canonicalize();
    return out;
}

std::vector<std::vector<Point>> path_moves(const std::vector<Point>& path, std::size_t min_size) {
    std::vector<std::vector<Point>> out;
    if (path.size() > min_size)
        for (std::size_t i = 0; i < path.size(); ++i) {
            auto p = path;
            p.erase(p.begin() + static_cast<std::ptrdiff_t>(i));
            out.push_back(std::move(p));
        }
    for (std::size_t i = 0; i < path.size(); ++i)
        for (std::size_t k = 0; k < path[i].dim(); ++k) {
            Rational h = halve_denominator(path[i][k]);
            if (h == path[i][k]) continue;
            auto p = path;
            p[i][k] = h;
            out.push_back(std::move(p));
        }
    return out;
}

std::vector<GeoSet> shrink_moves(const GeoSet& s) {
    std::vector<GeoSet> out;
    if (const auto* r = s.get<PolygonalRegion>()) {
        bool uniform = r->outer.all_included() || r->outer.all_excluded();
        if (!uniform) return out;
        bool closed = r->outer.all_included();
        for (auto& ring : path_moves(r->outer.vertices, 3)) {
            PolygonalRegion c = *r;
            c.outer = Ring::with_boundary(std::move(ring), closed);
            out.push_back(c);
        }
        for (std::size_t i = 0; i < r->holes.size(); ++i) {
            PolygonalRegion c = *r;
            c.holes.erase(c.holes.begin() + static_cast<std::ptrdiff_t>(i));
            out.push_back(c);
        }
    } else if (const auto* c = s.get<SegmentComplex>()) {
        if (c->kind == ComplexKind::simple_arc) {
            for (auto& p : path_moves(c->path, 2)) {
                SegmentComplex a;
                a.kind = ComplexKind::simple_arc;
                for (std::size_t i = 0; i + 1 < p.size(); ++i) a.segments.push_back({p[i], p[i + 1]});
                a.path = std::move(p);
                out.push_back(a);
            }
        } else if (c->kind == ComplexKind::simple_closed_curve) {
            for (auto& p : path_moves(c->path, 3)) {
                SegmentComplex a;
                a.kind = ComplexKind::simple_closed_curve;
                for (std::size_t i = 0; i < p.size(); ++i) a.segments.push_back({p[i], p[(i + 1) % p.size()]});
                a.path = std::move(p);
                out.push_back(a);
            }
        } else if (c->segments.size() > 1) {
            for (std::size_t i = 0; i < c->segments.size(); ++i) {
                SegmentComplex a = *c;
                a.segments.erase(a.segments.begin() + static_cast<std::ptrdiff_t>(i));
                out.push_back(a);
            }
        }
    } else if (const auto* u = s.get<CompositeSet>()) {
        for (std::size_t i = 0; i < u->parts.size(); ++i)
            for (GeoSet& m : shrink_moves(u->parts[i])) {
                CompositeSet c = *u;
                c.parts[i] = std::move(m);
                out.push_back(c);
            }
    }
    return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<Theorem> build_registry() {
    std::vector<Theorem> t;
    auto add = [&](std::string id, int criterion, std::string statement, std::size_t count, SearchBudget b, auto run) {
        Theorem th;
        th.id = std::move(id);
        th.criterion = criterion;
        th.statement = std::move(statement);
        th.default_count = count;
        th.default_seed = 1000 + static_cast<std::uint64_t>(criterion);
        th.budget = b;
        th.run = run;
        t.push_back(std::move(th));
    };
    add("arc_pm", 1, "a simple arc is m-point convex iff it is the union of at most m-1 segments", 500, pinned(64, 8, 20000), run_arc_pm);
    t.back().recheck = [](const GeoSet& s, const SearchBudget& b) -> std::optional<std::string> {
        return arc_property(s, b, nullptr);
    };
    add("closed_curve_pm", 2, "a closed broken line with m vertices is (m+1)- but not m-point convex", 200, pinned(64, 8, 20000), run_closed_pm);
    t.back().recheck = closed_pm_property;
    add("union_pm", 3, "the union of an m-point convex and an n-point convex set is (m+n-1)-point convex", 200, pinned(32, 16, 5000), run_union);
    t.back().recheck = union_recheck;
    add("puncture_bounds", 4, "a convex set minus a point or a segment is 3-point convex but not convex", 200, pinned(32, 16, 5000), run_puncture);
    t.back().recheck = puncture_property;
    add("polytope_diff_pm", 5, "Q minus a polytope with m facets is (m+1)-point convex", 100, pinned(16, 16, 2000), run_polytope);
    add("segment_bipartition", 6, "the complement of a segment splits into two convex sets", 100, pinned(1, 1, 1), run_bipartition);
    add("closed_curve_no_right3", 7, "a closed broken line contains a right triple and lacks the right-3-point property", 300, pinned(1, 1, 1), run_closed_right3);
    t.back().recheck = [](const GeoSet& s, const SearchBudget&) { return closed_right3_property(s); };
    add("double_right3_closed", 8, "a closed set with interior and the double right-3-point property is convex", 200, pinned(32, 16, 200000), run_closed_double);
    t.back().recheck = [](const GeoSet& s, const SearchBudget& b) { return closed_double_property(s, b, nullptr); };
    add("double_right3_open", 9, "an open set with the double right-3-point property is convex or convex minus a point", 200, pinned(8, 2, 200000), run_open_double);
    add("double_right3_inheritance", 10, "closure and interior inherit the double right-3-point property", 200, pinned(8, 2, 200000), run_inheritance);
    // replays the open-region instances of the previous suite
    t.back().default_seed = t[t.size() - 2].default_seed;
    add("nonconvexity_points", 11, "B_S lies in the kernel and is in general and convex position", 100, pinned(32, 16, 20000), run_nonconvexity);
    t.back().recheck = [](const GeoSet& s, const SearchBudget& b) { return nonconvexity_property(s, b, nullptr); };
    add("holed_not_p3", 12, "a 3-point convex planar continuum is simply connected", 100, pinned(1, 1, 1), run_holed);
    t.back().recheck = [](const GeoSet& s, const SearchBudget&) -> std::optional<std::string> {
        try {
            return holed_property(s);
        } catch (const Error& e) {
            return std::string(e.what());
        }
    };
    add("tiling_p3", 13, "a tiling subset is 3-point convex iff it is the union of at most two connected subsets of tiling lines",
        tiling_cases().size(), pinned(1, 1, 1), run_tiling);
    t.back().exhaustive = true;
    add("arc_staircase", 14, "an arc with the double right-3-point property has no right triples or contains a staircase", 300, pinned(32, 16, 200000), run_staircase);
    return t;
}

}  // namespace

std::uint64_t instance_seed(std::uint64_t campaign_seed, std::size_t index) {
    return splitmix64(campaign_seed * 0x100000001b3ULL + index);
}

const std::vector<Theorem>& theorems() {
    static const std::vector<Theorem> registry = build_registry();
    return registry;
}

const Theorem& find_theorem(const std::string& id) {
    for (const Theorem& t : theorems())
        if (t.id == id) return t;
    throw PreconditionError("unknown theorem id '" + id + "'");
}

std::vector<const Theorem*> select_theorems(const std::string& pattern) {
    std::vector<const Theorem*> out;
    for (const Theorem& t : theorems())
        if (fnmatch(pattern.c_str(), t.id.c_str(), 0) == 0) out.push_back(&t);
    return out;
}

InstanceResult run_instance(const Theorem& t, std::uint64_t campaign_seed, std::size_t index, const SearchBudget& b) {
    std::uint64_t seed = instance_seed(campaign_seed, index);
    try {
        return t.run(index, seed, b);
    } catch (const Error& e) {
        InstanceResult r = begin(index, seed);
        return failed(r, std::string("error: ") + e.what());
    }
}

CampaignReport run_campaign(const Theorem& t, const CampaignOptions& opt) {
    CampaignReport rep;
    rep.theorem = t.id;
    rep.statement = t.statement;
    rep.seed = opt.seed.value_or(t.default_seed);
    rep.budget = opt.budget.value_or(t.budget);
    rep.budget.validate();
    std::size_t count = t.exhaustive ? t.default_count : opt.count.value_or(t.default_count);
    if (t.exhaustive && opt.count) count = std::min(*opt.count, t.default_count);
    rep.instances = count;
    auto start = std::chrono::steady_clock::now();

    std::vector<InstanceResult> results(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) results[i] = run_instance(t, rep.seed, i, rep.budget);
    };
    std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, count));
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (InstanceResult& r : results) {
        ++rep.histogram[r.outcome];
        if (!r.failure) continue;
        if (opt.shrink && t.recheck && r.set) {
            SearchBudget b = seeded(rep.budget, r.instance_seed);
            r.shrunk = shrink_set(*r.set, [&](const GeoSet& s) {
                try {
                    return t.recheck(s, b).has_value();
                } catch (const Error&) {
                    return false;
                }
            });
        }
        rep.failures.push_back(std::move(r));
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

GeoSet shrink_set(const GeoSet& s, const std::function<bool(const GeoSet&)>& still_fails, std::size_t max_steps) {
    GeoSet cur = s;
    for (std::size_t step = 0; step < max_steps; ++step) {
        bool moved = false;
        for (GeoSet& cand : shrink_moves(cur)) {
            try {
                validate(cand);
            } catch (const Error&) {
                continue;
            }
            if (still_fails(cand)) {
                cur = std::move(cand);
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    return cur;
}

Json report_to_json(const CampaignReport& r) {
    Json j;
    j["schema"] = kSchema;
    j["theorem"] = r.theorem;
    j["statement"] = r.statement;
    j["instances"] = r.instances;
    j["seed"] = r.seed;
    j["budget"] = budget_to_json(r.budget);
    Json h = Json::object();
    for (const auto& [k, v] : r.histogram) h[k] = v;
    j["histogram"] = h;
    Json f = Json::array();
    for (const InstanceResult& x : r.failures) {
        Json e;
        e["index"] = x.index;
        e["instance_seed"] = x.instance_seed;
        e["message"] = *x.failure;
        if (x.spec) e["spec"] = genspec_to_json(*x.spec);
        if (x.witness) e["witness"] = witness_to_json(*x.witness);
        if (x.shrunk) e["shrunk"] = set_to_json(*x.shrunk);
        f.push_back(e);
    }
    j["failures"] = f;
    j["passed"] = r.passed();
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

Json suite_to_json(const std::vector<CampaignReport>& reports) {
    Json j;
    j["schema"] = kSchema;
    Json a = Json::array();
    bool ok = true;
    for (const CampaignReport& r : reports) {
        a.push_back(report_to_json(r));
        ok = ok && r.passed();
    }
    j["campaigns"] = a;
    j["passed"] = ok;
    return j;
}

}  // namespace pcl
