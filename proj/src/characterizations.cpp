#include "pcl/characterizations.hpp"

#include <algorithm>
#include <functional>

namespace pcl {

namespace {

const SegmentComplex& require_kind(const GeoSet& s, ComplexKind kind, const char* op) {
    const auto* c = s.get<SegmentComplex>();
    if (!c || c->kind != kind) {
        const char* want = kind == ComplexKind::simple_arc ? "a simple arc" : "a simple closed curve";
        throw PreconditionError(std::string(op) + " requires " + want + ", got " + s.class_name());
    }
    return *c;
}

bool turns(const Point& prev, const Point& v, const Point& next) { return !parallel(v - prev, next - v); }

Point perp(const Point& u) { return Point{-u[1], u[0]}; }

void sort_unique(std::vector<Point>& pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Witness for a right triple whose sides all fail, or nullopt.
std::optional<Witness> triple_if_all_fail(const GeoSet& s, const Point& x, const Point& y, const Point& z) {
    auto rt = is_right_triple(x, y, z);
    if (!rt) return std::nullopt;
    if (!member(s, x) || !member(s, y) || !member(s, z)) return std::nullopt;
    Witness w;
    w.property = Property::right3;
    w.m = 3;
    w.points = {rt->x, rt->y, rt->z};
    w.apex = rt->apex;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            SegmentTest t = segment_in_set(s, rt->at(i), rt->at(j));
            if (t.inside) return std::nullopt;
            w.failing.push_back({rt->at(i), rt->at(j), *t.evidence});
        }
    return w;
}

std::vector<Point> hyperplane_points(const std::vector<Segment>& segs, const Point& normal, const Point& base) {
    std::vector<Point> out;
    for (const Segment& sg : segs) {
        auto hits = hyperplane_hits(normal, base, sg);
        if (hits.size() == 2) {
            out.push_back(sg.a);
            out.push_back(sg.b);
        } else if (hits.size() == 1) {
            out.push_back(lerp(sg.a, sg.b, hits[0]));
        }
    }
    sort_unique(out);
    return out;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    return Rational(n, d);
}

// Rational points where the segment meets the sphere with diameter xy.
std::vector<Point> sphere_points(const Segment& sg, const Point& x, const Point& y) {
    Point c = midpoint(x, y);
    Rational r2 = norm2(y - x) / 4;
    Point w = sg.b - sg.a;
    Point ac = sg.a - c;
    Rational A = norm2(w), B = 2 * dot(ac, w), C = norm2(ac) - r2;
    auto root = rational_sqrt(B * B - 4 * A * C);
    std::vector<Point> out;
    if (!root) return out;
    for (const Rational& t : std::vector<Rational>{(-B - *root) / (2 * A), (-B + *root) / (2 * A)})
        if (sgn(t) >= 0 && t <= 1) out.push_back(lerp(sg.a, sg.b, t));
    return out;
}

}  // namespace

// ---- arcs and closed curves ----

MaxSegmentDecomposition arc_max_segment_decomposition(const GeoSet& arc) {
    const SegmentComplex& c = require_kind(arc, ComplexKind::simple_arc, "arc_max_segment_decomposition");
    const auto& p = c.path;
    MaxSegmentDecomposition out;
    std::size_t start = 0;
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
        if (turns(p[i - 1], p[i], p[i + 1])) {
            out.segments.push_back({p[start], p[i]});
            start = i;
        }
    out.segments.push_back({p[start], p.back()});
    out.vertex_count = out.segments.size() + 1;
    return out;
}

bool arc_pm_exact(const GeoSet& arc, std::size_t m) {
    if (m < 2) throw PreconditionError("P_m needs m >= 2");
    return arc_max_segment_decomposition(arc).segments.size() <= m - 1;
}

MaxSegmentDecomposition closed_curve_decomposition(const GeoSet& curve) {
    const SegmentComplex& c = require_kind(curve, ComplexKind::simple_closed_curve, "closed_curve_decomposition");
    const auto& p = c.path;
    std::size_t n = p.size();
    std::vector<std::size_t> corners;
    for (std::size_t i = 0; i < n; ++i)
        if (turns(p[(i + n - 1) % n], p[i], p[(i + 1) % n])) corners.push_back(i);
    MaxSegmentDecomposition out;
    for (std::size_t k = 0; k < corners.size(); ++k)
        out.segments.push_back({p[corners[k]], p[corners[(k + 1) % corners.size()]]});
    out.vertex_count = corners.size();
    return out;
}

bool closed_curve_pm_exact(const GeoSet& curve, std::size_t n) {
    return closed_curve_decomposition(curve).vertex_count <= n;
}

Witness closed_curve_midpoint_witness(const GeoSet& curve) {
    std::vector<Point> mids;
    for (const Segment& sg : closed_curve_decomposition(curve).segments) mids.push_back(midpoint(sg.a, sg.b));
    return make_pm_witness(curve, std::move(mids));
}

Witness arc_midpoint_witness(const GeoSet& arc, std::size_t m) {
    auto dec = arc_max_segment_decomposition(arc);
    if (dec.segments.size() < m) throw PreconditionError("the arc has fewer than m maximal segments");
    std::vector<Point> mids;
    for (std::size_t i = 0; i < m; ++i) mids.push_back(midpoint(dec.segments[i].a, dec.segments[i].b));
    return make_pm_witness(arc, std::move(mids));
}

// ---- tilings ----

bool tiling_3pc_exact(const TilingSubset& t) {
    TilingSubset n = normalized(t);
    std::vector<Segment> pieces = tiling_segments(n);
    // a single-point piece lying on another piece adds nothing
    std::size_t count = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        bool redundant = false;
        if (pieces[i].degenerate())
            for (std::size_t j = 0; j < pieces.size() && !redundant; ++j)
                if (j != i && point_on_segment(pieces[i].a, pieces[j]) && !(pieces[j].degenerate() && j > i))
                    redundant = true;
        if (!redundant) ++count;
    }
    return count <= 2;
}

// ---- double right-3-point decisions for regions ----

std::optional<bool> region_double_right3_exact(const GeoSet& s) {
    const auto* r = s.get<PolygonalRegion>();
    if (!r) return std::nullopt;
    auto strictly_inside = [&](const Point& p) { return locate(r->outer.vertices, p).where == Location::inside; };
    // exclusions on the boundary do not change the set's shape
    std::vector<Point> pts;
    for (const Point& p : r->excluded_points)
        if (strictly_inside(p) && std::none_of(r->holes.begin(), r->holes.end(), [&](const Ring& h) {
                return locate(h.vertices, p).where != Location::outside;
            }))
            pts.push_back(p);
    sort_unique(pts);
    std::size_t slits = 0;
    for (const Segment& sg : r->excluded_segments)
        if (strictly_inside(sg.a) || strictly_inside(sg.b) || strictly_inside(midpoint(sg.a, sg.b))) ++slits;
    bool convex_ring = is_convex_ring(r->outer.vertices);

    bool open = r->outer.all_excluded() && r->isolated_points.empty() &&
                std::all_of(r->holes.begin(), r->holes.end(), [](const Ring& h) { return h.all_excluded(); });
    if (open) {
        if (!r->holes.empty() || slits > 0) return false;
        return convex_ring && pts.size() <= 1;
    }
    bool closed = r->outer.all_included() && r->isolated_points.empty() && pts.empty() && slits == 0 &&
                  std::all_of(r->holes.begin(), r->holes.end(), [](const Ring& h) { return h.all_included(); });
    if (closed) return r->holes.empty() && convex_ring;
    return std::nullopt;
}

std::optional<Witness> double_right3_witness_at_reflex(const GeoSet& s) {
    const auto* r = s.get<PolygonalRegion>();
    if (!r) return std::nullopt;
    // corners where the region's interior angle exceeds pi
    std::vector<std::pair<const Ring*, std::size_t>> corners;
    for (std::size_t i : reflex_vertices(r->outer.vertices)) corners.push_back({&r->outer, i});
    for (const Ring& h : r->holes) {
        auto hole_reflex = reflex_vertices(h.vertices);
        for (std::size_t i = 0; i < h.size(); ++i)
            if (std::find(hole_reflex.begin(), hole_reflex.end(), i) == hole_reflex.end()) corners.push_back({&h, i});
    }
    auto perp = [](const Point& v) { return Point{-v[1], v[0]}; };
    for (const auto& [ring, i] : corners) {
        std::size_t n = ring->size();
        const Point& c = ring->vertices[i];
        const Point& p = ring->vertices[(i + n - 1) % n];
        const Point& q = ring->vertices[(i + 1) % n];
        for (long k : {4L, 16L, 64L, 256L}) {
            Rational t = rat(1, k), off = rat(1, 16 * k);
            // x, y hug the two edges, pushed inward along the opposite edge's extension
            Point x = c + t * (p - c) - off * (q - c);
            Point y = c + t * (q - c) - off * (p - c);
            if (!member(s, x) || !member(s, y) || segment_in_set(s, x, y).inside) continue;
            for (long e : {16L, 64L, 256L})
                for (int side : {1, -1}) {
                    Point z = y + rat(side, e * k) * perp(x - y);
                    if (!member(s, z)) continue;
                    auto rt = is_right_triple(x, y, z);
                    if (!rt) continue;
                    Witness w;
                    w.property = Property::double_right3;
                    w.m = 3;
                    w.points = {rt->x, rt->y, rt->z};
                    w.apex = rt->apex;
                    for (int a = 0; a < 3; ++a)
                        for (int b = a + 1; b < 3; ++b) {
                            SegmentTest st = segment_in_set(s, rt->at(a), rt->at(b));
                            if (!st.inside) w.failing.push_back({rt->at(a), rt->at(b), *st.evidence});
                        }
                    if (w.failing.size() >= 2) return w;
                }
        }
    }
    return std::nullopt;
}

// ---- staircases ----

namespace {

// v in the closed cone spanned by p and q (angle below pi, p and q may agree).
bool in_cone(const Point& p, const Point& q, const Point& v) {
    Rational c = cross(p, q);
    if (sgn(c) == 0) return sgn(cross(p, v)) == 0 && sgn(dot(p, v)) > 0;
    if (sgn(c) < 0) return in_cone(q, p, v);
    return sgn(cross(p, v)) >= 0 && sgn(cross(v, q)) >= 0;
}

bool cones_meet(const Point& p1, const Point& q1, const Point& p2, const Point& q2) {
    return in_cone(p1, q1, p2) || in_cone(p1, q1, q2) || in_cone(p2, q2, p1) || in_cone(p2, q2, q1);
}

bool arc_has_right_triple(const SegmentComplex& c) {
    const auto& p = c.path;
    std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (is_right_triple(p[i], p[j], p[k])) return true;
    const auto& edges = c.segments;
    // apex at a vertex: two directions from it, one per edge, at a right angle
    for (const Point& v : p) {
        std::vector<std::pair<Point, Point>> cones;
        for (const Segment& e : edges) {
            Point a = e.a - v, b = e.b - v;
            if (sgn(norm2(a)) == 0) a = b;
            if (sgn(norm2(b)) == 0) b = a;
            if (sgn(cross(a, b)) == 0 && sgn(dot(a, b)) < 0) continue;  // v inside e
            cones.emplace_back(a, b);
        }
        for (const auto& c1 : cones)
            for (const auto& c2 : cones)
                if (cones_meet(c1.first, c1.second, perp(c2.first), perp(c2.second))) return true;
    }
    // apex inside an edge with one leg along it
    for (const Segment& e : edges) {
        Point u = e.b - e.a;
        Rational len = norm2(u);
        for (const Segment& f : edges) {
            if (&f == &e) continue;
            bool on_line = sgn(cross(u, f.a - e.a)) == 0 && sgn(cross(u, f.b - e.a)) == 0;
            if (on_line) continue;
            Rational ta = dot(f.a - e.a, u) / len, tb = dot(f.b - e.a, u) / len;
            Rational lo = std::min(ta, tb), hi = std::max(ta, tb);
            if (hi > 0 && lo < 1) return true;
        }
    }
    return false;
}

}  // namespace

StaircaseReport find_staircase_direction(const GeoSet& arc) {
    const SegmentComplex& c = require_kind(arc, ComplexKind::simple_arc, "find_staircase_direction");
    StaircaseReport rep;
    if (c.dim() != 2) throw DimensionError("staircase search is planar");
    rep.right_triples_present = arc_has_right_triple(c);
    if (!rep.right_triples_present) return rep;
    const auto& p = c.path;
    std::vector<Direction> dirs;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        Direction d(p[i + 1] - p[i]);
        if (std::find(dirs.begin(), dirs.end(), d) == dirs.end()) dirs.push_back(d);
    }
    std::size_t best = 0;
    for (const Direction& u : dirs)
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            std::size_t j = i + 1;
            while (j + 1 < p.size() && is_staircase_wrt(std::span<const Point>(p.data() + i, j + 2 - i), u)) ++j;
            if (!is_staircase_wrt(std::span<const Point>(p.data() + i, j + 1 - i), u)) continue;
            if (j - i > best) {
                best = j - i;
                rep.direction = u;
                rep.subpath.assign(p.begin() + static_cast<std::ptrdiff_t>(i), p.begin() + static_cast<std::ptrdiff_t>(j + 1));
            }
        }
    return rep;
}

bool adjacent_right_triples_staircase(const GeoSet& arc, const Point& a, const Point& b, const Point& c,
                                      const Point& d) {
    require_kind(arc, ComplexKind::simple_arc, "adjacent_right_triples_staircase");
    for (const Point* q : {&a, &b, &c, &d})
        if (!member(arc, *q)) throw PreconditionError("point " + to_string(*q) + " is not on the arc");
    if (!is_right_triple(a, b, c) || !is_right_triple(b, c, d))
        throw PreconditionError("{a,b,c} and {b,c,d} must be right triples");
    if (!segment_in_set(arc, a, b).inside || !segment_in_set(arc, b, c).inside || !segment_in_set(arc, c, d).inside)
        return false;
    const Point path[] = {a, b, c, d};
    return is_staircase_wrt(path, Direction(c - b).perpendicular());
}

// ---- closed curves: right triples ----

RightTriple find_right_triple_on_closed_curve(const GeoSet& curve) {
    const SegmentComplex& c = require_kind(curve, ComplexKind::simple_closed_curve, "find_right_triple_on_closed_curve");
    const auto& p = c.path;
    std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (auto rt = is_right_triple(p[i], p[j], p[k])) return *rt;

    // vertex pairs against the end hyperplanes and the sphere on xy
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point& x = p[i];
            const Point& y = p[j];
            std::vector<Point> cand = hyperplane_points(c.segments, y - x, x);
            auto more = hyperplane_points(c.segments, x - y, y);
            cand.insert(cand.end(), more.begin(), more.end());
            for (const Segment& sg : c.segments) {
                auto sp = sphere_points(sg, x, y);
                cand.insert(cand.end(), sp.begin(), sp.end());
            }
            sort_unique(cand);
            for (const Point& z : cand)
                if (auto rt = is_right_triple(x, y, z)) return *rt;
        }

    // The bisector hyperplane of an edge meets the rest of the curve, which
    // joins the edge's endpoints from opposite sides.
    for (const Segment& e : c.segments) {
        Point z = midpoint(e.a, e.b);
        for (const Point& a : hyperplane_points(c.segments, e.b - e.a, z)) {
            if (a == z) continue;
            if (auto rt = is_right_triple(a, z, e.a)) return *rt;
        }
    }
    throw InternalError("no right triple found on a simple closed curve");
}

Witness refute_right3_on_closed_curve(const GeoSet& curve) {
    const SegmentComplex& c = require_kind(curve, ComplexKind::simple_closed_curve, "refute_right3_on_closed_curve");
    auto dec = closed_curve_decomposition(curve);
    const auto& segs = dec.segments;
    std::size_t k = segs.size();
    for (std::size_t s = 0; s < k; ++s)
        for (int end = 0; end < 2; ++end) {
            const Point& a = end == 0 ? segs[s].a : segs[s].b;
            const Point& b = end == 0 ? segs[s].b : segs[s].a;
            const Point& far = end == 0 ? segs[(s + k - 1) % k].a : segs[(s + 1) % k].b;
            Point y = midpoint(a, b);
            for (long den = 2; den <= 64; den *= 2) {
                Point x = lerp(a, far, rat(1, den));
                for (const Point& z : hyperplane_points(c.segments, x - y, y)) {
                    if (z == y || z == x) continue;
                    if (auto w = triple_if_all_fail(curve, x, y, z)) return *w;
                    if (!segment_in_set(curve, x, z).inside) continue;
                    Point u = perpendicular_foot(y, {x, z}).point;
                    for (const Point& v : hyperplane_points(c.segments, u - y, y)) {
                        if (v == y || v == u) continue;
                        if (auto w = triple_if_all_fail(curve, u, y, v)) return *w;
                    }
                }
            }
        }

    std::vector<Point> probes;
    for (const Segment& e : c.segments) {
        probes.push_back(e.a);
        probes.push_back(midpoint(e.a, e.b));
        probes.push_back(lerp(e.a, e.b, rat(1, 4)));
        probes.push_back(lerp(e.a, e.b, rat(3, 4)));
    }
    sort_unique(probes);
    for (const Point& x : probes)
        for (const Point& y : probes) {
            if (x == y) continue;
            for (const Point& z : hyperplane_points(c.segments, y - x, x)) {
                if (z == x || z == y) continue;
                if (auto w = triple_if_all_fail(curve, x, y, z)) return *w;
            }
        }
    throw InternalError("no right-3-point counterexample found on a simple closed curve");
}

// ---- holes ----

Witness p3_witness_across_hole(const GeoSet& s) {
    const auto* r = s.get<PolygonalRegion>();
    if (!r) throw PreconditionError("p3_witness_across_hole requires a polygonal region");
    bool continuum = r->outer.all_included() && r->excluded_points.empty() && r->excluded_segments.empty() &&
                     r->isolated_points.empty() &&
                     std::all_of(r->holes.begin(), r->holes.end(), [](const Ring& h) { return h.all_included(); });
    if (!continuum) throw PreconditionError("p3_witness_across_hole requires a polygonal continuum");
    if (r->holes.empty()) throw PreconditionError("the region has no bounded complement component");

    auto try_points = [&](const std::vector<Point>& pts) -> std::optional<Witness> {
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (segment_in_set(s, pts[i], pts[j]).inside) continue;
                for (std::size_t k = j + 1; k < pts.size(); ++k)
                    if (!segment_in_set(s, pts[i], pts[k]).inside && !segment_in_set(s, pts[j], pts[k]).inside)
                        return make_pm_witness(s, {pts[i], pts[j], pts[k]});
            }
        return std::nullopt;
    };

    for (const Ring& h : r->holes) {
        std::size_t n = h.size();
        int orient = sgn(signed_area2(h.vertices));
        std::vector<Segment> edges;
        for (std::size_t i = 0; i < n; ++i) edges.push_back(h.edge(i));

        // first boundary hit of the ray from `from` along `dir`, skipping edge `skip`
        auto first_hit = [&](const Point& from, const Point& dir, std::size_t skip) -> std::optional<Point> {
            std::optional<Rational> best;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == skip) continue;
                const Segment& e = edges[i];
                Point v = e.b - e.a;
                Rational den = cross(dir, v);
                if (sgn(den) == 0) continue;
                Rational lambda = cross(e.a - from, v) / den;
                Rational mu = cross(e.a - from, dir) / den;
                if (sgn(lambda) <= 0 || sgn(mu) < 0 || mu > 1) continue;
                if (!best || lambda < *best) best = lambda;
            }
            if (!best) return std::nullopt;
            return from + *best * dir;
        };

        // two contacts: an edge midpoint x, the opposite hit y, and z on the
        // bisector of xy where it first meets the hole boundary
        for (std::size_t i = 0; i < n; ++i) {
            const Segment& e = edges[i];
            Point inner = Rational(orient) * perp(e.b - e.a);
            Point x = midpoint(e.a, e.b);
            auto y = first_hit(x, inner, i);
            if (!y) continue;
            Point m = midpoint(x, *y);
            Point along = perp(*y - x);
            for (int sgn_dir : {1, -1}) {
                auto z = first_hit(m, Rational(sgn_dir) * along, n);
                if (!z) continue;
                if (auto w = try_points({x, *y, *z})) return *w;
            }
        }

        // three contacts on the hole boundary
        std::vector<Point> cand;
        for (const Segment& e : edges) cand.push_back(midpoint(e.a, e.b));
        for (const Segment& e : edges) {
            cand.push_back(lerp(e.a, e.b, rat(1, 4)));
            cand.push_back(lerp(e.a, e.b, rat(3, 4)));
        }
        cand.insert(cand.end(), h.vertices.begin(), h.vertices.end());
        if (auto w = try_points(cand)) return *w;
    }
    throw InternalError("no P_3 witness found across a hole");
}

// ---- convex cells ----

bool LinearCondition::holds(const Point& x) const {
    int s = sgn(dot(normal, x) - offset);
    switch (rel) {
        case Rel::lt: return s < 0;
        case Rel::le: return s <= 0;
        case Rel::eq: return s == 0;
        case Rel::ge: return s >= 0;
        case Rel::gt: return s > 0;
    }
    return false;
}

bool LexChain::holds(const Point& x) const {
    Point rel = x - base;
    for (const Point& n : normals) {
        int s = sgn(dot(n, rel));
        if (s != 0) return s == sign;
    }
    return terminal.holds(x);
}

bool ConvexCell::contains(const Point& x) const {
    for (const LinearCondition& c : conjuncts)
        if (!c.holds(x)) return false;
    return !chain || chain->holds(x);
}

std::pair<ConvexCell, ConvexCell> bipartition_segment_complement(std::size_t d, const Segment& s) {
    if (d < 1 || s.dim() != d || s.b.dim() != d) throw DimensionError("segment dimension does not match d");
    if (s.degenerate()) throw PreconditionError("bipartition needs a nondegenerate segment");
    Point u = s.b - s.a;
    std::size_t k = 0;
    while (sgn(u[k]) == 0) ++k;
    std::vector<Point> normals;
    for (std::size_t j = 0; j < d; ++j) {
        if (j == k) continue;
        Point n = Point::zero(d);
        n[j] = 1;
        n[k] = -u[j] / u[k];
        normals.push_back(n);
    }
    LexChain first{normals, s.a, 1, {u, dot(u, s.a), LinearCondition::Rel::lt}};
    LexChain second{normals, s.a, -1, {u, dot(u, s.b), LinearCondition::Rel::gt}};
    return {ConvexCell{{}, first}, ConvexCell{{}, second}};
}

std::vector<ConvexCell> halfspace_cover(const PolytopeDiff& p) {
    std::vector<ConvexCell> out;
    for (const Halfspace& h : p.A) {
        if (sgn(norm2(h.normal)) == 0) throw PreconditionError("degenerate facet normal");
        ConvexCell cell;
        for (const Halfspace& q : p.Q) cell.conjuncts.push_back({q.normal, q.offset, LinearCondition::Rel::le});
        cell.conjuncts.push_back({h.normal, h.offset, LinearCondition::Rel::gt});
        out.push_back(std::move(cell));
    }
    return out;
}

}  // namespace pcl
