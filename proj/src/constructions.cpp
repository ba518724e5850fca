#include "pcl/constructions.hpp"

#include <algorithm>
#include <array>

#include "pcl/geom.hpp"

namespace pcl {

namespace {

const std::array<std::pair<Family, const char*>, 14> kFamilies{{
    {Family::convex_polygon, "convex_polygon"},
    {Family::lshape, "lshape"},
    {Family::spiral, "spiral"},
    {Family::punctured_convex, "punctured_convex"},
    {Family::slit_convex, "slit_convex"},
    {Family::holed_region, "holed_region"},
    {Family::staircase_arc, "staircase_arc"},
    {Family::zigzag_arc, "zigzag_arc"},
    {Family::closed_polyline, "closed_polyline"},
    {Family::tiling_subset, "tiling_subset"},
    {Family::polytope_diff, "polytope_diff"},
    {Family::union_pair, "union_pair"},
    {Family::region_plus_isolated_point, "region_plus_isolated_point"},
    {Family::dented_polygon, "dented_polygon"},
}};

Point translate(const Point& p, const Point& by) { return p + by; }

std::vector<Point> translated(std::vector<Point> pts, const Point& by) {
    for (Point& p : pts) p = translate(p, by);
    return pts;
}

template <class T>
void shuffle(Rng& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(rng.range(0, static_cast<long>(i) - 1))]);
}

bool any_three_collinear(const std::vector<Point>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k)
                if (parallel(pts[j] - pts[i], pts[k] - pts[i])) return true;
    return false;
}

std::vector<Point> random_grid_points(Rng& rng, std::size_t n, std::size_t dim, long side) {
    for (;;) {
        std::vector<Point> pts;
        while (pts.size() < n) {
            std::vector<Rational> c;
            for (std::size_t k = 0; k < dim; ++k) c.push_back(Rational(rng.range(0, side)));
            Point p(std::move(c));
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        if (!any_three_collinear(pts)) return pts;
    }
}

Point unit_circle(const Rational& t) {
    Rational d = 1 + t * t;
    return Point{(1 - t * t) / d, 2 * t / d};
}

// Rational point on the unit sphere by inverse stereographic projection.
Point unit_sphere(const Rational& a, const Rational& b) {
    Rational d = a * a + b * b + 1;
    return Point{2 * a / d, 2 * b / d, (a * a + b * b - 1) / d};
}

std::vector<Point> hole_shape(Rng& rng, int kind, const Point& lo, const Rational& s) {
    auto at = [&](long x8, long y8) { return lo + Point{s * rat(x8, 8), s * rat(y8, 8)}; };
    switch (kind) {
        case 0:
            return {at(1 + rng.range(0, 1), 1), at(7, 1 + rng.range(0, 1)), at(3 + rng.range(0, 2), 7)};
        case 1:
            return {at(2, 2), at(6, 2), at(6, 6), at(2, 6)};
        case 2:
            return {at(1, 1), at(7, 1), at(7, 3), at(3, 3), at(3, 7), at(1, 7)};
        default: {
            Point c = lo + Point{s / 2, s / 2};
            Rational e = s / 64;
            return {c + Point{-e, -e}, c + Point{e, -e}, c + Point{e, e}, c + Point{-e, e}};
        }
    }
}

std::vector<Point> lshape_ring(Rng& rng, long variant) {
    auto R = [&](long lo, long hi) { return Rational(rng.range(lo, hi)); };
    if (variant == 0) {
        Rational W = R(2, 6), H = R(2, 6);
        Rational w = Rational(rng.range(1, W.get_num().get_si() - 1)), h = Rational(rng.range(1, H.get_num().get_si() - 1));
        return {{0, 0}, {W, 0}, {W, h}, {w, h}, {w, H}, {0, H}};
    }
    Rational a = R(1, 3), b = a + R(1, 2), W = b + R(1, 3);
    if (variant == 1) {
        Rational h1 = R(1, 3), H = h1 + R(1, 3);
        return {{a, 0}, {b, 0}, {b, h1}, {W, h1}, {W, H}, {0, H}, {0, h1}, {a, h1}};
    }
    Rational c = R(1, 3), d = c + R(1, 2), H = d + R(1, 3);
    return {{a, 0}, {b, 0}, {b, c}, {W, c}, {W, d}, {b, d}, {b, H}, {a, H}, {a, d}, {0, d}, {0, c}, {a, c}};
}

std::vector<Point> spiral_ring(long scale) {
    const long raw[][2] = {{0, 0}, {5, 0}, {5, 5}, {0, 5}, {0, 2}, {3, 2}, {3, 3}, {1, 3}, {1, 4}, {4, 4}, {4, 1}, {0, 1}};
    std::vector<Point> out;
    for (const auto& v : raw) out.push_back({Rational(v[0] * scale), Rational(v[1] * scale)});
    return out;
}

PolygonalRegion region_from(std::vector<Point> ring, bool open) {
    return open ? open_polygon(std::move(ring)) : closed_polygon(std::move(ring));
}

void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError("inconsistent size parameters: " + what);
}

}  // namespace

std::string family_name(Family f) {
    for (const auto& [fam, name] : kFamilies)
        if (fam == f) return name;
    return "unknown";
}

Family parse_family(const std::string& s) {
    for (const auto& [fam, name] : kFamilies)
        if (s == name) return fam;
    throw PreconditionError("unknown family '" + s + "'");
}

std::vector<Family> all_families() {
    std::vector<Family> out;
    for (const auto& entry : kFamilies) out.push_back(entry.first);
    return out;
}

long GenSpec::param(const std::string& key, long fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

long Rng::range(long lo, long hi) {
    if (hi < lo) throw PreconditionError("empty random range");
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
}

std::vector<Point> random_convex_ring(Rng& rng, std::size_t n, long scale) {
    if (n < 3) throw PreconditionError("a convex polygon needs at least 3 vertices");
    Rational R(scale);
    std::vector<Point> out;
    if (n == 3) {
        Rational t1(rng.range(24, 48), 16), t2(-rng.range(24, 48), 16);
        for (const Rational& t : {t2, Rational(0), t1}) out.push_back(R * unit_circle(t));
        return out;
    }
    std::vector<long> ks{-16, 0, 16};
    while (ks.size() < n - 1) {
        long k = rng.range(-64, 64);
        if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
    }
    std::sort(ks.begin(), ks.end());
    for (long k : ks) out.push_back(R * unit_circle(rat(k, 16)));
    out.push_back(R * Point{-1, 0});
    return out;
}

Point random_inner_point(Rng& rng, long scale) {
    return Point{rat(rng.range(-32 * scale, 32 * scale), 64), rat(rng.range(-32 * scale, 32 * scale), 64)};
}

std::vector<Point> random_simple_polygon(Rng& rng, std::size_t n) {
    if (n < 3) throw PreconditionError("a polygon needs at least 3 vertices");
    for (;;) {
        std::vector<Point> p = random_grid_points(rng, n, 2, 24);
        shuffle(rng, p);
        // 2-opt: uncross edge pairs until the cycle is simple
        bool crossed = true;
        for (int round = 0; crossed && round < 10000; ++round) {
            crossed = false;
            for (std::size_t i = 0; i < n && !crossed; ++i)
                for (std::size_t j = i + 2; j < n && !crossed; ++j) {
                    if (i == 0 && j == n - 1) continue;
                    Segment e{p[i], p[i + 1]}, f{p[j], p[(j + 1) % n]};
                    if (segments_intersect(e, f).kind != Intersection::Kind::empty) {
                        std::reverse(p.begin() + static_cast<std::ptrdiff_t>(i + 1), p.begin() + static_cast<std::ptrdiff_t>(j + 1));
                        crossed = true;
                    }
                }
        }
        if (crossed || !is_simple_ring(p)) continue;
        if (sgn(signed_area2(p)) < 0) std::reverse(p.begin(), p.end());
        return p;
    }
}

std::vector<Point> random_closed_polyline(Rng& rng, std::size_t n, std::size_t dim) {
    if (dim == 2) return random_simple_polygon(rng, n);
    if (dim != 3) throw DimensionError("closed polylines are generated in 2 or 3 dimensions");
    if (n < 3) throw PreconditionError("a closed polyline needs at least 3 vertices");
    for (;;) {
        std::vector<Point> p = random_grid_points(rng, n, 3, 12);
        try {
            make_closed_curve(p);
            return p;
        } catch (const PreconditionError&) {
        }
    }
}

std::vector<Point> staircase_path(Rng& rng, std::size_t edges, bool rotated) {
    static const long triples[][2] = {{3, 4}, {5, 12}, {8, 15}};
    Point a{1, 0}, b{0, 1};
    if (rotated) {
        const auto& t = triples[rng.range(0, 2)];
        a = Point{Rational(t[0]), Rational(t[1])};
        b = Point{Rational(-t[1]), Rational(t[0])};
    }
    if (rng.coin()) std::swap(a, b);
    std::vector<Point> path{Point{0, 0}};
    for (std::size_t i = 0; i < edges; ++i) path.push_back(path.back() + Rational(rng.range(1, 3)) * (i % 2 == 0 ? a : b));
    return path;
}

std::vector<Point> zigzag_path(Rng& rng, std::size_t edges) {
    static const Rational slopes[] = {rat(1, 3), rat(1, 2), Rational(1), Rational(2), Rational(3)};
    std::vector<Point> path{Point{0, 0}};
    for (std::size_t i = 0; i < edges; ++i) {
        Rational len(rng.range(1, 3));
        Rational h = slopes[rng.range(0, 4)] * (i % 2 == 0 ? 1 : -1);
        path.push_back(path.back() + Point{len, len * h});
    }
    return path;
}

namespace {

// Splits about a quarter of the edges at a rational interior point, keeping
// the maximal segments.
std::vector<Point> subdivided(Rng& rng, const std::vector<Point>& path) {
    std::vector<Point> out{path.front()};
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (rng.range(0, 3) == 0) out.push_back(lerp(path[i], path[i + 1], rat(rng.range(1, 3), 4)));
        out.push_back(path[i + 1]);
    }
    return out;
}

}  // namespace

Instance generate(const GenSpec& spec) {
    Rng rng(spec.seed);
    Instance inst;
    inst.spec = spec;
    GroundTruth& t = inst.truth;
    auto count = [&](const char* key, long fallback, long minimum) {
        long v = spec.param(key, fallback);
        require(v >= minimum, std::string(key) + " must be at least " + std::to_string(minimum));
        return static_cast<std::size_t>(v);
    };
    bool open = spec.param("open", 0) != 0;
    switch (spec.family) {
        case Family::convex_polygon: {
            long scale = spec.param("scale", 8);
            require(scale >= 1, "scale must be positive");
            inst.set = region_from(random_convex_ring(rng, count("n", 6, 3), scale), open);
            t.pm_holds = 2;
            t.tags = {open ? "open convex" : "convex", "P_2"};
            break;
        }
        case Family::lshape: {
            long variant = spec.param("variant", 0);
            require(variant >= 0 && variant <= 2, "variant must be 0, 1 or 2");
            inst.set = region_from(lshape_ring(rng, variant), open);
            t.pm_holds = 3;
            t.pm_fails = 2;
            t.tags = {"union of two rectangles", "P_3"};
            break;
        }
        case Family::spiral: {
            long scale = spec.param("scale", 1);
            require(scale >= 1, "scale must be positive");
            inst.set = closed_polygon(spiral_ring(scale));
            t.pm_fails = 2;
            t.tags = {"empty kernel"};
            break;
        }
        case Family::punctured_convex: {
            auto ring = random_convex_ring(rng, count("n", 6, 4), 8);
            Point p = random_inner_point(rng, 8);
            inst.set = puncture(GeoSet(region_from(std::move(ring), open)), p);
            t.pm_holds = 3;
            t.pm_fails = 2;
            t.tags = {"convex minus a point", "P_3 expected"};
            break;
        }
        case Family::slit_convex: {
            auto ring = random_convex_ring(rng, count("n", 6, 4), 8);
            Point p = random_inner_point(rng, 8), q = p;
            while (q == p) q = random_inner_point(rng, 8);
            inst.set = puncture(GeoSet(region_from(std::move(ring), open)), Segment{p, q});
            t.pm_holds = 3;
            t.pm_fails = 2;
            t.tags = {"convex minus a segment", "P_3 expected"};
            break;
        }
        case Family::holed_region: {
            std::size_t holes = count("holes", 1, 1);
            require(holes <= 2, "at most 2 holes");
            PolygonalRegion r = closed_polygon(random_convex_ring(rng, count("n", 8, 4), 8));
            std::vector<Point> corners = holes == 1 ? std::vector<Point>{Point{-1, -1}}
                                                    : std::vector<Point>{Point{-2, rat(-3, 4)}, Point{rat(1, 2), rat(-3, 4)}};
            Rational size = holes == 1 ? Rational(2) : rat(3, 2);
            for (const Point& lo : corners)
                r.holes.push_back(Ring::with_boundary(hole_shape(rng, static_cast<int>(rng.range(0, 3)), lo, size), true));
            validate(r);
            inst.set = r;
            t.pm_fails = 3;
            t.tags = {"not simply connected", "P_3 fails"};
            break;
        }
        case Family::staircase_arc: {
            std::size_t k = count("edges", 3, 1);
            auto path = staircase_path(rng, k, spec.param("rotated", 0) != 0);
            inst.set = make_arc(spec.param("subdivide", 0) ? subdivided(rng, path) : path);
            t.pm_holds = k + 1;
            t.pm_fails = k;
            t.tags = {"staircase", "P_" + std::to_string(k + 1) + " exact, P_" + std::to_string(k) + " false"};
            break;
        }
        case Family::zigzag_arc: {
            std::size_t k = count("edges", 3, 1);
            auto path = zigzag_path(rng, k);
            inst.set = make_arc(spec.param("subdivide", 0) ? subdivided(rng, path) : path);
            t.pm_holds = k + 1;
            t.pm_fails = k;
            t.tags = {"zigzag", "P_" + std::to_string(k + 1) + " exact, P_" + std::to_string(k) + " false"};
            break;
        }
        case Family::closed_polyline: {
            std::size_t n = count("n", 6, 3);
            std::size_t dim = count("dim", 2, 2);
            inst.set = make_closed_curve(random_closed_polyline(rng, n, dim));
            t.pm_holds = n + 1;
            t.pm_fails = n;
            t.tags = {"closed polyline", "P_" + std::to_string(n + 1) + " exact, P_" + std::to_string(n) + " false"};
            break;
        }
        case Family::tiling_subset: {
            long fam = spec.param("tiling", 0);
            require(fam >= 0 && fam <= 2, "tiling must be 0, 1 or 2");
            std::size_t pieces = count("pieces", 2, 1);
            TilingSubset ts;
            ts.family = static_cast<TilingFamily>(fam);
            int dirs = ts.family == TilingFamily::square ? 2 : 3;
            for (std::size_t i = 0; i < pieces; ++i) {
                TilingLine line{static_cast<int>(rng.range(0, dirs - 1)), 0};
                line.offset = ts.family == TilingFamily::trihexagonal ? 2 * rng.range(0, 2) + 1 : rng.range(0, 4);
                long lo = rng.range(0, 4), hi = rng.range(lo, 4);
                ts.pieces.push_back({line, {{Rational(lo), Rational(hi)}}});
            }
            validate(ts);
            inst.set = ts;
            if (tiling_segments(normalized(ts)).size() <= 1) t.pm_holds = 2;
            t.tags = {"tiling subset"};
            break;
        }
        case Family::polytope_diff: {
            std::size_t d = count("dim", 2, 2);
            std::size_t m = count("facets", 4, 1);
            inst.set = polytope_diff_instance(d, m, rng.engine()());
            t.pm_holds = m + 1;
            t.tags = {"polytope difference", "P_" + std::to_string(m + 1) + " expected"};
            break;
        }
        case Family::union_pair: {
            std::size_t m = count("m", 3, 2), n = count("n", 2, 2);
            GeoSet a = make_arc(zigzag_path(rng, m - 1));
            Point shift{rat(rng.range(-8, 8), 2), rat(rng.range(-8, 8), 2)};
            GeoSet b = n == 2 ? GeoSet(closed_polygon(translated(random_convex_ring(rng, 5, 2), shift)))
                              : GeoSet(make_arc(translated(zigzag_path(rng, n - 1), shift)));
            inst.set = union_instance(a, b);
            t.pm_holds = m + n - 1;
            t.tags = {"union", "P_" + std::to_string(m + n - 1) + " expected"};
            break;
        }
        case Family::region_plus_isolated_point: {
            GeoSet r = region_from(random_convex_ring(rng, count("n", 6, 4), 8), false);
            Point q{Rational(rng.range(9, 12)), Rational(rng.range(-4, 4))};
            inst.set = union_with_points(r, {q});
            t.pm_holds = 3;
            t.pm_fails = 2;
            t.tags = {"convex region plus a point", "P_3 expected", "3-starshaped"};
            break;
        }
        case Family::dented_polygon: {
            auto ring = random_convex_ring(rng, count("n", 6, 4), 8);
            std::size_t n = ring.size();
            std::size_t i = static_cast<std::size_t>(rng.range(0, static_cast<long>(n) - 1));
            Point v = ring[i];
            Point mid = midpoint(ring[(i + n - 1) % n], ring[(i + 1) % n]);
            // push the vertex past the chord of its neighbours
            for (Rational depth = rat(rng.range(1, 4), 8);; depth /= 2) {
                ring[i] = mid + depth * (mid - v);
                if (is_simple_ring(ring)) break;
            }
            inst.set = closed_polygon(std::move(ring));
            t.pm_holds = 3;
            t.pm_fails = 2;
            t.tags = {"one reflex vertex", "P_3 expected"};
            break;
        }
    }
    return inst;
}

GeoSet union_instance(const GeoSet& a, const GeoSet& b) {
    if (a.dim() != b.dim()) throw DimensionError("union parts differ in dimension");
    const auto* ca = a.get<SegmentComplex>();
    const auto* cb = b.get<SegmentComplex>();
    if (ca && cb) {
        std::vector<Segment> segs = ca->segments;
        segs.insert(segs.end(), cb->segments.begin(), cb->segments.end());
        return make_complex(std::move(segs));
    }
    auto flatten = [](const GeoSet& s, std::vector<GeoSet>& out) {
        if (const auto* c = s.get<CompositeSet>())
            out.insert(out.end(), c->parts.begin(), c->parts.end());
        else
            out.push_back(s);
    };
    std::vector<GeoSet> parts;
    flatten(a, parts);
    flatten(b, parts);
    for (const GeoSet& p : parts)
        if (!p.is<PolygonalRegion>() && !p.is<SegmentComplex>())
            throw PreconditionError("union of " + a.class_name() + " and " + b.class_name() + " is not representable");
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            const auto* ri = parts[i].get<PolygonalRegion>();
            const auto* rj = parts[j].get<PolygonalRegion>();
            if (!ri || !rj) continue;
            bool touch = false;
            for (std::size_t e = 0; e < ri->outer.size() && !touch; ++e)
                for (std::size_t f = 0; f < rj->outer.size() && !touch; ++f)
                    touch = segments_intersect(ri->outer.edge(e), rj->outer.edge(f)).kind != Intersection::Kind::empty;
            touch = touch || locate(ri->outer.vertices, rj->outer.vertices[0]).where != Location::outside ||
                    locate(rj->outer.vertices, ri->outer.vertices[0]).where != Location::outside;
            if (touch)
                throw PreconditionError("union of " + a.class_name() + " and " + b.class_name() +
                                        " is not representable: overlapping regions");
        }
    GeoSet out{CompositeSet{std::move(parts)}};
    validate(out);
    return out;
}

GeoSet union_with_points(const GeoSet& region, const std::vector<Point>& points) {
    const auto* r = region.get<PolygonalRegion>();
    if (!r) throw PreconditionError("union with points needs a polygonal region, got " + region.class_name());
    PolygonalRegion out = *r;
    for (const Point& p : points)
        if (!member(region, p) && std::find(out.isolated_points.begin(), out.isolated_points.end(), p) == out.isolated_points.end())
            out.isolated_points.push_back(p);
    validate(out);
    return out;
}

PolytopeDiff polytope_diff_instance(std::size_t d, std::size_t m, std::uint64_t seed) {
    if (d != 2 && d != 3) throw DimensionError("polytope differences are generated in 2 or 3 dimensions");
    if (m < d + 1) throw PreconditionError("a polytope in dimension " + std::to_string(d) + " needs at least " + std::to_string(d + 1) + " facets");
    Rng rng(seed);
    std::vector<Halfspace> Q;
    for (std::size_t k = 0; k < d; ++k)
        for (int s : {1, -1}) {
            Point n = Point::zero(d);
            n[k] = s;
            Q.push_back({n, 4});
        }
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<Point> normals;
        while (normals.size() < m) {
            Point n = d == 2 ? unit_circle(rat(rng.range(-64, 64), 16))
                             : unit_sphere(rat(rng.range(-48, 48), 16), rat(rng.range(-48, 48), 16));
            if (std::find(normals.begin(), normals.end(), n) == normals.end()) normals.push_back(n);
        }
        std::vector<Halfspace> A;
        for (const Point& n : normals) A.push_back({n, 1});
        std::vector<Point> verts = polytope_vertices(d, A);
        if (verts.size() < d + 1) continue;
        Rational M = 0;
        for (const Point& v : verts)
            for (const Rational& c : v.coords()) M = std::max(M, Rational(abs(c)));
        Integer ceil_m;
        mpz_cdiv_q(ceil_m.get_mpz_t(), M.get_num_mpz_t(), M.get_den_mpz_t());
        if (ceil_m > 1000) continue;
        Rational r = Rational(3) / Rational(std::max(ceil_m, Integer(1)));
        for (Halfspace& h : A) h.offset = r;
        try {
            return make_polytope_diff(d, Q, A);
        } catch (const PreconditionError&) {
            // unbounded: the normals do not surround the origin
        }
    }
    throw InternalError("no bounded polytope found");
}

}  // namespace pcl
