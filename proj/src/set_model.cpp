#include "pcl/set_model.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "pcl/linalg.hpp"

namespace pcl {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

int orient2(const Point& p, const Point& q, const Point& r) {
    return sgn((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]));
}

bool between(const Rational& v, const Rational& a, const Rational& b) {
    return a <= b ? (a <= v && v <= b) : (b <= v && v <= a);
}

bool on_seg2(const Point& p, const Point& a, const Point& b) {
    return orient2(a, b, p) == 0 && between(p[0], a[0], b[0]) && between(p[1], a[1], b[1]);
}

bool on_segment_any(const Point& p, const Segment& s) {
    if (p.dim() == 2) return on_seg2(p, s.a, s.b);
    return point_on_segment(p, s);
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            f(idx);
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= n; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

void sort_unique(std::vector<Point>& pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// ---- breakpoints along xy ----

void add_param(std::vector<Rational>& ts, Rational t) {
    if (sgn(t) > 0 && t < 1) ts.push_back(std::move(t));
}

void add_point_hit(const Point& x, const Point& y, const Point& p, std::vector<Rational>& ts) {
    if (on_segment_any(p, {x, y})) add_param(ts, param_on_line(p, x, y));
}

void add_segment_hits(const Point& x, const Point& y, const Point& a, const Point& b,
                      std::vector<Rational>& ts) {
    if (a == b) {
        add_point_hit(x, y, a, ts);
        return;
    }
    if (x.dim() != 2) {
        Intersection in = segments_intersect({x, y}, {a, b});
        if (in.kind == Intersection::Kind::empty) return;
        add_param(ts, param_on_line(in.p, x, y));
        if (in.kind == Intersection::Kind::segment) add_param(ts, param_on_line(in.q, x, y));
        return;
    }
    int o1 = orient2(x, y, a), o2 = orient2(x, y, b);
    if (o1 == o2 && o1 != 0) return;
    int o3 = orient2(a, b, x), o4 = orient2(a, b, y);
    if (o3 == o4 && o3 != 0) return;
    if (o1 == 0 && o2 == 0) {
        add_point_hit(x, y, a, ts);
        add_point_hit(x, y, b, ts);
        return;
    }
    Point u = y - x, v = b - a;
    Rational den = cross(u, v);
    add_param(ts, cross(a - x, v) / den);
}

void ring_hits(const Ring& r, const Point& x, const Point& y, std::vector<Rational>& ts) {
    for (std::size_t i = 0; i < r.size(); ++i)
        add_segment_hits(x, y, r.vertices[i], r.vertices[(i + 1) % r.size()], ts);
}

// ---- region membership ----

// +1 inside or on an included feature, 0 on an excluded feature, -1 outside.
int ring_side(const Ring& r, const Point& p, bool hole) {
    RingLocation loc = locate(r.vertices, p);
    switch (loc.where) {
        case Location::on_vertex: return r.vertex_included[loc.index] ? 1 : 0;
        case Location::on_edge: return r.edge_included[loc.index] ? 1 : 0;
        case Location::inside: return hole ? -1 : 1;
        case Location::outside: return hole ? 1 : -1;
    }
    return -1;
}

bool closed_base_member(const PolygonalRegion& r, const Point& p) {
    if (locate(r.outer.vertices, p).where == Location::outside) return false;
    for (const Ring& h : r.holes)
        if (locate(h.vertices, p).where == Location::inside) return false;
    return true;
}

bool region_member(const PolygonalRegion& r, const Point& p) {
    for (const Point& q : r.isolated_points)
        if (q == p) return true;
    if (ring_side(r.outer, p, false) <= 0) return false;
    for (const Ring& h : r.holes)
        if (ring_side(h, p, true) <= 0) return false;
    for (const Point& q : r.excluded_points)
        if (q == p) return false;
    for (const Segment& s : r.excluded_segments)
        if (on_seg2(p, s.a, s.b)) return false;
    return true;
}

bool tiling_member(const TilingSubset& t, const Point& p) {
    for (const TilingPiece& piece : t.pieces) {
        const Rational c = piece.line.offset;
        Rational s;
        switch (piece.line.direction) {
            case 0:
                if (p[0] != c) continue;
                s = p[1];
                break;
            case 1:
                if (p[1] != c) continue;
                s = p[0];
                break;
            default:
                if (p[0] + p[1] != c) continue;
                s = p[1];
                break;
        }
        for (const auto& [lo, hi] : piece.intervals)
            if (lo <= s && s <= hi) return true;
    }
    return false;
}

bool polytope_member(const PolytopeDiff& d, const Point& p) {
    for (const Halfspace& h : d.Q)
        if (!h.contains(p)) return false;
    for (const Halfspace& h : d.A)
        if (!h.contains(p)) return true;
    return false;
}

template <class Member>
SegmentTest scan_segment(const Point& x, const Point& y, std::vector<Rational> ts, Member&& mem) {
    ts.push_back(Rational(0));
    ts.push_back(Rational(1));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        if (k > 0) {
            Point p = lerp(x, y, ts[k]);
            if (!mem(p)) return {false, std::move(p)};
        }
        Point m = lerp(x, y, (ts[k] + ts[k + 1]) / 2);
        if (!mem(m)) return {false, std::move(m)};
    }
    return {};
}

// ---- polytopes ----

bool is_bounded(std::size_t dim, const std::vector<Halfspace>& hs) {
    Matrix n;
    for (const Halfspace& h : hs) n.push_back(h.normal.coords());
    if (rank(n) < dim) return false;
    bool bounded = true;
    for_each_combination(hs.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
        if (!bounded) return;
        Matrix m;
        for (auto i : idx) m.push_back(hs[i].normal.coords());
        if (rank(m) != dim - 1) return;
        auto ns = null_space(m, dim);
        Point w(ns.front());
        for (int s : {1, -1}) {
            Point ws = Rational(s) * w;
            bool ray = std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) { return sgn(dot(h.normal, ws)) <= 0; });
            if (ray) bounded = false;
        }
    });
    return bounded;
}

Point centroid(const std::vector<Point>& pts) {
    Point c = Point::zero(pts.front().dim());
    for (const Point& p : pts) c = c + p;
    return rat(1, static_cast<long>(pts.size())) * c;
}

void validate_polytope(std::size_t dim, const std::vector<Halfspace>& hs, const std::string& name,
                       const std::vector<Point>& vertices) {
    if (hs.empty()) throw PreconditionError(name + ": no halfspaces");
    for (const Halfspace& h : hs) {
        if (h.normal.dim() != dim) throw DimensionError(name + ": normal dimension mismatch");
        if (norm2(h.normal) == 0) throw PreconditionError(name + ": zero normal");
    }
    if (!is_bounded(dim, hs)) throw PreconditionError(name + ": polytope is unbounded");
    if (vertices.size() < dim + 1) throw PreconditionError(name + ": polytope is empty or degenerate");
    Point c = centroid(vertices);
    for (const Halfspace& h : hs)
        if (!h.strictly_contains(c)) throw PreconditionError(name + ": polytope is not full-dimensional");
}

// ---- arrangements ----

struct ArrangementCounts {
    std::size_t vertices = 0, edges = 0, components = 0;
};

ArrangementCounts arrangement(const std::vector<Segment>& segs) {
    std::vector<std::vector<Point>> on(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) on[i] = {segs[i].a, segs[i].b};
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            Intersection in = segments_intersect(segs[i], segs[j]);
            if (in.kind == Intersection::Kind::empty) continue;
            on[i].push_back(in.p);
            on[j].push_back(in.p);
            if (in.kind == Intersection::Kind::segment) {
                on[i].push_back(in.q);
                on[j].push_back(in.q);
            }
        }
    std::vector<Point> all;
    for (const auto& v : on) all.insert(all.end(), v.begin(), v.end());
    sort_unique(all);
    auto id = [&](const Point& p) {
        return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), p) - all.begin());
    };
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        auto& pts = on[i];
        sort_unique(pts);  // lexicographic order is monotone along a segment
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            std::size_t a = id(pts[k]), b = id(pts[k + 1]);
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    UnionFind uf(all.size());
    for (auto [a, b] : edges) uf.unite(a, b);
    std::size_t comps = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (uf.find(i) == i) ++comps;
    return {all.size(), edges.size(), comps};
}

std::vector<Segment> ring_edges(const Ring& r) {
    std::vector<Segment> out;
    for (std::size_t i = 0; i < r.size(); ++i) out.push_back(r.edge(i));
    return out;
}

std::optional<Point> region_sample_point(const PolygonalRegion& r) {
    const auto& v = r.outer.vertices;
    std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point c = rat(1, 3) * (v[(i + n - 1) % n] + v[i] + v[(i + 1) % n]);
        if (region_member(r, c)) return c;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j) {
            Point c = midpoint(v[i], v[j]);
            if (region_member(r, c)) return c;
        }
    for (const Point& p : r.isolated_points) return p;
    return std::nullopt;
}

std::vector<Point> feature_points(const GeoSet& s);
std::vector<Segment> feature_segments(const GeoSet& s);

std::vector<Point> feature_points(const GeoSet& s) {
    return std::visit(
        overloaded{
            [](const PolygonalRegion& r) {
                std::vector<Point> out = r.outer.vertices;
                for (const Ring& h : r.holes) out.insert(out.end(), h.vertices.begin(), h.vertices.end());
                out.insert(out.end(), r.isolated_points.begin(), r.isolated_points.end());
                if (auto p = region_sample_point(r)) out.push_back(*p);
                return out;
            },
            [](const SegmentComplex& c) {
                std::vector<Point> out;
                for (const Segment& sg : c.segments) {
                    out.push_back(sg.a);
                    out.push_back(sg.b);
                }
                return out;
            },
            [](const PolytopeDiff& d) { return d.q_vertices; },
            [](const TilingSubset& t) {
                std::vector<Point> out;
                for (const Segment& sg : tiling_segments(t)) {
                    out.push_back(sg.a);
                    out.push_back(sg.b);
                }
                return out;
            },
            [](const CompositeSet& c) {
                std::vector<Point> out;
                for (const GeoSet& p : c.parts) {
                    auto f = feature_points(p);
                    out.insert(out.end(), f.begin(), f.end());
                }
                return out;
            },
        },
        s.value);
}

std::vector<Segment> feature_segments(const GeoSet& s) {
    return std::visit(
        overloaded{
            [](const PolygonalRegion& r) {
                std::vector<Segment> out = ring_edges(r.outer);
                for (const Ring& h : r.holes) {
                    auto e = ring_edges(h);
                    out.insert(out.end(), e.begin(), e.end());
                }
                return out;
            },
            [](const SegmentComplex& c) { return c.segments; },
            [](const PolytopeDiff& d) {
                std::vector<Segment> out;
                if (d.dim == 2) {
                    auto ring = convex_ring_from_halfspaces(d.Q);
                    for (std::size_t i = 0; i < ring.size(); ++i) out.push_back({ring[i], ring[(i + 1) % ring.size()]});
                }
                return out;
            },
            [](const TilingSubset& t) { return tiling_segments(t); },
            [](const CompositeSet& c) {
                std::vector<Segment> out;
                for (const GeoSet& p : c.parts) {
                    auto f = feature_segments(p);
                    out.insert(out.end(), f.begin(), f.end());
                }
                return out;
            },
        },
        s.value);
}

bool parts_touch(const GeoSet& a, const GeoSet& b) {
    for (const Point& p : feature_points(a))
        if (member(b, p) && member(a, p)) return true;
    for (const Point& p : feature_points(b))
        if (member(a, p) && member(b, p)) return true;
    auto sa = feature_segments(a), sb = feature_segments(b);
    for (const Segment& s : sa)
        for (const Segment& t : sb) {
            Intersection in = segments_intersect(s, t);
            if (in.kind == Intersection::Kind::empty) continue;
            std::vector<Point> cand{in.p};
            if (in.kind == Intersection::Kind::segment) {
                cand.push_back(in.q);
                cand.push_back(midpoint(in.p, in.q));
            }
            for (const Point& p : cand)
                if (member(a, p) && member(b, p)) return true;
        }
    return false;
}

void require_region(const GeoSet& s, const char* op) {
    if (!s.is<PolygonalRegion>()) throw PreconditionError(std::string(op) + " requires a polygonal region, got " + s.class_name());
}

Ring flagged(const Ring& r, bool included) {
    Ring out = r;
    std::fill(out.edge_included.begin(), out.edge_included.end(), included);
    std::fill(out.vertex_included.begin(), out.vertex_included.end(), included);
    return out;
}

}  // namespace

// ---- Ring ----

Ring Ring::with_boundary(std::vector<Point> vertices, bool included) {
    Ring r;
    std::size_t n = vertices.size();
    r.vertices = std::move(vertices);
    r.edge_included.assign(n, included);
    r.vertex_included.assign(n, included);
    return r;
}

bool Ring::all_included() const {
    return std::all_of(edge_included.begin(), edge_included.end(), [](bool b) { return b; }) &&
           std::all_of(vertex_included.begin(), vertex_included.end(), [](bool b) { return b; });
}

bool Ring::all_excluded() const {
    return std::none_of(edge_included.begin(), edge_included.end(), [](bool b) { return b; }) &&
           std::none_of(vertex_included.begin(), vertex_included.end(), [](bool b) { return b; });
}

std::size_t SegmentComplex::dim() const {
    if (!segments.empty()) return segments.front().dim();
    if (!path.empty()) return path.front().dim();
    return 0;
}

Point TilingLine::base() const {
    Rational c = offset;
    switch (direction) {
        case 0: return Point{c, Rational(0)};
        case 1: return Point{Rational(0), c};
        default: return Point{c, Rational(0)};
    }
}

Point TilingLine::step() const {
    switch (direction) {
        case 0: return Point{Rational(0), Rational(1)};
        case 1: return Point{Rational(1), Rational(0)};
        default: return Point{Rational(-1), Rational(1)};
    }
}

std::size_t GeoSet::dim() const {
    return std::visit(overloaded{
                          [](const PolygonalRegion&) -> std::size_t { return 2; },
                          [](const SegmentComplex& c) { return c.dim(); },
                          [](const PolytopeDiff& d) { return d.dim; },
                          [](const TilingSubset&) -> std::size_t { return 2; },
                          [](const CompositeSet& c) { return c.parts.empty() ? std::size_t{0} : c.parts.front().dim(); },
                      },
                      value);
}

std::string GeoSet::class_name() const {
    static const char* names[] = {"polygonal_region", "segment_complex", "polytope_diff", "tiling_subset", "union"};
    return names[value.index()];
}

// ---- ring helpers ----

Rational signed_area2(const std::vector<Point>& ring) {
    Rational a = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point& p = ring[i];
        const Point& q = ring[(i + 1) % ring.size()];
        a += p[0] * q[1] - p[1] * q[0];
    }
    return a;
}

bool is_simple_ring(const std::vector<Point>& ring) {
    std::size_t n = ring.size();
    if (n < 3) return false;
    for (const Point& p : ring)
        if (p.dim() != 2) return false;
    std::vector<Point> sorted = ring;
    sort_unique(sorted);
    if (sorted.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Segment s{ring[i], ring[(i + 1) % n]}, t{ring[j], ring[(j + 1) % n]};
            bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            Intersection in = segments_intersect(s, t);
            if (adjacent ? in.kind != Intersection::Kind::point : in.kind != Intersection::Kind::empty) return false;
        }
    return sgn(signed_area2(ring)) != 0;
}

std::vector<std::size_t> reflex_vertices(const std::vector<Point>& ring) {
    std::vector<std::size_t> out;
    std::size_t n = ring.size();
    int s = sgn(signed_area2(ring));
    for (std::size_t i = 0; i < n; ++i)
        if (orient2(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) * s < 0) out.push_back(i);
    return out;
}

bool is_convex_ring(const std::vector<Point>& ring) { return reflex_vertices(ring).empty(); }

RingLocation locate(const std::vector<Point>& ring, const Point& p) {
    std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i)
        if (ring[i] == p) return {Location::on_vertex, i};
    for (std::size_t i = 0; i < n; ++i)
        if (on_seg2(p, ring[i], ring[(i + 1) % n])) return {Location::on_edge, i};
    int wn = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        if (a[1] <= p[1]) {
            if (b[1] > p[1] && orient2(a, b, p) > 0) ++wn;
        } else if (b[1] <= p[1] && orient2(a, b, p) < 0) {
            --wn;
        }
    }
    return {wn != 0 ? Location::inside : Location::outside, 0};
}

std::vector<Point> polytope_vertices(std::size_t dim, const std::vector<Halfspace>& hs) {
    std::vector<Point> out;
    if (hs.size() < dim) return out;
    for_each_combination(hs.size(), dim, [&](const std::vector<std::size_t>& idx) {
        Matrix a;
        std::vector<Rational> b;
        for (auto i : idx) {
            a.push_back(hs[i].normal.coords());
            b.push_back(hs[i].offset);
        }
        auto x = solve(a, b);
        if (!x) return;
        Point p(*x);
        if (std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) { return h.contains(p); })) out.push_back(p);
    });
    sort_unique(out);
    return out;
}

std::vector<Point> convex_ring_from_halfspaces(const std::vector<Halfspace>& hs) {
    std::vector<Point> v = polytope_vertices(2, hs);
    if (v.size() < 3) return v;
    Point c = centroid(v);
    auto half = [&](const Point& p) {
        Point d = p - c;
        return sgn(d[1]) > 0 || (sgn(d[1]) == 0 && sgn(d[0]) > 0) ? 0 : 1;
    };
    std::sort(v.begin(), v.end(), [&](const Point& p, const Point& q) {
        int hp = half(p), hq = half(q);
        if (hp != hq) return hp < hq;
        return sgn(cross(p - c, q - c)) > 0;
    });
    // drop vertices where the boundary goes straight on
    std::vector<Point> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& prev = v[(i + v.size() - 1) % v.size()];
        const Point& next = v[(i + 1) % v.size()];
        if (orient2(prev, v[i], next) != 0) out.push_back(v[i]);
    }
    return out;
}

bool tiling_line_valid(TilingFamily family, const TilingLine& line) {
    switch (family) {
        case TilingFamily::square: return line.direction == 0 || line.direction == 1;
        case TilingFamily::triangular: return line.direction >= 0 && line.direction <= 2;
        case TilingFamily::trihexagonal:
            return line.direction >= 0 && line.direction <= 2 && (line.offset % 2 != 0);
    }
    return false;
}

std::vector<Segment> tiling_segments(const TilingSubset& t) {
    std::vector<Segment> out;
    for (const TilingPiece& p : t.pieces)
        for (const auto& [lo, hi] : p.intervals) out.push_back({p.line.at(lo), p.line.at(hi)});
    return out;
}

TilingSubset normalized(TilingSubset t) {
    std::sort(t.pieces.begin(), t.pieces.end(),
              [](const TilingPiece& a, const TilingPiece& b) { return a.line < b.line; });
    std::vector<TilingPiece> merged;
    for (TilingPiece& p : t.pieces) {
        if (!merged.empty() && merged.back().line == p.line) {
            auto& iv = merged.back().intervals;
            iv.insert(iv.end(), p.intervals.begin(), p.intervals.end());
        } else {
            merged.push_back(std::move(p));
        }
    }
    std::vector<TilingPiece> out;
    for (TilingPiece& p : merged) {
        auto& iv = p.intervals;
        std::sort(iv.begin(), iv.end());
        std::vector<std::pair<Rational, Rational>> joined;
        for (auto& it : iv) {
            if (!joined.empty() && it.first <= joined.back().second) {
                if (it.second > joined.back().second) joined.back().second = it.second;
            } else {
                joined.push_back(it);
            }
        }
        if (joined.empty()) continue;
        p.intervals = std::move(joined);
        out.push_back(std::move(p));
    }
    t.pieces = std::move(out);
    return t;
}

bool is_plain_convex_region(const GeoSet& s) {
    const auto* r = s.get<PolygonalRegion>();
    if (!r) return false;
    if (!r->holes.empty() || !r->excluded_points.empty() || !r->excluded_segments.empty() ||
        !r->isolated_points.empty())
        return false;
    if (!r->outer.all_included() && !r->outer.all_excluded()) return false;
    return is_convex_ring(r->outer.vertices);
}

// ---- validation ----

namespace {

void validate_ring(const Ring& r, const std::string& name) {
    if (r.vertices.size() < 3) throw PreconditionError(name + ": ring needs at least 3 vertices");
    if (r.edge_included.size() != r.size() || r.vertex_included.size() != r.size())
        throw PreconditionError(name + ": flag count does not match vertex count");
    for (const Point& p : r.vertices)
        if (p.dim() != 2) throw DimensionError(name + ": polygonal regions are planar");
    if (!is_simple_ring(r.vertices)) throw PreconditionError(name + ": ring is not simple");
}

bool rings_cross(const Ring& a, const Ring& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (segments_intersect(a.edge(i), b.edge(j)).kind != Intersection::Kind::empty) return true;
    return false;
}

bool segment_in_closed_base(const PolygonalRegion& r, const Point& x, const Point& y) {
    if (!closed_base_member(r, x) || !closed_base_member(r, y)) return false;
    std::vector<Rational> ts;
    ring_hits(r.outer, x, y, ts);
    for (const Ring& h : r.holes) ring_hits(h, x, y, ts);
    return scan_segment(x, y, std::move(ts), [&](const Point& p) { return closed_base_member(r, p); }).inside;
}

}  // namespace

void validate(const PolygonalRegion& r) {
    validate_ring(r.outer, "outer");
    for (std::size_t i = 0; i < r.holes.size(); ++i) {
        const Ring& h = r.holes[i];
        validate_ring(h, "hole " + std::to_string(i));
        for (const Point& p : h.vertices)
            if (locate(r.outer.vertices, p).where != Location::inside)
                throw PreconditionError("hole " + std::to_string(i) + " is not strictly inside the outer ring");
        if (rings_cross(h, r.outer)) throw PreconditionError("hole " + std::to_string(i) + " meets the outer ring");
        for (std::size_t j = 0; j < i; ++j) {
            const Ring& g = r.holes[j];
            if (rings_cross(h, g) || locate(g.vertices, h.vertices[0]).where != Location::outside ||
                locate(h.vertices, g.vertices[0]).where != Location::outside)
                throw PreconditionError("holes " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
        }
    }
    for (const Point& p : r.excluded_points) {
        if (p.dim() != 2) throw DimensionError("excluded point is not planar");
        if (!closed_base_member(r, p)) throw PreconditionError("excluded point " + to_string(p) + " lies outside the region");
    }
    for (const Segment& s : r.excluded_segments) {
        if (s.a.dim() != 2 || s.b.dim() != 2) throw DimensionError("excluded segment is not planar");
        if (s.degenerate()) throw PreconditionError("degenerate excluded segment");
        if (!segment_in_closed_base(r, s.a, s.b)) throw PreconditionError("excluded segment leaves the region");
    }
    for (const Point& p : r.isolated_points) {
        if (p.dim() != 2) throw DimensionError("isolated point is not planar");
        if (closed_base_member(r, p)) throw PreconditionError("isolated point " + to_string(p) + " lies in the region");
    }
}

void validate(const SegmentComplex& c) {
    std::size_t d = c.dim();
    if (d < 2) throw DimensionError("segment complexes need dimension >= 2");
    if (c.segments.empty()) throw PreconditionError("empty segment complex");
    for (const Segment& s : c.segments) {
        if (s.a.dim() != d || s.b.dim() != d) throw DimensionError("segment dimension mismatch");
        if (s.degenerate()) throw PreconditionError("degenerate segment in complex");
    }
    if (c.kind == ComplexKind::general) return;
    bool closed = c.kind == ComplexKind::simple_closed_curve;
    const auto& path = c.path;
    std::size_t n = path.size();
    if (n < (closed ? 3u : 2u)) throw PreconditionError("path too short");
    std::size_t edges = closed ? n : n - 1;
    if (c.segments.size() != edges) throw PreconditionError("segments do not match the vertex path");
    for (std::size_t i = 0; i < edges; ++i)
        if (!(c.segments[i] == Segment{path[i], path[(i + 1) % n]}))
            throw PreconditionError("segments do not match the vertex path");
    for (std::size_t i = 0; i < edges; ++i)
        for (std::size_t j = i + 1; j < edges; ++j) {
            bool adjacent = j == i + 1 || (closed && i == 0 && j == edges - 1);
            Intersection in = segments_intersect(c.segments[i], c.segments[j]);
            bool ok = adjacent ? in.kind == Intersection::Kind::point : in.kind == Intersection::Kind::empty;
            if (!ok) throw PreconditionError("path is not simple (edges " + std::to_string(i) + " and " + std::to_string(j) + ")");
        }
}

void validate(const PolytopeDiff& p) {
    if (p.dim < 2) throw DimensionError("polytope differences need dimension >= 2");
    validate_polytope(p.dim, p.Q, "Q", p.q_vertices);
    validate_polytope(p.dim, p.A, "A", p.a_vertices);
    for (const Point& v : p.a_vertices)
        for (const Halfspace& h : p.Q)
            if (!h.strictly_contains(v)) throw PreconditionError("A is not inside the interior of Q");
}

void validate(const TilingSubset& t) {
    for (const TilingPiece& p : t.pieces) {
        if (!tiling_line_valid(t.family, p.line))
            throw PreconditionError("line (" + std::to_string(p.line.direction) + ", " + std::to_string(p.line.offset) +
                                    ") is not a tiling line of this family");
        for (const auto& [lo, hi] : p.intervals)
            if (lo > hi) throw PreconditionError("tiling interval with lo > hi");
    }
}

void validate(const GeoSet& s) {
    std::visit(overloaded{
                   [](const CompositeSet& c) {
                       if (c.parts.empty()) throw PreconditionError("empty union");
                       for (const GeoSet& p : c.parts) {
                           if (p.dim() != c.parts.front().dim()) throw DimensionError("union parts differ in dimension");
                           validate(p);
                       }
                   },
                   [](const auto& v) { validate(v); },
               },
               s.value);
}

PolygonalRegion closed_polygon(std::vector<Point> outer) {
    PolygonalRegion r;
    r.outer = Ring::with_boundary(std::move(outer), true);
    validate(r);
    return r;
}

PolygonalRegion open_polygon(std::vector<Point> outer) {
    PolygonalRegion r;
    r.outer = Ring::with_boundary(std::move(outer), false);
    validate(r);
    return r;
}

SegmentComplex make_arc(std::vector<Point> path) {
    SegmentComplex c;
    c.kind = ComplexKind::simple_arc;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) c.segments.push_back({path[i], path[i + 1]});
    c.path = std::move(path);
    validate(c);
    return c;
}

SegmentComplex make_closed_curve(std::vector<Point> path) {
    SegmentComplex c;
    c.kind = ComplexKind::simple_closed_curve;
    for (std::size_t i = 0; i < path.size(); ++i) c.segments.push_back({path[i], path[(i + 1) % path.size()]});
    c.path = std::move(path);
    validate(c);
    return c;
}

SegmentComplex make_complex(std::vector<Segment> segments) {
    SegmentComplex c;
    c.segments = std::move(segments);
    validate(c);
    return c;
}

PolytopeDiff make_polytope_diff(std::size_t dim, std::vector<Halfspace> Q, std::vector<Halfspace> A) {
    PolytopeDiff p;
    p.dim = dim;
    p.Q = std::move(Q);
    p.A = std::move(A);
    p.q_vertices = polytope_vertices(dim, p.Q);
    p.a_vertices = polytope_vertices(dim, p.A);
    validate(p);
    return p;
}

// ---- operations ----

bool member(const GeoSet& s, const Point& p) {
    if (p.dim() != s.dim())
        throw DimensionError("point of dimension " + std::to_string(p.dim()) + " queried against a set of dimension " +
                             std::to_string(s.dim()));
    return std::visit(overloaded{
                          [&](const PolygonalRegion& r) { return region_member(r, p); },
                          [&](const SegmentComplex& c) {
                              return std::any_of(c.segments.begin(), c.segments.end(),
                                                 [&](const Segment& sg) { return on_segment_any(p, sg); });
                          },
                          [&](const PolytopeDiff& d) { return polytope_member(d, p); },
                          [&](const TilingSubset& t) { return tiling_member(t, p); },
                          [&](const CompositeSet& c) {
                              return std::any_of(c.parts.begin(), c.parts.end(),
                                                 [&](const GeoSet& g) { return member(g, p); });
                          },
                      },
                      s.value);
}

std::vector<Rational> segment_breakpoints(const GeoSet& s, const Point& x, const Point& y) {
    std::vector<Rational> ts;
    std::visit(overloaded{
                   [&](const PolygonalRegion& r) {
                       ring_hits(r.outer, x, y, ts);
                       for (const Ring& h : r.holes) ring_hits(h, x, y, ts);
                       for (const Segment& sg : r.excluded_segments) add_segment_hits(x, y, sg.a, sg.b, ts);
                       for (const Point& p : r.excluded_points) add_point_hit(x, y, p, ts);
                       for (const Point& p : r.isolated_points) add_point_hit(x, y, p, ts);
                   },
                   [&](const SegmentComplex& c) {
                       for (const Segment& sg : c.segments) add_segment_hits(x, y, sg.a, sg.b, ts);
                   },
                   [&](const PolytopeDiff& d) {
                       Point u = y - x;
                       for (const auto* list : {&d.Q, &d.A})
                           for (const Halfspace& h : *list) {
                               Rational slope = dot(h.normal, u);
                               if (sgn(slope) == 0) continue;
                               add_param(ts, (h.offset - dot(h.normal, x)) / slope);
                           }
                   },
                   [&](const TilingSubset& t) {
                       for (const Segment& sg : tiling_segments(t)) add_segment_hits(x, y, sg.a, sg.b, ts);
                   },
                   [&](const CompositeSet& c) {
                       for (const GeoSet& g : c.parts) {
                           auto more = segment_breakpoints(g, x, y);
                           ts.insert(ts.end(), more.begin(), more.end());
                       }
                   },
               },
               s.value);
    return ts;
}

SegmentTest segment_in_set(const GeoSet& s, const Point& x, const Point& y) {
    if (x == y) throw PreconditionError("segment_in_set needs distinct endpoints");
    if (!member(s, x)) throw PreconditionError("segment endpoint " + to_string(x) + " is not in the set");
    if (!member(s, y)) throw PreconditionError("segment endpoint " + to_string(y) + " is not in the set");
    return scan_segment(x, y, segment_breakpoints(s, x, y), [&](const Point& p) { return member(s, p); });
}

GeoSet closure_of(const GeoSet& s) {
    return std::visit(overloaded{
                          [](const PolygonalRegion& r) -> GeoSet {
                              PolygonalRegion c;
                              c.outer = flagged(r.outer, true);
                              for (const Ring& h : r.holes) c.holes.push_back(flagged(h, true));
                              c.isolated_points = r.isolated_points;
                              return c;
                          },
                          [](const SegmentComplex& c) -> GeoSet { return c; },
                          [](const TilingSubset& t) -> GeoSet { return t; },
                          [](const PolytopeDiff& d) -> GeoSet {
                              if (d.dim != 2)
                                  throw PreconditionError("closure of a polytope difference is representable only for d = 2");
                              PolygonalRegion r;
                              r.outer = Ring::with_boundary(convex_ring_from_halfspaces(d.Q), true);
                              r.holes.push_back(Ring::with_boundary(convex_ring_from_halfspaces(d.A), true));
                              validate(r);
                              return r;
                          },
                          [](const CompositeSet& c) -> GeoSet {
                              CompositeSet out;
                              for (const GeoSet& g : c.parts) out.parts.push_back(closure_of(g));
                              return out;
                          },
                      },
                      s.value);
}

std::optional<GeoSet> interior_of(const GeoSet& s) {
    if (s.is<SegmentComplex>() || s.is<TilingSubset>()) return std::nullopt;
    require_region(s, "interior_of");
    const auto& r = *s.get<PolygonalRegion>();
    PolygonalRegion out;
    out.outer = flagged(r.outer, false);
    for (const Ring& h : r.holes) out.holes.push_back(flagged(h, false));
    out.excluded_points = r.excluded_points;
    out.excluded_segments = r.excluded_segments;
    return GeoSet(std::move(out));
}

GeoSet puncture(const GeoSet& s, const Point& p) {
    require_region(s, "puncture");
    PolygonalRegion r = *s.get<PolygonalRegion>();
    if (p.dim() != 2) throw DimensionError("puncture point is not planar");
    if (!closed_base_member(r, p)) throw PreconditionError("puncture point " + to_string(p) + " lies outside the region");
    r.excluded_points.push_back(p);
    return r;
}

GeoSet puncture(const GeoSet& s, const Segment& seg) {
    require_region(s, "puncture");
    PolygonalRegion r = *s.get<PolygonalRegion>();
    if (seg.a.dim() != 2 || seg.b.dim() != 2) throw DimensionError("puncture segment is not planar");
    if (seg.degenerate()) return puncture(s, seg.a);
    if (!segment_in_closed_base(r, seg.a, seg.b)) throw PreconditionError("puncture segment leaves the region");
    r.excluded_segments.push_back(seg);
    return r;
}

std::vector<Component> connected_components(const GeoSet& s) {
    auto from_segments = [](const std::vector<Segment>& segs, Component::Kind kind) {
        UnionFind uf(segs.size());
        for (std::size_t i = 0; i < segs.size(); ++i)
            for (std::size_t j = i + 1; j < segs.size(); ++j)
                if (segments_intersect(segs[i], segs[j]).kind != Intersection::Kind::empty) uf.unite(i, j);
        std::vector<Component> out;
        std::vector<std::size_t> slot(segs.size(), SIZE_MAX);
        for (std::size_t i = 0; i < segs.size(); ++i) {
            std::size_t root = uf.find(i);
            if (slot[root] == SIZE_MAX) {
                slot[root] = out.size();
                out.push_back({kind, std::min(segs[i].a, segs[i].b), 0});
            }
            Component& c = out[slot[root]];
            ++c.size;
            c.representative = std::min(*c.representative, std::min(segs[i].a, segs[i].b));
        }
        return out;
    };
    return std::visit(
        overloaded{
            [](const PolygonalRegion& r) {
                std::vector<Component> out;
                std::size_t faces = 1;
                if (!r.excluded_segments.empty()) {
                    std::vector<Segment> segs = ring_edges(r.outer);
                    for (const Ring& h : r.holes) {
                        auto e = ring_edges(h);
                        segs.insert(segs.end(), e.begin(), e.end());
                    }
                    segs.insert(segs.end(), r.excluded_segments.begin(), r.excluded_segments.end());
                    ArrangementCounts a = arrangement(segs);
                    faces = a.edges + a.components - a.vertices - r.holes.size();
                }
                PolygonalRegion body = r;
                body.isolated_points.clear();
                std::optional<Point> rep = faces == 1 ? region_sample_point(body) : std::nullopt;
                for (std::size_t i = 0; i < faces; ++i) out.push_back({Component::Kind::region, rep, 0});
                for (const Point& p : r.isolated_points) out.push_back({Component::Kind::singleton, p, 1});
                return out;
            },
            [&](const SegmentComplex& c) { return from_segments(c.segments, Component::Kind::complex); },
            [&](const TilingSubset& t) { return from_segments(tiling_segments(t), Component::Kind::tiling); },
            [](const PolytopeDiff& d) {
                return std::vector<Component>{{Component::Kind::polytope, d.q_vertices.front(), 0}};
            },
            [](const CompositeSet& c) {
                // Touching parts are merged; a part with several components
                // that touches another part is assumed to touch it once.
                UnionFind uf(c.parts.size());
                for (std::size_t i = 0; i < c.parts.size(); ++i)
                    for (std::size_t j = i + 1; j < c.parts.size(); ++j)
                        if (parts_touch(c.parts[i], c.parts[j])) uf.unite(i, j);
                std::vector<Component> out;
                std::vector<bool> seen(c.parts.size(), false);
                for (std::size_t i = 0; i < c.parts.size(); ++i) {
                    auto comps = connected_components(c.parts[i]);
                    std::size_t root = uf.find(i);
                    std::size_t skip = seen[root] ? 1 : 0;
                    seen[root] = true;
                    out.insert(out.end(), comps.begin() + static_cast<std::ptrdiff_t>(std::min(skip, comps.size())), comps.end());
                }
                return out;
            },
        },
        s.value);
}

bool is_simply_connected(const GeoSet& s) {
    if (connected_components(s).size() != 1)
        throw PreconditionError("is_simply_connected requires a connected set");
    return std::visit(
        overloaded{
            [](const PolygonalRegion& r) {
                if (!r.holes.empty()) return false;
                const auto& segs = r.excluded_segments;
                UnionFind uf(segs.size());
                for (std::size_t i = 0; i < segs.size(); ++i)
                    for (std::size_t j = i + 1; j < segs.size(); ++j)
                        if (segments_intersect(segs[i], segs[j]).kind != Intersection::Kind::empty) uf.unite(i, j);
                std::vector<bool> anchored(segs.size(), false);
                for (std::size_t i = 0; i < segs.size(); ++i)
                    for (std::size_t e = 0; e < r.outer.size(); ++e)
                        if (segments_intersect(segs[i], r.outer.edge(e)).kind != Intersection::Kind::empty)
                            anchored[uf.find(i)] = true;
                for (std::size_t i = 0; i < segs.size(); ++i)
                    if (!anchored[uf.find(i)]) return false;
                for (const Point& p : r.excluded_points) {
                    if (locate(r.outer.vertices, p).where != Location::inside) continue;
                    bool on_slit = std::any_of(segs.begin(), segs.end(), [&](const Segment& sg) { return on_seg2(p, sg.a, sg.b); });
                    if (!on_slit) return false;
                }
                return true;
            },
            [](const SegmentComplex& c) {
                ArrangementCounts a = arrangement(c.segments);
                return a.edges + 1 == a.vertices;
            },
            [](const TilingSubset& t) {
                ArrangementCounts a = arrangement(tiling_segments(t));
                return a.edges + 1 == a.vertices;
            },
            [](const PolytopeDiff& d) { return d.dim != 2; },
            [](const CompositeSet&) -> bool {
                throw PreconditionError("is_simply_connected does not support unions");
            },
        },
        s.value);
}

std::vector<Point> local_nonconvexity_points(const GeoSet& s) {
    require_region(s, "local_nonconvexity_points");
    const auto& r = *s.get<PolygonalRegion>();
    bool continuum = r.outer.all_included() && r.excluded_points.empty() && r.excluded_segments.empty() &&
                     r.isolated_points.empty() &&
                     std::all_of(r.holes.begin(), r.holes.end(), [](const Ring& h) { return h.all_included(); });
    if (!continuum) throw PreconditionError("local_nonconvexity_points is defined for polygonal continua only");
    std::vector<Point> out;
    for (auto i : reflex_vertices(r.outer.vertices)) out.push_back(r.outer.vertices[i]);
    for (const Ring& h : r.holes) {
        std::size_t n = h.size();
        int s_area = sgn(signed_area2(h.vertices));
        for (std::size_t i = 0; i < n; ++i)
            if (orient2(h.vertices[(i + n - 1) % n], h.vertices[i], h.vertices[(i + 1) % n]) * s_area > 0)
                out.push_back(h.vertices[i]);
    }
    sort_unique(out);
    return out;
}

}  // namespace pcl
