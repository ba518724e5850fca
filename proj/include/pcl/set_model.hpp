#ifndef PCL_SET_MODEL_HPP
#define PCL_SET_MODEL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pcl/geom.hpp"

namespace pcl {

// A closed polygonal ring with per-feature inclusion flags.  Edge i joins
// vertex i to vertex i + 1 (cyclically).
struct Ring {
    std::vector<Point> vertices;
    std::vector<bool> edge_included;
    std::vector<bool> vertex_included;

    std::size_t size() const { return vertices.size(); }
    Segment edge(std::size_t i) const { return {vertices[i], vertices[(i + 1) % vertices.size()]}; }

    /// All features included (closed) or all excluded (open).
    static Ring with_boundary(std::vector<Point> vertices, bool included);
    bool all_included() const;
    bool all_excluded() const;
};

// The represented set is
//   (closed outer region minus the open interiors of the holes, with boundary
//    points kept or dropped per flag) minus excluded points and closed excluded
//   segments, plus isolated points.
struct PolygonalRegion {
    Ring outer;
    std::vector<Ring> holes;
    std::vector<Point> excluded_points;
    std::vector<Segment> excluded_segments;
    std::vector<Point> isolated_points;
};

enum class ComplexKind { general, simple_arc, simple_closed_curve };

struct SegmentComplex {
    std::vector<Segment> segments;
    ComplexKind kind = ComplexKind::general;
    // Vertex path for arcs and closed curves.  A closed curve does not repeat
    // its first vertex.
    std::vector<Point> path;

    std::size_t dim() const;
};

/// normal . x <= offset
struct Halfspace {
    Point normal;
    Rational offset;

    bool contains(const Point& p) const { return dot(normal, p) <= offset; }
    bool strictly_contains(const Point& p) const { return dot(normal, p) < offset; }
};

// Q \ A for a bounded full-dimensional convex polytope Q and a polytope A
// inside int Q, both in H-representation.
struct PolytopeDiff {
    std::size_t dim = 2;
    std::vector<Halfspace> Q;
    std::vector<Halfspace> A;
    // containment certificate, filled in by make_polytope_diff
    std::vector<Point> q_vertices;
    std::vector<Point> a_vertices;
};

enum class TilingFamily { square, triangular, trihexagonal };

// Tiling lines use affine lattice coordinates (u, v).  Direction 0 is the
// line u = c, direction 1 is v = c, direction 2 is u + v = c.  The square
// tiling (4^4) uses directions 0 and 1 with any integer c; the triangular
// tiling (3^6) uses all three directions with any integer c; the
// trihexagonal tiling (3.6.3.6) uses all three directions with odd c.  An
// affine image of a tiling preserves every segment-containment relation, so
// the skewed frame loses nothing for m-point convexity.
struct TilingLine {
    int direction = 0;
    long offset = 0;

    auto operator<=>(const TilingLine&) const = default;
    Point base() const;
    Point step() const;
    Point at(const Rational& t) const { return base() + t * step(); }
};

struct TilingPiece {
    TilingLine line;
    std::vector<std::pair<Rational, Rational>> intervals;  // closed [lo, hi]
};

struct TilingSubset {
    TilingFamily family = TilingFamily::square;
    std::vector<TilingPiece> pieces;
};

struct GeoSet;

// Disjunctive union of parts.
struct CompositeSet {
    std::vector<GeoSet> parts;
};

struct GeoSet {
    using Variant = std::variant<PolygonalRegion, SegmentComplex, PolytopeDiff, TilingSubset, CompositeSet>;
    Variant value;

    GeoSet() = default;
    GeoSet(PolygonalRegion r) : value(std::move(r)) {}
    GeoSet(SegmentComplex c) : value(std::move(c)) {}
    GeoSet(PolytopeDiff p) : value(std::move(p)) {}
    GeoSet(TilingSubset t) : value(std::move(t)) {}
    GeoSet(CompositeSet c) : value(std::move(c)) {}

    std::size_t dim() const;
    std::string class_name() const;

    template <class T> const T* get() const { return std::get_if<T>(&value); }
    template <class T> bool is() const { return std::holds_alternative<T>(value); }
};

// ---- construction and validation ----

void validate(const PolygonalRegion& r);
void validate(const SegmentComplex& c);
void validate(const PolytopeDiff& p);
void validate(const TilingSubset& t);
void validate(const GeoSet& s);

PolygonalRegion closed_polygon(std::vector<Point> outer);
PolygonalRegion open_polygon(std::vector<Point> outer);
SegmentComplex make_arc(std::vector<Point> path);
SegmentComplex make_closed_curve(std::vector<Point> path);
SegmentComplex make_complex(std::vector<Segment> segments);
/// Fills in the vertex certificates and validates.
PolytopeDiff make_polytope_diff(std::size_t dim, std::vector<Halfspace> Q, std::vector<Halfspace> A);
/// Sorts, merges touching intervals on the same line and merges pieces on the
/// same line.
TilingSubset normalized(TilingSubset t);

// ---- ring helpers ----

/// Twice the signed area; positive for counterclockwise rings.
Rational signed_area2(const std::vector<Point>& ring);
bool is_simple_ring(const std::vector<Point>& ring);
/// No reflex vertex (collinear vertices allowed).
bool is_convex_ring(const std::vector<Point>& ring);

enum class Location { outside, inside, on_vertex, on_edge };
struct RingLocation {
    Location where = Location::outside;
    std::size_t index = 0;  // vertex or edge index on the boundary
};
RingLocation locate(const std::vector<Point>& ring, const Point& p);

/// Vertices of {x : h.normal . x <= h.offset for all h}; exact, any dimension.
std::vector<Point> polytope_vertices(std::size_t dim, const std::vector<Halfspace>& hs);
/// Counterclockwise vertex ring of a bounded 2D H-polytope.
std::vector<Point> convex_ring_from_halfspaces(const std::vector<Halfspace>& hs);

std::vector<Segment> tiling_segments(const TilingSubset& t);
bool tiling_line_valid(TilingFamily family, const TilingLine& line);

/// True when the set is one closed or one open convex polygon without any
/// holes, exclusions or isolated points.
bool is_plain_convex_region(const GeoSet& s);

// ---- operations ----

bool member(const GeoSet& s, const Point& p);

struct SegmentTest {
    bool inside = true;
    std::optional<Point> evidence;  // a point of xy outside S when !inside
};

/// Whether the closed segment xy lies in S.  Requires x, y in S and x != y.
SegmentTest segment_in_set(const GeoSet& s, const Point& x, const Point& y);

/// Parameters t in (0, 1) along xy at which membership may change.
std::vector<Rational> segment_breakpoints(const GeoSet& s, const Point& x, const Point& y);

GeoSet closure_of(const GeoSet& s);
/// Interior relative to the plane.  nullopt is the distinguished empty
/// interior of a 1-dimensional set.
std::optional<GeoSet> interior_of(const GeoSet& s);
GeoSet puncture(const GeoSet& s, const Point& p);
GeoSet puncture(const GeoSet& s, const Segment& seg);

struct Component {
    enum class Kind { region, singleton, complex, tiling, polytope } kind = Kind::region;
    std::optional<Point> representative;
    std::size_t size = 0;  // segments/pieces for 1-complexes, else 0
};

std::vector<Component> connected_components(const GeoSet& s);
bool is_simply_connected(const GeoSet& s);
/// B_S for a polygonal continuum: the points where S is not locally convex.
std::vector<Point> local_nonconvexity_points(const GeoSet& s);

/// Reflex vertices of a ring oriented either way, with respect to its own
/// interior.
std::vector<std::size_t> reflex_vertices(const std::vector<Point>& ring);

}  // namespace pcl

#endif
