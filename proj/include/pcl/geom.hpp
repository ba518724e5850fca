#ifndef PCL_GEOM_HPP
#define PCL_GEOM_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcl/rational.hpp"

namespace pcl {

// A point (or vector) in exact rational coordinates.  Equality is
// coordinatewise; ordering is lexicographic, which is the probe order used by
// every search in the library.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    Point(std::initializer_list<Rational> coords) : coords_(coords) {}

    std::size_t dim() const { return coords_.size(); }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    Rational& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool operator==(const Point& o) const { return coords_ == o.coords_; }
    std::strong_ordering operator<=>(const Point& o) const;

    static Point zero(std::size_t d) { return Point(std::vector<Rational>(d)); }

private:
    std::vector<Rational> coords_;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator-(const Point& a);
Point operator*(const Rational& k, const Point& a);
Rational dot(const Point& a, const Point& b);
Rational norm2(const Point& a);
Point midpoint(const Point& a, const Point& b);
/// a + t (b - a)
Point lerp(const Point& a, const Point& b, const Rational& t);
/// 2D cross product of vectors u and v.
Rational cross(const Point& u, const Point& v);
/// True iff u and v are linearly dependent (any dimension).
bool parallel(const Point& u, const Point& v);
std::string to_string(const Point& p);

void require_same_dim(const Point& a, const Point& b);

struct Segment {
    Point a;
    Point b;

    bool degenerate() const { return a == b; }
    bool operator==(const Segment&) const = default;
    std::size_t dim() const { return a.dim(); }
    Point direction() const { return b - a; }
};

struct RightTriple {
    Point x, y, z;
    int apex = 0;  // index into {x, y, z} of the right-angle vertex

    const Point& apex_point() const { return apex == 0 ? x : apex == 1 ? y : z; }
    const Point& at(int i) const { return i == 0 ? x : i == 1 ? y : z; }
};

enum class SphereSide { inside = -1, on = 0, outside = 1 };

// The loci attached to an ordered pair of distinct points x, y: the bisector
// hyperplane L, the end hyperplanes H_xy (through x) and H_yx (through y), the
// sphere C with diameter xy, and W = (C u H_xy u H_yx) \ {x, y}.
struct PairFrame {
    Point x, y;

    PairFrame(Point x_, Point y_);
};

struct PairFrameClass {
    bool on_L = false;
    bool on_H_xy = false;
    bool on_H_yx = false;
    SphereSide sphere_side = SphereSide::outside;
    bool in_W = false;
    bool is_x = false;
    bool is_y = false;
};

// Canonical line direction in the plane: primitive integer vector whose first
// nonzero coordinate is positive.  u and -u canonicalize identically.
class Direction {
public:
    explicit Direction(const Point& u);

    const Point& vector() const { return u_; }
    /// The canonical form of u rotated by a quarter turn.
    Direction perpendicular() const;
    bool operator==(const Direction& o) const { return u_ == o.u_; }
    auto operator<=>(const Direction& o) const { return u_ <=> o.u_; }

private:
    Point u_;
};

int orientation(const Point& p, const Point& q, const Point& r);

std::optional<RightTriple> is_right_triple(const Point& x, const Point& y, const Point& z);

struct Foot {
    Point point;
    bool within = false;  // foot lies in the closed segment
};

Foot perpendicular_foot(const Point& p, const Segment& s);

PairFrameClass classify_pair_frame(const PairFrame& f, const Point& q);

bool is_staircase_wrt(std::span<const Point> path, const Direction& u);

struct Intersection {
    enum class Kind { empty, point, segment };
    Kind kind = Kind::empty;
    Point p;  // the point, or the first endpoint of the overlap
    Point q;  // second endpoint of the overlap
};

Intersection segments_intersect(const Segment& s, const Segment& t);

bool point_on_segment(const Point& p, const Segment& s, bool open = false);

/// Parameter t with p = a + t (b - a); p is assumed to lie on the line ab.
Rational param_on_line(const Point& p, const Point& a, const Point& b);

/// Parameters along s where s meets the hyperplane {p : n.(p - base) = 0}.
/// Returns zero, one, or (when s lies in the hyperplane) both endpoint
/// parameters 0 and 1.
std::vector<Rational> hyperplane_hits(const Point& normal, const Point& base, const Segment& s);

}  // namespace pcl

#endif
