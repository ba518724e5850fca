#include "pcl/geom.hpp"

#include <numeric>
#include <sstream>

namespace pcl {

std::strong_ordering Point::operator<=>(const Point& o) const {
    std::size_t n = std::min(coords_.size(), o.coords_.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = cmp(coords_[i], o.coords_[i]);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
    }
    return coords_.size() <=> o.coords_.size();
}

void require_same_dim(const Point& a, const Point& b) {
    if (a.dim() != b.dim())
        throw DimensionError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()));
}

Point operator+(const Point& a, const Point& b) {
    require_same_dim(a, b);
    std::vector<Rational> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + b[i];
    return Point(std::move(c));
}

Point operator-(const Point& a, const Point& b) {
    require_same_dim(a, b);
    std::vector<Rational> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] - b[i];
    return Point(std::move(c));
}

Point operator-(const Point& a) {
    std::vector<Rational> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = -a[i];
    return Point(std::move(c));
}

Point operator*(const Rational& k, const Point& a) {
    std::vector<Rational> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = k * a[i];
    return Point(std::move(c));
}

Rational dot(const Point& a, const Point& b) {
    require_same_dim(a, b);
    Rational s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

Rational norm2(const Point& a) { return dot(a, a); }

Point midpoint(const Point& a, const Point& b) { return lerp(a, b, rat(1, 2)); }

Point lerp(const Point& a, const Point& b, const Rational& t) {
    require_same_dim(a, b);
    std::vector<Rational> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + t * (b[i] - a[i]);
    return Point(std::move(c));
}

Rational cross(const Point& u, const Point& v) {
    if (u.dim() != 2 || v.dim() != 2) throw DimensionError("cross product needs 2D vectors");
    return u[0] * v[1] - u[1] * v[0];
}

bool parallel(const Point& u, const Point& v) {
    require_same_dim(u, v);
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = i + 1; j < u.dim(); ++j)
            if (u[i] * v[j] != u[j] * v[i]) return false;
    return true;
}

std::string to_string(const Point& p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) os << ',';
        os << p[i].get_str();
    }
    os << ')';
    return os.str();
}

PairFrame::PairFrame(Point x_, Point y_) : x(std::move(x_)), y(std::move(y_)) {
    require_same_dim(x, y);
    if (x == y) throw PreconditionError("pair frame needs distinct points");
}

Direction::Direction(const Point& u) {
    if (u.dim() != 2) throw DimensionError("Direction is planar");
    if (sgn(u[0]) == 0 && sgn(u[1]) == 0) throw PreconditionError("zero direction vector");
    Integer l = 1;
    for (std::size_t i = 0; i < 2; ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), u[i].get_den_mpz_t());
    Integer n[2];
    for (std::size_t i = 0; i < 2; ++i) n[i] = u[i].get_num() * (l / u[i].get_den());
    Integer g;
    mpz_gcd(g.get_mpz_t(), n[0].get_mpz_t(), n[1].get_mpz_t());
    n[0] /= g;
    n[1] /= g;
    if (sgn(n[0]) < 0 || (sgn(n[0]) == 0 && sgn(n[1]) < 0)) {
        n[0] = -n[0];
        n[1] = -n[1];
    }
    u_ = Point{Rational(n[0]), Rational(n[1])};
}

Direction Direction::perpendicular() const { return Direction(Point{-u_[1], u_[0]}); }

int orientation(const Point& p, const Point& q, const Point& r) {
    require_same_dim(p, q);
    require_same_dim(p, r);
    if (p.dim() != 2) throw DimensionError("orientation is defined for d = 2");
    Rational c = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
    return sgn(c);
}

std::optional<RightTriple> is_right_triple(const Point& x, const Point& y, const Point& z) {
    if (x.dim() != y.dim() || x.dim() != z.dim()) return std::nullopt;
    if (x == y || y == z || x == z) return std::nullopt;
    Point xy = y - x, xz = z - x;
    if (parallel(xy, xz)) return std::nullopt;
    const Point* pts[3] = {&x, &y, &z};
    for (int i = 0; i < 3; ++i) {
        const Point& a = *pts[i];
        const Point& b = *pts[(i + 1) % 3];
        const Point& c = *pts[(i + 2) % 3];
        if (sgn(dot(b - a, c - a)) == 0) return RightTriple{x, y, z, i};
    }
    return std::nullopt;
}

Rational param_on_line(const Point& p, const Point& a, const Point& b) {
    Point u = b - a;
    return dot(p - a, u) / norm2(u);
}

Foot perpendicular_foot(const Point& p, const Segment& s) {
    require_same_dim(p, s.a);
    require_same_dim(s.a, s.b);
    if (s.degenerate()) throw PreconditionError("perpendicular foot onto a degenerate segment");
    Rational t = param_on_line(p, s.a, s.b);
    return Foot{lerp(s.a, s.b, t), sgn(t) >= 0 && t <= 1};
}

PairFrameClass classify_pair_frame(const PairFrame& f, const Point& q) {
    require_same_dim(f.x, q);
    PairFrameClass c;
    Point u = f.y - f.x;
    Point mid = midpoint(f.x, f.y);
    c.on_L = sgn(dot(q - mid, u)) == 0;
    c.on_H_xy = sgn(dot(q - f.x, u)) == 0;
    c.on_H_yx = sgn(dot(q - f.y, f.x - f.y)) == 0;
    int s = sgn(dot(q - f.x, q - f.y));
    c.sphere_side = s < 0 ? SphereSide::inside : s == 0 ? SphereSide::on : SphereSide::outside;
    c.is_x = q == f.x;
    c.is_y = q == f.y;
    c.in_W = (s == 0 || c.on_H_xy || c.on_H_yx) && !c.is_x && !c.is_y;
    return c;
}

bool is_staircase_wrt(std::span<const Point> path, const Direction& u) {
    if (path.size() < 2) return false;
    const Point& along = u.vector();
    Point across{-along[1], along[0]};
    int sign_along = 0, sign_across = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (path[i].dim() != 2 || path[i + 1].dim() != 2) return false;
        Point e = path[i + 1] - path[i];
        int a = sgn(dot(e, along));
        int b = sgn(dot(e, across));
        if (a == 0 && b == 0) return false;
        if (b == 0) {
            if (sign_along != 0 && sign_along != a) return false;
            sign_along = a;
        } else if (a == 0) {
            if (sign_across != 0 && sign_across != b) return false;
            sign_across = b;
        } else {
            return false;
        }
    }
    return true;
}

bool point_on_segment(const Point& p, const Segment& s, bool open) {
    require_same_dim(p, s.a);
    require_same_dim(s.a, s.b);
    if (s.degenerate()) return !open && p == s.a;
    Point u = s.b - s.a;
    Point w = p - s.a;
    if (!parallel(u, w)) return false;
    Rational t = dot(w, u);
    Rational len = norm2(u);
    if (open) return sgn(t) > 0 && t < len;
    return sgn(t) >= 0 && t <= len;
}

Intersection segments_intersect(const Segment& s, const Segment& t) {
    require_same_dim(s.a, t.a);
    Intersection out;
    if (s.degenerate() || t.degenerate()) {
        const Segment& pt = s.degenerate() ? s : t;
        const Segment& other = s.degenerate() ? t : s;
        if (point_on_segment(pt.a, other)) {
            out.kind = Intersection::Kind::point;
            out.p = pt.a;
        }
        return out;
    }
    Point u = s.b - s.a;
    Point v = t.b - t.a;
    Point w = t.a - s.a;
    if (parallel(u, v)) {
        if (!parallel(w, u)) return out;
        Rational len = norm2(u);
        Rational tc = dot(t.a - s.a, u) / len;
        Rational td = dot(t.b - s.a, u) / len;
        Rational lo = std::max(Rational(0), Rational(std::min(tc, td)));
        Rational hi = std::min(Rational(1), Rational(std::max(tc, td)));
        if (lo > hi) return out;
        if (lo == hi) {
            out.kind = Intersection::Kind::point;
            out.p = lerp(s.a, s.b, lo);
            return out;
        }
        out.kind = Intersection::Kind::segment;
        out.p = lerp(s.a, s.b, lo);
        out.q = lerp(s.a, s.b, hi);
        return out;
    }
    std::size_t bi = 0, bj = 1;
    Rational minor;
    bool found = false;
    for (std::size_t i = 0; i < u.dim() && !found; ++i)
        for (std::size_t j = i + 1; j < u.dim() && !found; ++j) {
            minor = u[i] * v[j] - u[j] * v[i];
            if (sgn(minor) != 0) {
                bi = i;
                bj = j;
                found = true;
            }
        }
    // solve s.a + a u = t.a + b v in coordinates bi, bj
    Rational a = (w[bi] * v[bj] - w[bj] * v[bi]) / minor;
    Rational b = (w[bi] * u[bj] - w[bj] * u[bi]) / minor;
    if (sgn(a) < 0 || a > 1 || sgn(b) < 0 || b > 1) return out;
    Point p = lerp(s.a, s.b, a);
    if (p != lerp(t.a, t.b, b)) return out;
    out.kind = Intersection::Kind::point;
    out.p = std::move(p);
    return out;
}

std::vector<Rational> hyperplane_hits(const Point& normal, const Point& base, const Segment& s) {
    Rational f0 = dot(normal, s.a - base);
    Rational slope = dot(normal, s.b - s.a);
    if (sgn(slope) == 0) {
        if (sgn(f0) == 0) return {Rational(0), Rational(1)};
        return {};
    }
    Rational t = -f0 / slope;
    if (sgn(t) < 0 || t > 1) return {};
    return {t};
}

}  // namespace pcl
