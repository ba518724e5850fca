#include "pcl/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace pcl {

namespace {

constexpr double kSize = 480.0;
constexpr double kMargin = 16.0;

class Canvas {
public:
    Canvas(double minx, double miny, double maxx, double maxy) : minx_(minx), maxy_(maxy) {
        double span = std::max({maxx - minx, maxy - miny, 1e-9});
        scale_ = (kSize - 2 * kMargin) / span;
    }

    std::string x(const Point& p) const { return num(kMargin + (p[0].get_d() - minx_) * scale_); }
    std::string y(const Point& p) const { return num(kMargin + (maxy_ - p[1].get_d()) * scale_); }
    std::string xy(const Point& p) const { return x(p) + "," + y(p); }

    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return buf;
    }

private:
    double minx_, maxy_, scale_;
};

void collect(const GeoSet& s, std::vector<Point>& pts) {
    if (const auto* r = s.get<PolygonalRegion>()) {
        pts.insert(pts.end(), r->outer.vertices.begin(), r->outer.vertices.end());
        pts.insert(pts.end(), r->isolated_points.begin(), r->isolated_points.end());
    } else if (const auto* c = s.get<SegmentComplex>()) {
        for (const Segment& sg : c->segments) {
            pts.push_back(sg.a);
            pts.push_back(sg.b);
        }
    } else if (const auto* p = s.get<PolytopeDiff>()) {
        pts.insert(pts.end(), p->q_vertices.begin(), p->q_vertices.end());
    } else if (const auto* t = s.get<TilingSubset>()) {
        for (const Segment& sg : tiling_segments(*t)) {
            pts.push_back(sg.a);
            pts.push_back(sg.b);
        }
    } else if (const auto* u = s.get<CompositeSet>()) {
        for (const GeoSet& part : u->parts) collect(part, pts);
    }
}

std::string ring_path(const Canvas& cv, const std::vector<Point>& ring) {
    std::string d = "M";
    for (std::size_t i = 0; i < ring.size(); ++i) d += (i ? " L" : "") + cv.xy(ring[i]);
    return d + " Z";
}

void line(std::ostream& o, const Canvas& cv, const Point& a, const Point& b, const char* style) {
    o << "<line x1=\"" << cv.x(a) << "\" y1=\"" << cv.y(a) << "\" x2=\"" << cv.x(b) << "\" y2=\"" << cv.y(b) << "\" "
      << style << "/>\n";
}

void dot(std::ostream& o, const Canvas& cv, const Point& p, const char* style) {
    o << "<circle cx=\"" << cv.x(p) << "\" cy=\"" << cv.y(p) << "\" " << style << "/>\n";
}

void draw_ring_edges(std::ostream& o, const Canvas& cv, const Ring& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        Segment e = r.edge(i);
        line(o, cv, e.a, e.b,
             r.edge_included[i] ? "stroke=\"#1f3a93\" stroke-width=\"2\""
                                : "stroke=\"#1f3a93\" stroke-width=\"2\" stroke-dasharray=\"6,4\"");
    }
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!r.vertex_included[i]) dot(o, cv, r.vertices[i], "r=\"4\" fill=\"white\" stroke=\"#1f3a93\"");
}

void draw(std::ostream& o, const Canvas& cv, const GeoSet& s) {
    if (const auto* r = s.get<PolygonalRegion>()) {
        std::string d = ring_path(cv, r->outer.vertices);
        for (const Ring& h : r->holes) d += " " + ring_path(cv, h.vertices);
        o << "<path d=\"" << d << "\" fill=\"#cfe0f5\" fill-rule=\"evenodd\" stroke=\"none\"/>\n";
        draw_ring_edges(o, cv, r->outer);
        for (const Ring& h : r->holes) draw_ring_edges(o, cv, h);
        for (const Segment& sg : r->excluded_segments)
            line(o, cv, sg.a, sg.b, "stroke=\"#c0392b\" stroke-width=\"2\" stroke-dasharray=\"4,3\"");
        for (const Point& p : r->excluded_points) dot(o, cv, p, "r=\"4\" fill=\"white\" stroke=\"#c0392b\"");
        for (const Point& p : r->isolated_points) dot(o, cv, p, "r=\"4\" fill=\"#1f3a93\"");
    } else if (const auto* c = s.get<SegmentComplex>()) {
        for (const Segment& sg : c->segments) line(o, cv, sg.a, sg.b, "stroke=\"#1f3a93\" stroke-width=\"3\"");
    } else if (const auto* p = s.get<PolytopeDiff>()) {
        std::string d = ring_path(cv, convex_ring_from_halfspaces(p->Q)) + " " + ring_path(cv, convex_ring_from_halfspaces(p->A));
        o << "<path d=\"" << d << "\" fill=\"#cfe0f5\" fill-rule=\"evenodd\" stroke=\"#1f3a93\" stroke-width=\"2\"/>\n";
        // the boundary of A is not part of Q \ A
        o << "<path d=\"" << ring_path(cv, convex_ring_from_halfspaces(p->A))
          << "\" fill=\"none\" stroke=\"white\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>\n";
    } else if (const auto* t = s.get<TilingSubset>()) {
        for (const Segment& sg : tiling_segments(*t)) {
            if (sg.degenerate())
                dot(o, cv, sg.a, "r=\"4\" fill=\"#1f3a93\"");
            else
                line(o, cv, sg.a, sg.b, "stroke=\"#1f3a93\" stroke-width=\"3\"");
        }
    } else if (const auto* u = s.get<CompositeSet>()) {
        for (const GeoSet& part : u->parts) draw(o, cv, part);
    }
}

}  // namespace

std::string render_svg(const GeoSet& s, const std::optional<Witness>& w) {
    if (s.dim() != 2) throw DimensionError("rendering is planar only, got dimension " + std::to_string(s.dim()));
    std::vector<Point> pts;
    collect(s, pts);
    if (w) {
        pts.insert(pts.end(), w->points.begin(), w->points.end());
        if (w->center) pts.push_back(*w->center);
    }
    for (const Point& p : pts)
        if (p.dim() != 2) throw DimensionError("witness is not planar");
    double minx = pts.front()[0].get_d(), maxx = minx, miny = pts.front()[1].get_d(), maxy = miny;
    for (const Point& p : pts) {
        minx = std::min(minx, p[0].get_d());
        maxx = std::max(maxx, p[0].get_d());
        miny = std::min(miny, p[1].get_d());
        maxy = std::max(maxy, p[1].get_d());
    }
    Canvas cv(minx, miny, maxx, maxy);
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g id=\"set\" class=\"" << s.class_name() << "\">\n";
    draw(o, cv, s);
    o << "</g>\n";
    if (w) {
        o << "<g id=\"witness\" class=\"" << property_name(w->property) << "\">\n";
        for (const FailingSegment& f : w->failing) line(o, cv, f.from, f.to, "stroke=\"#e67e22\" stroke-width=\"1.5\"");
        for (const FailingSegment& f : w->failing) {
            std::string x = cv.x(f.evidence), y = cv.y(f.evidence);
            double cx = std::stod(x), cy = std::stod(y);
            o << "<path d=\"M" << Canvas::num(cx - 4) << "," << Canvas::num(cy - 4) << " L" << Canvas::num(cx + 4) << ","
              << Canvas::num(cy + 4) << " M" << Canvas::num(cx - 4) << "," << Canvas::num(cy + 4) << " L"
              << Canvas::num(cx + 4) << "," << Canvas::num(cy - 4) << "\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
        }
        for (const Point& p : w->points) dot(o, cv, p, "r=\"5\" fill=\"#27ae60\" stroke=\"black\"");
        if (w->center) dot(o, cv, *w->center, "r=\"6\" fill=\"#8e44ad\" stroke=\"black\"");
        o << "</g>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace pcl
