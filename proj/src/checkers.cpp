#include "pcl/checkers.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "pcl/characterizations.hpp"
#include "pcl/linalg.hpp"

namespace pcl {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

constexpr long kRandomDenominator = 4096;

void sort_unique(std::vector<Point>& pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

Point perp(const Point& u) { return Point{-u[1], u[0]}; }

Rational linf(const Point& a, const Point& b) {
    Rational m = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Rational d = abs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

std::vector<Point> ring_points(const PolygonalRegion& r) {
    std::vector<Point> out = r.outer.vertices;
    for (const Ring& h : r.holes) out.insert(out.end(), h.vertices.begin(), h.vertices.end());
    return out;
}

std::vector<Segment> region_edges(const PolygonalRegion& r) {
    std::vector<Segment> out;
    for (std::size_t i = 0; i < r.outer.size(); ++i) out.push_back(r.outer.edge(i));
    for (const Ring& h : r.holes)
        for (std::size_t i = 0; i < h.size(); ++i) out.push_back(h.edge(i));
    return out;
}

void add_feet(const std::vector<Point>& from, const std::vector<Segment>& edges, std::vector<Point>& out,
              std::size_t limit) {
    std::size_t n = std::min(limit, from.size());
    for (std::size_t i = 0; i < n; ++i)
        for (const Segment& e : edges) {
            if (e.degenerate()) continue;
            Foot f = perpendicular_foot(from[i], e);
            if (f.within) out.push_back(f.point);
        }
}

void collect_structured(const GeoSet& s, std::vector<Point>& out);

void region_structured(const PolygonalRegion& r, std::vector<Point>& out) {
    out.insert(out.end(), r.isolated_points.begin(), r.isolated_points.end());
    std::vector<Point> verts = ring_points(r);
    out.insert(out.end(), verts.begin(), verts.end());

    std::vector<Point> features = verts;
    for (const Segment& sg : r.excluded_segments) {
        features.push_back(sg.a);
        features.push_back(sg.b);
    }
    features.insert(features.end(), r.excluded_points.begin(), r.excluded_points.end());
    auto scale_at = [&](const Point& p) {
        Rational best = 0;
        for (const Point& q : features) {
            Rational d = linf(p, q);
            if (sgn(d) > 0 && (sgn(best) == 0 || d < best)) best = d;
        }
        return sgn(best) > 0 ? best : Rational(1);
    };
    for (const Point& p : r.excluded_points) {
        Rational rad = scale_at(p) / 64;
        out.push_back(p + Point{rad, Rational(0)});
        out.push_back(p + Point{-rad, Rational(0)});
        out.push_back(p + Point{Rational(0), rad});
        out.push_back(p + Point{Rational(0), -rad});
    }

    std::vector<Segment> edges = region_edges(r);
    for (const Segment& e : edges) out.push_back(midpoint(e.a, e.b));

    for (const Segment& sg : r.excluded_segments) {
        Point u = sg.b - sg.a;
        Point n = rat(1, 16) * perp(u);
        Point m = midpoint(sg.a, sg.b);
        out.push_back(m + n);
        out.push_back(m - n);
        out.push_back(sg.a - rat(1, 16) * u);
        out.push_back(sg.b + rat(1, 16) * u);
        out.push_back(sg.a + n);
        out.push_back(sg.b - n);
    }

    auto inward = [&](const Ring& ring) {
        std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& v = ring.vertices[i];
            const Point& prev = ring.vertices[(i + n - 1) % n];
            const Point& next = ring.vertices[(i + 1) % n];
            out.push_back(v + rat(1, 16) * ((prev - v) + (next - v)));
        }
        for (std::size_t i = 0; i < n; ++i) {
            Segment e = ring.edge(i);
            Point m = midpoint(e.a, e.b);
            Point nn = rat(1, 16) * perp(e.b - e.a);
            out.push_back(m + nn);
            out.push_back(m - nn);
        }
    };
    inward(r.outer);
    for (const Ring& h : r.holes) inward(h);

    add_feet(verts, edges, out, 16);
}

void segments_structured(const std::vector<Segment>& segs, std::vector<Point>& out) {
    std::vector<Point> ends;
    for (const Segment& sg : segs) {
        ends.push_back(sg.a);
        ends.push_back(sg.b);
    }
    out.insert(out.end(), ends.begin(), ends.end());
    for (const Segment& sg : segs) out.push_back(midpoint(sg.a, sg.b));
    for (const Segment& sg : segs) {
        out.push_back(lerp(sg.a, sg.b, rat(1, 4)));
        out.push_back(lerp(sg.a, sg.b, rat(3, 4)));
    }
    add_feet(ends, segs, out, 16);
}

void polytope_structured(const PolytopeDiff& d, std::vector<Point>& out) {
    out.insert(out.end(), d.q_vertices.begin(), d.q_vertices.end());
    Point ca = Point::zero(d.dim);
    for (const Point& v : d.a_vertices) ca = ca + v;
    ca = rat(1, static_cast<long>(d.a_vertices.size())) * ca;
    for (const Point& v : d.a_vertices) out.push_back(v + rat(1, 4) * (v - ca));
    for (std::size_t i = 0; i < d.q_vertices.size(); ++i)
        for (std::size_t j = i + 1; j < d.q_vertices.size(); ++j) out.push_back(midpoint(d.q_vertices[i], d.q_vertices[j]));
    for (const Point& v : d.q_vertices) out.push_back(midpoint(v, ca));
}

void collect_structured(const GeoSet& s, std::vector<Point>& out) {
    std::visit(overloaded{
                   [&](const PolygonalRegion& r) { region_structured(r, out); },
                   [&](const SegmentComplex& c) { segments_structured(c.segments, out); },
                   [&](const TilingSubset& t) { segments_structured(tiling_segments(t), out); },
                   [&](const PolytopeDiff& d) { polytope_structured(d, out); },
                   [&](const CompositeSet& c) {
                       std::vector<std::vector<Point>> lists;
                       for (const GeoSet& g : c.parts) {
                           lists.emplace_back();
                           collect_structured(g, lists.back());
                       }
                       for (std::size_t k = 0;; ++k) {
                           bool any = false;
                           for (auto& l : lists)
                               if (k < l.size()) {
                                   out.push_back(l[k]);
                                   any = true;
                               }
                           if (!any) break;
                       }
                   },
               },
               s.value);
}

// ---- random probes ----

struct Box {
    Point lo, hi;
};

Box bounding_box(const std::vector<Point>& pts) {
    Box b{pts.front(), pts.front()};
    for (const Point& p : pts)
        for (std::size_t i = 0; i < p.dim(); ++i) {
            if (p[i] < b.lo[i]) b.lo[i] = p[i];
            if (p[i] > b.hi[i]) b.hi[i] = p[i];
        }
    return b;
}

class Sampler {
public:
    explicit Sampler(const GeoSet& s) : set_(&s) {
        std::visit(overloaded{
                       [&](const PolygonalRegion& r) { box_ = bounding_box(r.outer.vertices); },
                       [&](const PolytopeDiff& d) { box_ = bounding_box(d.q_vertices); },
                       [&](const SegmentComplex& c) { segs_ = c.segments; },
                       [&](const TilingSubset& t) { segs_ = tiling_segments(t); },
                       [&](const CompositeSet& c) {
                           for (const GeoSet& g : c.parts) parts_.emplace_back(g);
                       },
                   },
                   s.value);
    }

    std::optional<Point> draw(std::mt19937_64& rng) const {
        std::uniform_int_distribution<long> grid(0, kRandomDenominator);
        if (!parts_.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, parts_.size() - 1);
            return parts_[pick(rng)].draw(rng);
        }
        if (!segs_.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, segs_.size() - 1);
            const Segment& sg = segs_[pick(rng)];
            return lerp(sg.a, sg.b, rat(grid(rng), kRandomDenominator));
        }
        if (!box_) return std::nullopt;
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<Rational> c(box_->lo.dim());
            for (std::size_t i = 0; i < c.size(); ++i)
                c[i] = box_->lo[i] + (box_->hi[i] - box_->lo[i]) * rat(grid(rng), kRandomDenominator);
            Point p(std::move(c));
            if (member(*set_, p)) return p;
        }
        return std::nullopt;
    }

private:
    const GeoSet* set_;
    std::optional<Box> box_;
    std::vector<Segment> segs_;
    std::vector<Sampler> parts_;
};

std::size_t pair_count(std::size_t m) { return m * (m - 1) / 2; }

Unrefuted unrefuted(const SearchContext& ctx, std::size_t tuples, bool exhausted) {
    return Unrefuted{ctx.budget(), ctx.size(), tuples, exhausted};
}

}  // namespace

// ---- budget, names, verdicts ----

SearchBudget SearchBudget::scaled(std::size_t k) const {
    SearchBudget b = *this;
    b.max_probe_points *= k;
    b.max_structured *= k;
    b.max_tuples *= k;
    return b;
}

void SearchBudget::validate() const {
    if (max_probe_points == 0 || max_structured == 0 || max_tuples == 0)
        throw PreconditionError("search budget counts must be positive");
}

std::string property_name(Property p) {
    switch (p) {
        case Property::pm: return "pm";
        case Property::right3: return "right3";
        case Property::double_right3: return "double_right3";
        case Property::starshaped: return "starshaped";
    }
    return "pm";
}

Property parse_property_name(const std::string& s) {
    if (s == "pm") return Property::pm;
    if (s == "right3") return Property::right3;
    if (s == "double_right3") return Property::double_right3;
    if (s == "starshaped") return Property::starshaped;
    throw Error("unknown property '" + s + "'");
}

std::string verdict_kind(const Verdict& v) {
    static const char* names[] = {"holds_exact", "unrefuted", "refuted"};
    return names[v.index()];
}

const Witness& witness_of(const Verdict& v) {
    if (!is_refuted(v)) throw PreconditionError("verdict carries no witness");
    return std::get<Refuted>(v).witness;
}

std::string witness_problem(const GeoSet& s, const Witness& w) {
    auto in_set = [&](const Point& p) { return p.dim() == s.dim() && member(s, p); };
    auto bad_evidence = [&](const FailingSegment& f) -> std::string {
        if (f.from.dim() != s.dim() || f.to.dim() != s.dim() || f.evidence.dim() != s.dim()) return "dimension mismatch";
        if (f.from == f.to) return "degenerate failing segment";
        if (!point_on_segment(f.evidence, {f.from, f.to})) return "evidence " + to_string(f.evidence) + " is not on its segment";
        if (member(s, f.evidence)) return "evidence " + to_string(f.evidence) + " lies in the set";
        return {};
    };
    auto index_of = [&](const Point& p) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < w.points.size(); ++i)
            if (w.points[i] == p) return i;
        return std::nullopt;
    };
    for (std::size_t i = 0; i < w.points.size(); ++i) {
        if (!in_set(w.points[i])) return "witness point " + to_string(w.points[i]) + " is not in the set";
        for (std::size_t j = 0; j < i; ++j)
            if (w.points[i] == w.points[j]) return "repeated witness point";
    }
    for (const FailingSegment& f : w.failing)
        if (auto why = bad_evidence(f); !why.empty()) return why;

    std::set<std::pair<std::size_t, std::size_t>> pairs;
    auto collect_pairs = [&]() -> std::string {
        for (const FailingSegment& f : w.failing) {
            auto a = index_of(f.from), b = index_of(f.to);
            if (!a || !b) return "failing segment does not join witness points";
            if (!pairs.insert({std::min(*a, *b), std::max(*a, *b)}).second) return "failing pair listed twice";
        }
        return {};
    };

    switch (w.property) {
        case Property::pm: {
            if (w.m < 2 || w.points.size() != w.m) return "P_m witness needs exactly m points";
            if (auto why = collect_pairs(); !why.empty()) return why;
            if (pairs.size() != pair_count(w.m)) return "P_m witness must list every pair";
            return {};
        }
        case Property::right3:
        case Property::double_right3: {
            if (w.points.size() != 3) return "right-triple witness needs 3 points";
            auto rt = is_right_triple(w.points[0], w.points[1], w.points[2]);
            if (!rt) return "points do not form a right triple";
            if (w.apex && *w.apex != rt->apex) return "apex does not match the right angle";
            if (auto why = collect_pairs(); !why.empty()) return why;
            std::size_t need = w.property == Property::right3 ? 3 : 2;
            if (pairs.size() < need) return "not enough failing sides";
            return {};
        }
        case Property::starshaped: {
            if (!w.center || !in_set(*w.center)) return "starshaped witness needs a center in the set";
            if (w.m < 2 || w.points.size() != w.m - 1) return "starshaped witness needs m - 1 points";
            if (w.failing.size() != w.points.size()) return "every point needs a failing segment";
            for (std::size_t i = 0; i < w.points.size(); ++i) {
                if (w.points[i] == *w.center) return "witness point equals the center";
                const FailingSegment& f = w.failing[i];
                if (!(f.from == *w.center) || !(f.to == w.points[i])) return "failing segment does not join the center";
            }
            return {};
        }
    }
    return "unknown property";
}

Witness restrict_pm_witness(const Witness& w, const std::vector<std::size_t>& keep) {
    Witness out;
    out.property = Property::pm;
    out.m = keep.size();
    for (auto i : keep) out.points.push_back(w.points.at(i));
    auto kept = [&](const Point& p) { return std::find(out.points.begin(), out.points.end(), p) != out.points.end(); };
    for (const FailingSegment& f : w.failing)
        if (kept(f.from) && kept(f.to)) out.failing.push_back(f);
    return out;
}

// ---- probes ----

std::vector<Point> structured_probes(const GeoSet& s, const SearchBudget& b) {
    if (!b.structured_probes) return {};
    std::vector<Point> cand;
    collect_structured(s, cand);
    std::vector<Point> out;
    std::set<Point> seen;
    for (Point& p : cand) {
        if (out.size() >= b.max_structured) break;
        if (seen.count(p) || !member(s, p)) continue;
        seen.insert(p);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Point> generate_probes(const GeoSet& s, const SearchBudget& b) {
    b.validate();
    std::vector<Point> out = structured_probes(s, b);
    Sampler sampler(s);
    std::mt19937_64 rng(b.seed);
    for (std::size_t i = 0; i < b.max_probe_points; ++i)
        if (auto p = sampler.draw(rng)) out.push_back(std::move(*p));
    sort_unique(out);
    return out;
}

SearchContext::SearchContext(const GeoSet& s, const SearchBudget& b)
    : set_(&s), budget_(b), probes_(generate_probes(s, b)), memo_(probes_.size() * probes_.size(), 0) {
    std::vector<Point> st = structured_probes(s, b);
    sort_unique(st);
    for (std::size_t i = 0; i < probes_.size(); ++i)
        if (std::binary_search(st.begin(), st.end(), probes_[i])) structured_.push_back(i);
}

bool SearchContext::bad(std::size_t i, std::size_t j) {
    if (i == j) return false;
    std::size_t a = std::min(i, j), b = std::max(i, j);
    std::uint8_t& slot = memo_[a * probes_.size() + b];
    if (slot == 0) slot = segment_in_set(*set_, probes_[a], probes_[b]).inside ? 2 : 1;
    return slot == 1;
}

Witness make_pm_witness(const GeoSet& s, std::vector<Point> points) {
    sort_unique(points);
    Witness w;
    w.property = Property::pm;
    w.m = points.size();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            SegmentTest t = segment_in_set(s, points[i], points[j]);
            if (t.inside) throw InternalError("P_m witness pair has its segment inside the set");
            w.failing.push_back({points[i], points[j], *t.evidence});
        }
    w.points = std::move(points);
    return w;
}

// ---- P_m search ----

namespace {

class CliqueSearch {
public:
    CliqueSearch(SearchContext& ctx, std::size_t m) : ctx_(ctx), m_(m) {}

    std::optional<std::vector<std::size_t>> run() {
        std::vector<std::size_t> all(ctx_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        std::vector<std::size_t> clique;
        if (expand(clique, all)) return clique;
        return std::nullopt;
    }

    std::size_t tuples() const { return tuples_; }
    bool budget_hit() const { return budget_hit_; }

private:
    // Greedy coloring; returns vertices ordered by color with 1-based colors.
    void color_sort(const std::vector<std::size_t>& p, std::vector<std::size_t>& order, std::vector<std::size_t>& colors) {
        std::vector<std::vector<std::size_t>> classes;
        for (std::size_t v : p) {
            bool placed = false;
            for (auto& cls : classes) {
                bool conflict = false;
                for (std::size_t w : cls)
                    if (ctx_.bad(v, w)) {
                        conflict = true;
                        break;
                    }
                if (!conflict) {
                    cls.push_back(v);
                    placed = true;
                    break;
                }
            }
            if (!placed) classes.push_back({v});
        }
        order.clear();
        colors.clear();
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (std::size_t v : classes[c]) {
                order.push_back(v);
                colors.push_back(c + 1);
            }
    }

    bool expand(std::vector<std::size_t>& clique, const std::vector<std::size_t>& p) {
        std::vector<std::size_t> order, colors;
        color_sort(p, order, colors);
        for (std::size_t k = order.size(); k-- > 0;) {
            if (clique.size() + colors[k] < m_) return false;
            if (++tuples_ > ctx_.budget().max_tuples) {
                budget_hit_ = true;
                return false;
            }
            std::size_t v = order[k];
            clique.push_back(v);
            if (clique.size() == m_) return true;
            std::vector<std::size_t> next;
            for (std::size_t i = 0; i < k; ++i)
                if (ctx_.bad(v, order[i])) next.push_back(order[i]);
            if (clique.size() + next.size() >= m_ && expand(clique, next)) return true;
            if (budget_hit_) return false;
            clique.pop_back();
        }
        return false;
    }

    SearchContext& ctx_;
    std::size_t m_;
    std::size_t tuples_ = 0;
    bool budget_hit_ = false;
};

}  // namespace

Verdict search_pm(SearchContext& ctx, std::size_t m) {
    if (m < 2) throw PreconditionError("P_m needs m >= 2");
    if (ctx.size() < m) return unrefuted(ctx, 0, true);
    if (m == 2) {
        std::size_t tuples = 0;
        for (std::size_t i = 0; i < ctx.size(); ++i)
            for (std::size_t j = i + 1; j < ctx.size(); ++j) {
                if (++tuples > ctx.budget().max_tuples) return unrefuted(ctx, tuples - 1, false);
                if (ctx.bad(i, j)) return Refuted{make_pm_witness(ctx.set(), {ctx.probes()[i], ctx.probes()[j]})};
            }
        return unrefuted(ctx, tuples, true);
    }
    CliqueSearch search(ctx, m);
    if (auto clique = search.run()) {
        std::vector<Point> pts;
        for (auto i : *clique) pts.push_back(ctx.probes()[i]);
        return Refuted{make_pm_witness(ctx.set(), std::move(pts))};
    }
    return unrefuted(ctx, std::min(search.tuples(), ctx.budget().max_tuples), !search.budget_hit());
}

Verdict search_pm(const GeoSet& s, std::size_t m, const SearchBudget& b) {
    SearchContext ctx(s, b);
    return search_pm(ctx, m);
}

Verdict check_pm(const GeoSet& s, std::size_t m, const SearchBudget& b) {
    if (m < 2) throw PreconditionError("P_m needs m >= 2");
    if (const auto* c = s.get<SegmentComplex>()) {
        if (c->kind == ComplexKind::simple_arc) {
            if (arc_pm_exact(s, m)) return HoldsExact{"arc-characterization"};
            Witness w = arc_midpoint_witness(s, m);
            if (verify_witness(s, w)) return Refuted{std::move(w)};
        } else if (c->kind == ComplexKind::simple_closed_curve) {
            if (closed_curve_pm_exact(s, m - 1)) return HoldsExact{"closed-curve-characterization"};
            Witness w = closed_curve_midpoint_witness(s);
            if (w.m > m) {
                std::vector<std::size_t> keep(m);
                for (std::size_t i = 0; i < m; ++i) keep[i] = i;
                w = restrict_pm_witness(w, keep);
            }
            if (verify_witness(s, w)) return Refuted{std::move(w)};
        }
    }
    if (const auto* t = s.get<TilingSubset>(); t && m >= 3 && tiling_3pc_exact(*t)) return HoldsExact{"tiling-characterization"};
    if (is_plain_convex_region(s)) return HoldsExact{"convex-region"};
    if (const auto* d = s.get<PolytopeDiff>(); d && m >= d->A.size() + 1) return HoldsExact{"polytope-facet-bound"};
    return search_pm(s, m, b);
}

// ---- right triples ----

namespace {

// Points z of S with (z - x) . (y - x) = 0, built from where the hyperplane
// through x orthogonal to xy meets S's features.
void third_points(const GeoSet& s, const Point& x, const Point& y, std::vector<Point>& out) {
    Point w = y - x;
    auto from_segments = [&](const std::vector<Segment>& segs) {
        for (const Segment& sg : segs) {
            auto hits = hyperplane_hits(w, x, sg);
            if (hits.size() == 2) {
                out.push_back(sg.a);
                out.push_back(sg.b);
                out.push_back(midpoint(sg.a, sg.b));
            } else if (hits.size() == 1) {
                out.push_back(lerp(sg.a, sg.b, hits[0]));
            }
        }
    };
    std::visit(overloaded{
                   [&](const PolygonalRegion& r) {
                       Point dir = perp(w);
                       std::vector<Rational> ts{Rational(0)};
                       auto hit_segment = [&](const Point& a, const Point& b) {
                           Rational sa = cross(dir, a - x), sb = cross(dir, b - x);
                           if (sgn(sa) == 0) ts.push_back(dot(a - x, dir) / norm2(dir));
                           if (sgn(sb) == 0) ts.push_back(dot(b - x, dir) / norm2(dir));
                           if (sgn(sa) * sgn(sb) < 0) ts.push_back(cross(a - x, b - a) / cross(dir, b - a));
                       };
                       for (const Segment& e : region_edges(r)) hit_segment(e.a, e.b);
                       for (const Segment& e : r.excluded_segments) hit_segment(e.a, e.b);
                       for (const Point& p : r.excluded_points)
                           if (sgn(cross(dir, p - x)) == 0) ts.push_back(dot(p - x, dir) / norm2(dir));
                       for (const Point& p : r.isolated_points)
                           if (sgn(dot(p - x, w)) == 0) out.push_back(p);
                       std::sort(ts.begin(), ts.end());
                       ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
                       for (std::size_t k = 0; k < ts.size(); ++k) {
                           out.push_back(x + ts[k] * dir);
                           if (k + 1 < ts.size()) {
                               const Rational& a = ts[k];
                               const Rational& b = ts[k + 1];
                               out.push_back(x + ((a + b) / 2) * dir);
                               out.push_back(x + ((3 * a + b) / 4) * dir);
                               out.push_back(x + ((a + 3 * b) / 4) * dir);
                           }
                       }
                   },
                   [&](const SegmentComplex& c) { from_segments(c.segments); },
                   [&](const TilingSubset& t) { from_segments(tiling_segments(t)); },
                   [&](const PolytopeDiff&) {},
                   [&](const CompositeSet& c) {
                       for (const GeoSet& g : c.parts) third_points(g, x, y, out);
                   },
               },
               s.value);
}

Witness triple_witness(const GeoSet& s, Property prop, const RightTriple& rt) {
    Witness w;
    w.property = prop;
    w.m = 3;
    w.points = {rt.x, rt.y, rt.z};
    w.apex = rt.apex;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            SegmentTest t = segment_in_set(s, rt.at(i), rt.at(j));
            if (!t.inside) w.failing.push_back({rt.at(i), rt.at(j), *t.evidence});
        }
    return w;
}

}  // namespace

Verdict search_right_triples(SearchContext& ctx, int failing) {
    const GeoSet& s = ctx.set();
    const auto& pr = ctx.probes();
    std::size_t n = pr.size();
    Property prop = failing >= 3 ? Property::right3 : Property::double_right3;
    std::size_t tuples = 0;
    const std::size_t cap = ctx.budget().max_tuples;

    // triples of structured probes
    const auto& st = ctx.structured();
    for (std::size_t a = 0; a < st.size(); ++a)
        for (std::size_t b = a + 1; b < st.size(); ++b) {
            std::size_t i = st[a], j = st[b];
            bool ij = ctx.bad(i, j);
            if (failing >= 3 && !ij) continue;
            for (std::size_t c = b + 1; c < st.size(); ++c) {
                std::size_t k = st[c];
                auto rt = is_right_triple(pr[i], pr[j], pr[k]);
                if (!rt) continue;
                if (++tuples > cap) return unrefuted(ctx, cap, false);
                int count = ij + ctx.bad(i, k);
                if (count + 1 < failing) continue;
                count += ctx.bad(j, k);
                if (count >= failing) return Refuted{triple_witness(s, prop, *rt)};
            }
        }

    // constructed third points on the hyperplane through the apex
    std::vector<Point> cand;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            bool xy = ctx.bad(i, j);
            if (failing >= 3 && !xy) continue;
            const Point& x = pr[i];
            const Point& y = pr[j];
            cand.clear();
            third_points(s, x, y, cand);
            sort_unique(cand);
            for (const Point& z : cand) {
                if (z == x || z == y || !member(s, z)) continue;
                auto rt = is_right_triple(x, y, z);
                if (!rt) continue;
                if (++tuples > cap) return unrefuted(ctx, cap, false);
                int count = xy;
                count += !segment_in_set(s, x, z).inside;
                if (count + 1 < failing) continue;
                count += !segment_in_set(s, y, z).inside;
                if (count >= failing) return Refuted{triple_witness(s, prop, *rt)};
            }
        }
    return unrefuted(ctx, tuples, false);
}

Verdict check_right3(const GeoSet& s, const SearchBudget& b) {
    SearchContext ctx(s, b);
    if (ctx.size() == 0) throw PreconditionError("check_right3 on a set without probes");
    return search_right_triples(ctx, 3);
}

Verdict check_double_right3(const GeoSet& s, const SearchBudget& b) {
    if (s.is<PolygonalRegion>()) {
        if (auto exact = region_double_right3_exact(s); exact && *exact) {
            const auto& r = *s.get<PolygonalRegion>();
            return HoldsExact{r.outer.all_excluded() ? (r.excluded_points.empty() ? "open-convex" : "open-convex-minus-point")
                                                     : "closed-convex"};
        }
        if (auto w = double_right3_witness_at_reflex(s)) return Refuted{*w};
    }
    SearchContext ctx(s, b);
    if (ctx.size() == 0) throw PreconditionError("check_double_right3 on a set without probes");
    return search_right_triples(ctx, 2);
}

// ---- starshapedness ----

namespace {

Verdict kernel_search(const GeoSet& s, const Point& x, std::size_t m, const std::vector<Point>& probes,
                      const SearchBudget& b) {
    Witness w;
    w.property = Property::starshaped;
    w.m = m;
    w.center = x;
    std::size_t tuples = 0;
    for (const Point& p : probes) {
        if (p == x) continue;
        if (++tuples > b.max_tuples) return Unrefuted{b, probes.size(), b.max_tuples, false};
        SegmentTest t = segment_in_set(s, x, p);
        if (t.inside) continue;
        w.points.push_back(p);
        w.failing.push_back({x, p, *t.evidence});
        if (w.points.size() == m - 1) return Refuted{std::move(w)};
    }
    return Unrefuted{b, probes.size(), tuples, false};
}

}  // namespace

Verdict kernel_m_membership(const GeoSet& s, const Point& x, std::size_t m, const SearchBudget& b) {
    if (m < 2) throw PreconditionError("ker_m needs m >= 2");
    if (!member(s, x)) throw PreconditionError("kernel candidate " + to_string(x) + " is not in the set");
    if (is_plain_convex_region(s)) return HoldsExact{"convex-region"};
    return kernel_search(s, x, m, generate_probes(s, b), b);
}

StarshapedReport check_starshaped_m(const GeoSet& s, std::size_t m, const SearchBudget& b) {
    if (m < 2) throw PreconditionError("m-starshapedness needs m >= 2");
    std::vector<Point> probes = generate_probes(s, b);
    std::vector<Point> candidates = structured_probes(s, b);
    if (candidates.empty()) candidates = probes;
    sort_unique(candidates);
    StarshapedReport report;
    if (candidates.empty()) throw PreconditionError("no candidate centers for an empty probe set");
    if (is_plain_convex_region(s)) {
        report.candidate = candidates.front();
        report.verdict = HoldsExact{"convex-region"};
        return report;
    }
    for (const Point& x : candidates) {
        Verdict v = kernel_search(s, x, m, probes, b);
        if (!is_refuted(v)) {
            report.candidate = x;
            report.verdict = std::move(v);
            return report;
        }
        report.candidate_refutations.push_back(witness_of(v));
    }
    report.no_candidate_survived = true;
    report.verdict = Refuted{report.candidate_refutations.front()};
    return report;
}

// ---- kernels and positions ----

std::vector<Point> polygon_kernel_exact(const GeoSet& s) {
    const auto* r = s.get<PolygonalRegion>();
    if (!r || !r->holes.empty() || !r->excluded_points.empty() || !r->excluded_segments.empty() ||
        !r->isolated_points.empty() || !r->outer.all_included())
        throw PreconditionError("polygon_kernel_exact needs a closed simple polygon without holes or exclusions");
    std::vector<Point> ring = r->outer.vertices;
    if (sgn(signed_area2(ring)) < 0) std::reverse(ring.begin(), ring.end());
    Box box = bounding_box(ring);
    std::vector<Point> poly{box.lo, Point{box.hi[0], box.lo[1]}, box.hi, Point{box.lo[0], box.hi[1]}};
    std::size_t n = ring.size();
    for (std::size_t e = 0; e < n && !poly.empty(); ++e) {
        const Point& a = ring[e];
        const Point& b = ring[(e + 1) % n];
        Point u = b - a;
        std::vector<Point> out;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point& p = poly[i];
            const Point& q = poly[(i + 1) % poly.size()];
            Rational sp = cross(u, p - a), sq = cross(u, q - a);
            if (sgn(sp) >= 0) out.push_back(p);
            if ((sgn(sp) > 0 && sgn(sq) < 0) || (sgn(sp) < 0 && sgn(sq) > 0)) out.push_back(lerp(p, q, sp / (sp - sq)));
        }
        std::vector<Point> dedup;
        for (const Point& p : out)
            if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
        while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
        poly = std::move(dedup);
    }
    if (poly.size() <= 2) {
        sort_unique(poly);
        return poly;
    }
    if (sgn(signed_area2(poly)) == 0) {
        sort_unique(poly);
        return {poly.front(), poly.back()};
    }
    std::vector<Point> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& prev = poly[(i + poly.size() - 1) % poly.size()];
        const Point& next = poly[(i + 1) % poly.size()];
        if (sgn(cross(poly[i] - prev, next - poly[i])) != 0) out.push_back(poly[i]);
    }
    return out;
}

bool in_convex_ring(const std::vector<Point>& ring, const Point& p) {
    if (ring.empty()) return false;
    if (ring.size() == 1) return ring[0] == p;
    if (ring.size() == 2) return point_on_segment(p, {ring[0], ring[1]});
    return locate(ring, p).where != Location::outside;
}

namespace {

// Barycentric membership of p in the simplex spanned by pts (affinely
// independent), by exact normal equations.
bool in_simplex(const std::vector<Point>& pts, const Point& p) {
    const Point& t0 = pts.front();
    std::size_t k = pts.size() - 1;
    if (k == 0) return p == t0;
    std::vector<Point> cols;
    for (std::size_t i = 1; i <= k; ++i) cols.push_back(pts[i] - t0);
    Point rhs = p - t0;
    Matrix g(k, std::vector<Rational>(k));
    std::vector<Rational> h(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) g[i][j] = dot(cols[i], cols[j]);
        h[i] = dot(cols[i], rhs);
    }
    auto mu = solve(g, h);
    if (!mu) return false;
    Point back = Point::zero(p.dim());
    Rational sum = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (sgn((*mu)[i]) < 0) return false;
        back = back + (*mu)[i] * cols[i];
        sum += (*mu)[i];
    }
    return back == rhs && sum <= 1;
}

bool affinely_independent(const std::vector<Point>& pts) {
    Matrix m;
    for (std::size_t i = 1; i < pts.size(); ++i) m.push_back((pts[i] - pts[0]).coords());
    return rank(m) == pts.size() - 1;
}

void subsets(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) return f(idx);
        for (std::size_t i = start; i + (k - depth) <= n; ++i) {
            idx[depth] = i;
            if (rec(i + 1, depth + 1)) return true;
        }
        return false;
    };
    rec(0, 0);
}

}  // namespace

PositionReport position_tests(const std::vector<Point>& points) {
    PositionReport rep;
    if (points.empty()) return rep;
    std::size_t d = points.front().dim();
    for (const Point& p : points)
        if (p.dim() != d) throw DimensionError("position_tests: mixed dimensions");
    std::size_t n = points.size();
    std::size_t k = std::min(n, d + 1);
    subsets(n, k, [&](const std::vector<std::size_t>& idx) {
        std::vector<Point> pts;
        for (auto i : idx) pts.push_back(points[i]);
        if (!affinely_independent(pts)) {
            rep.general_position = false;
            return true;
        }
        return false;
    });
    for (std::size_t i = 0; i < n && rep.convex_position; ++i) {
        std::vector<Point> others;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) others.push_back(points[j]);
        for (std::size_t size = 1; size <= std::min(others.size(), d + 1) && rep.convex_position; ++size)
            subsets(others.size(), size, [&](const std::vector<std::size_t>& idx) {
                std::vector<Point> pts;
                for (auto j : idx) pts.push_back(others[j]);
                if (!affinely_independent(pts)) return false;
                if (in_simplex(pts, points[i])) {
                    rep.convex_position = false;
                    return true;
                }
                return false;
            });
    }
    return rep;
}

}  // namespace pcl
