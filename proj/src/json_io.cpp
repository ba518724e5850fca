#include "pcl/json_io.hpp"

#include <fstream>
#include <sstream>

namespace pcl {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw FormatError(msg); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) fail(std::string("expected an object with key '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing key '") + key + "'");
    return *it;
}

const Json& array_field(const Json& j, const char* key) {
    const Json& a = field(j, key);
    if (!a.is_array()) fail(std::string("'") + key + "' must be an array");
    return a;
}

const Json* optional_array(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) return nullptr;
    if (!it->is_array()) fail(std::string("'") + key + "' must be an array");
    return &*it;
}

Json points_to_json(const std::vector<Point>& pts) {
    Json a = Json::array();
    for (const Point& p : pts) a.push_back(point_to_json(p));
    return a;
}

std::vector<Point> points_from_json(const Json& a) {
    if (!a.is_array()) fail("expected an array of points");
    std::vector<Point> out;
    for (const Json& p : a) out.push_back(point_from_json(p));
    return out;
}

Json segment_to_json(const Segment& s) { return Json::array({point_to_json(s.a), point_to_json(s.b)}); }

Segment segment_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) fail("a segment is a pair of points");
    return {point_from_json(j[0]), point_from_json(j[1])};
}

Json ring_to_json(const Ring& r) {
    Json j;
    j["vertices"] = points_to_json(r.vertices);
    if (r.all_included()) {
        j["boundary"] = "closed";
    } else if (r.all_excluded()) {
        j["boundary"] = "open";
    } else {
        j["edge_included"] = r.edge_included;
        j["vertex_included"] = r.vertex_included;
    }
    return j;
}

std::vector<bool> flags_from_json(const Json& j, const char* key, std::size_t n) {
    const Json& a = array_field(j, key);
    if (a.size() != n) fail(std::string("'") + key + "' must have one flag per vertex");
    std::vector<bool> out;
    for (const Json& b : a) {
        if (!b.is_boolean()) fail(std::string("'") + key + "' must hold booleans");
        out.push_back(b.get<bool>());
    }
    return out;
}

Ring ring_from_json(const Json& j) {
    std::vector<Point> v = points_from_json(field(j, "vertices"));
    auto it = j.find("boundary");
    if (it != j.end()) {
        if (*it == "closed") return Ring::with_boundary(std::move(v), true);
        if (*it == "open") return Ring::with_boundary(std::move(v), false);
        fail("'boundary' must be \"closed\" or \"open\"");
    }
    Ring r;
    r.edge_included = flags_from_json(j, "edge_included", v.size());
    r.vertex_included = flags_from_json(j, "vertex_included", v.size());
    r.vertices = std::move(v);
    return r;
}

Json halfspaces_to_json(const std::vector<Halfspace>& hs) {
    Json a = Json::array();
    for (const Halfspace& h : hs) a.push_back({{"normal", point_to_json(h.normal)}, {"offset", rational_to_json(h.offset)}});
    return a;
}

std::vector<Halfspace> halfspaces_from_json(const Json& a) {
    if (!a.is_array()) fail("expected an array of halfspaces");
    std::vector<Halfspace> out;
    for (const Json& h : a) out.push_back({point_from_json(field(h, "normal")), rational_from_json(field(h, "offset"))});
    return out;
}

const char* kind_name(ComplexKind k) {
    switch (k) {
        case ComplexKind::simple_arc: return "simple_arc";
        case ComplexKind::simple_closed_curve: return "simple_closed_curve";
        case ComplexKind::general: return "general";
    }
    return "general";
}

const char* tiling_name(TilingFamily f) {
    switch (f) {
        case TilingFamily::square: return "square";
        case TilingFamily::triangular: return "triangular";
        case TilingFamily::trihexagonal: return "trihexagonal";
    }
    return "square";
}

TilingFamily parse_tiling(const std::string& s) {
    if (s == "square") return TilingFamily::square;
    if (s == "triangular") return TilingFamily::triangular;
    if (s == "trihexagonal") return TilingFamily::trihexagonal;
    fail("unknown tiling family '" + s + "'");
}

void check_schema(const Json& j) {
    auto it = j.find("schema");
    if (it == j.end()) fail("missing \"schema\": \"pcl/1\"");
    if (*it != kSchema) fail("unsupported schema " + it->dump());
}

std::size_t count_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        fail(std::string("'") + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

}  // namespace

Json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail("a rational is a string \"n/d\" or an integer, got " + j.dump());
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        fail(e.what());
    }
}

Json point_to_json(const Point& p) {
    Json a = Json::array();
    for (const Rational& c : p.coords()) a.push_back(rational_to_json(c));
    return a;
}

Point point_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) fail("a point is a non-empty array of rationals, got " + j.dump());
    std::vector<Rational> c;
    for (const Json& x : j) c.push_back(rational_from_json(x));
    return Point(std::move(c));
}

Json set_to_json(const GeoSet& s, bool top_level) {
    Json j;
    if (top_level) j["schema"] = kSchema;
    if (const auto* r = s.get<PolygonalRegion>()) {
        j["class"] = "polygonal_region";
        j["outer"] = ring_to_json(r->outer);
        Json holes = Json::array();
        for (const Ring& h : r->holes) holes.push_back(ring_to_json(h));
        j["holes"] = holes;
        j["excluded_points"] = points_to_json(r->excluded_points);
        Json segs = Json::array();
        for (const Segment& sg : r->excluded_segments) segs.push_back(segment_to_json(sg));
        j["excluded_segments"] = segs;
        j["isolated_points"] = points_to_json(r->isolated_points);
    } else if (const auto* c = s.get<SegmentComplex>()) {
        j["class"] = "segment_complex";
        j["kind"] = kind_name(c->kind);
        if (c->kind == ComplexKind::general) {
            Json segs = Json::array();
            for (const Segment& sg : c->segments) segs.push_back(segment_to_json(sg));
            j["segments"] = segs;
        } else {
            j["path"] = points_to_json(c->path);
        }
    } else if (const auto* p = s.get<PolytopeDiff>()) {
        j["class"] = "polytope_diff";
        j["dim"] = p->dim;
        j["Q"] = halfspaces_to_json(p->Q);
        j["A"] = halfspaces_to_json(p->A);
    } else if (const auto* t = s.get<TilingSubset>()) {
        j["class"] = "tiling_subset";
        j["family"] = tiling_name(t->family);
        Json pieces = Json::array();
        for (const TilingPiece& piece : t->pieces) {
            Json iv = Json::array();
            for (const auto& [lo, hi] : piece.intervals) iv.push_back({rational_to_json(lo), rational_to_json(hi)});
            pieces.push_back({{"direction", piece.line.direction}, {"offset", piece.line.offset}, {"intervals", iv}});
        }
        j["pieces"] = pieces;
    } else if (const auto* u = s.get<CompositeSet>()) {
        j["class"] = "union";
        Json parts = Json::array();
        for (const GeoSet& part : u->parts) parts.push_back(set_to_json(part, false));
        j["parts"] = parts;
    }
    return j;
}

GeoSet set_from_json(const Json& j, bool top_level) {
    if (!j.is_object()) fail("a set is a JSON object");
    if (top_level) check_schema(j);
    const Json& cls = field(j, "class");
    if (!cls.is_string()) fail("'class' must be a string");
    const std::string name = cls.get<std::string>();
    GeoSet out;
    if (name == "polygonal_region") {
        PolygonalRegion r;
        r.outer = ring_from_json(field(j, "outer"));
        if (const Json* h = optional_array(j, "holes"))
            for (const Json& ring : *h) r.holes.push_back(ring_from_json(ring));
        if (const Json* a = optional_array(j, "excluded_points")) r.excluded_points = points_from_json(*a);
        if (const Json* a = optional_array(j, "excluded_segments"))
            for (const Json& sg : *a) r.excluded_segments.push_back(segment_from_json(sg));
        if (const Json* a = optional_array(j, "isolated_points")) r.isolated_points = points_from_json(*a);
        out = r;
    } else if (name == "segment_complex") {
        std::string kind = field(j, "kind").get<std::string>();
        if (kind == "simple_arc") {
            out = make_arc(points_from_json(field(j, "path")));
        } else if (kind == "simple_closed_curve") {
            out = make_closed_curve(points_from_json(field(j, "path")));
        } else if (kind == "general") {
            std::vector<Segment> segs;
            for (const Json& sg : array_field(j, "segments")) segs.push_back(segment_from_json(sg));
            out = make_complex(std::move(segs));
        } else {
            fail("unknown complex kind '" + kind + "'");
        }
    } else if (name == "polytope_diff") {
        out = make_polytope_diff(count_field(j, "dim"), halfspaces_from_json(field(j, "Q")), halfspaces_from_json(field(j, "A")));
    } else if (name == "tiling_subset") {
        TilingSubset t;
        t.family = parse_tiling(field(j, "family").get<std::string>());
        for (const Json& piece : array_field(j, "pieces")) {
            TilingPiece p;
            p.line.direction = field(piece, "direction").get<int>();
            p.line.offset = field(piece, "offset").get<long>();
            for (const Json& iv : array_field(piece, "intervals")) {
                if (!iv.is_array() || iv.size() != 2) fail("an interval is a pair of rationals");
                p.intervals.emplace_back(rational_from_json(iv[0]), rational_from_json(iv[1]));
            }
            t.pieces.push_back(std::move(p));
        }
        out = t;
    } else if (name == "union") {
        CompositeSet c;
        for (const Json& part : array_field(j, "parts")) c.parts.push_back(set_from_json(part, false));
        out = c;
    } else {
        fail("unknown set class '" + name + "'");
    }
    validate(out);
    return out;
}

Json witness_to_json(const Witness& w) {
    Json j;
    j["schema"] = kSchema;
    j["property"] = property_name(w.property);
    j["m"] = w.m;
    j["points"] = points_to_json(w.points);
    if (w.center) j["center"] = point_to_json(*w.center);
    if (w.apex) j["apex"] = *w.apex;
    Json f = Json::array();
    for (const FailingSegment& s : w.failing)
        f.push_back({{"from", point_to_json(s.from)}, {"to", point_to_json(s.to)}, {"evidence", point_to_json(s.evidence)}});
    j["failing"] = f;
    return j;
}

Witness witness_from_json(const Json& j) {
    check_schema(j);
    Witness w;
    try {
        w.property = parse_property_name(field(j, "property").get<std::string>());
    } catch (const PreconditionError& e) {
        fail(e.what());
    }
    w.m = count_field(j, "m");
    w.points = points_from_json(field(j, "points"));
    if (j.contains("center")) w.center = point_from_json(j["center"]);
    if (j.contains("apex")) w.apex = j["apex"].get<int>();
    for (const Json& f : array_field(j, "failing"))
        w.failing.push_back({point_from_json(field(f, "from")), point_from_json(field(f, "to")), point_from_json(field(f, "evidence"))});
    return w;
}

Json budget_to_json(const SearchBudget& b) {
    return {{"seed", b.seed},
            {"max_probe_points", b.max_probe_points},
            {"max_structured", b.max_structured},
            {"max_tuples", b.max_tuples},
            {"structured_probes", b.structured_probes}};
}

SearchBudget budget_from_json(const Json& j) {
    SearchBudget b;
    b.seed = field(j, "seed").get<std::uint64_t>();
    b.max_probe_points = count_field(j, "max_probe_points");
    b.max_structured = count_field(j, "max_structured");
    b.max_tuples = count_field(j, "max_tuples");
    b.structured_probes = field(j, "structured_probes").get<bool>();
    b.validate();
    return b;
}

Json verdict_to_json(const Verdict& v) {
    Json j;
    j["schema"] = kSchema;
    j["verdict"] = verdict_kind(v);
    if (const auto* h = std::get_if<HoldsExact>(&v)) {
        j["reason"] = h->reason;
    } else if (const auto* u = std::get_if<Unrefuted>(&v)) {
        j["budget"] = budget_to_json(u->budget);
        j["probes"] = u->probes;
        j["tuples"] = u->tuples;
        j["exhausted"] = u->exhausted;
    } else {
        j["witness"] = witness_to_json(std::get<Refuted>(v).witness);
    }
    return j;
}

Json genspec_to_json(const GenSpec& g) {
    Json params = Json::object();
    for (const auto& [k, v] : g.params) params[k] = v;
    return {{"schema", kSchema}, {"family", family_name(g.family)}, {"params", params}, {"seed", g.seed}};
}

GenSpec genspec_from_json(const Json& j) {
    GenSpec g;
    try {
        g.family = parse_family(field(j, "family").get<std::string>());
    } catch (const PreconditionError& e) {
        fail(e.what());
    }
    if (j.contains("params")) {
        if (!j["params"].is_object()) fail("'params' must be an object");
        for (const auto& [k, v] : j["params"].items()) {
            if (!v.is_number_integer()) fail("parameter '" + k + "' must be an integer");
            g.params[k] = v.get<long>();
        }
    }
    if (j.contains("seed")) g.seed = j["seed"].get<std::uint64_t>();
    return g;
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

}  // namespace pcl
