#ifndef PCL_CHARACTERIZATIONS_HPP
#define PCL_CHARACTERIZATIONS_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pcl/checkers.hpp"

namespace pcl {

struct MaxSegmentDecomposition {
    std::vector<Segment> segments;  // maximal collinear runs in path order
    std::size_t vertex_count = 0;   // breakpoints (arc: runs + 1, closed curve: runs)
};

MaxSegmentDecomposition arc_max_segment_decomposition(const GeoSet& arc);
/// Decides P_m for a simple arc: at most m - 1 maximal segments.
bool arc_pm_exact(const GeoSet& arc, std::size_t m);

MaxSegmentDecomposition closed_curve_decomposition(const GeoSet& curve);
/// Decides P_{n+1} for a simple closed polyline: at most n vertices.
bool closed_curve_pm_exact(const GeoSet& curve, std::size_t n);
/// P_m witness made of the midpoints of the m maximal segments.
Witness closed_curve_midpoint_witness(const GeoSet& curve);
/// The same construction for an arc: midpoints of its maximal segments.
Witness arc_midpoint_witness(const GeoSet& arc, std::size_t m);

/// P_3 for a tiling subset: at most two pieces, each inside one tiling line.
bool tiling_3pc_exact(const TilingSubset& t);

/// Double right-3-point property for an open region (convex, or convex minus
/// one point) or for a closed region with interior (convex).  nullopt when
/// neither case applies.
std::optional<bool> region_double_right3_exact(const GeoSet& s);
/// Right triple near a reflex corner with two sides leaving S: x and y on
/// either side of the corner, z just off y perpendicular to xy.
std::optional<Witness> double_right3_witness_at_reflex(const GeoSet& s);

struct StaircaseReport {
    std::optional<Direction> direction;
    bool right_triples_present = false;
    std::vector<Point> subpath;  // staircase with respect to direction
};

StaircaseReport find_staircase_direction(const GeoSet& arc);
bool adjacent_right_triples_staircase(const GeoSet& arc, const Point& a, const Point& b, const Point& c,
                                      const Point& d);

/// Right triple with all points on the curve.  Throws InternalError if none
/// is found, which cannot happen for a simple closed polyline.
RightTriple find_right_triple_on_closed_curve(const GeoSet& curve);
/// Right triple on the curve with all three sides leaving it.
Witness refute_right3_on_closed_curve(const GeoSet& curve);

/// P_3 witness across a hole of a polygonal continuum.
Witness p3_witness_across_hole(const GeoSet& s);

// normal . x  REL  offset
struct LinearCondition {
    enum class Rel { lt, le, eq, ge, gt };
    Point normal;
    Rational offset;
    Rel rel = Rel::le;

    bool holds(const Point& x) const;
};

// Lexicographic sign chain: the first nonzero value of normals[k] . (x - base)
// must have sign `sign`; if all vanish, `terminal` decides.
struct LexChain {
    std::vector<Point> normals;
    Point base;
    int sign = 1;
    LinearCondition terminal;

    bool holds(const Point& x) const;
};

struct ConvexCell {
    std::vector<LinearCondition> conjuncts;
    std::optional<LexChain> chain;

    bool contains(const Point& x) const;
};

/// Two disjoint convex cells covering R^d minus the closed segment s.
std::pair<ConvexCell, ConvexCell> bipartition_segment_complement(std::size_t d, const Segment& s);

/// Cells Q cut by the open outer side of each halfspace of A; they cover Q \ A.
std::vector<ConvexCell> halfspace_cover(const PolytopeDiff& p);

}  // namespace pcl

#endif
