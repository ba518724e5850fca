#ifndef PCL_CONSTRUCTIONS_HPP
#define PCL_CONSTRUCTIONS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pcl/set_model.hpp"

namespace pcl {

enum class Family {
    convex_polygon,
    lshape,
    spiral,
    punctured_convex,
    slit_convex,
    holed_region,
    staircase_arc,
    zigzag_arc,
    closed_polyline,
    tiling_subset,
    polytope_diff,
    union_pair,
    region_plus_isolated_point,
    dented_polygon,
};

std::string family_name(Family f);
Family parse_family(const std::string& s);
std::vector<Family> all_families();

// Family plus integer size parameters.  Unset parameters take the family
// defaults listed in generate().
struct GenSpec {
    Family family = Family::convex_polygon;
    std::map<std::string, long> params;
    std::uint64_t seed = 0;

    long param(const std::string& key, long fallback) const;
    bool operator==(const GenSpec&) const = default;
};

// What the family guarantees.  pm_holds = k means P_k holds; pm_fails = k
// means P_k fails.
struct GroundTruth {
    std::optional<std::size_t> pm_holds;
    std::optional<std::size_t> pm_fails;
    std::vector<std::string> tags;
};

struct Instance {
    GenSpec spec;
    GeoSet set;
    GroundTruth truth;
};

// Platform-stable random source: mt19937_64 output reduced by modulo.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform-ish integer in [lo, hi].
    long range(long lo, long hi);
    bool coin() { return range(0, 1) == 1; }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Parameters by family (defaults in brackets):
///   convex_polygon      n [6] vertices, open [0], scale [8]
///   lshape              variant [0] (0 L, 1 T, 2 plus), open [0]
///   spiral              scale [1]
///   punctured_convex    n [6], open [0]
///   slit_convex         n [6], open [0]
///   holed_region        n [8], holes [1]
///   staircase_arc       edges [3], rotated [0], subdivide [0]
///   zigzag_arc          edges [3], subdivide [0]
///   closed_polyline     n [6] vertices, dim [2]
///   tiling_subset       tiling [0] (0 square, 1 triangular, 2 trihexagonal), pieces [2]
///   polytope_diff       dim [2], facets [4]
///   union_pair          m [3], n [2]
///   region_plus_isolated_point  n [6]
///   dented_polygon      n [6]
Instance generate(const GenSpec& spec);

/// Membership is member(a, .) or member(b, .).  Two complexes merge into one
/// complex; a region with a complex, or two disjoint regions, become a
/// composite.
GeoSet union_instance(const GeoSet& a, const GeoSet& b);
/// A region plus isolated points outside it.
GeoSet union_with_points(const GeoSet& region, const std::vector<Point>& points);

/// Q = [-4, 4]^d minus a random polytope with exactly m facets, all tangent
/// to a common ball, scaled into the interior of Q.
PolytopeDiff polytope_diff_instance(std::size_t d, std::size_t m_facets, std::uint64_t seed);

// Building blocks shared with the suites.
std::vector<Point> random_convex_ring(Rng& rng, std::size_t n, long scale);
std::vector<Point> random_simple_polygon(Rng& rng, std::size_t n);
std::vector<Point> random_closed_polyline(Rng& rng, std::size_t n, std::size_t dim);
std::vector<Point> staircase_path(Rng& rng, std::size_t edges, bool rotated);
std::vector<Point> zigzag_path(Rng& rng, std::size_t edges);
/// Random interior point of a ring from random_convex_ring(scale), on a 1/64 grid.
Point random_inner_point(Rng& rng, long scale);

}  // namespace pcl

#endif
