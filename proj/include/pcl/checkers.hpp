#ifndef PCL_CHECKERS_HPP
#define PCL_CHECKERS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcl/set_model.hpp"

namespace pcl {

// Bounded, seeded probe policy.  Identical budgets and inputs give identical
// probe streams.
struct SearchBudget {
    std::uint64_t seed = 0;
    std::size_t max_probe_points = 512;  // random probes
    std::size_t max_structured = 64;     // cap on structured probes
    std::size_t max_tuples = 200000;     // search nodes before giving up
    bool structured_probes = true;

    /// Multiplies every count by k.
    SearchBudget scaled(std::size_t k) const;
    void validate() const;
    bool operator==(const SearchBudget&) const = default;
};

enum class Property { pm, right3, double_right3, starshaped };

std::string property_name(Property p);
Property parse_property_name(const std::string& s);

struct FailingSegment {
    Point from;
    Point to;
    Point evidence;  // a point of [from, to] outside the set
};

// A self-contained counterexample.  For P_m: m points and all C(m,2) failing
// pairs.  For right3 / double_right3: a right triple (apex index set) with all
// three, or at least two, failing sides.  For starshaped: the center plus m-1
// points each seen badly from it.
struct Witness {
    Property property = Property::pm;
    std::size_t m = 0;
    std::vector<Point> points;
    std::optional<Point> center;
    std::optional<int> apex;
    std::vector<FailingSegment> failing;
};

struct HoldsExact {
    std::string reason;
};

struct Unrefuted {
    SearchBudget budget;
    std::size_t probes = 0;
    std::size_t tuples = 0;
    bool exhausted = false;  // the whole probe space was searched
};

struct Refuted {
    Witness witness;
};

using Verdict = std::variant<HoldsExact, Unrefuted, Refuted>;

std::string verdict_kind(const Verdict& v);
inline bool is_refuted(const Verdict& v) { return std::holds_alternative<Refuted>(v); }
inline bool is_holds_exact(const Verdict& v) { return std::holds_alternative<HoldsExact>(v); }
inline bool is_unrefuted(const Verdict& v) { return std::holds_alternative<Unrefuted>(v); }
const Witness& witness_of(const Verdict& v);

/// Empty string when the witness re-verifies against S, else the reason it
/// does not.  Uses only member and point_on_segment.
std::string witness_problem(const GeoSet& s, const Witness& w);
inline bool verify_witness(const GeoSet& s, const Witness& w) { return witness_problem(s, w).empty(); }

/// The P_k witness formed by the chosen points of a P_m witness.
Witness restrict_pm_witness(const Witness& w, const std::vector<std::size_t>& keep);

/// Structured probes in priority order, already filtered by membership and
/// capped at budget.max_structured.
std::vector<Point> structured_probes(const GeoSet& s, const SearchBudget& b);
/// Structured plus random probes, deduplicated and sorted lexicographically.
std::vector<Point> generate_probes(const GeoSet& s, const SearchBudget& b);

// Probes plus a lazily filled table of which probe pairs span a segment
// outside S.  Reusable across m for the same set and budget.  Not thread-safe.
class SearchContext {
public:
    SearchContext(const GeoSet& s, const SearchBudget& b);

    const GeoSet& set() const { return *set_; }
    const SearchBudget& budget() const { return budget_; }
    const std::vector<Point>& probes() const { return probes_; }
    /// Indices of the probes that came from the structured set.
    const std::vector<std::size_t>& structured() const { return structured_; }
    std::size_t size() const { return probes_.size(); }
    /// True when the segment between probes i and j leaves S.
    bool bad(std::size_t i, std::size_t j);

private:
    const GeoSet* set_;
    SearchBudget budget_;
    std::vector<Point> probes_;
    std::vector<std::size_t> structured_;
    std::vector<std::uint8_t> memo_;
};

Witness make_pm_witness(const GeoSet& s, std::vector<Point> points);

/// Pure search for m probes with all pairwise segments leaving S.
Verdict search_pm(SearchContext& ctx, std::size_t m);
Verdict search_pm(const GeoSet& s, std::size_t m, const SearchBudget& b);
/// Exact dispatch where a characterization applies, search otherwise.
Verdict check_pm(const GeoSet& s, std::size_t m, const SearchBudget& b);

/// Right-triple search needing at least `failing` failing sides (3 or 2).
Verdict search_right_triples(SearchContext& ctx, int failing);
Verdict check_right3(const GeoSet& s, const SearchBudget& b);
Verdict check_double_right3(const GeoSet& s, const SearchBudget& b);

Verdict kernel_m_membership(const GeoSet& s, const Point& x, std::size_t m, const SearchBudget& b);

struct StarshapedReport {
    std::optional<Point> candidate;  // first surviving center
    Verdict verdict;
    std::vector<Witness> candidate_refutations;
    bool no_candidate_survived = false;
};

StarshapedReport check_starshaped_m(const GeoSet& s, std::size_t m, const SearchBudget& b);

/// Kernel of a closed simple polygon as a counterclockwise ring.  A point or
/// segment kernel comes back as one or two points; empty when no kernel.
std::vector<Point> polygon_kernel_exact(const GeoSet& s);
bool in_convex_ring(const std::vector<Point>& ring, const Point& p);

struct PositionReport {
    bool general_position = true;
    bool convex_position = true;
};

PositionReport position_tests(const std::vector<Point>& points);

}  // namespace pcl

#endif
