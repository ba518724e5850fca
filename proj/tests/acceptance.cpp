// Runs every theorem campaign at its pinned seed, count and budget and prints
// one PASS/FAIL line per acceptance criterion.  Exits 1 if any criterion fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "pcl/campaigns.hpp"

using namespace pcl;

namespace {

// Pinned tolerances.
constexpr double kSuiteSeconds = 60.0;   // wall-clock ceiling per suite
constexpr std::size_t kMaxFailures = 0;  // counterexamples tolerated per suite

using Histogram = std::map<std::string, std::size_t>;

std::size_t count(const Histogram& h, const std::string& key) {
    auto it = h.find(key);
    return it == h.end() ? 0 : it->second;
}

std::size_t prefixed(const Histogram& h, const std::string& prefix) {
    std::size_t n = 0;
    for (const auto& [k, v] : h)
        if (k.rfind(prefix, 0) == 0) n += v;
    return n;
}

struct Criterion {
    int number;
    std::string theorem;
    std::size_t instances;  // required instance count
    // Extra coverage condition on the histogram; empty string means satisfied.
    std::function<std::string(const Histogram&, const std::map<std::string, CampaignReport>&)> coverage;
};

std::string need(bool ok, const std::string& what) { return ok ? "" : what; }

std::vector<Criterion> criteria() {
    return {
        {1, "arc_pm", 500,
         [](const Histogram& h, auto&) {
             for (int k = 2; k <= 8; ++k)
                 if (count(h, "k=" + std::to_string(k)) == 0) return "no arcs with " + std::to_string(k) + " segments";
             return std::string();
         }},
        {2, "closed_curve_pm", 200,
         [](const Histogram& h, auto&) { return need(count(h, "d=2") > 0 && count(h, "d=3") > 0, "missing a dimension"); }},
        {3, "union_pm", 200, [](const Histogram& h, auto&) { return need(count(h, "unrefuted") == 200, "not all unrefuted"); }},
        {4, "puncture_bounds", 200,
         [](const Histogram& h, auto&) {
             for (const char* k : {"point/closed", "point/open", "segment/closed", "segment/open"})
                 if (count(h, k) == 0) return std::string("no ") + k + " instances";
             return std::string();
         }},
        {5, "polytope_diff_pm", 100,
         [](const Histogram& h, auto&) { return need(count(h, "d=2") > 0 && count(h, "d=3") > 0, "missing a dimension"); }},
        {6, "segment_bipartition", 100,
         [](const Histogram& h, auto&) {
             return need(count(h, "d=1") > 0 && count(h, "d=2") > 0 && count(h, "d=3") > 0, "missing a dimension");
         }},
        {7, "closed_curve_no_right3", 300, [](const Histogram&, auto&) { return std::string(); }},
        {8, "double_right3_closed", 200,
         [](const Histogram& h, auto&) {
             return need(count(h, "convex") > 0 && count(h, "non-convex/refuted") > 0, "one side of the equivalence untested");
         }},
        {9, "double_right3_open", 200,
         [](const Histogram& h, auto&) {
             return need(count(h, "exact-true/unrefuted") > 0 && count(h, "exact-false/refuted") > 0,
                         "one side of the decision untested");
         }},
        {10, "double_right3_inheritance", 200,
         [](const Histogram& h, const std::map<std::string, CampaignReport>& done) {
             auto it = done.find("double_right3_open");
             if (it == done.end()) return std::string("open-set suite did not run");
             return need(count(h, "closure and interior pass") == count(it->second.histogram, "exact-true/unrefuted"),
                         "inherited instances differ from the exact-true open instances");
         }},
        {11, "nonconvexity_points", 100, [](const Histogram& h, auto&) { return need(prefixed(h, "|B_S|=") == 100, "instances without B_S"); }},
        {12, "holed_not_p3", 100, [](const Histogram&, auto&) { return std::string(); }},
        {13, "tiling_p3", 49074, [](const Histogram&, auto&) { return std::string(); }},
        {14, "arc_staircase", 300,
         [](const Histogram& h, auto&) {
             return need(count(h, "axis staircase") == 100 && count(h, "rotated staircase") == 100 && prefixed(h, "zigzag/") == 100,
                         "family split is not 100/100/100");
         }},
    };
}

}  // namespace

int main() {
    std::map<std::string, CampaignReport> done;
    int failed = 0;
    for (const Criterion& c : criteria()) {
        const Theorem& t = find_theorem(c.theorem);
        CampaignReport r = run_campaign(t, CampaignOptions{});
        done[c.theorem] = r;
        std::string why;
        if (r.failures.size() > kMaxFailures)
            why = std::to_string(r.failures.size()) + " counterexamples, first: " + r.failures.front().failure.value_or("");
        else if (r.instances != c.instances)
            why = "ran " + std::to_string(r.instances) + " instances, need " + std::to_string(c.instances);
        else if (r.wall_seconds > kSuiteSeconds)
            why = "took " + std::to_string(r.wall_seconds) + " s";
        else
            why = c.coverage(r.histogram, done);
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.1f s", r.wall_seconds);
        std::cout << (why.empty() ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.theorem << " (" << r.instances
                  << " instances, seed " << r.seed << ", " << timing << ")";
        if (!why.empty()) std::cout << " - " << why;
        std::cout << std::endl;
        failed += !why.empty();
    }
    std::cout << (failed ? "FAIL" : "PASS") << " acceptance: " << 14 - failed << "/14 criteria" << std::endl;
    return failed ? 1 : 0;
}
