#ifndef PCL_CAMPAIGNS_HPP
#define PCL_CAMPAIGNS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcl/checkers.hpp"
#include "pcl/constructions.hpp"
#include "pcl/json_io.hpp"

namespace pcl {

// Outcome of one campaign instance.  `outcome` is the histogram key; a set
// failure message marks the instance as a counterexample to the theorem.
struct InstanceResult {
    std::size_t index = 0;
    std::uint64_t instance_seed = 0;
    std::string outcome;
    std::optional<std::string> failure;
    std::optional<GenSpec> spec;
    std::optional<GeoSet> set;
    std::optional<Witness> witness;
    std::optional<GeoSet> shrunk;
};

struct CampaignReport {
    std::string theorem;
    std::string statement;
    std::size_t instances = 0;
    std::map<std::string, std::size_t> histogram;
    std::vector<InstanceResult> failures;
    double wall_seconds = 0;
    std::uint64_t seed = 0;
    SearchBudget budget;

    bool passed() const { return failures.empty(); }
};

// A theorem turned into an executable property over generated instances.
struct Theorem {
    std::string id;
    int criterion = 0;  // row of the acceptance matrix
    std::string statement;
    std::size_t default_count = 0;
    std::uint64_t default_seed = 0;
    SearchBudget budget;     // pinned per theorem
    bool exhaustive = false; // default_count enumerates the whole space
    std::function<InstanceResult(std::size_t index, std::uint64_t instance_seed, const SearchBudget& b)> run;
    // Re-runs the property on a modified set; a message means it still fails.
    std::function<std::optional<std::string>(const GeoSet& s, const SearchBudget& b)> recheck;
};

const std::vector<Theorem>& theorems();
const Theorem& find_theorem(const std::string& id);
/// Theorems whose id matches a shell glob pattern, in registry order.
std::vector<const Theorem*> select_theorems(const std::string& pattern);

std::uint64_t instance_seed(std::uint64_t campaign_seed, std::size_t index);

struct CampaignOptions {
    std::optional<std::size_t> count;  // default_count when unset
    std::optional<std::uint64_t> seed; // default_seed when unset
    std::optional<SearchBudget> budget;
    std::size_t jobs = 1;
    bool shrink = true;
};

/// Runs one instance exactly as a campaign would.
InstanceResult run_instance(const Theorem& t, std::uint64_t campaign_seed, std::size_t index, const SearchBudget& b);
CampaignReport run_campaign(const Theorem& t, const CampaignOptions& opt);

/// Greedy simplification (vertex dropping, denominator halving) of a set
/// while `still_fails` holds.  Every accepted step is re-verified.
GeoSet shrink_set(const GeoSet& s, const std::function<bool(const GeoSet&)>& still_fails, std::size_t max_steps = 200);

Json report_to_json(const CampaignReport& r);
Json suite_to_json(const std::vector<CampaignReport>& reports);

}  // namespace pcl

#endif
