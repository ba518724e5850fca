#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pcl/campaigns.hpp"
#include "pcl/characterizations.hpp"
#include "pcl/json_io.hpp"
#include "pcl/svg.hpp"

namespace {

using namespace pcl;

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

struct BudgetFlags {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> probes;
    std::optional<std::size_t> structured;
    std::optional<std::size_t> tuples;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "probe seed (falls back to PCL_SEED)");
        cmd->add_option("--budget-probes", probes, "random probe points");
        cmd->add_option("--budget-structured", structured, "structured probe cap");
        cmd->add_option("--budget-tuples", tuples, "search nodes before giving up");
    }

    static std::optional<std::uint64_t> env_seed() {
        const char* v = std::getenv("PCL_SEED");
        if (!v || !*v) return std::nullopt;
        try {
            return std::stoull(v);
        } catch (const std::exception&) {
            throw FormatError(std::string("PCL_SEED is not an unsigned integer: ") + v);
        }
    }

    std::optional<std::uint64_t> resolved_seed() const { return seed ? seed : env_seed(); }

    SearchBudget apply(SearchBudget b) const {
        if (auto s = resolved_seed()) b.seed = *s;
        if (probes) b.max_probe_points = *probes;
        if (structured) b.max_structured = *structured;
        if (tuples) b.max_tuples = *tuples;
        b.validate();
        return b;
    }
};

std::size_t parse_count(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw PreconditionError(what + " needs an integer, got '" + text + "'");
    return static_cast<std::size_t>(v);
}

// "name:arg" or "name"
std::pair<std::string, std::optional<std::size_t>> split_arg(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) return {s, std::nullopt};
    return {s.substr(0, colon), parse_count(s.substr(colon + 1), s.substr(0, colon))};
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_gen(const std::string& spec_file, const std::optional<std::string>& family, const std::vector<std::string>& params,
            const BudgetFlags& flags, const std::optional<std::string>& out) {
    GenSpec g;
    if (!spec_file.empty()) {
        g = genspec_from_json(read_json_file(spec_file));
    } else if (family) {
        g.family = parse_family(*family);
        for (const std::string& p : params) {
            auto eq = p.find('=');
            if (eq == std::string::npos) throw PreconditionError("--param needs key=value, got '" + p + "'");
            g.params[p.substr(0, eq)] = std::stol(p.substr(eq + 1));
        }
    } else {
        throw PreconditionError("gen needs a spec file or --family");
    }
    if (auto s = flags.resolved_seed()) g.seed = *s;
    Instance inst = generate(g);
    Json j = set_to_json(inst.set);
    std::string text = j.dump(2) + "\n";
    if (out)
        write_text_file(*out, text);
    else
        std::cout << text;
    Json tags = Json::array();
    for (const auto& t : inst.truth.tags) tags.push_back(t);
    std::cerr << "generated " << family_name(g.family) << " seed " << g.seed << " tags " << tags.dump() << "\n";
    return kTrue;
}

int cmd_check(const std::string& set_file, const std::string& prop, const BudgetFlags& flags) {
    GeoSet s = set_from_json(read_json_file(set_file));
    SearchBudget b = flags.apply(SearchBudget{});
    auto [name, arg] = split_arg(prop);
    Verdict v;
    Json extra;
    if (name == "pm") {
        if (!arg || *arg < 2) throw PreconditionError("pm needs pm:<m> with m >= 2");
        v = check_pm(s, *arg, b);
    } else if (name == "right3" && !arg) {
        v = check_right3(s, b);
    } else if (name == "double_right3" && !arg) {
        v = check_double_right3(s, b);
    } else if (name == "starshaped") {
        if (!arg || *arg < 2) throw PreconditionError("starshaped needs starshaped:<m> with m >= 2");
        StarshapedReport rep = check_starshaped_m(s, *arg, b);
        v = rep.verdict;
        if (rep.candidate) extra["center"] = point_to_json(*rep.candidate);
        extra["candidates_refuted"] = rep.candidate_refutations.size();
    } else {
        throw PreconditionError("unknown property '" + prop + "' (pm:<m>, right3, double_right3, starshaped:<m>)");
    }
    Json j = verdict_to_json(v);
    j["property"] = prop;
    for (auto& [k, x] : extra.items()) j[k] = x;
    print(j);
    return is_refuted(v) ? kFalse : kTrue;
}

int cmd_exact(const std::string& set_file, const std::string& decision) {
    GeoSet s = set_from_json(read_json_file(set_file));
    auto [name, arg] = split_arg(decision);
    std::optional<bool> result;
    std::string reason;
    try {
        if (name == "arc_pm") {
            if (!arg) throw PreconditionError("arc_pm needs arc_pm:<m>");
            result = arc_pm_exact(s, *arg);
        } else if (name == "closed_pm") {
            // closed_pm:<m> decides P_m, like arc_pm:<m>
            if (!arg || *arg < 2) throw PreconditionError("closed_pm needs closed_pm:<m> with m >= 2");
            result = closed_curve_pm_exact(s, *arg - 1);
        } else if (name == "tiling_3pc" && !arg) {
            const auto* t = s.get<TilingSubset>();
            if (!t) throw PreconditionError("tiling_3pc needs a tiling_subset");
            result = tiling_3pc_exact(*t);
        } else if (name == "double_right3_region" && !arg) {
            result = region_double_right3_exact(s);
            if (!result) reason = "neither an open region nor a closed region with interior";
        } else {
            std::cerr << "error: unknown decision '" << decision << "' (arc_pm:<m>, closed_pm:<m>, tiling_3pc, double_right3_region)\n";
            return kUsage;
        }
    } catch (const PreconditionError& e) {
        reason = e.what();
    }
    Json j;
    j["schema"] = kSchema;
    j["decision"] = decision;
    if (result) {
        j["result"] = *result;
    } else {
        j["result"] = nullptr;
        j["reason"] = reason;
    }
    print(j);
    if (!result) return kUsage;
    return *result ? kTrue : kFalse;
}

CampaignOptions campaign_options(const BudgetFlags& flags, std::size_t jobs, bool no_shrink) {
    CampaignOptions opt;
    opt.seed = flags.resolved_seed();
    opt.jobs = jobs;
    opt.shrink = !no_shrink;
    return opt;
}

std::optional<SearchBudget> override_budget(const BudgetFlags& flags, const SearchBudget& pinned) {
    if (!flags.probes && !flags.structured && !flags.tuples) return std::nullopt;
    BudgetFlags f = flags;
    f.seed.reset();
    SearchBudget b = pinned;
    if (f.probes) b.max_probe_points = *f.probes;
    if (f.structured) b.max_structured = *f.structured;
    if (f.tuples) b.max_tuples = *f.tuples;
    b.validate();
    return b;
}

int cmd_fuzz(const std::string& id, std::size_t count, const BudgetFlags& flags, std::size_t jobs, bool no_shrink,
             const std::optional<std::string>& out) {
    const Theorem* t = nullptr;
    for (const Theorem& x : theorems())
        if (x.id == id) t = &x;
    if (!t) {
        std::string known;
        for (const Theorem& x : theorems()) known += " " + x.id;
        std::cerr << "error: unknown theorem id '" << id << "'; known:" << known << "\n";
        return kUsage;
    }
    CampaignOptions opt = campaign_options(flags, jobs, no_shrink);
    opt.count = count;
    opt.budget = override_budget(flags, t->budget);
    CampaignReport rep = run_campaign(*t, opt);
    std::string text = report_to_json(rep).dump(2) + "\n";
    if (out)
        write_text_file(*out, text);
    else
        std::cout << text;
    std::cerr << t->id << ": " << rep.instances << " instances, " << rep.failures.size() << " failures\n";
    return rep.passed() ? kTrue : kFalse;
}

int cmd_suite(const std::string& pattern, const BudgetFlags& flags, std::size_t jobs, bool no_shrink,
              const std::optional<std::string>& out) {
    auto selected = select_theorems(pattern);
    if (selected.empty()) std::cerr << "warning: no theorem matches '" << pattern << "'\n";
    std::vector<CampaignReport> reports;
    for (const Theorem* t : selected) {
        CampaignOptions opt = campaign_options(flags, jobs, no_shrink);
        opt.budget = override_budget(flags, t->budget);
        reports.push_back(run_campaign(*t, opt));
        const CampaignReport& r = reports.back();
        std::cerr << (r.passed() ? "PASS " : "FAIL ") << t->id << " (" << r.instances << " instances, " << r.wall_seconds
                  << " s)\n";
    }
    Json j = suite_to_json(reports);
    std::string text = j.dump(2) + "\n";
    if (out)
        write_text_file(*out, text);
    else
        std::cout << text;
    return j["passed"].get<bool>() ? kTrue : kFalse;
}

int cmd_render(std::vector<std::string> files, std::optional<std::string> out) {
    // a trailing .svg positional names the output file
    if (!out && files.size() > 1 && files.back().ends_with(".svg")) {
        out = files.back();
        files.pop_back();
    }
    if (files.empty() || files.size() > 2) throw PreconditionError("render needs a set file and an optional witness file");
    GeoSet s = set_from_json(read_json_file(files[0]));
    std::optional<Witness> w;
    if (files.size() == 2) {
        Json j = read_json_file(files[1]);
        // accept a bare witness or a verdict carrying one
        w = witness_from_json(j.contains("witness") ? j["witness"] : j);
    }
    std::string svg = render_svg(s, w);
    if (out)
        write_text_file(*out, svg);
    else
        std::cout << svg;
    return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"m-point convexity checker"};
    app.require_subcommand(1);

    BudgetFlags flags;
    std::optional<std::string> out;
    std::size_t jobs = 1;
    bool no_shrink = false;

    auto* gen = app.add_subcommand("gen", "generate a set from a GenSpec");
    std::string spec_file;
    std::optional<std::string> family;
    std::vector<std::string> params;
    gen->add_option("spec", spec_file, "GenSpec JSON file");
    gen->add_option("--family", family, "family id");
    gen->add_option("--param", params, "size parameter key=value")->take_all();
    gen->add_option("--seed", flags.seed, "generator seed (falls back to PCL_SEED)");
    gen->add_option("--out", out, "output file");

    auto* check = app.add_subcommand("check", "check a property by exact dispatch or bounded search");
    std::string set_file, prop;
    check->add_option("set", set_file, "set JSON file")->required();
    check->add_option("property", prop, "pm:<m> | right3 | double_right3 | starshaped:<m>")->required();
    flags.attach(check);

    auto* exact = app.add_subcommand("exact", "run an exact decision procedure");
    std::string decision;
    exact->add_option("set", set_file, "set JSON file")->required();
    exact->add_option("decision", decision, "arc_pm:<m> | closed_pm:<m> | tiling_3pc | double_right3_region")->required();

    auto* fuzz = app.add_subcommand("fuzz", "run a theorem campaign");
    std::string theorem;
    std::string count_text;
    fuzz->add_option("theorem", theorem, "theorem id")->required();
    fuzz->add_option("count", count_text, "instances")->required();
    flags.attach(fuzz);
    fuzz->add_option("--jobs", jobs, "parallel workers");
    fuzz->add_flag("--no-shrink", no_shrink, "report failures without shrinking");
    fuzz->add_option("--out", out, "report file");

    auto* render = app.add_subcommand("render", "draw a planar set and an optional witness as SVG");
    std::vector<std::string> render_files;
    render->add_option("files", render_files, "set file, optional witness file, optional output .svg")->required()->expected(1, 3);
    render->add_option("--out", out, "SVG file");

    auto* suite = app.add_subcommand("suite", "run every theorem campaign whose id matches a pattern");
    std::string pattern = "*";
    suite->add_option("pattern", pattern, "shell glob over theorem ids");
    suite->add_option("--seed", flags.seed, "campaign seed override (falls back to PCL_SEED)");
    suite->add_option("--jobs", jobs, "parallel workers");
    suite->add_flag("--no-shrink", no_shrink, "report failures without shrinking");
    suite->add_option("--out", out, "report file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen) return cmd_gen(spec_file, family, params, flags, out);
        if (*check) return cmd_check(set_file, prop, flags);
        if (*exact) return cmd_exact(set_file, decision);
        if (*fuzz) return cmd_fuzz(theorem, parse_count(count_text, "count"), flags, jobs, no_shrink, out);
        if (*render) return cmd_render(render_files, out);
        if (*suite) return cmd_suite(pattern, flags, jobs, no_shrink, out);
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
