// finorder: hierarchies, verification suites and product-obstruction searches.

#include "finorder/hierarchy.hpp"
#include "finorder/maps.hpp"
#include "finorder/order.hpp"
#include "finorder/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace finorder;
using nlohmann::json;

namespace {

struct Options {
    suites::RunConfig run;
    std::string format = "json";
    std::string out;
    bool timing = false;
    std::optional<std::size_t> level;
    std::string suite;
    std::string poset;
    int all_posets = 0;
};

int emit(const std::string& text, const Options& o)
{
    if (o.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write " << o.out << "\n";
        return suites::exit_violations;
    }
    f << text;
    return 0;
}

std::string text_summary(const json& j)
{
    std::string out = j.at("command").get<std::string>() + ": " + j.at("status").get<std::string>() + "\n";
    const auto& facts = j.at("facts");
    if (facts.contains("level_sizes")) {
        const auto& sizes = facts.at("level_sizes");
        for (std::size_t a = 0; a < sizes.size(); ++a)
            out += "  |S_" + std::to_string(a) + "| = " + sizes[a].dump() + "  new: " +
                   facts.at("fresh_sizes")[a].dump() + "\n";
    }
    for (const auto& [name, entry] : j.at("checks").items())
        out += "  " + name + ": " + entry.at("checked").dump() + " checked, " + entry.at("violations").dump() +
               " violations\n";
    if (facts.contains("refuted"))
        out += "  refuted " + facts.at("refuted").dump() + " of " + facts.at("candidate_count").dump() + "\n";
    return out;
}

int finish(suites::Report r, const Options& o, std::chrono::steady_clock::time_point start)
{
    if (o.timing)
        r.json["elapsed_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text = o.format == "text" ? text_summary(r.json) : r.json.dump(2) + "\n";
    if (int rc = emit(text, o))
        return rc;
    if (!o.out.empty())
        std::cerr << text_summary(r.json);
    return r.exit_code;
}

void add_common(CLI::App* app, Options& o)
{
    app->add_option("--depth", o.run.depth, "Number of stages above the base")->check(CLI::NonNegativeNumber);
    app->add_option("--budget", o.run.budget, "Largest allowed level size")->check(CLI::PositiveNumber);
    app->add_option("--seed", o.run.seed, "Seed for sampled checks");
    app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));
    app->add_option("--out", o.out, "Write output to this file instead of stdout");
    app->add_option("--base", o.run.base, "thm33 | thm33-concrete | antichain3 | file:PATH");
    app->add_option("--max-size", o.run.max_size, "Largest poset or preorder size")->check(CLI::Range(1, 5));
    app->add_option("--states", o.run.states, "Largest frame size")->check(CLI::Range(1, 4));
    app->add_option("--samples", o.run.samples, "Number of seeded random samples");
    app->add_option("--node-budget", o.run.node_budget, "Search-node budget for map enumeration")
        ->check(CLI::PositiveNumber);
    app->add_flag("--timing", o.timing, "Add elapsed_seconds to the JSON report");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite order theory: antichain hierarchies, open maps, Heyting and modal duality"};
    app.require_subcommand(1);
    Options o;

    auto* hier = app.add_subcommand("hierarchy", "Build, summarize or export a hierarchy of antichains");
    hier->require_subcommand(1);
    auto* h_build = hier->add_subcommand("build", "Build stages 0..depth and report level sizes");
    auto* h_stats = hier->add_subcommand("stats", "Level sizes and growth per stage");
    auto* h_export = hier->add_subcommand("export", "DOT of one level, or JSON of the whole hierarchy");
    for (auto* sub : {h_build, h_stats, h_export})
        add_common(sub, o);
    h_export->add_option("--level", o.level, "Level to draw (default: depth)");

    auto* verify = app.add_subcommand("verify", "Run an exhaustive verification suite");
    verify->add_option("suite", o.suite, "Suite name")->required()->check(CLI::IsMember(suites::suite_names()));
    add_common(verify, o);

    auto* obstruct = app.add_subcommand("obstruct", "Search for product-obstruction certificates");
    add_common(obstruct, o);
    auto* poset_opt = obstruct->add_option("--poset", o.poset, "product2x2 | singleton | sierpinski | file:PATH");
    obstruct->add_option("--all-posets", o.all_posets, "Every poset with at most N points")
        ->check(CLI::Range(1, 5))
        ->excludes(poset_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : suites::exit_violations;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (h_build->parsed())
            return finish(suites::hierarchy_build(o.run), o, start);
        if (h_stats->parsed())
            return finish(suites::hierarchy_stats(o.run), o, start);
        if (h_export->parsed()) {
            const bool as_json = o.format == "json";
            if (o.format == "text")
                throw std::invalid_argument("export supports --format json or dot");
            return emit(suites::hierarchy_export(o.run, o.level.value_or(o.run.depth), as_json), o);
        }
        if (verify->parsed())
            return finish(suites::verify(o.suite, o.run), o, start);
        if (obstruct->parsed()) {
            if (o.poset.empty() && o.all_posets == 0)
                throw std::invalid_argument("obstruct needs --poset or --all-posets");
            const auto posets = o.all_posets > 0 ? suites::posets_up_to(o.all_posets)
                                                 : std::vector<FinitePreorder>{suites::named_poset(o.poset)};
            return finish(suites::obstruct(posets, o.run), o, start);
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return suites::exit_budget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return suites::exit_violations;
    }
    return suites::exit_violations;
}
