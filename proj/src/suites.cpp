#include "finorder/suites.hpp"

#include "finorder/heyting.hpp"
#include "finorder/kripke.hpp"
#include "finorder/maps.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace finorder::suites {

using nlohmann::json;
using hsets::Id;

namespace {

json config_json(const RunConfig& c)
{
    return {{"depth", c.depth},   {"budget", c.budget},     {"seed", c.seed},
            {"base", c.base},     {"max_size", c.max_size}, {"states", c.states},
            {"samples", c.samples}, {"node_budget", c.node_budget}};
}

std::string table_string(std::span<const int> f)
{
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(f[i]);
    }
    return out;
}

/// Counts checks and violations under named headings; keeps the first few
/// witnesses per report.
class Tally {
public:
    void check(const std::string& name, bool ok, const std::function<json()>& witness = {})
    {
        auto& entry = checks_[name];
        if (entry.is_null())
            entry = {{"checked", 0}, {"violations", 0}};
        entry["checked"] = entry["checked"].get<std::uint64_t>() + 1;
        if (ok)
            return;
        entry["violations"] = entry["violations"].get<std::uint64_t>() + 1;
        ++violations_;
        if (witnesses_.size() < kMaxWitnesses)
            witnesses_.push_back({{"check", name}, {"witness", witness ? witness() : json(nullptr)}});
    }

    void budget_hit() { budget_ = true; }
    json& facts() { return facts_; }

    Report finish(const std::string& command, const RunConfig& c) const
    {
        Report r;
        json cfg = config_json(c);
        r.json = {{"schema", kSchemaVersion},
                  {"tool", kToolName},
                  {"version", kToolVersion},
                  {"command", command},
                  {"config", cfg},
                  {"config_hash", config_hash(cfg)},
                  {"checks", checks_.is_null() ? json::object() : checks_},
                  {"facts", facts_.is_null() ? json::object() : facts_},
                  {"violation_count", violations_},
                  {"violations", witnesses_}};
        if (violations_ > 0) {
            r.json["status"] = "violations";
            r.exit_code = exit_violations;
        } else if (budget_) {
            r.json["status"] = "budget_exhausted";
            r.exit_code = exit_budget;
        } else {
            r.json["status"] = "ok";
        }
        return r;
    }

private:
    json checks_;
    json facts_;
    json witnesses_ = json::array();
    std::uint64_t violations_ = 0;
    bool budget_ = false;
};

std::vector<FinitePreorder> preorders_up_to(int n, bool up_to_iso)
{
    std::vector<FinitePreorder> out;
    for (int k = 1; k <= n; ++k)
        for (auto& p : enumerate_preorders(k, up_to_iso))
            out.push_back(std::move(p));
    return out;
}

template <class F>
void for_each_function(int n, int m, F&& visit)
{
    if (m == 0 && n > 0)
        return;
    MapTable f(n, 0);
    while (true) {
        visit(f);
        int pos = 0;
        while (pos < n && ++f[pos] == m)
            f[pos++] = 0;
        if (pos == n)
            return;
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---- stage properties ----

void stage_checks(Tally& t, const std::string& tag, const hsets::Universe& u, const hierarchy::Hierarchy& h)
{
    const auto report = hierarchy::verify_stage_properties(u, h);
    for (const auto& s : report.stages) {
        t.check(tag + ".increasing", s.increasing);
        t.check(tag + ".downset", s.downset);
        t.check(tag + ".antichain", s.antichain);
        t.check(tag + ".fresh", s.fresh);
        t.check(tag + ".members", s.members);
    }
    for (const auto& v : report.violations)
        t.check(tag + "." + v.check + ".witness", false, [&] {
            return json{{"stage", v.stage}, {"ids", v.witness}};
        });
}

bool corrupted_fails(const hsets::Universe& u, hierarchy::Hierarchy h, const std::function<void(hierarchy::Hierarchy&)>& corrupt)
{
    corrupt(h);
    return !hierarchy::verify_stage_properties(u, h).ok();
}

void run_lemma23(Tally& t, const RunConfig& c)
{
    auto four = hsets::four_point_base(hsets::BaseMode::abstract);
    auto triple = hsets::antichain3_base();
    const auto h4 = hierarchy::build(four.universe, four.base, c.depth, c.budget);
    const auto h3 = hierarchy::build(triple.universe, triple.base, c.depth, c.budget);
    if (!h4.complete() || !h3.complete()) {
        t.budget_hit();
        return;
    }
    stage_checks(t, "thm33", four.universe, h4);
    stage_checks(t, "antichain3", triple.universe, h3);
    t.facts()["thm33_sizes"] = json::array();
    t.facts()["antichain3_sizes"] = json::array();
    for (const auto& l : h4.levels)
        t.facts()["thm33_sizes"].push_back(l.size());
    for (const auto& l : h3.levels)
        t.facts()["antichain3_sizes"].push_back(l.size());

    auto& u = triple.universe;
    const std::vector<Id> m3 = triple.base;
    for (std::size_t skip = 0; skip < 3; ++skip) {
        std::vector<Id> m;
        for (std::size_t i = 0; i < 3; ++i)
            if (i != skip)
                m.push_back(m3[i]);
        const auto r = hierarchy::verify_restriction(u, m, m3, c.depth, c.budget);
        if (r.status != hierarchy::BuildStatus::complete) {
            t.budget_hit();
            continue;
        }
        for (std::size_t a = 0; a < r.stage_equal.size(); ++a)
            t.check("restriction", r.stage_equal[a], [&] { return json{{"m", m}, {"stage", a}}; });
    }

    // {{m1, m2}, m3} lives in S_1(M3).
    const std::vector<Id> inside = hsets::sorted_unique({u.intern({m3[0], m3[1]}), m3[2]});
    const auto cr = hierarchy::verify_containment(u, inside, m3, c.depth, c.budget);
    if (cr.status != hierarchy::BuildStatus::complete && !cr.offset)
        t.budget_hit();
    else
        t.check("containment", cr.ok(), [] { return json("no offset within depth"); });
    t.facts()["containment_offset"] = cr.offset ? json(*cr.offset) : json(nullptr);
    t.facts()["containment_base_stage"] = cr.base_stage ? json(*cr.base_stage) : json(nullptr);

    if (c.depth >= 2) {
        const Id top_triple = u.intern(m3);
        t.check("negative_control.dropped_element",
                corrupted_fails(u, h3, [&](hierarchy::Hierarchy& h) {
                    auto& l = h.levels[1];
                    l.erase(std::find(l.begin(), l.end(), top_triple));
                }));
        t.check("negative_control.non_antichain_element",
                corrupted_fails(u, h3, [&](hierarchy::Hierarchy& h) {
                    const Id bad = u.intern({m3[0], top_triple});
                    for (std::size_t k = 2; k < h.levels.size(); ++k) {
                        h.levels[k].push_back(bad);
                        h.levels[k] = hsets::sorted_unique(std::move(h.levels[k]));
                    }
                }));
        t.check("negative_control.not_increasing",
                corrupted_fails(u, h3, [&](hierarchy::Hierarchy& h) {
                    auto& l = h.levels.back();
                    l.erase(l.begin());
                }));
    }
}

// ---- fans and growth ----

void run_lemma24(Tally& t, const RunConfig& c)
{
    auto triple = hsets::antichain3_base();
    auto& u = triple.universe;
    const std::vector<Id> m = {triple.base[0], triple.base[1]};
    const Id m_prime = triple.base[2];
    const auto h = hierarchy::build(u, m, c.depth, c.budget);
    if (!h.complete()) {
        t.budget_hit();
        return;
    }
    t.facts()["fan_sizes"] = json::array();
    for (std::size_t d = 0; d <= h.depth(); ++d) {
        const auto f = hierarchy::fan(u, m, h.levels[d], m_prime);
        t.check("fan.antichain", f.comparable.empty(), [&] { return json{{"stage", d}}; });
        t.check("fan.nontrivial", f.degenerate.empty(), [&] { return json{{"stage", d}}; });
        const auto distinct = hsets::sorted_unique(f.pairs);
        t.check("fan.injective", distinct.size() == h.levels[d].size(), [&] { return json{{"stage", d}}; });
        for (Id p : distinct)
            t.check("fan.avoids_base_stage", !hsets::contains(h.levels[d], p));
        t.facts()["fan_sizes"].push_back(distinct.size());
    }
}

void run_thm26(Tally& t, const RunConfig& c)
{
    auto triple = hsets::antichain3_base();
    const std::size_t fan_depth = std::min<std::size_t>(c.depth, 2);
    const auto w = hierarchy::growth_witness(triple.universe, triple.base, c.depth, fan_depth, c.budget);
    t.facts()["growth"] = w.growth;
    t.facts()["fan_sizes"] = w.fan_sizes;
    if (w.status != hierarchy::BuildStatus::complete) {
        t.facts()["exhausted_stage"] = w.exhausted_stage ? json(*w.exhausted_stage) : json(nullptr);
        t.budget_hit();
    }
    for (std::size_t a = 0; a < w.growth.size(); ++a)
        t.check("growth_at_least_3", w.growth[a] >= 3, [&] { return json{{"alpha", a}, {"growth", w.growth[a]}}; });
    for (std::size_t d = 0; d < w.fan_sizes.size(); ++d) {
        t.check("fan_at_least_3", w.fan_sizes[d] >= 3, [&] { return json{{"stage", d}}; });
        t.check("fan.antichain", w.fan_antichain[d], [&] { return json{{"stage", d}}; });
        t.check("fan.nontrivial", w.pairs_nontrivial[d], [&] { return json{{"stage", d}}; });
    }
}

// ---- openness characterizations ----

void openness_agree(Tally& t, const FinitePreorder& p, const FinitePreorder& q, std::span<const int> f)
{
    if (!is_monotone(p, q, f))
        return;
    const bool v1 = is_open_by_images(p, q, f);
    const bool v2 = is_open_by_down_sets(p, q, f);
    const bool v3 = is_open_by_up_sets(p, q, f);
    t.check("openness_agree", v1 == v2 && v2 == v3, [&] {
        return json{{"dom", to_json(p)}, {"cod", to_json(q)}, {"map", table_string(f)},
                    {"images", v1}, {"down_sets", v2}, {"up_sets", v3}};
    });
}

void run_lemma31(Tally& t, const RunConfig& c)
{
    const int exhaustive = std::min(c.max_size, 4);
    // Labelled preorders up to three points; iso classes are enough above that.
    auto pool = preorders_up_to(std::min(exhaustive, 3), false);
    if (exhaustive == 4)
        for (auto& p : enumerate_preorders(4, true))
            pool.push_back(std::move(p));
    for (const auto& p : pool)
        for (const auto& q : pool)
            for_each_function(p.size(), q.size(), [&](const MapTable& f) { openness_agree(t, p, q, f); });
    t.facts()["exhaustive_max_size"] = exhaustive;
    t.facts()["exhaustive_preorders"] = pool.size();

    std::mt19937_64 rng(c.seed);
    std::uint64_t monotone = 0;
    for (std::uint64_t i = 0; i < c.samples; ++i) {
        const int n = 4 + static_cast<int>(rng() % 2);
        const int m = 4 + static_cast<int>(rng() % 2);
        const auto p = random_preorder(n, rng);
        const auto q = random_preorder(m, rng);
        MapTable f(n);
        for (auto& y : f)
            y = static_cast<int>(rng() % static_cast<std::uint64_t>(m));
        // Half the samples are pushed through an open-map search so that the
        // positive side is exercised, not only monotone non-open maps.
        if (i % 2 == 1) {
            const auto opens = enumerate_open_maps(p, q);
            if (!opens.maps.empty())
                f = opens.maps[rng() % opens.maps.size()];
        }
        monotone += is_monotone(p, q, f) ? 1 : 0;
        openness_agree(t, p, q, f);
    }
    t.facts()["samples"] = c.samples;
    t.facts()["sampled_monotone"] = monotone;
}

// ---- injectivity on the base ----

void run_lemma32(Tally& t, const RunConfig& c)
{
    const std::size_t depth = std::min<std::size_t>(c.depth, 2);
    const auto s = four_point_setup(hsets::BaseMode::abstract, depth);
    const auto posets = posets_up_to(c.max_size);
    t.facts()["posets"] = posets.size();
    json per_stage = json::array();
    const auto cube = product(product(sierpinski(), sierpinski()), sierpinski());
    for (std::size_t a = 1; a <= depth; ++a) {
        std::uint64_t injective = 0, nodes = 0, wide = 0;
        auto run = [&](const FinitePreorder& p, std::uint64_t& count) {
            try {
                const auto r = injectivity_experiment(s.stages[a].poset, s.base_mask(a), p, c.node_budget);
                nodes += r.nodes;
                count += r.injective_on_base;
                t.check("injective_on_stage", r.violations == 0, [&] {
                    return json{{"stage", a}, {"target", to_json(p)}, {"map", table_string(*r.witness)}};
                });
            } catch (const BudgetExceeded&) {
                t.budget_hit();
            }
        };
        for (const auto& p : posets)
            run(p, injective);
        // Targets at least as large as the stage, where such maps exist.
        run(cube, wide);
        for (std::size_t b = a; b <= depth; ++b)
            run(s.stages[b].poset, wide);
        per_stage.push_back({{"stage", a},
                             {"stage_size", s.stages[a].poset.size()},
                             {"search_nodes", nodes},
                             {"injective_on_base", injective},
                             {"injective_on_base_wide_targets", wide}});
    }
    t.facts()["stages"] = per_stage;

    // Report only: the same experiment over M ∪ {{m1, m2}}, where the chain
    // hypothesis fails. Nothing here counts as a violation.
    auto b = hsets::four_point_base(hsets::BaseMode::abstract);
    std::vector<hsets::Id> wider = b.base;
    wider.push_back(b.universe.intern({b.m1, b.m2}));
    wider = hsets::sorted_unique(std::move(wider));
    const auto h = hierarchy::build(b.universe, wider, 1);
    const auto st = materialize(b.universe, h, 1);
    json control = {{"chain_hypothesis", hsets::chain_hypothesis(b.universe, wider)}, {"stage_size", st.poset.size()}};
    try {
        const auto r = injectivity_experiment(st.poset, st.mask_of(wider), st.poset, c.node_budget);
        control["injective_on_base"] = r.injective_on_base;
        control["not_injective_on_stage"] = r.violations;
    } catch (const BudgetExceeded&) {
        control["budget_exceeded"] = true;
    }
    t.facts()["non_chain_base_control"] = control;
}

// ---- coreflection ----

void run_coreflect(Tally& t, const RunConfig& c)
{
    const int states = std::min(c.states, 4);
    const auto targets = preorders_up_to(std::min(c.max_size, 3), true);
    std::uint64_t frames = 0;
    for (int n = 1; n <= states; ++n) {
        const std::uint64_t codes = std::uint64_t{1} << (n * n);
        for (std::uint64_t code = 0; code < codes; ++code) {
            const auto f = KripkeFrame::from_code(n, code);
            ++frames;
            const auto y = coreflect(f);
            t.check("carrier_matches_exhaustive", y.carrier == coreflect_carrier_exhaustive(f),
                    [&] { return to_json(f); });
            for (const auto& p : targets) {
                const auto r = verify_coreflection(f, p);
                t.check("universal_property", r.ok(), [&] {
                    return json{{"frame", to_json(f)}, {"poset", to_json(p)},
                                {"pmorphisms", r.pmorphisms}, {"open_maps", r.open_maps}};
                });
            }
        }
    }
    t.facts()["frames"] = frames;
    t.facts()["targets"] = targets.size();

    // Open maps P -> Q are exactly p-morphisms between the opposite frames.
    const auto pool = preorders_up_to(std::min(c.max_size + 1, 4), true);
    for (const auto& p : pool)
        for (const auto& q : pool) {
            const auto fp = frame_of_opposite(p), fq = frame_of_opposite(q);
            for_each_function(p.size(), q.size(), [&](const MapTable& f) {
                t.check("open_iff_pmorphism", is_open_by_down_sets(p, q, f) == is_pmorphism(fp, fq, f), [&] {
                    return json{{"dom", to_json(p)}, {"cod", to_json(q)}, {"map", table_string(f)}};
                });
            });
        }
    t.facts()["bridge_preorders"] = pool.size();
}

// ---- downset algebras ----

void run_duality(Tally& t, const RunConfig& c)
{
    const auto posets = posets_up_to(std::min(c.max_size, 5));
    for (const auto& p : posets) {
        const DownsetAlgebra alg(p);
        if (p.size() <= 4)
            for (Mask a : alg.elements())
                for (Mask b : alg.elements())
                    t.check("implies_is_largest_solution", alg.implies(a, b) == implies_by_search(alg, a, b), [&] {
                        return json{{"poset", to_json(p)}, {"a", mask_to_bits(a, p.size())},
                                    {"b", mask_to_bits(b, p.size())}};
                    });
        t.check("join_irreducibles_recover_poset", verify_adjunction_unit(p), [&] { return to_json(p); });

        // Rebuild O(P) from its lattice order alone.
        const int k = static_cast<int>(alg.size());
        if (k <= kMaxPoints) {
            std::vector<Mask> down(k, 0);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    if (subset_of(alg.element(j), alg.element(i)))
                        down[i] |= bit(j);
            const auto rep = from_distributive_lattice(FinitePreorder::from_down_sets(std::move(down)));
            t.check("lattice_representation", rep.algebra.size() == alg.size() &&
                                                  poset_iso(rep.algebra.base(), p).has_value(),
                    [&] { return to_json(p); });
        }
    }
    const DownsetAlgebra s(sierpinski());
    t.check("double_negation_sierpinski", s.neg(s.neg(bit(0))) == s.top());

    const auto small = posets_up_to(std::min(c.max_size, 3));
    std::uint64_t open_maps = 0;
    for (const auto& p : small)
        for (const auto& q : small) {
            const auto r = fullness_check(p, q);
            open_maps += r.open_maps;
            t.check("fullness", r.ok(), [&] {
                return json{{"dom", to_json(p)}, {"cod", to_json(q)}, {"open_maps", r.open_maps},
                            {"morphisms", r.morphisms}};
            });
        }
    t.facts()["posets"] = posets.size();
    t.facts()["fullness_open_maps"] = open_maps;
}

// ---- complex algebras ----

void run_bao(Tally& t, const RunConfig& c)
{
    const int states = std::min(c.states, 3);
    std::vector<KripkeFrame> frames;
    for (int n = 1; n <= states; ++n)
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * n)); ++code)
            frames.push_back(KripkeFrame::from_code(n, code));
    for (const auto& f : frames) {
        const auto a = complex_algebra(f);
        t.check("closure_iff_preorder", closure_iff_preorder(f), [&] { return to_json(f); });
        t.check("closure_atoms_vs_elements", is_closure_algebra(a) == is_closure_algebra_by_elements(a),
                [&] { return to_json(f); });
        t.check("dual_recovers_frame", verify_bao_adjunction(f), [&] { return to_json(f); });
    }
    for (const auto& f : frames) {
        if (f.size() > 2)
            continue;
        for (const auto& g : frames) {
            if (g.size() > 2)
                continue;
            const auto r = bao_fullness_check(f, g);
            t.check("bao_fullness", r.ok(), [&] { return json{{"dom", to_json(f)}, {"cod", to_json(g)}}; });
        }
    }

    // Every operator on a 4-atom Boolean algebra.
    std::uint64_t pairs = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << 16); ++code) {
        const auto a = complex_algebra(KripkeFrame::from_code(4, code));
        const auto r = box_diamond_inequality(a);
        pairs += r.pairs_checked;
        t.check("box_diamond_inequality", r.ok(), [&] { return to_json(a); });
    }

    std::mt19937_64 rng(c.seed);
    for (std::uint64_t i = 0; i < c.samples; ++i) {
        const auto f = random_frame(5, rng);
        t.check("closure_iff_preorder.sampled", closure_iff_preorder(f), [&] { return to_json(f); });
    }
    t.facts()["frames"] = frames.size();
    t.facts()["inequality_pairs"] = pairs;
    t.facts()["samples"] = c.samples;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"lemma23", "lemma24", "lemma31", "lemma32",
                                                   "thm26",   "coreflect", "duality", "bao"};
    return names;
}

std::string config_hash(const json& config)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : config.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

LoadedBase load_base(const std::string& spec)
{
    if (spec == "thm33") {
        auto b = hsets::four_point_base(hsets::BaseMode::abstract);
        return {std::move(b.universe), b.base};
    }
    if (spec == "thm33-concrete") {
        auto b = hsets::four_point_base(hsets::BaseMode::concrete);
        return {std::move(b.universe), b.base};
    }
    if (spec == "antichain3") {
        auto b = hsets::antichain3_base();
        return {std::move(b.universe), b.base};
    }
    if (spec.rfind("file:", 0) == 0) {
        const json j = json::parse(read_file(spec.substr(5)));
        auto labels = j.at("labels").get<std::vector<std::string>>();
        std::vector<std::pair<std::string, std::string>> leq;
        if (j.contains("leq"))
            for (const auto& e : j.at("leq"))
                leq.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        const std::size_t n = labels.size();
        LoadedBase b{hsets::Universe(hsets::BasePoset(std::move(labels), leq)), {}};
        for (std::size_t i = 0; i < n; ++i)
            b.base.push_back(static_cast<Id>(i));
        return b;
    }
    throw std::invalid_argument("unknown base '" + spec + "' (expected thm33, antichain3 or file:PATH)");
}

namespace {

json levels_json(const hierarchy::Hierarchy& h)
{
    json sizes = json::array(), fresh = json::array();
    for (std::size_t a = 0; a < h.levels.size(); ++a) {
        sizes.push_back(h.levels[a].size());
        fresh.push_back(h.fresh(a).size());
    }
    return {{"level_sizes", sizes}, {"fresh_sizes", fresh}};
}

} // namespace

Report hierarchy_build(const RunConfig& c)
{
    if (c.budget == 0)
        throw std::invalid_argument("budget must be positive");
    auto b = load_base(c.base);
    const auto h = hierarchy::build(b.universe, b.base, c.depth, c.budget);
    Tally t;
    t.facts() = levels_json(h);
    t.facts()["base"] = json::array();
    for (Id x : h.base)
        t.facts()["base"].push_back(b.universe.format(x));
    json fresh_names = json::array();
    for (std::size_t a = 0; a < h.levels.size(); ++a) {
        json names = json::array();
        const auto fr = h.fresh(a);
        if (fr.size() <= 64)
            for (Id x : fr)
                names.push_back(b.universe.format(x));
        fresh_names.push_back(names);
    }
    t.facts()["fresh_elements"] = fresh_names;
    t.facts()["build_status"] = hierarchy::to_string(h.status);
    if (!h.complete()) {
        t.facts()["exhausted_stage"] = *h.exhausted_stage;
        t.budget_hit();
    }
    return t.finish("hierarchy build", c);
}

Report hierarchy_stats(const RunConfig& c)
{
    if (c.budget == 0)
        throw std::invalid_argument("budget must be positive");
    auto b = load_base(c.base);
    const auto h = hierarchy::build(b.universe, b.base, c.depth, c.budget);
    Tally t;
    t.facts() = levels_json(h);
    t.facts()["growth"] = hierarchy::growth_stats(h);
    t.facts()["universe_size"] = b.universe.size();
    t.facts()["build_status"] = hierarchy::to_string(h.status);
    if (!h.complete()) {
        t.facts()["exhausted_stage"] = *h.exhausted_stage;
        t.budget_hit();
    }
    return t.finish("hierarchy stats", c);
}

std::string hierarchy_export(const RunConfig& c, std::size_t level, bool as_json)
{
    auto b = load_base(c.base);
    const auto h = hierarchy::build(b.universe, b.base, c.depth, c.budget);
    if (!h.complete())
        throw BudgetExceeded("hierarchy exceeded its budget at stage " + std::to_string(*h.exhausted_stage));
    if (!as_json) {
        if (level > h.depth())
            throw std::invalid_argument("level beyond the requested depth");
        return hierarchy::level_dot(b.universe, h, level);
    }
    json j = {{"schema", kSchemaVersion}, {"base", h.base}, {"levels", h.levels},
              {"universe", b.universe.dump()}};
    return j.dump(2) + "\n";
}

Report verify(const std::string& suite, const RunConfig& c)
{
    static const std::map<std::string, void (*)(Tally&, const RunConfig&)> runners = {
        {"lemma23", run_lemma23}, {"lemma24", run_lemma24},     {"lemma31", run_lemma31},
        {"lemma32", run_lemma32}, {"thm26", run_thm26},         {"coreflect", run_coreflect},
        {"duality", run_duality}, {"bao", run_bao}};
    const auto it = runners.find(suite);
    if (it == runners.end())
        throw std::invalid_argument("unknown suite '" + suite + "'");
    if (c.budget == 0)
        throw std::invalid_argument("budget must be positive");
    Tally t;
    it->second(t, c);
    return t.finish("verify " + suite, c);
}

FinitePreorder named_poset(const std::string& spec)
{
    if (spec == "product2x2")
        return product(sierpinski(), sierpinski());
    if (spec == "singleton")
        return singleton();
    if (spec == "sierpinski")
        return sierpinski();
    if (spec.rfind("file:", 0) == 0)
        return preorder_from_json(json::parse(read_file(spec.substr(5))));
    throw std::invalid_argument("unknown poset '" + spec + "' (expected product2x2, singleton, sierpinski or file:PATH)");
}

std::vector<FinitePreorder> posets_up_to(int n)
{
    std::vector<FinitePreorder> out;
    for (int k = 1; k <= n; ++k)
        for (auto& p : enumerate_posets(k))
            out.push_back(std::move(p));
    return out;
}

Report obstruct(const std::vector<FinitePreorder>& posets, const RunConfig& c)
{
    const std::size_t depth = std::min<std::size_t>(std::max<std::size_t>(c.depth, 1), 2);
    const auto s = four_point_setup(hsets::BaseMode::abstract, depth);
    const auto sier = sierpinski();
    Tally t;
    json candidates = json::array();
    std::uint64_t refuted = 0, total = 0;
    for (const auto& p : posets) {
        const auto probes = enumerate_open_maps(p, sier).maps;
        for (const auto& p1 : probes)
            for (const auto& p2 : probes) {
                const auto v = product_obstruction(s, p, p1, p2, 1, depth, c.node_budget);
                ++total;
                refuted += v.refuted() ? 1 : 0;
                json entry = to_json(v);
                entry["poset"] = to_json(p);
                entry["p1"] = table_string(p1);
                entry["p2"] = table_string(p2);
                candidates.push_back(entry);
                t.check("no_anomaly", !v.anomaly, [&] { return entry; });
                if (!v.refuted())
                    t.budget_hit();
            }
    }
    t.facts()["candidates"] = candidates;
    t.facts()["candidate_count"] = total;
    t.facts()["refuted"] = refuted;
    t.facts()["max_stage"] = depth;
    return t.finish("obstruct", c);
}

} // namespace finorder::suites
