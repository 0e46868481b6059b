#include "finorder/hierarchy.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace finorder::hierarchy {

using hsets::contains;
using hsets::sorted_unique;

const char* to_string(BuildStatus s)
{
    return s == BuildStatus::complete ? "complete" : "budget_exhausted";
}

std::vector<Id> Hierarchy::fresh(std::size_t stage) const
{
    if (stage == 0)
        return levels.at(0);
    std::vector<Id> out;
    std::set_difference(levels.at(stage).begin(), levels.at(stage).end(),
                        levels.at(stage - 1).begin(), levels.at(stage - 1).end(),
                        std::back_inserter(out));
    return out;
}

namespace {

struct AntichainSearch {
    const Universe& u;
    const std::vector<Id>& pool;
    const std::function<bool(const std::vector<Id>&)>& visit;
    std::vector<Id> chosen;

    bool comparable(Id a, Id b) const { return u.lt(a, b) || u.lt(b, a); }

    // candidates: pool positions, increasing, each incomparable to all chosen
    bool run(const std::vector<std::size_t>& candidates)
    {
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const Id v = pool[candidates[i]];
            chosen.push_back(v);
            if (chosen.size() >= 2 && !visit(chosen))
                return false;
            std::vector<std::size_t> next;
            for (std::size_t k = i + 1; k < candidates.size(); ++k)
                if (!comparable(v, pool[candidates[k]]))
                    next.push_back(candidates[k]);
            if (!next.empty() && !run(next))
                return false;
            chosen.pop_back();
        }
        return true;
    }
};

} // namespace

bool for_each_nontrivial_antichain(const Universe& u, std::span<const Id> pool,
                                   const std::function<bool(const std::vector<Id>&)>& visit)
{
    const auto sorted = sorted_unique({pool.begin(), pool.end()});
    std::vector<std::size_t> all(sorted.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    AntichainSearch search{u, sorted, visit, {}};
    return search.run(all);
}

std::vector<std::vector<Id>> enumerate_nontrivial_antichains(const Universe& u,
                                                             std::span<const Id> pool)
{
    std::vector<std::vector<Id>> out;
    for_each_nontrivial_antichain(u, pool, [&](const std::vector<Id>& a) {
        out.push_back(a);
        return true;
    });
    return out;
}

Hierarchy build(Universe& u, std::vector<Id> base, std::size_t depth, std::size_t budget)
{
    if (budget == 0)
        throw std::invalid_argument("build: budget must be positive");
    for (Id x : base)
        if (x >= u.size())
            throw std::invalid_argument("build: unknown base element " + std::to_string(x));
    Hierarchy h;
    h.base = sorted_unique(std::move(base));
    h.budget = budget;
    if (h.base.size() > budget) {
        h.status = BuildStatus::budget_exhausted;
        h.exhausted_stage = 0;
        return h;
    }
    h.levels.push_back(h.base);
    extend(u, h, depth);
    return h;
}

void extend(Universe& u, Hierarchy& h, std::size_t depth)
{
    while (h.complete() && h.levels.size() <= depth) {
        const std::vector<Id>& current = h.levels.back();
        std::vector<Id> next = current;
        bool over = false;
        for_each_nontrivial_antichain(u, current, [&](const std::vector<Id>& a) {
            const Id id = u.intern(a);
            if (contains(current, id))
                return true;
            next.push_back(id);
            if (next.size() > h.budget) {
                over = true;
                return false;
            }
            return true;
        });
        if (over) {
            h.status = BuildStatus::budget_exhausted;
            h.exhausted_stage = h.levels.size();
            return;
        }
        h.levels.push_back(sorted_unique(std::move(next)));
    }
}

std::vector<std::size_t> growth_stats(const Hierarchy& h)
{
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a + 1 < h.levels.size(); ++a)
        out.push_back(h.levels[a + 1].size() - h.levels[a].size());
    return out;
}

StageReport verify_stage_properties(const Universe& u, const Hierarchy& h)
{
    StageReport report;
    if (h.levels.empty())
        return report;
    const auto& top = h.top();
    for (std::size_t a = 0; a + 1 < h.levels.size(); ++a) {
        StageCheck check;
        check.stage = a;
        const auto& lvl = h.levels[a];
        const auto& nxt = h.levels[a + 1];

        for (Id x : lvl)
            if (!contains(nxt, x)) {
                check.increasing = false;
                report.violations.push_back({"increasing", a, {x}});
                break;
            }

        for (Id x : lvl) {
            for (Id y : u.closure(x))
                if (contains(top, y) && !contains(lvl, y)) {
                    check.downset = false;
                    report.violations.push_back({"downset", a, {y, x}});
                    break;
                }
            if (!check.downset)
                break;
        }

        std::vector<Id> diff;
        std::set_difference(nxt.begin(), nxt.end(), lvl.begin(), lvl.end(), std::back_inserter(diff));
        for (std::size_t i = 0; i < diff.size() && check.antichain; ++i)
            for (std::size_t j = 0; j < diff.size(); ++j)
                if (u.lt(diff[i], diff[j])) {
                    check.antichain = false;
                    report.violations.push_back({"antichain", a, {diff[i], diff[j]}});
                    break;
                }

        for (Id x : diff) {
            const bool ok = !u.is_atom(x) && hsets::is_nontrivial_antichain(u, u.children(x)) &&
                            std::all_of(u.children(x).begin(), u.children(x).end(),
                                        [&](Id c) { return contains(lvl, c); });
            if (!ok) {
                check.members = false;
                report.violations.push_back({"members", a, {x}});
                break;
            }
        }

        if (a >= 1) {
            std::vector<Id> newer;
            std::set_difference(lvl.begin(), lvl.end(), h.levels[a - 1].begin(), h.levels[a - 1].end(),
                                std::back_inserter(newer));
            for (Id x : diff) {
                bool uses_new = false;
                if (!u.is_atom(x))
                    for (Id c : u.children(x))
                        uses_new = uses_new || contains(newer, c);
                if (!uses_new) {
                    check.fresh = false;
                    report.violations.push_back({"fresh", a, {x}});
                    break;
                }
            }
        }
        report.stages.push_back(check);
    }
    return report;
}

namespace {

void require_antichain(const Universe& u, std::span<const Id> s, const char* what)
{
    if (!hsets::is_antichain(u, s))
        throw std::invalid_argument(std::string(what) + " is not an antichain");
}

} // namespace

RestrictionReport verify_restriction(Universe& u, std::span<const Id> m, std::span<const Id> m_prime,
                                     std::size_t depth, std::size_t budget)
{
    const auto small = sorted_unique({m.begin(), m.end()});
    const auto large = sorted_unique({m_prime.begin(), m_prime.end()});
    if (!std::includes(large.begin(), large.end(), small.begin(), small.end()))
        throw std::invalid_argument("verify_restriction: M is not a subset of M'");
    require_antichain(u, small, "M");
    require_antichain(u, large, "M'");

    RestrictionReport report;
    const Hierarchy h = build(u, small, depth, budget);
    const Hierarchy hp = build(u, large, depth, budget);
    if (!h.complete() || !hp.complete()) {
        report.status = BuildStatus::budget_exhausted;
        return report;
    }
    const auto& whole = h.top();
    for (std::size_t a = 0; a <= depth; ++a) {
        std::vector<Id> meet;
        std::set_intersection(hp.levels[a].begin(), hp.levels[a].end(), whole.begin(), whole.end(),
                              std::back_inserter(meet));
        const bool equal = meet == h.levels[a];
        report.stage_equal.push_back(equal);
        if (!equal) {
            std::vector<Id> diff;
            std::set_symmetric_difference(meet.begin(), meet.end(), h.levels[a].begin(),
                                          h.levels[a].end(), std::back_inserter(diff));
            report.violations.push_back({"restriction", a, diff});
        }
    }
    return report;
}

ContainmentReport verify_containment(Universe& u, std::span<const Id> m, std::span<const Id> m_prime,
                                     std::size_t depth, std::size_t budget)
{
    ContainmentReport report;
    const Hierarchy h = build(u, {m.begin(), m.end()}, depth, budget);
    Hierarchy hp = build(u, {m_prime.begin(), m_prime.end()}, 0, budget);
    if (!h.complete()) {
        report.status = BuildStatus::budget_exhausted;
        return report;
    }
    for (std::size_t c = 0; c <= depth; ++c) {
        extend(u, hp, depth + c);
        if (!hp.complete()) {
            report.status = BuildStatus::budget_exhausted;
            break;
        }
        if (!report.base_stage)
            for (std::size_t k = 0; k <= hp.depth(); ++k)
                if (std::includes(hp.levels[k].begin(), hp.levels[k].end(), h.base.begin(), h.base.end())) {
                    report.base_stage = k;
                    break;
                }
        bool all = true;
        for (std::size_t a = 0; a <= depth && all; ++a)
            all = std::includes(hp.levels[a + c].begin(), hp.levels[a + c].end(), h.levels[a].begin(),
                                h.levels[a].end());
        if (all) {
            report.offset = c;
            break;
        }
    }
    return report;
}

namespace {

void check_pair_hypotheses(const Universe& u, std::span<const Id> base, Id m_prime)
{
    const auto b = sorted_unique({base.begin(), base.end()});
    if (contains(b, m_prime))
        throw std::invalid_argument("m' must not belong to M");
    auto extended = b;
    extended.push_back(m_prime);
    if (!hsets::is_antichain(u, extended))
        throw std::invalid_argument("M ∪ {m'} is not an antichain");
}

} // namespace

PairResult pair_with(Universe& u, std::span<const Id> base, Id x, Id m_prime)
{
    check_pair_hypotheses(u, base, m_prime);
    if (x == m_prime)
        throw std::invalid_argument("pair_with: x equals m'");
    PairResult r;
    r.pair = u.intern({x, m_prime});
    r.nontrivial_antichain = !u.lt(x, m_prime) && !u.lt(m_prime, x);
    return r;
}

FanResult fan(Universe& u, std::span<const Id> base, std::span<const Id> a, Id m_prime)
{
    check_pair_hypotheses(u, base, m_prime);
    FanResult r;
    for (Id x : a) {
        if (x == m_prime)
            throw std::invalid_argument("fan: m' occurs in the fanned set");
        const Id p = u.intern({x, m_prime});
        r.pairs.push_back(p);
        if (u.lt(x, m_prime) || u.lt(m_prime, x))
            r.degenerate.push_back(p);
    }
    for (Id p : r.pairs)
        for (Id q : r.pairs)
            if (u.lt(p, q))
                r.comparable.emplace_back(p, q);
    return r;
}

bool GrowthWitness::ok() const
{
    if (status != BuildStatus::complete)
        return false;
    for (auto g : growth)
        if (g < 3)
            return false;
    for (auto s : fan_sizes)
        if (s < 3)
            return false;
    for (bool b : fan_antichain)
        if (!b)
            return false;
    for (bool b : pairs_nontrivial)
        if (!b)
            return false;
    return true;
}

GrowthWitness growth_witness(Universe& u, std::span<const Id> m3, std::size_t depth,
                             std::size_t fan_depth, std::size_t budget)
{
    const auto triple = sorted_unique({m3.begin(), m3.end()});
    if (triple.size() != 3 || !hsets::is_antichain(u, triple))
        throw std::invalid_argument("growth_witness: base must be a three-element antichain");

    GrowthWitness w;
    const Hierarchy h = build(u, triple, depth, budget);
    w.growth = growth_stats(h);
    if (!h.complete()) {
        w.status = h.status;
        w.exhausted_stage = h.exhausted_stage;
        return w;
    }

    const std::vector<Id> doubletons = sorted_unique({u.intern({triple[0], triple[1]}),
                                                      u.intern({triple[1], triple[2]}),
                                                      u.intern({triple[0], triple[2]})});
    const Id t = u.intern(triple);
    const Hierarchy hp = build(u, doubletons, fan_depth, budget);
    if (!hp.complete()) {
        w.status = hp.status;
        w.exhausted_stage = hp.exhausted_stage;
        return w;
    }
    for (std::size_t d = 0; d <= hp.depth(); ++d) {
        const FanResult f = fan(u, doubletons, hp.levels[d], t);
        auto pairs = f.pairs;
        w.fan_sizes.push_back(sorted_unique(std::move(pairs)).size());
        w.fan_antichain.push_back(f.comparable.empty());
        w.pairs_nontrivial.push_back(f.degenerate.empty());
    }
    return w;
}

std::string level_dot(const Universe& u, const Hierarchy& h, std::size_t stage)
{
    const auto& lvl = h.level(stage);
    std::ostringstream os;
    os << "digraph stage_" << stage << " {\n  rankdir=BT;\n  edge [arrowhead=none];\n";
    for (Id x : lvl)
        os << "  n" << x << " [label=\"" << u.format(x) << "\"];\n";
    for (Id x : lvl)
        for (Id y : lvl) {
            if (!u.lt(x, y))
                continue;
            bool covered = true;
            for (Id z : lvl)
                if (u.lt(x, z) && u.lt(z, y)) {
                    covered = false;
                    break;
                }
            if (covered)
                os << "  n" << x << " -> n" << y << ";\n";
        }
    os << "}\n";
    return os.str();
}

} // namespace finorder::hierarchy
