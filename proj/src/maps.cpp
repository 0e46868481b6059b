#include "finorder/maps.hpp"

#include <algorithm>
#include <numeric>

namespace finorder {

bool is_total(const FinitePreorder& dom, const FinitePreorder& cod, std::span<const int> f)
{
    if (f.size() != static_cast<std::size_t>(dom.size()))
        return false;
    return std::all_of(f.begin(), f.end(), [&](int y) { return y >= 0 && y < cod.size(); });
}

namespace {

void require_total(const FinitePreorder& dom, const FinitePreorder& cod, std::span<const int> f)
{
    if (!is_total(dom, cod, f))
        throw std::invalid_argument("map table is not a total function between the carriers");
}

} // namespace

bool is_monotone(const FinitePreorder& dom, const FinitePreorder& cod, std::span<const int> f)
{
    require_total(dom, cod, f);
    for (int a = 0; a < dom.size(); ++a)
        for (int b = 0; b < dom.size(); ++b)
            if (dom.leq(a, b) && !cod.leq(f[a], f[b]))
                return false;
    return true;
}

Mask image(std::span<const int> f, Mask s)
{
    Mask out = 0;
    for_each_bit(s, [&](int i) { out |= bit(f[i]); });
    return out;
}

Mask preimage(std::span<const int> f, Mask t)
{
    Mask out = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (has(t, f[i]))
            out |= bit(static_cast<int>(i));
    return out;
}

bool is_injective_on(std::span<const int> f, Mask s)
{
    Mask seen = 0;
    bool ok = true;
    for_each_bit(s, [&](int i) {
        if (has(seen, f[i]))
            ok = false;
        seen |= bit(f[i]);
    });
    return ok;
}

MapTable compose(std::span<const int> g, std::span<const int> f)
{
    MapTable out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = g[f[i]];
    return out;
}

MapTable identity_map(int n)
{
    MapTable out(n);
    std::iota(out.begin(), out.end(), 0);
    return out;
}

bool is_open_by_images(const FinitePreorder& dom, const FinitePreorder& cod, std::span<const int> f)
{
    require_total(dom, cod, f);
    for (Mask v : all_downsets(cod))
        if (!is_downset(dom, preimage(f, v)))
            return false;
    for (Mask u : all_downsets(dom))
        if (!is_downset(cod, image(f, u)))
            return false;
    return true;
}

bool is_open_by_down_sets(const FinitePreorder& dom, const FinitePreorder& cod, std::span<const int> f)
{
    require_total(dom, cod, f);
    for (int p = 0; p < dom.size(); ++p)
        if (image(f, dom.down(p)) != cod.down(f[p]))
            return false;
    return true;
}

bool is_open_by_up_sets(const FinitePreorder& dom, const FinitePreorder& cod, std::span<const int> f)
{
    require_total(dom, cod, f);
    for (int q = 0; q < cod.size(); ++q) {
        const Mask fiber = preimage(f, bit(q));
        if (preimage(f, cod.up(q)) != up_closure(dom, fiber))
            return false;
    }
    return true;
}

namespace {

struct OpenMapEnumerator {
    const FinitePreorder& dom;
    const FinitePreorder& cod;
    std::span<const Mask> allowed;
    std::uint64_t budget;
    Mask injective_on;
    const std::function<void(const MapTable&)>& visit;

    std::vector<int> order;                  // points of dom, smaller down-sets first
    std::vector<std::vector<int>> ready;     // points whose down-set completes at step k
    MapTable table;
    Mask assigned = 0;
    std::uint64_t nodes = 0;

    void prepare()
    {
        const int n = dom.size();
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return popcount(dom.down(a)) < popcount(dom.down(b)); });
        std::vector<int> pos(n);
        for (int k = 0; k < n; ++k)
            pos[order[k]] = k;
        ready.assign(n, {});
        for (int p = 0; p < n; ++p) {
            int last = 0;
            for_each_bit(dom.down(p), [&](int q) { last = std::max(last, pos[q]); });
            ready[last].push_back(p);
        }
        table.assign(n, -1);
    }

    void run(std::size_t k)
    {
        if (k == order.size()) {
            visit(table);
            return;
        }
        const int x = order[k];
        const Mask below = dom.down(x) & assigned;
        const Mask above = dom.up(x) & assigned;
        const Mask img_below = image(table, below);
        const Mask img_above = image(table, above);
        const Mask options = allowed.empty() ? cod.points() : allowed[x];
        for (int y = 0; y < cod.size(); ++y) {
            if (!has(options, y))
                continue;
            if (!subset_of(img_below, cod.down(y)) || !subset_of(img_above, cod.up(y)))
                continue;
            if (has(injective_on, x) && has(image(table, assigned & injective_on), y))
                continue;
            if (++nodes > budget)
                throw BudgetExceeded("open-map enumeration exceeded its node budget");
            table[x] = y;
            assigned |= bit(x);
            bool ok = true;
            for (int p : ready[k])
                if (image(table, dom.down(p)) != cod.down(table[p])) {
                    ok = false;
                    break;
                }
            if (ok)
                run(k + 1);
            assigned &= ~bit(x);
            table[x] = -1;
        }
    }
};

} // namespace

std::uint64_t for_each_open_map(const FinitePreorder& dom, const FinitePreorder& cod,
                                std::span<const Mask> allowed, std::uint64_t node_budget,
                                Mask injective_on, const std::function<void(const MapTable&)>& visit)
{
    if (!allowed.empty() && allowed.size() != static_cast<std::size_t>(dom.size()))
        throw std::invalid_argument("allowed-image list must have one entry per domain point");
    OpenMapEnumerator e{dom, cod, allowed, node_budget, injective_on, visit, {}, {}, {}, 0, 0};
    e.prepare();
    e.run(0);
    return e.nodes;
}

OpenMapSearch enumerate_open_maps(const FinitePreorder& dom, const FinitePreorder& cod,
                                  std::span<const Mask> allowed, std::uint64_t node_budget)
{
    OpenMapSearch out;
    out.nodes = for_each_open_map(dom, cod, allowed, node_budget, 0,
                                  [&](const MapTable& f) { out.maps.push_back(f); });
    std::sort(out.maps.begin(), out.maps.end());
    return out;
}

FourPointSetup four_point_setup(hsets::BaseMode mode, std::size_t depth)
{
    FourPointSetup s{hsets::four_point_base(mode), {}, {}};
    s.hierarchy = hierarchy::build(s.base.universe, s.base.base, depth);
    if (!s.hierarchy.complete())
        throw BudgetExceeded("four-point hierarchy exceeded its budget at stage " +
                             std::to_string(*s.hierarchy.exhausted_stage));
    for (std::size_t a = 0; a <= depth; ++a)
        s.stages.push_back(materialize(s.base.universe, s.hierarchy, a));
    return s;
}

MapTable projection_probe(const FourPointSetup& s, std::size_t stage, int i)
{
    if (i != 1 && i != 2)
        throw std::invalid_argument("projection_probe: i must be 1 or 2");
    const hsets::Id mi = i == 1 ? s.base.m1 : s.base.m2;
    const auto& st = s.stages.at(stage);
    MapTable f(st.ids.size());
    for (std::size_t k = 0; k < st.ids.size(); ++k)
        f[k] = (st.ids[k] == s.base.m0 || st.ids[k] == mi) ? 0 : 1;
    return f;
}

InjectivityReport injectivity_experiment(const FinitePreorder& stage, Mask base_mask,
                                         const FinitePreorder& target, std::uint64_t node_budget)
{
    InjectivityReport r;
    r.nodes = for_each_open_map(stage, target, {}, node_budget, base_mask, [&](const MapTable& f) {
        ++r.injective_on_base;
        if (!is_injective_on(f, stage.points())) {
            ++r.violations;
            if (!r.witness)
                r.witness = f;
        }
    });
    return r;
}

OpenMapSearch mediating_search(const FinitePreorder& q, std::span<const int> f1, std::span<const int> f2,
                               const FinitePreorder& p, std::span<const int> p1, std::span<const int> p2,
                               std::uint64_t node_budget)
{
    const auto s = sierpinski();
    require_total(q, s, f1);
    require_total(q, s, f2);
    require_total(p, s, p1);
    require_total(p, s, p2);
    std::vector<Mask> allowed(q.size(), 0);
    for (int x = 0; x < q.size(); ++x)
        for (int y = 0; y < p.size(); ++y)
            if (p1[y] == f1[x] && p2[y] == f2[x])
                allowed[x] |= bit(y);
    return enumerate_open_maps(q, p, allowed, node_budget);
}

const char* to_string(CertificateKind k)
{
    switch (k) {
    case CertificateKind::empty_mediating_set:
        return "empty_mediating_set";
    case CertificateKind::injectivity_bound:
        return "injectivity_bound";
    case CertificateKind::none:
        break;
    }
    return "none";
}

ObstructionVerdict product_obstruction(const FourPointSetup& s, const FinitePreorder& p,
                                       std::span<const int> p1, std::span<const int> p2,
                                       std::size_t min_stage, std::size_t max_stage,
                                       std::uint64_t node_budget)
{
    const auto sier = sierpinski();
    if (!is_open_by_down_sets(p, sier, p1) || !is_open_by_down_sets(p, sier, p2))
        throw std::invalid_argument("product_obstruction: projections must be open maps");
    if (max_stage >= s.stages.size())
        throw std::invalid_argument("product_obstruction: stage beyond the materialized hierarchy");

    ObstructionVerdict v;
    for (std::size_t a = min_stage; a <= max_stage; ++a) {
        const auto& q = s.stages[a].poset;
        StageAttempt at;
        at.stage = a;
        at.stage_size = static_cast<std::size_t>(q.size());
        const auto f1 = projection_probe(s, a, 1);
        const auto f2 = projection_probe(s, a, 2);
        try {
            const auto found = mediating_search(q, f1, f2, p, p1, p2, node_budget);
            at.candidates_examined = found.nodes;
            at.mediating_found = found.maps.size();
            for (const auto& f : found.maps)
                at.all_injective = at.all_injective && is_injective_on(f, q.points());
        } catch (const BudgetExceeded&) {
            at.budget_exceeded = true;
            at.candidates_examined = node_budget;
        }
        v.attempts.push_back(at);
        if (!at.all_injective)
            v.anomaly = true;
        if (!at.budget_exceeded && at.mediating_found == 0) {
            v.kind = CertificateKind::empty_mediating_set;
            v.stage = a;
            break;
        }
        if (at.budget_exceeded && at.stage_size > static_cast<std::size_t>(p.size())) {
            v.kind = CertificateKind::injectivity_bound;
            v.stage = a;
            break;
        }
    }
    return v;
}

nlohmann::json to_json(const ObstructionVerdict& v)
{
    nlohmann::json j;
    j["refuted"] = v.refuted();
    j["certificate_kind"] = to_string(v.kind);
    j["stage"] = v.stage ? nlohmann::json(*v.stage) : nlohmann::json(nullptr);
    j["anomaly"] = v.anomaly;
    auto& attempts = j["attempts"] = nlohmann::json::array();
    for (const auto& a : v.attempts)
        attempts.push_back({{"stage", a.stage},
                            {"stage_size", a.stage_size},
                            {"candidates_examined", a.candidates_examined},
                            {"mediating_found", a.mediating_found},
                            {"budget_exceeded", a.budget_exceeded}});
    return j;
}

} // namespace finorder
