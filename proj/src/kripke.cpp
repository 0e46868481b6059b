#include "finorder/kripke.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace finorder {

KripkeFrame::KripkeFrame(std::vector<Mask> successors) : succ_(std::move(successors))
{
    const int n = size();
    if (n > kMaxPoints)
        throw SizeLimitError("frame has more than 64 states");
    pred_.assign(n, 0);
    for (int x = 0; x < n; ++x) {
        if (!subset_of(succ_[x], states()))
            throw std::invalid_argument("relation mentions a state outside the frame");
        for_each_bit(succ_[x], [&](int y) { pred_[y] |= bit(x); });
    }
}

KripkeFrame KripkeFrame::from_pairs(int n, std::span<const std::pair<int, int>> pairs)
{
    if (n < 0 || n > kMaxPoints)
        throw SizeLimitError("frame size out of range");
    std::vector<Mask> succ(n, 0);
    for (auto [x, y] : pairs) {
        if (x < 0 || y < 0 || x >= n || y >= n)
            throw std::invalid_argument("relation pair mentions a state outside the frame");
        succ[x] |= bit(y);
    }
    return KripkeFrame(std::move(succ));
}

KripkeFrame KripkeFrame::from_relation_bits(int n, std::string_view bits)
{
    if (n < 0 || n > kMaxPoints)
        throw SizeLimitError("frame size out of range");
    if (bits.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw std::invalid_argument("relation string must have size*size characters");
    std::vector<Mask> succ(n, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const char c = bits[static_cast<std::size_t>(x * n + y)];
            if (c == '1')
                succ[x] |= bit(y);
            else if (c != '0')
                throw std::invalid_argument("relation string must contain only 0 and 1");
        }
    return KripkeFrame(std::move(succ));
}

KripkeFrame KripkeFrame::from_code(int n, std::uint64_t code)
{
    if (n < 0 || n > 8)
        throw SizeLimitError("from_code: at most 8 states");
    std::vector<Mask> succ(n, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if ((code >> (x * n + y)) & 1u)
                succ[x] |= bit(y);
    return KripkeFrame(std::move(succ));
}

bool KripkeFrame::is_reflexive() const
{
    for (int x = 0; x < size(); ++x)
        if (!related(x, x))
            return false;
    return true;
}

bool KripkeFrame::is_transitive() const
{
    for (int x = 0; x < size(); ++x) {
        Mask two_steps = 0;
        for_each_bit(succ_[x], [&](int y) { two_steps |= succ_[y]; });
        if (!subset_of(two_steps, succ_[x]))
            return false;
    }
    return true;
}

std::string KripkeFrame::relation_bits() const
{
    std::string out;
    for (int x = 0; x < size(); ++x)
        for (int y = 0; y < size(); ++y)
            out += related(x, y) ? '1' : '0';
    return out;
}

KripkeFrame frame_of_opposite(const FinitePreorder& p)
{
    std::vector<Mask> succ(p.size());
    for (int x = 0; x < p.size(); ++x)
        succ[x] = p.down(x);
    return KripkeFrame(std::move(succ));
}

Mask image_under(std::span<const int> f, Mask s)
{
    return image(f, s);
}

namespace {

void require_total(const KripkeFrame& dom, const KripkeFrame& cod, std::span<const int> f)
{
    if (f.size() != static_cast<std::size_t>(dom.size()) ||
        !std::all_of(f.begin(), f.end(), [&](int y) { return y >= 0 && y < cod.size(); }))
        throw std::invalid_argument("map table is not a total function between the frames");
}

} // namespace

bool is_pmorphism(const KripkeFrame& f_dom, const KripkeFrame& g_cod, std::span<const int> f)
{
    require_total(f_dom, g_cod, f);
    for (int x = 0; x < f_dom.size(); ++x)
        if (image(f, f_dom.successors(x)) != g_cod.successors(f[x]))
            return false;
    return true;
}

bool is_pmorphism_by_preimages(const KripkeFrame& f_dom, const KripkeFrame& g_cod, std::span<const int> f)
{
    require_total(f_dom, g_cod, f);
    for (int y = 0; y < g_cod.size(); ++y) {
        Mask pred_of_fiber = 0;
        for_each_bit(preimage(f, bit(y)), [&](int x) { pred_of_fiber |= f_dom.predecessors(x); });
        if (preimage(f, g_cod.predecessors(y)) != pred_of_fiber)
            return false;
    }
    return true;
}

std::vector<MapTable> enumerate_pmorphisms(const KripkeFrame& dom, const KripkeFrame& cod,
                                           std::uint64_t node_budget)
{
    const int n = dom.size();
    std::vector<MapTable> out;
    MapTable table(n, -1);
    std::uint64_t nodes = 0;

    // After assigning state k, every x whose successors all lie in 0..k can be checked.
    std::vector<std::vector<int>> ready(static_cast<std::size_t>(std::max(n, 1)));
    for (int x = 0; x < n; ++x) {
        const Mask closed = dom.successors(x) | bit(x);
        ready[63 - std::countl_zero(closed)].push_back(x);
    }

    auto run = [&](auto&& self, int k) -> void {
        if (k == n) {
            out.push_back(table);
            return;
        }
        for (int y = 0; y < cod.size(); ++y) {
            if (++nodes > node_budget)
                throw BudgetExceeded("p-morphism enumeration exceeded its node budget");
            table[k] = y;
            bool ok = true;
            for (int x : ready[k])
                if (image(table, dom.successors(x)) != cod.successors(table[x])) {
                    ok = false;
                    break;
                }
            if (ok)
                self(self, k + 1);
        }
        table[k] = -1;
    };
    run(run, 0);
    return out;
}

Coreflection coreflect(const KripkeFrame& f)
{
    Mask y = f.states();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < f.size(); ++x) {
            if (!has(y, x))
                continue;
            const Mask succ = f.successors(x);
            Mask two_steps = 0;
            for_each_bit(succ, [&](int z) { two_steps |= f.successors(z); });
            if (!has(succ, x) || !subset_of(succ, y) || !subset_of(two_steps, succ)) {
                y &= ~bit(x);
                changed = true;
            }
        }
    }
    Coreflection c;
    c.carrier = y;
    for_each_bit(y, [&](int x) { c.states.push_back(x); });
    const int k = static_cast<int>(c.states.size());
    std::vector<Mask> down(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (f.related(c.states[i], c.states[j]))
                down[i] |= bit(j);
    c.order = FinitePreorder::from_down_sets(std::move(down));
    return c;
}

Mask coreflect_carrier_exhaustive(const KripkeFrame& f)
{
    const int n = f.size();
    if (n > kMaxExhaustiveStates)
        throw SizeLimitError("coreflect_carrier_exhaustive: more than 20 states");
    Mask y = 0;
    for (Mask u = 0; u < bit(n); ++u) {
        bool good = true;
        for (int x = 0; x < n && good; ++x) {
            if (!has(u, x))
                continue;
            const Mask succ = f.successors(x);
            good = has(succ, x) && subset_of(succ, u);
            for (int z = 0; z < n && good; ++z)
                if (has(succ, z))
                    good = subset_of(f.successors(z) & u, succ);
        }
        if (good)
            y |= u;
    }
    return y;
}

CoreflectionReport verify_coreflection(const KripkeFrame& f, const FinitePreorder& p)
{
    CoreflectionReport r;
    const KripkeFrame pop = frame_of_opposite(p);
    const Coreflection c = coreflect(f);
    const auto pms = enumerate_pmorphisms(pop, f);
    r.pmorphisms = pms.size();

    std::set<MapTable> through;
    for (const auto& m : pms) {
        if (!subset_of(image(m, p.points()), c.carrier)) {
            ++r.outside_carrier;
            continue;
        }
        MapTable g(m.size());
        for (std::size_t x = 0; x < m.size(); ++x) {
            int matches = 0;
            for (std::size_t i = 0; i < c.states.size(); ++i)
                if (c.states[i] == m[x]) {
                    g[x] = static_cast<int>(i);
                    ++matches;
                }
            if (matches != 1)
                ++r.factor_failures;
        }
        if (!is_open_by_down_sets(p, c.order, g))
            ++r.factor_failures;
        through.insert(m);
    }

    const auto opens = enumerate_open_maps(p, c.order);
    r.open_maps = opens.maps.size();
    std::set<MapTable> composed;
    for (const auto& g : opens.maps) {
        MapTable m(g.size());
        for (std::size_t x = 0; x < g.size(); ++x)
            m[x] = c.states[g[x]];
        if (!is_pmorphism(pop, f, m))
            r.bijective = false;
        composed.insert(m);
    }
    if (composed != through || composed.size() != opens.maps.size())
        r.bijective = false;
    return r;
}

FiniteBAO::FiniteBAO(std::vector<Mask> diamond_of_atom) : diamond_(std::move(diamond_of_atom))
{
    if (diamond_.size() > static_cast<std::size_t>(kMaxPoints))
        throw SizeLimitError("BAO has more than 64 atoms");
    for (Mask d : diamond_)
        if (!subset_of(d, top()))
            throw std::invalid_argument("diamond row mentions an atom outside the algebra");
}

Mask FiniteBAO::diamond(Mask a) const
{
    Mask out = 0;
    for_each_bit(a, [&](int x) { out |= diamond_[x]; });
    return out;
}

FiniteBAO complex_algebra(const KripkeFrame& f)
{
    std::vector<Mask> d(f.size());
    for (int y = 0; y < f.size(); ++y)
        d[y] = f.predecessors(y);
    return FiniteBAO(std::move(d));
}

bool is_closure_algebra(const FiniteBAO& a)
{
    for (int x = 0; x < a.atoms(); ++x) {
        const Mask dx = a.diamond_of_atom(x);
        if (!has(dx, x) || !subset_of(a.diamond(dx), dx))
            return false;
    }
    return true;
}

bool is_closure_algebra_by_elements(const FiniteBAO& a)
{
    if (a.atoms() > kMaxExhaustiveStates)
        throw SizeLimitError("is_closure_algebra_by_elements: more than 20 atoms");
    for (Mask e = 0; e <= a.top(); ++e) {
        const Mask de = a.diamond(e);
        if (!subset_of(e, de) || !subset_of(a.diamond(de), de))
            return false;
        if (e == a.top())
            break;
    }
    return true;
}

bool closure_iff_preorder(const KripkeFrame& f)
{
    return is_closure_algebra(complex_algebra(f)) == f.is_preorder();
}

InequalityReport box_diamond_inequality(const FiniteBAO& a, std::uint64_t seed, std::uint64_t samples)
{
    InequalityReport r;
    auto check = [&](Mask x, Mask y) {
        ++r.pairs_checked;
        if (!subset_of(a.box(x) & a.diamond(y), a.diamond(x & y))) {
            ++r.violations;
            if (!r.witness)
                r.witness = std::make_pair(x, y);
        }
    };
    if (a.atoms() <= 8) {
        const Mask count = bit(a.atoms());
        for (Mask x = 0; x < count; ++x)
            for (Mask y = 0; y < count; ++y)
                check(x, y);
    } else {
        std::mt19937_64 rng(seed);
        for (std::uint64_t i = 0; i < samples; ++i) {
            const Mask x = rng() & a.top();
            const Mask y = rng() & a.top();
            check(x, y);
        }
    }
    return r;
}

BaoDual bao_dual(const FiniteBAO& a)
{
    if (a.atoms() > kMaxExhaustiveStates)
        throw SizeLimitError("bao_dual: more than 20 atoms");
    BaoDual d;
    for (Mask e = 0;; ++e) {
        if (subset_of(e, a.box(e)))
            d.s |= e;
        if (e == a.top())
            break;
    }
    d.s_is_fixed = subset_of(d.s, a.box(d.s));
    for_each_bit(d.s, [&](int x) { d.atoms.push_back(x); });
    const int k = static_cast<int>(d.atoms.size());
    std::vector<Mask> succ(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (has(d.s & a.diamond_of_atom(d.atoms[j]), d.atoms[i]))
                succ[i] |= bit(j);
    d.frame = KripkeFrame(std::move(succ));
    return d;
}

std::optional<MapTable> frame_iso(const KripkeFrame& f, const KripkeFrame& g)
{
    if (f.size() > kMaxIsoPoints || g.size() > kMaxIsoPoints)
        throw SizeLimitError("frame_iso: more than 12 states");
    if (f.size() != g.size())
        return std::nullopt;
    const int n = f.size();
    MapTable img(n, -1);
    Mask used = 0;
    auto run = [&](auto&& self, int i) -> bool {
        if (i == n)
            return true;
        for (int j = 0; j < n; ++j) {
            if (has(used, j) || popcount(f.successors(i)) != popcount(g.successors(j)) ||
                popcount(f.predecessors(i)) != popcount(g.predecessors(j)) || f.related(i, i) != g.related(j, j))
                continue;
            bool ok = true;
            for (int k = 0; k < i && ok; ++k)
                ok = f.related(i, k) == g.related(j, img[k]) && f.related(k, i) == g.related(img[k], j);
            if (!ok)
                continue;
            img[i] = j;
            used |= bit(j);
            if (self(self, i + 1))
                return true;
            used &= ~bit(j);
        }
        return false;
    };
    if (run(run, 0))
        return img;
    return std::nullopt;
}

bool verify_bao_adjunction(const KripkeFrame& f)
{
    const BaoDual d = bao_dual(complex_algebra(f));
    return d.s_is_fixed && d.s == f.states() && frame_iso(d.frame, f).has_value();
}

BaoFullnessReport bao_fullness_check(const KripkeFrame& f, const KripkeFrame& g)
{
    if (f.size() > 6 || g.size() > 6)
        throw SizeLimitError("bao_fullness_check: at most 6 states");
    BaoFullnessReport r;
    const auto pms = enumerate_pmorphisms(f, g);
    r.pmorphisms = pms.size();
    const std::set<MapTable> pm_set(pms.begin(), pms.end());

    const FiniteBAO af = complex_algebra(f), ag = complex_algebra(g);
    const int n = f.size(), m = g.size();
    std::set<MapTable> morphisms;
    MapTable table(n, 0);
    if (m == 0 && n > 0) {
        r.agree = pm_set.empty();
        return r;
    }
    while (true) {
        bool hom = preimage(table, ag.top()) == af.top() && preimage(table, 0) == 0;
        for (Mask b = 0; hom; ++b) {
            const Mask pb = preimage(table, b);
            hom = preimage(table, ag.neg(b)) == af.neg(pb) && preimage(table, ag.diamond(b)) == af.diamond(pb);
            for (Mask c = 0; hom; ++c) {
                hom = preimage(table, b | c) == (pb | preimage(table, c));
                if (c == ag.top())
                    break;
            }
            if (b == ag.top())
                break;
        }
        if (hom)
            morphisms.insert(table);

        int pos = 0;
        while (pos < n && ++table[pos] == m)
            table[pos++] = 0;
        if (pos == n)
            break;
    }
    r.bao_morphisms = morphisms.size();
    r.agree = morphisms == pm_set;
    return r;
}

KripkeFrame random_frame(int n, std::mt19937_64& rng)
{
    std::vector<Mask> succ(n, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (rng() & 1u)
                succ[x] |= bit(y);
    return KripkeFrame(std::move(succ));
}

std::string to_dot(const KripkeFrame& f, const std::string& name)
{
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (int x = 0; x < f.size(); ++x)
        os << "  s" << x << " [label=\"" << x << "\"];\n";
    for (int x = 0; x < f.size(); ++x)
        for_each_bit(f.successors(x), [&](int y) { os << "  s" << x << " -> s" << y << ";\n"; });
    os << "}\n";
    return os.str();
}

nlohmann::json to_json(const KripkeFrame& f)
{
    return {{"size", f.size()}, {"relation", f.relation_bits()}};
}

KripkeFrame frame_from_json(const nlohmann::json& j)
{
    return KripkeFrame::from_relation_bits(j.at("size").get<int>(), j.at("relation").get<std::string>());
}

nlohmann::json to_json(const FiniteBAO& a)
{
    nlohmann::json rows = nlohmann::json::array();
    for (int x = 0; x < a.atoms(); ++x)
        rows.push_back(mask_to_bits(a.diamond_of_atom(x), a.atoms()));
    return {{"atoms", a.atoms()}, {"diamond", rows}};
}

FiniteBAO bao_from_json(const nlohmann::json& j)
{
    const int n = j.at("atoms").get<int>();
    const auto rows = j.at("diamond").get<std::vector<std::string>>();
    if (rows.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("BAO JSON: one diamond row per atom required");
    std::vector<Mask> d(n, 0);
    for (int x = 0; x < n; ++x) {
        if (rows[x].size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("BAO JSON: diamond row has the wrong length");
        for (int y = 0; y < n; ++y) {
            if (rows[x][y] == '1')
                d[x] |= bit(y);
            else if (rows[x][y] != '0')
                throw std::invalid_argument("BAO JSON: diamond rows contain only 0 and 1");
        }
    }
    return FiniteBAO(std::move(d));
}

} // namespace finorder
