#include "finorder/heyting.hpp"

#include <algorithm>
#include <set>

namespace finorder {

DownsetAlgebra::DownsetAlgebra(FinitePreorder base)
    : base_(std::move(base)), elements_(all_downsets(base_))
{
    for (std::size_t i = 0; i < elements_.size(); ++i)
        index_.emplace(elements_[i], i);
}

std::optional<std::size_t> DownsetAlgebra::index_of(Mask a) const
{
    if (auto it = index_.find(a); it != index_.end())
        return it->second;
    return std::nullopt;
}

Mask DownsetAlgebra::implies(Mask a, Mask b) const
{
    Mask out = 0;
    for (int p = 0; p < base_.size(); ++p)
        if (subset_of(base_.down(p) & a, b))
            out |= bit(p);
    return out;
}

Mask implies_by_search(const DownsetAlgebra& alg, Mask a, Mask b)
{
    std::vector<Mask> solutions;
    for (Mask x : alg.elements())
        if (subset_of(a & x, b))
            solutions.push_back(x);
    for (Mask x : solutions)
        if (std::all_of(solutions.begin(), solutions.end(), [&](Mask y) { return subset_of(y, x); }))
            return x;
    throw std::logic_error("implies_by_search: no largest solution");
}

bool is_complete_ha_morphism(const DownsetAlgebra& dom, const DownsetAlgebra& cod, std::span<const std::size_t> table)
{
    if (table.size() != dom.size())
        return false;
    for (auto t : table)
        if (t >= cod.size())
            return false;
    auto img = [&](Mask a) { return cod.element(table[*dom.index_of(a)]); };
    if (img(dom.bottom()) != cod.bottom() || img(dom.top()) != cod.top())
        return false;
    for (Mask a : dom.elements())
        for (Mask b : dom.elements()) {
            if (img(a & b) != (img(a) & img(b)) || img(a | b) != (img(a) | img(b)))
                return false;
            if (img(dom.implies(a, b)) != cod.implies(img(a), img(b)))
                return false;
        }
    return true;
}

PreimageMorphism preimage_morphism(const DownsetAlgebra& dom_alg, const DownsetAlgebra& cod_alg,
                                   std::span<const int> f)
{
    if (!is_total(dom_alg.base(), cod_alg.base(), f))
        throw std::invalid_argument("preimage_morphism: map is not total");
    PreimageMorphism out;
    AlgebraMap table(cod_alg.size());
    for (std::size_t i = 0; i < cod_alg.size(); ++i) {
        const Mask b = cod_alg.element(i);
        auto idx = dom_alg.index_of(preimage(f, b));
        if (!idx) {
            out.witness = std::make_pair(b, b);
            return out;
        }
        table[i] = *idx;
    }
    for (Mask a : cod_alg.elements())
        for (Mask b : cod_alg.elements())
            if (preimage(f, cod_alg.implies(a, b)) != dom_alg.implies(preimage(f, a), preimage(f, b))) {
                out.witness = std::make_pair(a, b);
                return out;
            }
    out.table = std::move(table);
    return out;
}

JoinIrreducibles join_irreducibles(const DownsetAlgebra& alg)
{
    JoinIrreducibles out;
    for (Mask e : alg.elements()) {
        if (e == 0)
            continue;
        Mask below = 0;
        for (Mask d : alg.elements())
            if (d != e && subset_of(d, e))
                below |= d;
        if (below != e)
            out.elements.push_back(e);
    }
    if (out.elements.size() > static_cast<std::size_t>(kMaxPoints))
        throw SizeLimitError("join_irreducibles: more than 64 elements");
    const int n = static_cast<int>(out.elements.size());
    std::vector<Mask> down(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (subset_of(out.elements[j], out.elements[i]))
                down[i] |= bit(j);
    out.order = FinitePreorder::from_down_sets(std::move(down));
    return out;
}

bool verify_adjunction_unit(const FinitePreorder& p)
{
    const DownsetAlgebra alg(p);
    return poset_iso(join_irreducibles(alg).order, p).has_value();
}

std::vector<AlgebraMap> enumerate_complete_morphisms(const DownsetAlgebra& dom, const DownsetAlgebra& cod)
{
    const auto ji = join_irreducibles(dom);
    const std::size_t k = ji.elements.size();
    double candidates = 1;
    for (std::size_t i = 0; i < k; ++i)
        candidates *= static_cast<double>(cod.size());
    if (candidates > 2e7)
        throw SizeLimitError("enumerate_complete_morphisms: too many candidate assignments");

    std::vector<AlgebraMap> out;
    std::vector<std::size_t> choice(k, 0);
    while (true) {
        AlgebraMap table(dom.size());
        for (std::size_t i = 0; i < dom.size(); ++i) {
            Mask img = 0;
            for (std::size_t j = 0; j < k; ++j)
                if (subset_of(ji.elements[j], dom.element(i)))
                    img |= cod.element(choice[j]);
            auto idx = cod.index_of(img);
            table[i] = idx ? *idx : cod.size();  // out of range fails the check below
        }
        if (is_complete_ha_morphism(dom, cod, table))
            out.push_back(std::move(table));

        std::size_t pos = 0;
        while (pos < k && ++choice[pos] == cod.size())
            choice[pos++] = 0;
        if (pos == k)
            break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FullnessReport fullness_check(const FinitePreorder& p, const FinitePreorder& q)
{
    const DownsetAlgebra op(p), oq(q);
    const auto maps = enumerate_open_maps(p, q);
    const auto morphisms = enumerate_complete_morphisms(oq, op);

    FullnessReport r;
    r.open_maps = maps.maps.size();
    r.morphisms = morphisms.size();
    std::set<AlgebraMap> images;
    for (const auto& f : maps.maps) {
        const auto pm = preimage_morphism(op, oq, f);
        if (!pm.table) {
            r.surjective = false;
            continue;
        }
        images.insert(*pm.table);
    }
    r.injective = images.size() == maps.maps.size();
    for (const auto& m : morphisms)
        if (!images.count(m))
            r.surjective = false;
    return r;
}

LatticeRepresentation from_distributive_lattice(const FinitePreorder& lattice)
{
    const int n = lattice.size();
    if (n == 0 || !lattice.is_poset())
        throw std::invalid_argument("from_distributive_lattice: not a nonempty partial order");

    auto least_of = [&](Mask s) -> int {
        for (int x = 0; x < n; ++x)
            if (has(s, x) && subset_of(s, lattice.up(x)))
                return x;
        return -1;
    };
    int bottom = least_of(lattice.points());
    if (bottom < 0)
        throw std::invalid_argument("from_distributive_lattice: no least element");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (least_of(lattice.up(a) & lattice.up(b)) < 0)
                throw std::invalid_argument("from_distributive_lattice: missing join");

    // Join-irreducibles: non-bottom elements with exactly one lower cover.
    std::vector<int> ji;
    for (int x = 0; x < n; ++x) {
        if (x == bottom)
            continue;
        int lower_covers = 0;
        for (int y = 0; y < n; ++y) {
            if (!lattice.less(y, x))
                continue;
            bool between = false;
            for (int z = 0; z < n && !between; ++z)
                between = lattice.less(y, z) && lattice.less(z, x);
            lower_covers += between ? 0 : 1;
        }
        if (lower_covers == 1)
            ji.push_back(x);
    }
    const int k = static_cast<int>(ji.size());
    std::vector<Mask> down(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (lattice.leq(ji[j], ji[i]))
                down[i] |= bit(j);

    LatticeRepresentation rep{DownsetAlgebra(FinitePreorder::from_down_sets(std::move(down))), {}};
    std::vector<Mask> shadow(n, 0);
    for (int x = 0; x < n; ++x)
        for (int i = 0; i < k; ++i)
            if (lattice.leq(ji[i], x))
                shadow[x] |= bit(i);
    if (rep.algebra.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("from_distributive_lattice: lattice is not distributive");
    for (int x = 0; x < n; ++x) {
        auto idx = rep.algebra.index_of(shadow[x]);
        if (!idx)
            throw std::invalid_argument("from_distributive_lattice: lattice is not distributive");
        rep.point_of.push_back(*idx);
        for (int y = 0; y < n; ++y)
            if (lattice.leq(x, y) != subset_of(shadow[x], shadow[y]))
                throw std::invalid_argument("from_distributive_lattice: lattice is not distributive");
    }
    return rep;
}

nlohmann::json to_json(const DownsetAlgebra& alg)
{
    nlohmann::json j;
    j["base"] = to_json(alg.base());
    auto& ds = j["downsets"] = nlohmann::json::array();
    for (Mask e : alg.elements())
        ds.push_back(mask_to_bits(e, alg.base().size()));
    return j;
}

} // namespace finorder
