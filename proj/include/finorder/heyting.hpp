#pragma once

#include "finorder/maps.hpp"
#include "finorder/order.hpp"

#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace finorder {

/// The complete Heyting algebra O(P) of downsets of a finite preorder,
/// ordered by inclusion. Elements are masks over the points of P; element
/// indices follow increasing mask order.
class DownsetAlgebra {
public:
    explicit DownsetAlgebra(FinitePreorder base);

    const FinitePreorder& base() const { return base_; }
    std::span<const Mask> elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    Mask element(std::size_t i) const { return elements_.at(i); }
    std::optional<std::size_t> index_of(Mask a) const;
    bool contains(Mask a) const { return index_.count(a) != 0; }

    Mask bottom() const { return 0; }
    Mask top() const { return base_.points(); }
    static Mask meet(Mask a, Mask b) { return a & b; }
    static Mask join(Mask a, Mask b) { return a | b; }
    static bool leq(Mask a, Mask b) { return subset_of(a, b); }

    /// Residual of meet: {p : ↓p ∩ a ⊆ b}.
    Mask implies(Mask a, Mask b) const;
    Mask neg(Mask a) const { return implies(a, bottom()); }

private:
    FinitePreorder base_;
    std::vector<Mask> elements_;
    std::unordered_map<Mask, std::size_t> index_;
};

/// Largest x in the algebra with a ∩ x ⊆ b, found by scanning every
/// element. Used to cross-check DownsetAlgebra::implies.
Mask implies_by_search(const DownsetAlgebra& alg, Mask a, Mask b);

/// table[i] is the index in cod of the image of dom.element(i).
using AlgebraMap = std::vector<std::size_t>;

/// Preserves bottom, top, binary meets and joins, and implication. On a
/// finite algebra this is a complete Heyting morphism.
bool is_complete_ha_morphism(const DownsetAlgebra& dom, const DownsetAlgebra& cod, std::span<const std::size_t> table);

/// O(f) = f⁻¹[-]: O(cod) -> O(dom). Rejected non-open maps come back with a
/// witness: either a downset whose preimage is not a downset (b, b), or a
/// pair (a, b) on which implication is not preserved.
struct PreimageMorphism {
    std::optional<AlgebraMap> table;
    std::optional<std::pair<Mask, Mask>> witness;
};

PreimageMorphism preimage_morphism(const DownsetAlgebra& dom_alg, const DownsetAlgebra& cod_alg,
                                   std::span<const int> f);

struct JoinIrreducibles {
    std::vector<Mask> elements;  // increasing mask order
    FinitePreorder order;        // inclusion
};

/// Elements that are not the join of the elements strictly below them.
JoinIrreducibles join_irreducibles(const DownsetAlgebra& alg);

/// L(O(P)) ≅ P.
bool verify_adjunction_unit(const FinitePreorder& p);

/// All complete Heyting morphisms dom -> cod. Candidates are generated from
/// images of join-irreducibles and then checked against the full definition.
std::vector<AlgebraMap> enumerate_complete_morphisms(const DownsetAlgebra& dom, const DownsetAlgebra& cod);

struct FullnessReport {
    std::size_t open_maps = 0;
    std::size_t morphisms = 0;
    bool injective = true;   // distinct open maps give distinct morphisms
    bool surjective = true;  // every morphism is O(f) for some open f
    bool ok() const { return injective && surjective && open_maps == morphisms; }
};

/// Open maps p -> q against complete Heyting morphisms O(q) -> O(p).
FullnessReport fullness_check(const FinitePreorder& p, const FinitePreorder& q);

/// A finite distributive lattice given by its order, rebuilt as the downsets
/// of its join-irreducible poset. point_of[x] is the algebra index of
/// lattice element x. Throws std::invalid_argument if the order is not a
/// distributive lattice.
struct LatticeRepresentation {
    DownsetAlgebra algebra;
    std::vector<std::size_t> point_of;
};

LatticeRepresentation from_distributive_lattice(const FinitePreorder& lattice);

nlohmann::json to_json(const DownsetAlgebra& alg);

} // namespace finorder
