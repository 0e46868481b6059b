#pragma once

#include "finorder/maps.hpp"
#include "finorder/order.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace finorder {

/// A finite set of states with an arbitrary binary relation R.
class KripkeFrame {
public:
    KripkeFrame() = default;
    /// successors[x] = R[x].
    explicit KripkeFrame(std::vector<Mask> successors);
    static KripkeFrame from_pairs(int n, std::span<const std::pair<int, int>> pairs);
    /// Row-major string: character x*n + y is '1' iff x R y.
    static KripkeFrame from_relation_bits(int n, std::string_view bits);
    /// Frame with code's bit (x*n + y) set iff x R y; n <= 8.
    static KripkeFrame from_code(int n, std::uint64_t code);

    int size() const { return static_cast<int>(succ_.size()); }
    Mask states() const { return full_mask(size()); }
    bool related(int x, int y) const { return has(succ_[x], y); }
    Mask successors(int x) const { return succ_[x]; }
    Mask predecessors(int y) const { return pred_[y]; }

    bool is_reflexive() const;
    bool is_transitive() const;
    bool is_preorder() const { return is_reflexive() && is_transitive(); }
    std::string relation_bits() const;

    friend bool operator==(const KripkeFrame& a, const KripkeFrame& b) { return a.succ_ == b.succ_; }

private:
    std::vector<Mask> succ_;
    std::vector<Mask> pred_;
};

/// The frame of P^op: x R y iff y <= x, so R[x] = ↓x.
KripkeFrame frame_of_opposite(const FinitePreorder& p);

Mask image_under(std::span<const int> f, Mask s);

/// f[R[x]] = S[f(x)] for every x.
bool is_pmorphism(const KripkeFrame& f_dom, const KripkeFrame& g_cod, std::span<const int> f);
/// f⁻¹[S⁻¹(y)] = R⁻¹[f⁻¹(y)] for every y.
bool is_pmorphism_by_preimages(const KripkeFrame& f_dom, const KripkeFrame& g_cod, std::span<const int> f);

/// All p-morphisms dom -> cod, by pruned search over the states of dom.
std::vector<MapTable> enumerate_pmorphisms(const KripkeFrame& dom, const KripkeFrame& cod,
                                           std::uint64_t node_budget = kDefaultNodeBudget);

/// Largest R-upset on which R is reflexive and transitive, ordered by the
/// converse of R. states lists the carrier in increasing order; point i of
/// order is states[i].
struct Coreflection {
    Mask carrier = 0;
    std::vector<int> states;
    FinitePreorder order;
};

/// Greatest-fixpoint pruning: drop states that are irreflexive, leave the
/// current set, or break transitivity, until nothing changes.
Coreflection coreflect(const KripkeFrame& f);

inline constexpr int kMaxExhaustiveStates = 20;

/// Union of every R-upset on which R is a preorder, by enumerating subsets.
Mask coreflect_carrier_exhaustive(const KripkeFrame& f);

struct CoreflectionReport {
    std::size_t pmorphisms = 0;        // p-morphisms P^op -> F
    std::size_t open_maps = 0;         // open maps P -> R(F)
    std::size_t outside_carrier = 0;   // p-morphisms whose image leaves the carrier
    std::size_t factor_failures = 0;   // factorizations that are not open or not unique
    bool bijective = true;             // composing with the inclusion matches both sides
    bool ok() const { return outside_carrier == 0 && factor_failures == 0 && bijective && pmorphisms == open_maps; }
};

CoreflectionReport verify_coreflection(const KripkeFrame& f, const FinitePreorder& p);

/// Finite Boolean algebra of subsets of `atoms` points with an operator
/// stored on atoms and extended to every element by unions.
class FiniteBAO {
public:
    FiniteBAO() = default;
    explicit FiniteBAO(std::vector<Mask> diamond_of_atom);

    int atoms() const { return static_cast<int>(diamond_.size()); }
    Mask top() const { return full_mask(atoms()); }
    Mask neg(Mask a) const { return top() & ~a; }
    Mask diamond_of_atom(int x) const { return diamond_[x]; }
    Mask diamond(Mask a) const;
    Mask box(Mask a) const { return neg(diamond(neg(a))); }

private:
    std::vector<Mask> diamond_;
};

/// (℘(X), ◇_R) with ◇U = R⁻¹[U].
FiniteBAO complex_algebra(const KripkeFrame& f);

/// a <= ◇a and ◇◇a <= ◇a, checked on atoms (◇ is additive by construction).
bool is_closure_algebra(const FiniteBAO& a);
/// The same axioms checked on every element.
bool is_closure_algebra_by_elements(const FiniteBAO& a);

/// R is a preorder iff ℘(F) is a closure algebra.
bool closure_iff_preorder(const KripkeFrame& f);

struct InequalityReport {
    std::uint64_t pairs_checked = 0;
    std::uint64_t violations = 0;
    std::optional<std::pair<Mask, Mask>> witness;
    bool ok() const { return violations == 0; }
};

/// □a ∧ ◇b <= ◇(a ∧ b) over all pairs, or over `samples` seeded random
/// pairs when the algebra has more than 8 atoms.
InequalityReport box_diamond_inequality(const FiniteBAO& a, std::uint64_t seed = 0, std::uint64_t samples = 65536);

/// Dual frame of a finite BAO: s is the join of every a with a <= □a, and
/// the frame lives on the atoms under s with x R y iff x <= s ∧ ◇y.
struct BaoDual {
    Mask s = 0;
    bool s_is_fixed = false;  // s <= □s
    std::vector<int> atoms;   // atoms under s, increasing
    KripkeFrame frame;
};

BaoDual bao_dual(const FiniteBAO& a);

/// Lexicographically least frame isomorphism, if any.
std::optional<MapTable> frame_iso(const KripkeFrame& f, const KripkeFrame& g);

/// L(℘(F)) ≅ F.
bool verify_bao_adjunction(const KripkeFrame& f);

/// p-morphisms F -> G against complete BAO morphisms ℘(G) -> ℘(F). The
/// morphism candidates are preimage maps of functions F -> G; each is
/// checked against the Boolean and diamond laws on every element.
struct BaoFullnessReport {
    std::size_t pmorphisms = 0;
    std::size_t bao_morphisms = 0;
    bool agree = true;  // the two families coincide
    bool ok() const { return agree && pmorphisms == bao_morphisms; }
};

BaoFullnessReport bao_fullness_check(const KripkeFrame& f, const KripkeFrame& g);

KripkeFrame random_frame(int n, std::mt19937_64& rng);

std::string to_dot(const KripkeFrame& f, const std::string& name = "F");
nlohmann::json to_json(const KripkeFrame& f);
KripkeFrame frame_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FiniteBAO& a);
FiniteBAO bao_from_json(const nlohmann::json& j);

} // namespace finorder
