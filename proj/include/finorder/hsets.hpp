#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace finorder::hsets {

using Id = std::uint32_t;

/// A finite partial order on atom labels. Built from generating pairs
/// (a <= b); the reflexive-transitive closure is taken and antisymmetry is
/// checked, so a cycle of distinct labels is rejected.
class BasePoset {
public:
    BasePoset() = default;
    BasePoset(std::vector<std::string> labels,
              const std::vector<std::pair<std::string, std::string>>& leq_pairs);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<std::size_t> index_of(std::string_view label) const;

    bool leq(std::size_t a, std::size_t b) const { return leq_[a * labels_.size() + b] != 0; }
    bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }

    // Strict pairs (a < b), row-major.
    std::vector<std::pair<std::string, std::string>> strict_pairs() const;

private:
    std::vector<std::string> labels_;
    std::vector<char> leq_;
};

/// Append-only universe of hereditary sets over a base of atoms.
///
/// Atoms are interned first, in base order, so the atom with base index i
/// has id i. Sets are interned by their sorted, duplicate-free child list;
/// equal structure means equal id. The strict order x < y holds iff x lies in
/// the transitive closure of y, where the closure of an atom is the set of
/// atoms strictly below it in the base order. A set is therefore never below
/// an atom.
///
/// Closures are computed eagerly at intern time, so all const member
/// functions are safe to call concurrently once interning has stopped.
class Universe {
public:
    explicit Universe(BasePoset base = {});

    const BasePoset& base() const { return base_; }
    std::size_t size() const { return nodes_.size(); }

    Id atom(std::string_view label) const;
    Id intern(std::vector<Id> children);
    std::optional<Id> find(std::vector<Id> children) const;

    bool is_atom(Id x) const { return node(x).is_atom; }
    std::size_t atom_index(Id x) const;
    std::span<const Id> children(Id x) const { return node(x).children; }

    /// Sorted transitive closure, from the intern-time cache.
    std::span<const Id> closure(Id x) const { return node(x).closure; }

    bool lt(Id x, Id y) const;
    bool leq(Id x, Id y) const { return x == y || lt(x, y); }

    /// x < y by recursion on membership: x < y iff x <= c for some child c
    /// of y. Does not touch the closure cache.
    bool lt_recursive(Id x, Id y) const;

    /// Closure recomputed by a worklist walk over membership.
    std::vector<Id> transitive_closure_uncached(Id x) const;

    void set_name(Id x, std::string name);
    std::optional<std::string> name(Id x) const;
    /// Registered name, atom label, or "{a,b,...}" built recursively.
    std::string format(Id x) const;

    /// One element per line: `id := atom <label>` or `id := { id, id }`.
    std::string dump() const;
    static Universe load(std::string_view text, BasePoset base);

private:
    struct Node {
        bool is_atom = false;
        std::size_t atom = 0;
        std::vector<Id> children;
        std::vector<Id> closure;
    };

    const Node& node(Id x) const;
    static std::vector<Id> canonical(std::vector<Id> children);

    BasePoset base_;
    std::vector<Node> nodes_;
    std::map<std::vector<Id>, Id> index_;
    std::map<Id, std::string> names_;
};

std::vector<Id> transitive_closure(const Universe& u, Id x);

bool is_antichain(const Universe& u, std::span<const Id> s);
bool is_nontrivial_antichain(const Universe& u, std::span<const Id> s);
bool is_chain(const Universe& u, std::span<const Id> s);

/// Elements together with everything in their transitive closures, sorted.
std::vector<Id> default_scope(const Universe& u, std::span<const Id> elements);

/// Convexity of m relative to a finite scope: no q in scope \ m lies between
/// two elements of m. Throws std::invalid_argument if m is not inside scope.
bool is_convex(const Universe& u, std::span<const Id> m, std::span<const Id> scope);
bool is_convex(const Universe& u, std::span<const Id> m);

/// True iff m ∩ ↓x is a chain for every x in m.
bool chain_hypothesis(const Universe& u, std::span<const Id> m);

/// von Neumann ordinal k, interned with the name "k".
Id ordinal(Universe& u, int k);

enum class BaseMode { abstract, concrete };

/// The four-element base m0 < m1, m2, m3 with {m1, m2, m3} an antichain.
/// Abstract mode uses atoms ordered by a base poset. Concrete mode builds
/// m0 = {{0}} and mi = {m0, i} from von Neumann ordinals.
struct FourPointBase {
    Universe universe;
    std::vector<Id> base;  // sorted
    Id m0 = 0, m1 = 0, m2 = 0, m3 = 0;
    BaseMode mode = BaseMode::abstract;
};

FourPointBase four_point_base(BaseMode mode);

/// Three incomparable atoms m1, m2, m3.
struct TripleBase {
    Universe universe;
    std::vector<Id> base;
};

TripleBase antichain3_base();

std::vector<Id> sorted_unique(std::vector<Id> ids);
bool contains(std::span<const Id> sorted, Id x);

} // namespace finorder::hsets
