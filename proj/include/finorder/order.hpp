#pragma once

#include "finorder/bits.hpp"
#include "finorder/hierarchy.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace finorder {

/// Raised when an exhaustive routine is asked for more than it can enumerate.
class SizeLimitError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A reflexive, transitive relation on points 0..size-1, read as an
/// Alexandrov space whose open sets are the downsets.
class FinitePreorder {
public:
    FinitePreorder() = default;

    /// down_rows[i] is the set of j with j <= i. Throws std::invalid_argument
    /// unless the relation is reflexive and transitive.
    static FinitePreorder from_down_sets(std::vector<Mask> down_rows);

    /// Reflexive-transitive closure of the given (a <= b) pairs.
    static FinitePreorder generated(int n, std::span<const std::pair<int, int>> leq_pairs);

    /// Row-major string: character i*n + j is '1' iff i <= j.
    static FinitePreorder from_relation_bits(int n, std::string_view bits);

    static FinitePreorder discrete(int n);
    static FinitePreorder chain(int n);

    int size() const { return static_cast<int>(down_.size()); }
    Mask points() const { return full_mask(size()); }

    bool leq(int a, int b) const { return has(down_[b], a); }
    bool less(int a, int b) const { return leq(a, b) && !leq(b, a); }
    Mask down(int a) const { return down_[a]; }
    Mask up(int a) const { return up_[a]; }

    bool is_poset() const;
    FinitePreorder opposite() const;
    std::string relation_bits() const;

    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(int i) const;
    FinitePreorder& with_labels(std::vector<std::string> labels);

    friend bool operator==(const FinitePreorder& a, const FinitePreorder& b) { return a.down_ == b.down_; }

private:
    std::vector<Mask> down_;
    std::vector<Mask> up_;
    std::vector<std::string> labels_;
};

Mask down_closure(const FinitePreorder& p, Mask s);
Mask up_closure(const FinitePreorder& p, Mask s);
bool is_downset(const FinitePreorder& p, Mask s);
bool is_upset(const FinitePreorder& p, Mask s);

inline constexpr int kMaxDownsetPoints = 20;

/// Every downset exactly once, in increasing mask order.
std::vector<Mask> all_downsets(const FinitePreorder& p);

/// No infinite strictly decreasing sequence. On a finite carrier the strict
/// part is always acyclic, so this reports whether the preorder is a poset,
/// which is the sense the categories of well-founded posets need.
bool is_wellfounded(const FinitePreorder& p);

/// Hasse diagram: pairs (a, b) with a < b and nothing strictly between.
std::vector<std::pair<int, int>> covers(const FinitePreorder& p);

inline constexpr int kMaxIsoPoints = 12;

/// Lexicographically least order isomorphism p -> q, if any.
std::optional<std::vector<int>> poset_iso(const FinitePreorder& p, const FinitePreorder& q);

/// Relabel points: result has point perm[i] where p has point i.
FinitePreorder permuted(const FinitePreorder& p, std::span<const int> perm);

/// One representative per isomorphism class, n <= 5.
std::vector<FinitePreorder> enumerate_posets(int n);

/// All preorders on n <= 4 labelled points, or one per isomorphism class.
std::vector<FinitePreorder> enumerate_preorders(int n, bool up_to_iso);

/// Random poset: random DAG on a shuffled order, then closure.
FinitePreorder random_poset(int n, std::mt19937_64& rng);
/// Random preorder: closure of a random digraph (cycles allowed).
FinitePreorder random_preorder(int n, std::mt19937_64& rng);

FinitePreorder sierpinski();
FinitePreorder singleton();
/// Pointwise order on pairs; point a * |q| + b is (a, b).
FinitePreorder product(const FinitePreorder& p, const FinitePreorder& q);

/// One level of a hierarchy as a poset; point i is ids[i].
struct StagePoset {
    FinitePreorder poset;
    std::vector<hsets::Id> ids;

    int index_of(hsets::Id id) const;
    Mask mask_of(std::span<const hsets::Id> ids) const;
};

StagePoset materialize(const hsets::Universe& u, const hierarchy::Hierarchy& h, std::size_t stage);

std::string to_dot(const FinitePreorder& p, const std::string& name = "P");
nlohmann::json to_json(const FinitePreorder& p);
FinitePreorder preorder_from_json(const nlohmann::json& j);

} // namespace finorder
