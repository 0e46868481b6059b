#pragma once

#include "finorder/hsets.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace finorder::hierarchy {

using hsets::Id;
using hsets::Universe;

inline constexpr std::size_t kDefaultBudget = 200000;

enum class BuildStatus { complete, budget_exhausted };

const char* to_string(BuildStatus s);

/// Finite stages S_0(M) ⊆ S_1(M) ⊆ ... of hereditary nontrivial antichains.
/// levels[0] is the base; each level is a sorted id list. When the budget
/// is exhausted, levels holds the stages that were completed and
/// exhausted_stage names the stage that could not be built.
struct Hierarchy {
    std::vector<Id> base;
    std::vector<std::vector<Id>> levels;
    std::size_t budget = kDefaultBudget;
    BuildStatus status = BuildStatus::complete;
    std::optional<std::size_t> exhausted_stage;

    std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
    const std::vector<Id>& level(std::size_t stage) const { return levels.at(stage); }
    const std::vector<Id>& top() const { return levels.back(); }
    bool complete() const { return status == BuildStatus::complete; }

    /// levels[stage] \ levels[stage - 1]; the base itself for stage 0.
    std::vector<Id> fresh(std::size_t stage) const;
};

/// Calls visit(antichain) for every subset of pool with at least two
/// elements and no strict comparabilities, as sorted id lists in
/// lexicographic order of pool positions (pool is sorted first). visit
/// returns false to stop; the function returns false if stopped early.
bool for_each_nontrivial_antichain(const Universe& u, std::span<const Id> pool,
                                   const std::function<bool(const std::vector<Id>&)>& visit);

std::vector<std::vector<Id>> enumerate_nontrivial_antichains(const Universe& u,
                                                             std::span<const Id> pool);

/// Builds stages 0..depth. Fails loudly (status, exhausted_stage) when a
/// stage would hold more than budget elements.
Hierarchy build(Universe& u, std::vector<Id> base, std::size_t depth,
                std::size_t budget = kDefaultBudget);

/// Extends an existing hierarchy in place to the requested depth.
void extend(Universe& u, Hierarchy& h, std::size_t depth);

std::vector<std::size_t> growth_stats(const Hierarchy& h);

struct Violation {
    std::string check;
    std::size_t stage = 0;
    std::vector<Id> witness;
};

struct StageCheck {
    std::size_t stage = 0;
    bool increasing = true;  // levels[stage] ⊆ levels[stage + 1]
    bool downset = true;     // levels[stage] is a downset of the top level
    bool antichain = true;   // levels[stage + 1] \ levels[stage] is an antichain
    bool fresh = true;       // each new element of stage + 1 uses an element new at stage
    bool members = true;     // each new element of stage + 1 is a nontrivial antichain of stage
};

struct StageReport {
    std::vector<StageCheck> stages;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

StageReport verify_stage_properties(const Universe& u, const Hierarchy& h);

/// S_α(M) = S(M) ∩ S_α(M') for antichains M ⊆ M', with S(M) approximated by
/// S_depth(M). Throws std::invalid_argument on hypothesis violations.
struct RestrictionReport {
    std::vector<bool> stage_equal;
    std::vector<Violation> violations;
    BuildStatus status = BuildStatus::complete;
    bool ok() const { return status == BuildStatus::complete && violations.empty(); }
};

RestrictionReport verify_restriction(Universe& u, std::span<const Id> m, std::span<const Id> m_prime,
                                     std::size_t depth, std::size_t budget = kDefaultBudget);

/// For M inside some stage of M', finds the least offset c <= depth with
/// S_α(M) ⊆ S_{α+c}(M') for every α <= depth.
struct ContainmentReport {
    std::optional<std::size_t> offset;
    std::optional<std::size_t> base_stage;  // least k with M ⊆ S_k(M')
    BuildStatus status = BuildStatus::complete;
    bool ok() const { return offset.has_value(); }
};

ContainmentReport verify_containment(Universe& u, std::span<const Id> m, std::span<const Id> m_prime,
                                     std::size_t depth, std::size_t budget = kDefaultBudget);

/// {x, m'} for x over S(M), where M ∪ {m'} is an antichain and m' ∉ M.
struct PairResult {
    Id pair = 0;
    bool nontrivial_antichain = false;
};

PairResult pair_with(Universe& u, std::span<const Id> base, Id x, Id m_prime);

struct FanResult {
    std::vector<Id> pairs;  // in the order of the input set
    std::vector<std::pair<Id, Id>> comparable;  // p < q among the pairs
    std::vector<Id> degenerate;                 // pairs that are not nontrivial antichains
    bool ok() const { return comparable.empty() && degenerate.empty(); }
};

FanResult fan(Universe& u, std::span<const Id> base, std::span<const Id> a, Id m_prime);

/// Finite reflection of unbounded growth over a three-element antichain:
/// level growth of S(M3), then the doubletons M' fanned against the triple.
struct GrowthWitness {
    std::vector<std::size_t> growth;      // |S_{α+1}(M3) \ S_α(M3)|
    std::vector<std::size_t> fan_sizes;   // |fan of S_d(M')| for d = 0..fan_depth
    std::vector<bool> fan_antichain;
    std::vector<bool> pairs_nontrivial;
    BuildStatus status = BuildStatus::complete;
    std::optional<std::size_t> exhausted_stage;
    bool ok() const;
};

GrowthWitness growth_witness(Universe& u, std::span<const Id> m3, std::size_t depth,
                             std::size_t fan_depth, std::size_t budget = kDefaultBudget);

/// Hasse diagram of one level; edges are covering pairs of the strict order.
std::string level_dot(const Universe& u, const Hierarchy& h, std::size_t stage);

} // namespace finorder::hierarchy
