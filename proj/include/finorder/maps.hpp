#pragma once

#include "finorder/hierarchy.hpp"
#include "finorder/order.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace finorder {

/// A total function between finite carriers; table[x] is the image of x.
using MapTable = std::vector<int>;

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

bool is_total(const FinitePreorder& dom, const FinitePreorder& cod, std::span<const int> f);
bool is_monotone(const FinitePreorder& dom, const FinitePreorder& cod, std::span<const int> f);

Mask image(std::span<const int> f, Mask s);
Mask preimage(std::span<const int> f, Mask t);
bool is_injective_on(std::span<const int> f, Mask s);
MapTable compose(std::span<const int> g, std::span<const int> f);  // g after f
MapTable identity_map(int n);

/// Topological definition: preimages of downsets are downsets (continuity)
/// and images of downsets are downsets.
bool is_open_by_images(const FinitePreorder& dom, const FinitePreorder& cod, std::span<const int> f);
/// f[↓p] = ↓f(p) for every p.
bool is_open_by_down_sets(const FinitePreorder& dom, const FinitePreorder& cod, std::span<const int> f);
/// f⁻¹[↑q] = ↑f⁻¹(q) for every q.
bool is_open_by_up_sets(const FinitePreorder& dom, const FinitePreorder& cod, std::span<const int> f);

struct OpenMapSearch {
    std::vector<MapTable> maps;     // lexicographic order
    std::uint64_t nodes = 0;        // partial assignments examined
};

/// Every open map dom -> cod, optionally with the image of x restricted to
/// allowed[x]. Backtracks over a linear extension of dom, pruning on
/// monotonicity and on f[↓p] = ↓f(p) as soon as ↓p is assigned. Throws
/// BudgetExceeded past node_budget partial assignments.
OpenMapSearch enumerate_open_maps(const FinitePreorder& dom, const FinitePreorder& cod,
                                  std::span<const Mask> allowed = {},
                                  std::uint64_t node_budget = kDefaultNodeBudget);

/// Streaming form of enumerate_open_maps: visit sees each open map once, in
/// search order. With injective_on set, only maps injective on those points
/// are produced. Returns the number of nodes examined.
std::uint64_t for_each_open_map(const FinitePreorder& dom, const FinitePreorder& cod,
                                std::span<const Mask> allowed, std::uint64_t node_budget,
                                Mask injective_on, const std::function<void(const MapTable&)>& visit);

/// The four-point base with its hierarchy and materialized stages, shared
/// by the injectivity experiment and the product-obstruction search.
struct FourPointSetup {
    hsets::FourPointBase base;
    hierarchy::Hierarchy hierarchy;
    std::vector<StagePoset> stages;

    Mask base_mask(std::size_t stage) const { return stages.at(stage).mask_of(base.base); }
};

FourPointSetup four_point_setup(hsets::BaseMode mode, std::size_t depth);

/// f_i(x) = 0 for x in {m0, m_i}, 1 otherwise; i is 1 or 2.
MapTable projection_probe(const FourPointSetup& s, std::size_t stage, int i);

struct InjectivityReport {
    std::size_t stage = 0;
    std::uint64_t injective_on_base = 0;  // open maps injective on the base
    std::uint64_t violations = 0;
    std::uint64_t nodes = 0;
    std::optional<MapTable> witness;
    bool ok() const { return violations == 0; }
};

/// Every open map from the stage to target that is injective on base_mask
/// must be injective on the whole stage. The search only visits maps that
/// are injective on base_mask.
InjectivityReport injectivity_experiment(const FinitePreorder& stage, Mask base_mask,
                                         const FinitePreorder& target,
                                         std::uint64_t node_budget = kDefaultNodeBudget);

/// All open f: q -> p with p1∘f = f1 and p2∘f = f2.
OpenMapSearch mediating_search(const FinitePreorder& q, std::span<const int> f1, std::span<const int> f2,
                               const FinitePreorder& p, std::span<const int> p1, std::span<const int> p2,
                               std::uint64_t node_budget = kDefaultNodeBudget);

enum class CertificateKind { none, empty_mediating_set, injectivity_bound };

const char* to_string(CertificateKind k);

struct StageAttempt {
    std::size_t stage = 0;
    std::size_t stage_size = 0;
    std::uint64_t candidates_examined = 0;
    std::size_t mediating_found = 0;
    bool budget_exceeded = false;
    bool all_injective = true;
};

/// Outcome of testing whether (p, p1, p2) can be a product of the Sierpiński
/// space with itself. empty_mediating_set: no open map makes the diagram
/// commute. injectivity_bound: the search was cut off, but the stage is
/// larger than p and every mediating map would have to be injective.
struct ObstructionVerdict {
    std::vector<StageAttempt> attempts;
    CertificateKind kind = CertificateKind::none;
    std::optional<std::size_t> stage;
    bool anomaly = false;  // a mediating map that is not injective on the stage
    bool refuted() const { return kind != CertificateKind::none; }
};

ObstructionVerdict product_obstruction(const FourPointSetup& s, const FinitePreorder& p,
                                       std::span<const int> p1, std::span<const int> p2,
                                       std::size_t min_stage, std::size_t max_stage,
                                       std::uint64_t node_budget = kDefaultNodeBudget);

nlohmann::json to_json(const ObstructionVerdict& v);

} // namespace finorder
