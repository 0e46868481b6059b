#pragma once

#include "finorder/hierarchy.hpp"
#include "finorder/order.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace finorder::suites {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "finorder";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr std::size_t kMaxWitnesses = 20;

/// Exit codes shared by every command.
enum ExitCode : int { exit_ok = 0, exit_violations = 1, exit_budget = 2 };

struct RunConfig {
    std::size_t depth = 2;
    std::size_t budget = hierarchy::kDefaultBudget;
    std::uint64_t seed = kDefaultSeed;
    std::string base = "thm33";   // thm33 | antichain3 | file:PATH
    int max_size = 3;
    int states = 3;
    std::uint64_t samples = 10000;
    std::uint64_t node_budget = 50'000'000;
};

/// A finished report; exit_code follows ExitCode.
struct Report {
    nlohmann::json json;
    int exit_code = exit_ok;
};

const std::vector<std::string>& suite_names();

/// FNV-1a over the compact JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

/// Base for hierarchy commands. file:PATH reads {"labels": [...], "leq": [[a, b], ...]}.
struct LoadedBase {
    hsets::Universe universe;
    std::vector<hsets::Id> base;
};

LoadedBase load_base(const std::string& spec);

Report hierarchy_build(const RunConfig& c);
Report hierarchy_stats(const RunConfig& c);

/// DOT for one level (json = false) or the full export JSON: base ids,
/// per-level id arrays and the universe dump.
std::string hierarchy_export(const RunConfig& c, std::size_t level, bool json);

/// Throws std::invalid_argument on an unknown suite name.
Report verify(const std::string& suite, const RunConfig& c);

/// P by name (product2x2 | singleton | sierpinski | file:PATH with preorder JSON).
FinitePreorder named_poset(const std::string& spec);

/// Every pair of open maps P -> Sierpiński is tried against stages 1..depth
/// of the four-point base. posets lists the P to try.
Report obstruct(const std::vector<FinitePreorder>& posets, const RunConfig& c);

/// Every poset with 1..n points, one per isomorphism class.
std::vector<FinitePreorder> posets_up_to(int n);

} // namespace finorder::suites
