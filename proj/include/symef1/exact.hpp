#pragma once

// Complete search over item-to-bundle maps: symEF1 existence, enumeration of
// all distinct symEF1 partitions, an LP-format export of the equivalent
// 0/1 feasibility model, and a brute-force maximum Nash welfare oracle.

#include "symef1/core.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symef1 {

struct SearchLimits {
    std::uint64_t node_budget = 10'000'000;
    double time_budget_seconds = 10.0;
};

struct SearchOptions {
    /// Cut subtrees that can no longer become symEF1. Turning this off only
    /// changes node counts.
    bool prune = true;
    /// Permit enumeration/MNW when n^m exceeds the 10^8 guard.
    bool allow_large = false;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExactStatus { found, proved_infeasible, budget_exceeded };

struct ExactOutcome {
    ExactStatus status = ExactStatus::budget_exceeded;
    std::optional<Partition> partition;
    std::uint64_t nodes = 0;
};

ExactOutcome exact_symef1(const Instance & inst, const SearchLimits & limits = {}, const SearchOptions & options = {});

/// Bundles sorted by smallest item, empty bundles last.
Partition canonical_partition(Partition p);

struct Enumeration {
    std::vector<Partition> partitions; ///< canonical, sorted, no duplicates
    std::uint64_t nodes = 0;
};

/// Every distinct symEF1 partition. Throws BudgetExceeded when the limits
/// run out, and std::length_error when n^m > 10^8 without allow_large.
Enumeration enumerate_symef1(const Instance & inst, const SearchLimits & limits = {}, const SearchOptions & options = {});

/// CPLEX LP text of the 0/1 feasibility model: x_k_j places item j in bundle
/// k, y_i_j_l lets agent i discount item j from bundle l.
std::string export_ip(const Instance & inst);

struct MnwResult {
    Assignment assignment; ///< bundle i belongs to agent i
    int positive_agents = 0;
    BigInt welfare;        ///< product over positively served agents
};

/// Exhaustive maximum Nash welfare: maximise the number of agents with
/// positive value, then the product of those values; ties go to the
/// lexicographically smallest item-to-agent vector.
MnwResult max_nash_welfare(const Instance & inst, const SearchLimits & limits = {}, const SearchOptions & options = {});

} // namespace symef1
