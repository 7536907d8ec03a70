#pragma once

// Closed-form symEF1 constructions: an agent's own round-robin split, and the
// union of per-group round-robins when agents form identical-valuation groups
// with disjoint supports.

#include "symef1/core.hpp"

#include <optional>
#include <vector>

namespace symef1 {

/// Bundle l receives the agent's l-th pick of every round, as if n copies of
/// the agent picked round-robin.
Partition agent_round_robin(const Instance & inst, int agent);

struct GroupStructure {
    std::vector<std::vector<int>> groups;  ///< agents, ascending, grouped by identical rows
    std::vector<std::vector<int>> support; ///< items with nonzero value for each group
};

/// nullopt when two groups with different rows both value some item.
std::optional<GroupStructure> detect_groups(const Instance & inst);

/// Round-robin of each group's representative over its support, unioned
/// bundle-wise. Items nobody values go to the first bundle.
Partition grouped_allocation(const Instance & inst, const GroupStructure & gs);

} // namespace symef1
