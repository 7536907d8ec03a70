#pragma once

// Monte-Carlo estimation of how often uniformly random integer valuations
// admit a symEF1 partition, with the greedy heuristic as the first pass and
// the exact search as fallback.

#include "symef1/core.hpp"
#include "symef1/exact.hpp"
#include "symef1/heuristic.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace symef1 {

/// Entries i.i.d. uniform on {0..max_value}, fully determined by `seed`.
Instance random_instance(int agents, int items, Value max_value, std::uint64_t seed);

/// Stateless mix of (master seed, n, m, M, replication) into a per-instance seed.
std::uint64_t replication_seed(std::uint64_t master_seed, int agents, int items, Value max_value, int replication);

struct SimCell {
    int agents;
    int items;
    Value max_value;
    int replications;
};

struct SimConfig {
    std::vector<SimCell> cells;
    std::uint64_t master_seed = 42;
    SearchLimits limits;
    int threads = 0;            ///< 0 picks the hardware concurrency
    bool record_timing = true;  ///< false writes 0 wall time, making output reproducible byte for byte
};

/// Cross product of the lists, each cell run with `replications`.
std::vector<SimCell> grid(const std::vector<int> & agents, const std::vector<int> & items,
                          const std::vector<Value> & max_values, int replications);

struct SimReport {
    int agents = 0;
    int items = 0;
    Value max_value = 0;
    int replications = 0;
    double pct_symef1 = 0;         ///< over replications that finished within budget
    double pct_case1 = 0;          ///< items placed per case, over heuristic successes
    double pct_case2 = 0;
    double pct_case3 = 0;
    double pct_exact_fallback = 0; ///< heuristic failures, over all replications
    double wall_seconds = 0;

    int symef1_count = 0;
    int heuristic_failures = 0;
    int budget_exceeded = 0;
    long placed_case[3] = {0, 0, 0};
};

/// Result of one replication, exposed for testing the aggregation.
struct ReplicationResult {
    bool heuristic_found = false;
    HeuristicStats stats{};
    ExactStatus exact = ExactStatus::proved_infeasible; ///< meaningful only when the heuristic failed
};

ReplicationResult run_replication(const Instance & inst, const SearchLimits & limits);

using ProgressCallback = std::function<void(const SimCell &, const SimReport &)>;

std::vector<SimReport> run_simulation(const SimConfig & cfg, const ProgressCallback & progress = {});

std::string emit_csv(const std::vector<SimReport> & reports);

} // namespace symef1
