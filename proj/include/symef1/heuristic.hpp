#pragma once

// Greedy construction of a symEF1 partition. Items are inserted one at a time
// into a partial partition that stays symEF1 over the items placed so far;
// when plain insertion fails, one existing item may be relocated (case 2) or
// two items swapped across bundles (case 3) to make room.

#include "symef1/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace symef1 {

enum class PlacementCase { insert = 1, relocate = 2, swap = 3 };

struct HeuristicStats {
    int placed_case1 = 0;
    int placed_case2 = 0;
    int placed_case3 = 0;
    int passes = 0;
    bool failed = false;

    int placed() const noexcept { return placed_case1 + placed_case2 + placed_case3; }
};

struct HeuristicResult {
    std::optional<Partition> partition; ///< nullopt when no symEF1 partition was found
    HeuristicStats stats;
};

/// Mutable partial partition with cached per-agent bundle sums and maxima.
class GreedyBuilder {
public:
    explicit GreedyBuilder(const Instance & inst);
    /// Starts from a partial partition, which must already be symEF1 over
    /// the items it holds.
    GreedyBuilder(const Instance & inst, Partition partial);

    /// Tries case 1, then 2, then 3, committing the first move that keeps the
    /// partial partition symEF1. On failure the partition is left untouched.
    std::optional<PlacementCase> try_place(int item);

    const Partition & partition() const noexcept { return partition_; }
    bool holds(int item) const { return placed_[static_cast<std::size_t>(item)] != 0; }
    bool is_symef1() const;

private:
    void insert(int k, int item);
    void erase(int k, int item);
    void refresh(int k);

    bool try_insert(int item);
    bool try_relocate(int item);
    bool try_swap(int item);

    const Instance * inst_;
    int n_;
    Partition partition_;
    std::vector<char> placed_;
    std::vector<Value> sum_; ///< sum_[i * n + k]
    std::vector<Value> max_; ///< max_[i * n + k]
};

HeuristicResult greedy_symef1(const Instance & inst, std::span<const int> item_order);

/// Runs the greedy passes from a given partial partition over the listed
/// unallocated items.
HeuristicResult greedy_extend(const Instance & inst, Partition partial, std::span<const int> pending);

enum class ItemOrder { index, desc_total_value, random };

std::vector<int> default_item_order(const Instance & inst);
std::vector<int> make_item_order(const Instance & inst, ItemOrder order, std::uint64_t seed = 0);

} // namespace symef1
