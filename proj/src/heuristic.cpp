#include "symef1/heuristic.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace symef1 {

GreedyBuilder::GreedyBuilder(const Instance & inst) :
    GreedyBuilder(inst, Partition::empty(inst.agents()))
{
}

GreedyBuilder::GreedyBuilder(const Instance & inst, Partition partial) :
    inst_(&inst),
    n_(inst.agents()),
    partition_(std::move(partial)),
    placed_(static_cast<std::size_t>(inst.items()), 0),
    sum_(static_cast<std::size_t>(n_ * n_), 0),
    max_(static_cast<std::size_t>(n_ * n_), 0)
{
    validate_partial_partition(partition_, n_, inst.items());
    for (auto & b : partition_.bundles)
        for (int j : b)
            placed_[static_cast<std::size_t>(j)] = 1;
    for (int k = 0; k < n_; ++k)
        refresh(k);
    if (! is_symef1())
        throw std::invalid_argument("starting partial partition is not symEF1");
}

void GreedyBuilder::refresh(int k)
{
    const auto & b = partition_[k];
    for (int i = 0; i < n_; ++i) {
        Value s = 0, mx = 0;
        for (int j : b) {
            auto v = inst_->value(i, j);
            s += v;
            mx = std::max(mx, v);
        }
        sum_[static_cast<std::size_t>(i * n_ + k)] = s;
        max_[static_cast<std::size_t>(i * n_ + k)] = mx;
    }
}

void GreedyBuilder::insert(int k, int item)
{
    auto & b = partition_[k];
    b.insert(std::upper_bound(b.begin(), b.end(), item), item);
}

void GreedyBuilder::erase(int k, int item)
{
    auto & b = partition_[k];
    b.erase(std::lower_bound(b.begin(), b.end(), item));
}

bool GreedyBuilder::is_symef1() const
{
    for (int i = 0; i < n_; ++i) {
        const Value * s = &sum_[static_cast<std::size_t>(i * n_)];
        const Value * mx = &max_[static_cast<std::size_t>(i * n_)];
        Value poorest = s[0], worst_envy = s[0] - mx[0];
        for (int k = 1; k < n_; ++k) {
            poorest = std::min(poorest, s[k]);
            worst_envy = std::max(worst_envy, s[k] - mx[k]);
        }
        // k == l can never violate since mx >= 0
        if (poorest < worst_envy)
            return false;
    }
    return true;
}

bool GreedyBuilder::try_insert(int item)
{
    for (int k = 0; k < n_; ++k) {
        insert(k, item);
        refresh(k);
        if (is_symef1())
            return true;
        erase(k, item);
        refresh(k);
    }
    return false;
}

bool GreedyBuilder::try_relocate(int item)
{
    for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
            if (l == k)
                continue;
            const Bundle donors = partition_[k];
            for (int moved : donors) {
                erase(k, moved);
                insert(k, item);
                insert(l, moved);
                refresh(k);
                refresh(l);
                if (is_symef1())
                    return true;
                erase(l, moved);
                erase(k, item);
                insert(k, moved);
                refresh(k);
                refresh(l);
            }
        }
    return false;
}

bool GreedyBuilder::try_swap(int item)
{
    for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
            if (l == k)
                continue;
            const Bundle from_k = partition_[k];
            const Bundle from_l = partition_[l];
            for (int jk : from_k)
                for (int jl : from_l) {
                    erase(k, jk);
                    erase(l, jl);
                    insert(k, item);
                    insert(k, jl);
                    insert(l, jk);
                    refresh(k);
                    refresh(l);
                    if (is_symef1())
                        return true;
                    erase(l, jk);
                    erase(k, jl);
                    erase(k, item);
                    insert(l, jl);
                    insert(k, jk);
                    refresh(k);
                    refresh(l);
                }
        }
    return false;
}

std::optional<PlacementCase> GreedyBuilder::try_place(int item)
{
    if (item < 0 || item >= inst_->items())
        throw std::out_of_range("item index out of range");
    if (holds(item))
        throw std::invalid_argument("item " + std::to_string(item + 1) + " is already placed");

    std::optional<PlacementCase> result;
    if (try_insert(item))
        result = PlacementCase::insert;
    else if (try_relocate(item))
        result = PlacementCase::relocate;
    else if (try_swap(item))
        result = PlacementCase::swap;
    if (result)
        placed_[static_cast<std::size_t>(item)] = 1;
    return result;
}

HeuristicResult greedy_extend(const Instance & inst, Partition partial, std::span<const int> pending)
{
    GreedyBuilder builder(inst, std::move(partial));
    std::vector<int> unallocated(pending.begin(), pending.end());
    for (int j : unallocated)
        if (j < 0 || j >= inst.items() || builder.holds(j))
            throw std::invalid_argument("pending list contains an invalid or already placed item");

    HeuristicResult result;
    bool progress = true;
    while (! unallocated.empty() && progress) {
        progress = false;
        ++result.stats.passes;
        std::vector<int> still_pending;
        for (int j : unallocated) {
            auto how = builder.try_place(j);
            if (! how) {
                still_pending.push_back(j);
                continue;
            }
            progress = true;
            switch (*how) {
            case PlacementCase::insert: ++result.stats.placed_case1; break;
            case PlacementCase::relocate: ++result.stats.placed_case2; break;
            case PlacementCase::swap: ++result.stats.placed_case3; break;
            }
        }
        unallocated = std::move(still_pending);
    }

    if (unallocated.empty())
        result.partition = builder.partition();
    else
        result.stats.failed = true;
    return result;
}

HeuristicResult greedy_symef1(const Instance & inst, std::span<const int> item_order)
{
    std::vector<int> check(item_order.begin(), item_order.end());
    std::sort(check.begin(), check.end());
    for (int j = 0; j < static_cast<int>(check.size()); ++j)
        if (check[static_cast<std::size_t>(j)] != j)
            throw std::invalid_argument("item order is not a permutation of the items");
    if (static_cast<int>(check.size()) != inst.items())
        throw std::invalid_argument("item order is not a permutation of the items");
    return greedy_extend(inst, Partition::empty(inst.agents()), item_order);
}

std::vector<int> default_item_order(const Instance & inst)
{
    return make_item_order(inst, ItemOrder::index);
}

std::vector<int> make_item_order(const Instance & inst, ItemOrder order, std::uint64_t seed)
{
    std::vector<int> items(static_cast<std::size_t>(inst.items()));
    std::iota(items.begin(), items.end(), 0);
    switch (order) {
    case ItemOrder::index:
        break;
    case ItemOrder::desc_total_value: {
        std::vector<Value> total(items.size(), 0);
        for (int i = 0; i < inst.agents(); ++i)
            for (int j = 0; j < inst.items(); ++j)
                total[static_cast<std::size_t>(j)] += inst.value(i, j);
        std::stable_sort(items.begin(), items.end(), [&](int a, int b) { return total[a] > total[b]; });
        break;
    }
    case ItemOrder::random: {
        std::mt19937_64 rng(seed);
        // Fisher-Yates with an explicit bounded draw so the permutation does
        // not depend on the standard library's shuffle implementation
        for (std::size_t x = items.size(); x > 1; --x) {
            auto r = static_cast<std::size_t>(rng() % x);
            std::swap(items[x - 1], items[r]);
        }
        break;
    }
    }
    return items;
}

} // namespace symef1
