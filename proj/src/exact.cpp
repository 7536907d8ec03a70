#include "symef1/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace symef1 {

namespace {

using Clock = std::chrono::steady_clock;

class BudgetClock {
public:
    explicit BudgetClock(const SearchLimits & limits) :
        limits_(limits),
        deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(limits.time_budget_seconds)))
    {
    }

    /// Counts one node; false once either budget is spent.
    bool tick()
    {
        ++nodes_;
        if (nodes_ > limits_.node_budget)
            return false;
        if ((nodes_ & 1023) == 0 && Clock::now() > deadline_)
            return false;
        return true;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    SearchLimits limits_;
    Clock::time_point deadline_;
    std::uint64_t nodes_ = 0;
};

double log10_space(int n, int m)
{
    return m * std::log10(static_cast<double>(n));
}

// Depth-first assignment of items (in descending total value) to bundles.
// Bundles are opened in order, so every unordered partition with at most n
// nonempty blocks is visited exactly once.
class BundleSearch {
public:
    BundleSearch(const Instance & inst, const SearchLimits & limits, const SearchOptions & options) :
        inst_(inst),
        n_(inst.agents()),
        m_(inst.items()),
        prune_(options.prune),
        clock_(limits),
        order_(static_cast<std::size_t>(m_)),
        bundle_of_(static_cast<std::size_t>(m_), -1),
        sum_(static_cast<std::size_t>(n_ * n_), 0),
        max_(static_cast<std::size_t>(n_ * n_), 0),
        remaining_(static_cast<std::size_t>((m_ + 1) * n_), 0),
        trail_(static_cast<std::size_t>(m_ * n_), 0)
    {
        std::vector<Value> total(static_cast<std::size_t>(m_), 0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < m_; ++j)
                total[static_cast<std::size_t>(j)] += inst.value(i, j);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return total[a] > total[b]; });
        for (int d = m_ - 1; d >= 0; --d)
            for (int i = 0; i < n_; ++i)
                remaining_[static_cast<std::size_t>(d * n_ + i)] =
                    remaining_[static_cast<std::size_t>((d + 1) * n_ + i)] + inst.value(i, order_[static_cast<std::size_t>(d)]);
    }

    /// Calls on_leaf for every symEF1 completion until it returns false.
    /// Returns false if the budget ran out.
    bool run(const std::function<bool()> & on_leaf)
    {
        on_leaf_ = &on_leaf;
        stopped_ = false;
        exhausted_ = false;
        if (! clock_.tick())
            return false;
        // the empty assignment is a leaf when there are no items
        if (viable(0))
            descend(0, 0);
        return ! exhausted_;
    }

    Partition current() const
    {
        Partition p = Partition::empty(n_);
        for (int j = 0; j < m_; ++j)
            p[bundle_of_[static_cast<std::size_t>(j)]].push_back(j);
        return p;
    }

    std::uint64_t nodes() const { return clock_.nodes(); }

private:
    // With `depth` items placed, can some completion still be symEF1? Every
    // held bundle can gain at most the agent's remaining value, and an envied
    // bundle's "value minus best item" never drops as items are added.
    bool viable(int depth) const
    {
        if (! prune_ && depth < m_)
            return true;
        for (int i = 0; i < n_; ++i) {
            const Value * s = &sum_[static_cast<std::size_t>(i * n_)];
            const Value * mx = &max_[static_cast<std::size_t>(i * n_)];
            Value poorest = s[0], worst_envy = s[0] - mx[0];
            for (int k = 1; k < n_; ++k) {
                poorest = std::min(poorest, s[k]);
                worst_envy = std::max(worst_envy, s[k] - mx[k]);
            }
            if (poorest + remaining_[static_cast<std::size_t>(depth * n_ + i)] < worst_envy)
                return false;
        }
        return true;
    }

    void place(int depth, int item, int k)
    {
        bundle_of_[static_cast<std::size_t>(item)] = k;
        for (int i = 0; i < n_; ++i) {
            auto idx = static_cast<std::size_t>(i * n_ + k);
            auto v = inst_.value(i, item);
            trail_[static_cast<std::size_t>(depth * n_ + i)] = max_[idx];
            sum_[idx] += v;
            max_[idx] = std::max(max_[idx], v);
        }
    }

    void unplace(int depth, int item, int k)
    {
        bundle_of_[static_cast<std::size_t>(item)] = -1;
        for (int i = 0; i < n_; ++i) {
            auto idx = static_cast<std::size_t>(i * n_ + k);
            sum_[idx] -= inst_.value(i, item);
            max_[idx] = trail_[static_cast<std::size_t>(depth * n_ + i)];
        }
    }

    void descend(int depth, int used)
    {
        if (depth == m_) {
            if (! (*on_leaf_)())
                stopped_ = true;
            return;
        }
        int item = order_[static_cast<std::size_t>(depth)];
        int limit = std::min(n_, used + 1);
        for (int k = 0; k < limit && ! stopped_; ++k) {
            if (! clock_.tick()) {
                exhausted_ = stopped_ = true;
                return;
            }
            place(depth, item, k);
            if (viable(depth + 1))
                descend(depth + 1, std::max(used, k + 1));
            unplace(depth, item, k);
        }
    }

    const Instance & inst_;
    int n_, m_;
    bool prune_;
    BudgetClock clock_;
    std::vector<int> order_;
    std::vector<int> bundle_of_;
    std::vector<Value> sum_, max_;
    std::vector<Value> remaining_;
    std::vector<Value> trail_;
    const std::function<bool()> * on_leaf_ = nullptr;
    bool stopped_ = false;
    bool exhausted_ = false;
};

} // namespace

ExactOutcome exact_symef1(const Instance & inst, const SearchLimits & limits, const SearchOptions & options)
{
    BundleSearch search(inst, limits, options);
    ExactOutcome outcome;
    std::function<bool()> on_leaf = [&] {
        outcome.partition = search.current();
        return false;
    };
    bool complete = search.run(on_leaf);
    outcome.nodes = search.nodes();
    if (outcome.partition)
        outcome.status = ExactStatus::found;
    else
        outcome.status = complete ? ExactStatus::proved_infeasible : ExactStatus::budget_exceeded;
    return outcome;
}

Partition canonical_partition(Partition p)
{
    for (auto & b : p.bundles)
        std::sort(b.begin(), b.end());
    std::sort(p.bundles.begin(), p.bundles.end(), [](const Bundle & a, const Bundle & b) {
        if (a.empty() || b.empty())
            return ! a.empty() && b.empty();
        return a.front() < b.front();
    });
    return p;
}

Enumeration enumerate_symef1(const Instance & inst, const SearchLimits & limits, const SearchOptions & options)
{
    if (! options.allow_large && log10_space(inst.agents(), inst.items()) > 8.0 + 1e-12)
        throw std::length_error("n^m exceeds 10^8; enumeration refused without an explicit override");
    BundleSearch search(inst, limits, options);
    Enumeration result;
    std::function<bool()> on_leaf = [&] {
        result.partitions.push_back(canonical_partition(search.current()));
        return true;
    };
    if (! search.run(on_leaf))
        throw BudgetExceeded("enumeration budget exceeded after " + std::to_string(search.nodes()) + " nodes");
    result.nodes = search.nodes();
    std::sort(result.partitions.begin(), result.partitions.end());
    result.partitions.erase(std::unique(result.partitions.begin(), result.partitions.end()), result.partitions.end());
    return result;
}

namespace {

class LpWriter {
public:
    void term(Value coef, const std::string & var)
    {
        if (coef == 0)
            return;
        if (! first_)
            line_ << (coef < 0 ? " - " : " + ");
        else if (coef < 0)
            line_ << "- ";
        auto mag = coef < 0 ? -coef : coef;
        if (mag != 1)
            line_ << mag << ' ';
        line_ << var;
        first_ = false;
    }

    /// Emits `name: <terms> <rel> <rhs>`; `fallback` keeps an all-zero row
    /// syntactically valid.
    void finish(std::ostringstream & out, const std::string & name, const std::string & rel, int rhs,
                const std::string & fallback)
    {
        if (first_) {
            if (fallback.empty()) {
                reset();
                return;
            }
            line_ << "0 " << fallback;
        }
        out << ' ' << name << ": " << line_.str() << ' ' << rel << ' ' << rhs << '\n';
        reset();
    }

private:
    void reset()
    {
        line_.str("");
        line_.clear();
        first_ = true;
    }

    std::ostringstream line_;
    bool first_ = true;
};

std::string x_var(int k, int j)
{
    return "x_" + std::to_string(k + 1) + "_" + std::to_string(j + 1);
}

std::string y_var(int i, int j, int l)
{
    return "y_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(l + 1);
}

} // namespace

std::string export_ip(const Instance & inst)
{
    const int n = inst.agents(), m = inst.items();
    std::ostringstream out;
    out << "\\ symEF1 feasibility model: " << n << " agents, " << m << " items\n";
    out << "\\ x_k_j = 1 puts item j in bundle k; y_i_j_l = 1 lets agent i discount item j from bundle l\n";
    out << "Minimize\n obj: 0\n";
    out << "Subject To\n";
    LpWriter row;
    const std::string anchor = m > 0 ? x_var(0, 0) : std::string();

    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < n; ++k)
            row.term(1, x_var(k, j));
        row.finish(out, "one_bundle_" + std::to_string(j + 1), "=", 1, anchor);
    }
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            for (int j = 0; j < m; ++j)
                row.term(1, y_var(i, j, l));
            row.finish(out, "remove_one_" + std::to_string(i + 1) + "_" + std::to_string(l + 1), "<=", 1, anchor);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < n; ++l) {
                row.term(1, y_var(i, j, l));
                row.term(-1, x_var(l, j));
                row.finish(out,
                           "remove_present_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_"
                               + std::to_string(l + 1),
                           "<=", 0, anchor);
            }
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                if (k == l)
                    continue;
                // sum_j v_ij x_kj - sum_j v_ij x_lj + sum_j v_ij y_ijl >= 0
                for (int j = 0; j < m; ++j)
                    row.term(inst.value(i, j), x_var(k, j));
                for (int j = 0; j < m; ++j)
                    row.term(-inst.value(i, j), x_var(l, j));
                for (int j = 0; j < m; ++j)
                    row.term(inst.value(i, j), y_var(i, j, l));
                row.finish(out,
                           "ef1_" + std::to_string(i + 1) + "_" + std::to_string(k + 1) + "_" + std::to_string(l + 1),
                           ">=", 0, anchor);
            }

    out << "Binary\n";
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < m; ++j)
            out << ' ' << x_var(k, j) << '\n';
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < n; ++l)
                out << ' ' << y_var(i, j, l) << '\n';
    out << "End\n";
    return out.str();
}

MnwResult max_nash_welfare(const Instance & inst, const SearchLimits & limits, const SearchOptions & options)
{
    const int n = inst.agents(), m = inst.items();
    if (! options.allow_large && log10_space(n, m) > 8.0 + 1e-12)
        throw std::length_error("n^m exceeds 10^8; Nash welfare search refused without an explicit override");

    BudgetClock clock(limits);
    std::vector<int> owner(static_cast<std::size_t>(m), 0), best_owner;
    std::vector<Value> value(static_cast<std::size_t>(n), 0);
    int best_positive = -1;
    BigInt best_product = 0;
    bool exhausted = false;

    // items in index order, agents ascending: leaves arrive in lexicographic
    // order, so keeping only strict improvements yields the smallest vector
    std::function<void(int)> descend = [&](int j) {
        if (exhausted)
            return;
        if (! clock.tick()) {
            exhausted = true;
            return;
        }
        if (j == m) {
            int positive = 0;
            for (auto v : value)
                positive += v > 0;
            if (positive < best_positive)
                return;
            BigInt product = 1;
            for (auto v : value)
                if (v > 0)
                    product *= v;
            if (positive > best_positive || product > best_product) {
                best_positive = positive;
                best_product = product;
                best_owner = owner;
            }
            return;
        }
        for (int i = 0; i < n; ++i) {
            owner[static_cast<std::size_t>(j)] = i;
            value[static_cast<std::size_t>(i)] += inst.value(i, j);
            descend(j + 1);
            value[static_cast<std::size_t>(i)] -= inst.value(i, j);
        }
    };
    descend(0);
    if (exhausted)
        throw BudgetExceeded("Nash welfare search budget exceeded after " + std::to_string(clock.nodes()) + " nodes");

    MnwResult result;
    result.assignment.partition = Partition::empty(n);
    for (int j = 0; j < m; ++j)
        result.assignment.partition[best_owner[static_cast<std::size_t>(j)]].push_back(j);
    result.assignment.owner.resize(static_cast<std::size_t>(n));
    std::iota(result.assignment.owner.begin(), result.assignment.owner.end(), 0);
    result.positive_agents = best_positive;
    result.welfare = best_product;
    return result;
}

} // namespace symef1
