#include "symef1/sim.hpp"
#include "symef1/heuristic.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace symef1 {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// unbiased draw from {0..bound} by rejection
std::uint64_t bounded(std::mt19937_64 & rng, std::uint64_t bound)
{
    if (bound == std::numeric_limits<std::uint64_t>::max())
        return rng();
    const std::uint64_t range = bound + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t r;
    do
        r = rng();
    while (r >= limit);
    return r % range;
}

double percent(long part, long whole)
{
    return whole > 0 ? 100.0 * static_cast<double>(part) / static_cast<double>(whole) : 0.0;
}

} // namespace

Instance random_instance(int agents, int items, Value max_value, std::uint64_t seed)
{
    if (max_value < 0)
        throw std::invalid_argument("maximum item value must be nonnegative");
    std::mt19937_64 rng(seed);
    std::vector<Value> values(static_cast<std::size_t>(agents) * static_cast<std::size_t>(items));
    for (auto & v : values)
        v = static_cast<Value>(bounded(rng, static_cast<std::uint64_t>(max_value)));
    return Instance(agents, items, std::move(values));
}

std::uint64_t replication_seed(std::uint64_t master_seed, int agents, int items, Value max_value, int replication)
{
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(agents));
    h = splitmix64(h ^ static_cast<std::uint64_t>(items));
    h = splitmix64(h ^ static_cast<std::uint64_t>(max_value));
    h = splitmix64(h ^ static_cast<std::uint64_t>(replication));
    return h;
}

std::vector<SimCell> grid(const std::vector<int> & agents, const std::vector<int> & items,
                          const std::vector<Value> & max_values, int replications)
{
    std::vector<SimCell> cells;
    for (int n : agents)
        for (int m : items)
            for (Value mv : max_values)
                cells.push_back({n, m, mv, replications});
    return cells;
}

ReplicationResult run_replication(const Instance & inst, const SearchLimits & limits)
{
    ReplicationResult r;
    auto greedy = greedy_symef1(inst, default_item_order(inst));
    r.stats = greedy.stats;
    r.heuristic_found = greedy.partition.has_value();
    if (! r.heuristic_found)
        r.exact = exact_symef1(inst, limits).status;
    return r;
}

std::vector<SimReport> run_simulation(const SimConfig & cfg, const ProgressCallback & progress)
{
    int workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<SimReport> reports;

    for (auto & cell : cfg.cells) {
        if (cell.agents < 1 || cell.items < 0 || cell.max_value < 0 || cell.replications < 1)
            throw std::invalid_argument("simulation cell parameters out of range");
        auto start = std::chrono::steady_clock::now();

        std::vector<ReplicationResult> results(static_cast<std::size_t>(cell.replications));
        std::atomic<int> next{0};
        auto work = [&] {
            for (int r = next++; r < cell.replications; r = next++) {
                auto seed = replication_seed(cfg.master_seed, cell.agents, cell.items, cell.max_value, r);
                results[static_cast<std::size_t>(r)] =
                    run_replication(random_instance(cell.agents, cell.items, cell.max_value, seed), cfg.limits);
            }
        };
        if (workers == 1)
            work();
        else {
            std::vector<std::jthread> pool;
            for (int w = 0; w < std::min(workers, cell.replications); ++w)
                pool.emplace_back(work);
        }

        SimReport rep;
        rep.agents = cell.agents;
        rep.items = cell.items;
        rep.max_value = cell.max_value;
        rep.replications = cell.replications;
        for (auto & r : results) {
            if (r.heuristic_found) {
                ++rep.symef1_count;
                rep.placed_case[0] += r.stats.placed_case1;
                rep.placed_case[1] += r.stats.placed_case2;
                rep.placed_case[2] += r.stats.placed_case3;
                continue;
            }
            ++rep.heuristic_failures;
            if (r.exact == ExactStatus::found)
                ++rep.symef1_count;
            else if (r.exact == ExactStatus::budget_exceeded)
                ++rep.budget_exceeded;
        }
        long placed = rep.placed_case[0] + rep.placed_case[1] + rep.placed_case[2];
        rep.pct_symef1 = percent(rep.symef1_count, rep.replications - rep.budget_exceeded);
        rep.pct_case1 = percent(rep.placed_case[0], placed);
        rep.pct_case2 = percent(rep.placed_case[1], placed);
        rep.pct_case3 = percent(rep.placed_case[2], placed);
        rep.pct_exact_fallback = percent(rep.heuristic_failures, rep.replications);
        if (cfg.record_timing)
            rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (progress)
            progress(cell, rep);
        reports.push_back(rep);
    }
    return reports;
}

std::string emit_csv(const std::vector<SimReport> & reports)
{
    std::ostringstream out;
    out << "n,m,M,replications,pct_symef1,pct_case1,pct_case2,pct_case3,pct_exact_fallback,wall_seconds\n";
    char buf[512];
    for (auto & r : reports) {
        std::snprintf(buf, sizeof buf, "%d,%d,%lld,%d,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f\n", r.agents, r.items,
                      static_cast<long long>(r.max_value), r.replications, r.pct_symef1, r.pct_case1, r.pct_case2,
                      r.pct_case3, r.pct_exact_fallback, r.wall_seconds);
        out << buf;
    }
    return out.str();
}

} // namespace symef1
