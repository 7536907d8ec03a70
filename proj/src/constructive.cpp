#include "symef1/constructive.hpp"
#include "symef1/tuples.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace symef1 {

namespace {

void deal_round_robin(std::span<const int> ranked, Partition & into)
{
    const auto n = static_cast<std::size_t>(into.size());
    for (std::size_t pos = 0; pos < ranked.size(); ++pos)
        into[static_cast<int>(pos % n)].push_back(ranked[pos]);
}

} // namespace

Partition agent_round_robin(const Instance & inst, int agent)
{
    Partition p = Partition::empty(inst.agents());
    deal_round_robin(ranking(inst, agent), p);
    for (auto & b : p.bundles)
        std::sort(b.begin(), b.end());
    return p;
}

std::optional<GroupStructure> detect_groups(const Instance & inst)
{
    GroupStructure gs;
    std::map<std::vector<Value>, std::size_t> by_row;
    for (int i = 0; i < inst.agents(); ++i) {
        auto r = inst.row(i);
        std::vector<Value> key(r.begin(), r.end());
        auto [it, fresh] = by_row.try_emplace(std::move(key), gs.groups.size());
        if (fresh) {
            gs.groups.emplace_back();
            std::vector<int> support;
            for (int j = 0; j < inst.items(); ++j)
                if (r[static_cast<std::size_t>(j)] > 0)
                    support.push_back(j);
            gs.support.push_back(std::move(support));
        }
        gs.groups[it->second].push_back(i);
    }

    std::vector<int> claimed(static_cast<std::size_t>(inst.items()), -1);
    for (std::size_t g = 0; g < gs.support.size(); ++g)
        for (int j : gs.support[g]) {
            if (claimed[static_cast<std::size_t>(j)] != -1)
                return std::nullopt;
            claimed[static_cast<std::size_t>(j)] = static_cast<int>(g);
        }
    return gs;
}

Partition grouped_allocation(const Instance & inst, const GroupStructure & gs)
{
    if (gs.groups.size() != gs.support.size())
        throw std::invalid_argument("group structure is malformed");
    std::vector<int> members;
    for (auto & g : gs.groups)
        members.insert(members.end(), g.begin(), g.end());
    std::sort(members.begin(), members.end());
    for (int i = 0; i < inst.agents(); ++i)
        if (static_cast<int>(members.size()) != inst.agents() || members[static_cast<std::size_t>(i)] != i)
            throw std::invalid_argument("groups must cover every agent exactly once");

    std::vector<char> placed(static_cast<std::size_t>(inst.items()), 0);
    Partition p = Partition::empty(inst.agents());

    for (std::size_t g = 0; g < gs.groups.size(); ++g) {
        if (gs.groups[g].empty())
            throw std::invalid_argument("empty agent group");
        int rep = gs.groups[g].front();
        for (int a : gs.groups[g]) {
            auto ra = inst.row(a), rr = inst.row(rep);
            if (! std::equal(ra.begin(), ra.end(), rr.begin(), rr.end()))
                throw std::invalid_argument("agents grouped together have different valuations");
        }
        auto order = ranking(inst, rep);
        std::vector<int> ranked;
        for (int j : order) {
            bool in_support = std::binary_search(gs.support[g].begin(), gs.support[g].end(), j);
            if (in_support != (inst.value(rep, j) > 0))
                throw std::invalid_argument("group support does not match the valuations");
            if (! in_support)
                continue;
            if (placed[static_cast<std::size_t>(j)])
                throw std::invalid_argument("group supports overlap");
            placed[static_cast<std::size_t>(j)] = 1;
            ranked.push_back(j);
        }
        deal_round_robin(ranked, p);
    }

    for (int j = 0; j < inst.items(); ++j)
        if (! placed[static_cast<std::size_t>(j)]) {
            for (int i = 0; i < inst.agents(); ++i)
                if (inst.value(i, j) > 0)
                    throw std::invalid_argument("a valued item lies outside every group support");
            p[0].push_back(j);
        }

    for (auto & b : p.bundles)
        std::sort(b.begin(), b.end());
    return p;
}

} // namespace symef1
