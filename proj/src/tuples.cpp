#include "symef1/tuples.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace symef1 {

Ranking ranking(const Instance & inst, int agent)
{
    auto row = inst.row(agent);
    Ranking order(static_cast<std::size_t>(inst.items()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return row[static_cast<std::size_t>(a)] > row[static_cast<std::size_t>(b)];
    });
    return order;
}

IndexedTuples indexed_tuples(const Instance & inst)
{
    const int n = inst.agents(), m = inst.items();
    IndexedTuples result{n, m, {}};
    for (int i = 0; i < n; ++i) {
        auto order = ranking(inst, i);
        std::vector<std::vector<int>> per_agent;
        for (int start = 0; start < m; start += n) {
            int end = std::min(m, start + n);
            per_agent.emplace_back(order.begin() + start, order.begin() + end);
        }
        result.tuples.push_back(std::move(per_agent));
    }
    return result;
}

ItemGraph::ItemGraph(int vertices) :
    vertices_(vertices),
    adjacency_(static_cast<std::size_t>(vertices)),
    matrix_(static_cast<std::size_t>(vertices), std::vector<bool>(static_cast<std::size_t>(vertices), false))
{
}

void ItemGraph::add_edge(int u, int v)
{
    if (u < 0 || v < 0 || u >= vertices_ || v >= vertices_)
        throw std::out_of_range("edge endpoint out of range");
    if (u == v)
        throw std::invalid_argument("self-loops are not allowed");
    if (matrix_[u][v])
        return;
    matrix_[u][v] = matrix_[v][u] = true;
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
    ++edge_count_;
}

bool ItemGraph::adjacent(int u, int v) const
{
    return matrix_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
}

std::vector<std::pair<int, int>> ItemGraph::edges() const
{
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < vertices_; ++u)
        for (int v = u + 1; v < vertices_; ++v)
            if (matrix_[u][v])
                out.emplace_back(u, v);
    return out;
}

ItemGraph build_item_graph(const IndexedTuples & tuples)
{
    ItemGraph g(tuples.items);
    for (auto & agent : tuples.tuples)
        for (auto & tuple : agent)
            for (std::size_t a = 0; a < tuple.size(); ++a)
                for (std::size_t b = a + 1; b < tuple.size(); ++b)
                    g.add_edge(tuple[a], tuple[b]);
    return g;
}

ItemGraph build_item_graph(const Instance & inst)
{
    return build_item_graph(indexed_tuples(inst));
}

Components components(const ItemGraph & g)
{
    Components c;
    c.label.assign(static_cast<std::size_t>(g.vertices()), -1);
    std::vector<int> stack;
    for (int s = 0; s < g.vertices(); ++s) {
        if (c.label[s] != -1)
            continue;
        c.label[s] = c.count;
        stack.push_back(s);
        while (! stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbours(v))
                if (c.label[w] == -1) {
                    c.label[w] = c.count;
                    stack.push_back(w);
                }
        }
        ++c.count;
    }
    return c;
}

int Coloring::colors_used() const
{
    int used = 0;
    for (int c : color)
        used = std::max(used, c + 1);
    return used;
}

namespace {

class ColoringSearch {
public:
    ColoringSearch(const ItemGraph & g, int k) :
        g_(g),
        k_(k),
        color_(static_cast<std::size_t>(g.vertices()), -1),
        forbidden_(static_cast<std::size_t>(g.vertices()), std::vector<int>(static_cast<std::size_t>(k), 0)),
        saturation_(static_cast<std::size_t>(g.vertices()), 0)
    {
    }

    bool run() { return extend(0, 0); }
    const std::vector<int> & colors() const { return color_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    // uncoloured vertex with most distinct neighbour colours, then most
    // uncoloured neighbours, then smallest index
    int pick() const
    {
        int best = -1, best_sat = -1, best_deg = -1;
        for (int v = 0; v < g_.vertices(); ++v) {
            if (color_[v] != -1)
                continue;
            int deg = 0;
            for (int w : g_.neighbours(v))
                deg += color_[w] == -1;
            if (saturation_[v] > best_sat || (saturation_[v] == best_sat && deg > best_deg)) {
                best = v;
                best_sat = saturation_[v];
                best_deg = deg;
            }
        }
        return best;
    }

    void assign(int v, int c, int delta)
    {
        color_[v] = delta > 0 ? c : -1;
        for (int w : g_.neighbours(v)) {
            auto & f = forbidden_[w][c];
            if (delta > 0 && f++ == 0)
                ++saturation_[w];
            else if (delta < 0 && --f == 0)
                --saturation_[w];
        }
    }

    bool extend(int coloured, int used)
    {
        ++nodes_;
        if (coloured == g_.vertices())
            return true;
        int v = pick();
        if (saturation_[v] >= k_)
            return false;
        // a fresh colour is interchangeable with any other fresh colour
        int limit = std::min(k_, used + 1);
        for (int c = 0; c < limit; ++c) {
            if (forbidden_[v][c])
                continue;
            assign(v, c, +1);
            if (extend(coloured + 1, std::max(used, c + 1)))
                return true;
            assign(v, c, -1);
        }
        return false;
    }

    const ItemGraph & g_;
    int k_;
    std::vector<int> color_;
    std::vector<std::vector<int>> forbidden_;
    std::vector<int> saturation_;
    std::uint64_t nodes_ = 0;
};

} // namespace

std::optional<Coloring> k_color(const ItemGraph & g, int k, ColoringSearchStats * stats)
{
    if (k < 1)
        throw std::invalid_argument("k must be positive");
    ColoringSearch search(g, k);
    bool found = search.run();
    if (stats)
        stats->nodes = search.nodes();
    if (! found)
        return std::nullopt;
    return Coloring{search.colors()};
}

bool is_proper_coloring(const ItemGraph & g, const Coloring & c)
{
    if (static_cast<int>(c.color.size()) != g.vertices())
        return false;
    for (auto [u, v] : g.edges())
        if (c.color[u] == c.color[v])
            return false;
    return std::all_of(c.color.begin(), c.color.end(), [](int x) { return x >= 0; });
}

Partition coloring_to_partition(const Coloring & c, int bundle_count)
{
    if (c.colors_used() > bundle_count)
        throw std::invalid_argument("coloring uses " + std::to_string(c.colors_used()) + " colors but only "
                                    + std::to_string(bundle_count) + " bundles are available");
    Partition p = Partition::empty(bundle_count);
    for (int v = 0; v < static_cast<int>(c.color.size()); ++v) {
        if (c.color[v] < 0)
            throw std::invalid_argument("vertex without a color");
        p[c.color[v]].push_back(v);
    }
    return p;
}

bool separates_tuples(const Partition & p, const IndexedTuples & tuples)
{
    std::vector<int> bundle_of(static_cast<std::size_t>(tuples.items), -1);
    for (int k = 0; k < p.size(); ++k)
        for (int j : p[k]) {
            if (j < 0 || j >= tuples.items)
                throw std::invalid_argument("partition references an item outside the tuples");
            bundle_of[j] = k;
        }
    for (auto & agent : tuples.tuples)
        for (auto & tuple : agent)
            for (std::size_t a = 0; a < tuple.size(); ++a)
                for (std::size_t b = a + 1; b < tuple.size(); ++b)
                    if (bundle_of[tuple[a]] == bundle_of[tuple[b]])
                        return false;
    return true;
}

std::optional<BigInt> count_lower_bound(const ItemGraph & g, int agents)
{
    if (! k_color(g, agents))
        return std::nullopt;
    BigInt factorial = 1;
    for (int x = 2; x <= agents; ++x)
        factorial *= x;
    int c = components(g).count;
    BigInt bound = 1;
    for (int x = 1; x < c; ++x)
        bound *= factorial;
    return bound;
}

std::string graph_to_dot(const ItemGraph & g)
{
    std::ostringstream out;
    out << "graph G {\n";
    for (int v = 0; v < g.vertices(); ++v)
        out << "  " << v + 1 << ";\n";
    for (auto [u, v] : g.edges())
        out << "  " << u + 1 << " -- " << v + 1 << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace symef1
