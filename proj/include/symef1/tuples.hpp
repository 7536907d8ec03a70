#pragma once

// Per-agent rankings, indexed n-tuples, and the item conflict graph whose
// n-colorings give tuple-separating (hence symEF1) partitions.

#include "symef1/core.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace symef1 {

/// Items ordered from most to least valued by one agent; ties go to the
/// smaller item index.
using Ranking = std::vector<int>;

Ranking ranking(const Instance & inst, int agent);

/// tuples[i][t] is agent i's t-th block of n consecutive ranked items.
struct IndexedTuples {
    int agents = 0;
    int items = 0;
    std::vector<std::vector<std::vector<int>>> tuples;
};

IndexedTuples indexed_tuples(const Instance & inst);

/// Simple undirected graph over items.
class ItemGraph {
public:
    explicit ItemGraph(int vertices = 0);

    int vertices() const noexcept { return vertices_; }
    /// Inserts {u,v}; self-loops are rejected and duplicates ignored.
    void add_edge(int u, int v);
    bool adjacent(int u, int v) const;
    const std::vector<int> & neighbours(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
    /// Edges as (u,v) with u < v, sorted lexicographically.
    std::vector<std::pair<int, int>> edges() const;
    std::size_t edge_count() const noexcept { return edge_count_; }

    friend bool operator==(const ItemGraph & a, const ItemGraph & b) { return a.edges() == b.edges() && a.vertices_ == b.vertices_; }

private:
    int vertices_;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::vector<bool>> matrix_;
};

ItemGraph build_item_graph(const IndexedTuples & tuples);
ItemGraph build_item_graph(const Instance & inst);

struct Components {
    int count = 0;
    std::vector<int> label; ///< component id per vertex, numbered in order of first vertex
};

Components components(const ItemGraph & g);

/// color[v] in [0, k).
struct Coloring {
    std::vector<int> color;
    int colors_used() const;
};

struct ColoringSearchStats {
    std::uint64_t nodes = 0;
};

/// Exact k-colorability by DSATUR-ordered backtracking. nullopt means the
/// search space was exhausted without a coloring.
std::optional<Coloring> k_color(const ItemGraph & g, int k, ColoringSearchStats * stats = nullptr);

bool is_proper_coloring(const ItemGraph & g, const Coloring & c);

/// Bundle l collects the vertices of color l; unused colors give empty bundles.
Partition coloring_to_partition(const Coloring & c, int bundle_count);

/// No bundle holds two items from the same tuple of any agent.
bool separates_tuples(const Partition & p, const IndexedTuples & tuples);

/// (n!)^(C-1) when the graph is n-colorable, where C counts components.
std::optional<BigInt> count_lower_bound(const ItemGraph & g, int agents);

std::string graph_to_dot(const ItemGraph & g);

} // namespace symef1
