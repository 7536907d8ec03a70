#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"
#include "symef1/tuples.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

using namespace symef1;
using oracle::item;
using oracle::items;

namespace {

std::string collapse_whitespace(const std::string & s)
{
    std::istringstream in(s);
    std::string word, out;
    while (in >> word)
        out += (out.empty() ? "" : " ") + word;
    return out;
}

/// Rows that are random permutations of 1..m, so rankings have no ties.
Instance distinct_rows(std::mt19937_64 & rng, int n, int m)
{
    std::vector<Value> v;
    for (int i = 0; i < n; ++i) {
        std::vector<Value> row(static_cast<std::size_t>(m));
        std::iota(row.begin(), row.end(), 1);
        std::shuffle(row.begin(), row.end(), rng);
        v.insert(v.end(), row.begin(), row.end());
    }
    return Instance(n, m, v);
}

} // namespace

TEST_CASE("ranking breaks ties by item index")
{
    CHECK(ranking(fixtures::mnw_unfair(), 0) == Ranking{5, 4, 3, 2, 1, 0});
    CHECK(ranking(fixtures::mnw_unfair(), 1) == Ranking{0, 2, 4, 1, 3, 5});
    CHECK(ranking(Instance{{0, 0, 0}}, 0) == Ranking{0, 1, 2});
}

TEST_CASE("indexed tuples")
{
    auto t = indexed_tuples(Instance{{5, 4, 3, 2, 1}, {1, 2, 3, 4, 5}});
    REQUIRE(t.tuples.size() == 2);
    REQUIRE(t.tuples[0].size() == 3);
    CHECK(t.tuples[0][0].size() == 2);
    CHECK(t.tuples[0][1].size() == 2);
    CHECK(t.tuples[0][2].size() == 1);
    CHECK(t.tuples[1][2] == std::vector<int>{0});

    CHECK(indexed_tuples(Instance{{1, 2}, {2, 1}, {1, 1}}).tuples[2].size() == 1);
    CHECK(indexed_tuples(Instance(2, 0, {})).tuples[0].empty());
}

TEST_CASE("tuples partition the items for every agent")
{
    std::mt19937_64 rng(3);
    for (int round = 0; round < 100; ++round) {
        int n = std::uniform_int_distribution<int>(1, 5)(rng);
        int m = std::uniform_int_distribution<int>(0, 14)(rng);
        auto t = indexed_tuples(oracle::random_matrix(rng, n, m, 5));
        for (const auto & agent : t.tuples) {
            std::vector<int> seen;
            for (const auto & tuple : agent) {
                CHECK(static_cast<int>(tuple.size()) <= n);
                seen.insert(seen.end(), tuple.begin(), tuple.end());
            }
            std::sort(seen.begin(), seen.end());
            std::vector<int> all(static_cast<std::size_t>(m));
            std::iota(all.begin(), all.end(), 0);
            CHECK(seen == all);
        }
    }
}

TEST_CASE("item graph of the non-colorable example")
{
    auto g = build_item_graph(fixtures::clique5());
    CHECK(g.vertices() == 6);
    CHECK(g.edge_count() == 13);
    auto clique = items("abcde");
    for (int u : clique)
        for (int v : clique)
            if (u != v)
                CHECK(g.adjacent(u, v));
    CHECK_FALSE(g.adjacent(item('a'), item('f')));
    CHECK_FALSE(g.adjacent(item('b'), item('f')));
}

TEST_CASE("item graph basics")
{
    ItemGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    CHECK(g.edge_count() == 1);
    CHECK(g.adjacent(1, 0));
    CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(build_item_graph(Instance(3, 0, {})).vertices() == 0);
}

TEST_CASE("components")
{
    ItemGraph empty(4);
    CHECK(components(empty).count == 4);

    ItemGraph two(4);
    two.add_edge(0, 2);
    two.add_edge(1, 3);
    auto c = components(two);
    CHECK(c.count == 2);
    CHECK(c.label == std::vector<int>{0, 1, 0, 1});

    CHECK(components(build_item_graph(fixtures::identical_3x9())).count == 3);
    CHECK(components(build_item_graph(fixtures::greedy_stuck())).count == 4);
}

TEST_CASE("exact coloring")
{
    auto g = build_item_graph(fixtures::clique5());
    CHECK_FALSE(k_color(g, 3));
    ColoringSearchStats stats;
    CHECK_FALSE(k_color(g, 4, &stats));
    CHECK(stats.nodes > 0);
    auto five = k_color(g, 5);
    REQUIRE(five);
    CHECK(is_proper_coloring(g, *five));
    CHECK(five->colors_used() == 5);
    CHECK_THROWS_AS(k_color(g, 0), std::invalid_argument);

    ItemGraph k4(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v)
            k4.add_edge(u, v);
    CHECK_FALSE(k_color(k4, 3));
    CHECK(k_color(k4, 4));
    CHECK(k_color(ItemGraph(0), 1));
}

TEST_CASE("coloring_to_partition")
{
    auto g = build_item_graph(fixtures::clique5());
    auto five = k_color(g, 5);
    REQUIRE(five);
    auto p = coloring_to_partition(*five, 5);
    CHECK(p.size() == 5);
    for (int k = 0; k < 5; ++k)
        for (int j : p[k])
            CHECK(five->color[static_cast<std::size_t>(j)] == k);

    auto one = coloring_to_partition(Coloring{{0, 0, 0}}, 3);
    CHECK(one == Partition({{0, 1, 2}, {}, {}}));

    CHECK_THROWS_AS(coloring_to_partition(Coloring{{0, 1, 2}}, 2), std::invalid_argument);

    // two disjoint 2-cycles
    ItemGraph cycles(4);
    cycles.add_edge(0, 1);
    cycles.add_edge(2, 3);
    auto c = k_color(cycles, 2);
    REQUIRE(c);
    auto q = coloring_to_partition(*c, 2);
    bool expected = q == Partition({items("ac"), items("bd")}) || q == Partition({items("ad"), items("bc")})
                 || q == Partition({items("bd"), items("ac")}) || q == Partition({items("bc"), items("ad")});
    CHECK(expected);
}

TEST_CASE("separates_tuples")
{
    auto inst = fixtures::clique5();
    auto t = indexed_tuples(inst);
    CHECK_FALSE(separates_tuples(Partition({items("af"), items("ce"), items("bd")}), t));

    auto id = fixtures::identical_3x9();
    CHECK(separates_tuples(Partition({items("adg"), items("beh"), items("cfj")}), indexed_tuples(id)));
    CHECK_FALSE(separates_tuples(Partition({items("abg"), items("deh"), items("cfj")}), indexed_tuples(id)));
}

TEST_CASE("count_lower_bound")
{
    auto id = fixtures::identical_3x9();
    CHECK(count_lower_bound(build_item_graph(id), 3) == BigInt(36));
    CHECK(count_lower_bound(build_item_graph(fixtures::unique_partition()), 2) == BigInt(1));
    CHECK(count_lower_bound(build_item_graph(fixtures::greedy_stuck()), 2) == BigInt(8));
    CHECK_FALSE(count_lower_bound(build_item_graph(fixtures::binary_no_symef1()), 3));
    CHECK_FALSE(count_lower_bound(build_item_graph(fixtures::clique5()), 3));

    // 20! squared does not fit in 64 bits
    ItemGraph edgeless(3);
    BigInt f20 = 1;
    for (int k = 2; k <= 20; ++k)
        f20 *= k;
    CHECK(count_lower_bound(edgeless, 20) == f20 * f20);
}

TEST_CASE("DOT output")
{
    CHECK(collapse_whitespace(graph_to_dot(ItemGraph(2))) == "graph G { 1; 2; }");
    ItemGraph one(2);
    one.add_edge(0, 1);
    CHECK(graph_to_dot(one).find("1 -- 2") != std::string::npos);

    auto dot = graph_to_dot(build_item_graph(fixtures::clique5()));
    std::size_t edges = 0;
    for (auto pos = dot.find(" -- "); pos != std::string::npos; pos = dot.find(" -- ", pos + 1))
        ++edges;
    CHECK(edges == 13);
}

TEST_CASE("colorings separate tuples and give balanced symEF1 partitions")
{
    std::mt19937_64 rng(11);
    int colored = 0;
    for (int round = 0; round < 400; ++round) {
        int n = std::uniform_int_distribution<int>(2, 4)(rng);
        int m = std::uniform_int_distribution<int>(n, 12)(rng);
        auto inst = oracle::random_matrix(rng, n, m, 100);
        auto t = indexed_tuples(inst);
        auto c = k_color(build_item_graph(t), n);
        if (n == 2)
            REQUIRE(c);
        if (!c)
            continue;
        ++colored;
        auto p = coloring_to_partition(*c, n);
        CHECK(separates_tuples(p, t));
        CHECK(is_symef1(inst, p));
        CHECK(is_balanced(p));
        for (const auto & b : p.bundles) {
            CHECK(static_cast<int>(b.size()) >= m / n);
            CHECK(static_cast<int>(b.size()) <= (m + n - 1) / n);
        }
        if (m % n != 0)
            continue;
        for (int i = 0; i < n; ++i) {
            auto row = inst.row(i);
            Value smallest = *std::min_element(row.begin(), row.end());
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (k != l)
                        CHECK(bundle_value(inst, i, p[k]) - smallest
                              >= bundle_value(inst, i, p[l]) - max_item_value(inst, i, p[l]));
        }
    }
    CHECK(colored > 100);
}

TEST_CASE("item graph is invariant under agent order, ranking reversal and in-tuple reordering")
{
    std::mt19937_64 rng(5);
    for (int round = 0; round < 100; ++round) {
        int n = std::uniform_int_distribution<int>(2, 4)(rng);
        int m = n * std::uniform_int_distribution<int>(1, 4)(rng);
        auto inst = distinct_rows(rng, n, m);
        auto g = build_item_graph(inst);

        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Value> permuted, reversed, reordered;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) {
                permuted.push_back(inst.value(perm[static_cast<std::size_t>(i)], j));
                reversed.push_back(m + 1 - inst.value(i, j));
            }
        CHECK(build_item_graph(Instance(n, m, permuted)) == g);
        CHECK(build_item_graph(Instance(n, m, reversed)) == g);

        // shuffle which item of a tuple gets which of the tuple's values
        reordered = inst.values();
        auto t = indexed_tuples(inst);
        for (int i = 0; i < n; ++i)
            for (const auto & tuple : t.tuples[static_cast<std::size_t>(i)]) {
                std::vector<Value> vals;
                for (int j : tuple)
                    vals.push_back(inst.value(i, j));
                std::shuffle(vals.begin(), vals.end(), rng);
                for (std::size_t s = 0; s < tuple.size(); ++s)
                    reordered[static_cast<std::size_t>(i * m + tuple[s])] = vals[s];
            }
        CHECK(build_item_graph(Instance(n, m, reordered)) == g);
    }
}
