#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"
#include "symef1/core.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace symef1;
using oracle::items;

TEST_CASE("parse_instance reads the matrix as written")
{
    auto inst = parse_instance("3 4\n1 1 1 0\n1 1 0 1\n1 0 1 1");
    CHECK(inst == fixtures::binary_no_symef1());

    auto empty = parse_instance("1 0\n");
    CHECK(empty.agents() == 1);
    CHECK(empty.items() == 0);

    auto two = parse_instance("2 2\n5 3\n3 5");
    CHECK(two.value(0, 0) == 5);
    CHECK(two.value(0, 1) == 3);
    CHECK(two.value(1, 0) == 3);
    CHECK(two.value(1, 1) == 5);
}

TEST_CASE("parse_instance skips comments and blank lines")
{
    auto inst = parse_instance("# header comment\n\n2 2\n  # row comment\n5 3\n\n3 5\n");
    CHECK(inst == (Instance{{5, 3}, {3, 5}}));
}

TEST_CASE("parse_instance reports the offending line")
{
    auto line_of = [](const char * text) {
        try {
            parse_instance(text);
        }
        catch (const ParseError & e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("2 2\n1 2\n3 x\n") == 3);
    CHECK(line_of("2 2\n1 2\n3\n") == 3);
    CHECK(line_of("2 2\n1 -2\n3 4\n") == 2);
    CHECK(line_of("2 2\n1 2.5\n3 4\n") == 2);
    CHECK(line_of("2\n1 2\n") == 1);
    CHECK(line_of("0 2\n") == 1);
    CHECK(line_of("2 2\n1 2\n3 4\n5 6\n") == 4);
    CHECK_THROWS_AS(parse_instance("2 2\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_instance(""), ParseError);
}

TEST_CASE("partition files: empty lines are empty bundles, comments skipped")
{
    auto p = parse_partition("# note\n1 3\n\n2\n", 3, 3);
    CHECK(p == Partition({{0, 2}, {}, {1}}));

    auto trailing = parse_partition("1 2 3\n", 3, 3);
    CHECK(trailing == Partition({{0, 1, 2}, {}, {}}));

    CHECK(parse_partition(format_partition(p), 3, 3) == p);

    CHECK_THROWS_AS(parse_partition("1 2\n2 3\n", 2, 3), ParseError);
    CHECK_THROWS_AS(parse_partition("1 2\n", 2, 3), ParseError);
    CHECK_THROWS_AS(parse_partition("1 4\n2 3\n", 2, 3), ParseError);
    CHECK_THROWS_AS(parse_partition("1\n2\n3\n", 2, 3), ParseError);
}

TEST_CASE("bundle_value")
{
    auto t1 = fixtures::binary_no_symef1();
    CHECK(bundle_value(t1, 0, items("abc")) == 3);
    CHECK(bundle_value(t1, 2, Bundle{}) == 0);
    CHECK(bundle_value(fixtures::greedy_stuck(), 0, items("abcd")) == 156);
    CHECK_THROWS_AS(bundle_value(t1, 0, Bundle{7}), std::out_of_range);
}

TEST_CASE("empty bundles have max and min item value 0")
{
    auto t4 = fixtures::greedy_stuck();
    CHECK(max_item_value(t4, 0, Bundle{}) == 0);
    CHECK(min_item_value(t4, 0, Bundle{}) == 0);
    CHECK(max_item_value(t4, 0, items("dej")) == 36);
    CHECK(min_item_value(t4, 0, items("dej")) == 32);
}

TEST_CASE("is_ef1_satisfied")
{
    auto t1 = fixtures::binary_no_symef1();
    // agent 1 holding {d} against {a,b}: 0 < 2 - 1
    Partition p({items("ab"), items("c"), items("d")});
    CHECK_FALSE(is_ef1_satisfied(t1, 0, 2, p));
    CHECK(is_ef1_satisfied(t1, 0, 0, p));

    Instance single{{4, 2, 7}};
    CHECK(is_ef1_satisfied(single, 0, 0, Partition({{0, 1, 2}})));

    // 132 >= 156 - 40
    auto t4 = fixtures::greedy_stuck();
    Partition partial({items("abcd"), items("efgh")});
    CHECK(is_ef1_satisfied(t4, 0, 1, partial));
    CHECK(bundle_value(t4, 0, partial[1]) == 132);
    CHECK(bundle_value(t4, 0, partial[0]) - max_item_value(t4, 0, partial[0]) == 116);

    CHECK_THROWS_AS(is_ef1_satisfied(t1, 3, 0, p), std::out_of_range);
    CHECK_THROWS_AS(is_ef1_satisfied(t1, 0, 3, p), std::out_of_range);
}

TEST_CASE("is_symef1 on the worked examples")
{
    CHECK(is_symef1(fixtures::clique5(), Partition({items("af"), items("ce"), items("bd")})));

    Instance same{{3, 1, 4}, {3, 1, 4}, {3, 1, 4}};
    CHECK(is_symef1(same, Partition({{0}, {1}, {2}})));

    CHECK_FALSE(is_symef1(fixtures::mnw_unfair_scaled(), Partition({items("bdf"), items("ace")})));
    CHECK(is_symef1(fixtures::mnw_unfair_scaled(), Partition({items("cdf"), items("abe")})));

    CHECK_THROWS_AS(is_symef1(fixtures::binary_no_symef1(), Partition({{0, 1}, {2, 3}})), std::invalid_argument);
}

TEST_CASE("symEF1 does not imply symEFX")
{
    Instance three{{100, 50, 50}, {100, 50, 50}};
    Partition p({{1}, {0, 2}});
    CHECK(is_symef1(three, p));
    CHECK_FALSE(is_symefx(three, p));
    CHECK(is_symefx(Instance{{5, 1}}, Partition({{0, 1}})));
}

TEST_CASE("no partition of the diagonal instance is symEFX")
{
    auto inst = fixtures::no_symefx_diagonal();
    int maps = 0;
    for (int code = 0; code < 81; ++code) {
        std::vector<Bundle> b(3);
        for (int j = 0, c = code; j < 4; ++j, c /= 3)
            b[c % 3].push_back(j);
        CHECK_FALSE(is_symefx(inst, Partition(b)));
        ++maps;
    }
    CHECK(maps == 81);
}

TEST_CASE("find_symmetric_violation reports both sides")
{
    auto v = find_symmetric_violation(fixtures::binary_no_symef1(), Partition({items("ab"), items("c"), items("d")}));
    REQUIRE(v);
    CHECK(v->agent == 0);
    CHECK(v->held == 2);
    CHECK(v->envied == 0);
    CHECK(v->lhs == 0);
    CHECK(v->rhs == 1);
}

TEST_CASE("is_balanced")
{
    CHECK(is_balanced(Partition({{0, 2}, {1, 3}})));
    CHECK_FALSE(is_balanced(Partition({{0}, {1, 2, 3}})));
    CHECK(is_balanced(Partition({{}, {0}})));
}

TEST_CASE("nash_welfare")
{
    auto inst = fixtures::mnw_unfair();
    Assignment mnw{Partition({items("bdf"), items("ace")}), {0, 1}};
    CHECK(nash_welfare(inst, mnw) == 108);
    Assignment fair{Partition({items("cdf"), items("abe")}), {0, 1}};
    CHECK(nash_welfare(inst, fair) == 91);
    Assignment starved{Partition({items("abcdef"), {}}), {0, 1}};
    CHECK(nash_welfare(inst, starved) == 0);
    Assignment swapped{Partition({items("ace"), items("bdf")}), {1, 0}};
    CHECK(nash_welfare(inst, swapped) == 108);
    CHECK_THROWS_AS(nash_welfare(inst, Assignment{mnw.partition, {0, 0}}), std::invalid_argument);
}

TEST_CASE("items_distinct")
{
    CHECK(items_distinct(fixtures::binary_no_symef1()));
    CHECK_FALSE(items_distinct(Instance{{1, 0}, {2, 0}}));
    CHECK_FALSE(items_distinct(Instance{{1, 1}, {2, 2}}));
}

TEST_CASE("properties of the predicates on random instances")
{
    std::mt19937_64 rng(7);
    for (int round = 0; round < 300; ++round) {
        int n = std::uniform_int_distribution<int>(1, 4)(rng);
        int m = std::uniform_int_distribution<int>(0, 8)(rng);
        auto inst = oracle::random_matrix(rng, n, m, 20);
        std::vector<Bundle> b(static_cast<std::size_t>(n));
        for (int j = 0; j < m; ++j)
            b[std::uniform_int_distribution<int>(0, n - 1)(rng)].push_back(j);
        Partition p(b);
        bool sym = is_symef1(inst, p);
        CHECK(sym == oracle::naive_symmetric(inst, p.bundles));
        CHECK(is_symefx(inst, p) == oracle::naive_symmetric(inst, p.bundles, true));

        // scaling a row keeps every verdict
        int agent = std::uniform_int_distribution<int>(0, n - 1)(rng);
        Value c = std::uniform_int_distribution<Value>(2, 9)(rng);
        std::vector<Value> scaled = inst.values();
        for (int j = 0; j < m; ++j)
            scaled[static_cast<std::size_t>(agent * m + j)] *= c;
        Instance inst2(n, m, scaled);
        CHECK(is_symef1(inst2, p) == sym);
        CHECK(is_symefx(inst2, p) == is_symefx(inst, p));
        for (int k = 0; k < n; ++k)
            CHECK(is_ef1_satisfied(inst2, agent, k, p) == is_ef1_satisfied(inst, agent, k, p));

        // bundle order is irrelevant
        Partition rotated = p;
        std::rotate(rotated.bundles.begin(), rotated.bundles.begin() + 1, rotated.bundles.end());
        CHECK(is_symef1(inst, rotated) == sym);

        // symEFX implies symEF1 when no bundle is empty
        bool all_nonempty = std::none_of(p.bundles.begin(), p.bundles.end(), [](const Bundle & x) { return x.empty(); });
        if (all_nonempty && is_symefx(inst, p))
            CHECK(sym);

        // singletons plus empties are always symEF1
        if (m <= n) {
            std::vector<Bundle> singles(static_cast<std::size_t>(n));
            for (int j = 0; j < m; ++j)
                singles[static_cast<std::size_t>(j)].push_back(j);
            CHECK(is_symef1(inst, Partition(singles)));
        }

        // Nash welfare ignores how bundles and owners are jointly relabelled
        std::vector<int> owner(static_cast<std::size_t>(n));
        std::iota(owner.begin(), owner.end(), 0);
        Assignment a{p, owner};
        Assignment b2{rotated, owner};
        std::rotate(b2.owner.begin(), b2.owner.begin() + 1, b2.owner.end());
        CHECK(nash_welfare(inst, a) == nash_welfare(inst, b2));
    }
}
