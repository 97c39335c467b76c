#include <gtest/gtest.h>

#include "support.hpp"

using namespace npc;
using test::fa;
using test::fb;
using test::fc;

TEST(Oracle, ToyNested) {
    Instance t = test::toy();
    OracleResult o = enumerate_nested(t, Schedule{{1, 2}});
    EXPECT_EQ(o.optimum_abs, 20);
    EXPECT_FALSE(o.optimum_rel);
    EXPECT_EQ(o.chain_count, 6u);
    ASSERT_EQ(o.all_optimal_chains_abs.size(), 2u);
    using Sets = std::vector<std::vector<int>>;
    EXPECT_EQ(o.all_optimal_chains_abs[0].sets, (Sets{{fa}, {fa, fb}}));
    EXPECT_EQ(o.all_optimal_chains_abs[1].sets, (Sets{{fb}, {fa, fb}}));
}

TEST(Oracle, ToyPCenter) {
    Instance t = test::toy();
    PCenterOracle one = enumerate_pcenter(t, 1);
    EXPECT_EQ(one.optimum, 15);
    EXPECT_EQ(one.optimal_sets, (std::vector<std::vector<int>>{{fc}}));
    PCenterOracle two = enumerate_pcenter(t, 2);
    EXPECT_EQ(two.optimum, 0);
    EXPECT_EQ(two.optimal_sets.front(), (std::vector<int>{fa, fb}));
    EXPECT_EQ(enumerate_pcenter(t, 3).optimum, 0);
    EXPECT_THROW(enumerate_pcenter(t, 0), std::invalid_argument);
}

TEST(Oracle, Guard) {
    Instance big = random_instance(3, 60);
    try {
        enumerate_nested(big, Schedule{{10, 20, 30}});
        FAIL();
    } catch (const std::length_error& e) {
        EXPECT_STREQ(e.what(), "instance too large for oracle");
    }
    EXPECT_THROW(enumerate_pcenter(big, 20), std::length_error);
}

TEST(Oracle, ChainCountClosedForm) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto c = test::tiny_case(seed, 6, 9);
        std::uint64_t visited = 0;
        for_each_nested_chain(c.inst, c.schedule, [&](const auto& sets, const auto& radii) {
            ++visited;
            for (std::size_t h = 0; h < sets.size(); ++h) {
                EXPECT_EQ(static_cast<int>(sets[h].size()), c.schedule.p[h]);
                EXPECT_EQ(radii[h], eval_radius(c.inst, sets[h]));
                if (h) {
                    EXPECT_TRUE(std::includes(sets[h].begin(), sets[h].end(), sets[h - 1].begin(), sets[h - 1].end()));
                }
            }
        });
        EXPECT_EQ(static_cast<double>(visited), nested_chain_count(c.inst.n, c.schedule));
    }
    EXPECT_EQ(nested_chain_count(10, Schedule{{2, 3}}), 45.0 * 8.0);
}

// Frozen from enumerate_nested; independent of every solver module.
TEST(Oracle, Golden) {
    Instance in = random_instance(0, 10);
    OracleResult o = enumerate_nested(in, Schedule{{2, 3}});
    EXPECT_EQ(o.optimum_abs, 33);
    ASSERT_TRUE(o.optimum_rel);
    EXPECT_EQ(*o.optimum_rel, Ratio(3, 19));
    EXPECT_EQ(o.chain_count, 360u);
    EXPECT_EQ(o.d_star, (std::vector<dist_t>{19, 11}));
    EXPECT_EQ(o.all_optimal_chains_abs.size(), 12u);
}

TEST(Generators, Deterministic) {
    Instance a = random_instance(7, 9), b = random_instance(7, 9);
    EXPECT_EQ(a.d, b.d);
    for (int i = 0; i < a.n; ++i) {
        EXPECT_EQ(a(i, i), 0);
        for (int j = 0; j < a.n; ++j) {
            EXPECT_EQ(a(i, j), a(j, i));
            if (i != j) {
                EXPECT_GT(a(i, j), 0);
            }
        }
    }
    Schedule s = random_schedule(7, 9, 3);
    EXPECT_EQ(s.p, random_schedule(7, 9, 3).p);
    EXPECT_NO_THROW(validate_schedule(s, 9));
    EXPECT_TRUE(std::is_sorted(s.p.begin(), s.p.end()));
    EXPECT_THROW(random_schedule(1, 3, 3), std::invalid_argument);
}
