#include <gtest/gtest.h>

#include "support.hpp"

using namespace npc;
using test::fa;
using test::fb;
using test::fc;

TEST(Cover, Toy) {
    Instance t = test::toy();
    CoverProblem p;
    p.radius = 15;
    p.budget = 1;
    auto s = cover_feasible(t, p);
    ASSERT_TRUE(s);
    EXPECT_EQ(*s, std::vector<int>{fc});
    p.radius = 14;
    EXPECT_FALSE(cover_feasible(t, p));
}

TEST(Cover, MaxRadiusOneFacility) {
    Instance in = random_instance(11, 10);
    CoverProblem p;
    p.radius = in.max_distance();
    EXPECT_TRUE(cover_feasible(in, p));
}

TEST(Cover, ForcedAndAllowed) {
    Instance t = test::toy();
    CoverProblem p;
    p.radius = 0;
    p.budget = 2;
    p.forced = {fa};
    auto s = cover_feasible(t, p);
    ASSERT_TRUE(s);
    EXPECT_EQ(*s, (std::vector<int>{fa, fb}));
    p.allowed = std::vector<int>{fa, fc};
    EXPECT_FALSE(cover_feasible(t, p));
    p.forced = {fa, fb, fc};
    p.allowed.reset();
    EXPECT_FALSE(cover_feasible(t, p));  // forced alone exceeds the budget
}

TEST(Cover, Universe) {
    Instance t = test::toy();
    CoverProblem p;
    p.radius = 0;
    p.universe = std::vector<int>{0};
    auto s = cover_feasible(t, p);
    ASSERT_TRUE(s);
    EXPECT_EQ(*s, std::vector<int>{fa});
}

TEST(PCenter, Toy) {
    Instance t = test::toy();
    auto r = solve_pcenter(t, 1);
    EXPECT_EQ(r.d_star, 15);
    EXPECT_EQ(r.witness, std::vector<int>{fc});
    EXPECT_EQ(solve_pcenter(t, 2).d_star, 0);
    EXPECT_EQ(solve_pcenter(t, 3).d_star, 0);
}

TEST(PCenter, FullSetIsZero) {
    Instance in = random_instance(4, 9);
    EXPECT_EQ(solve_pcenter(in, 9).d_star, 0);
    auto seq = solve_pcenter_sequence(in, Schedule{{9}});
    EXPECT_EQ(seq[0].d_star, 0);
}

TEST(PCenter, Eil51) {
    if (!test::has_data("eil51.tsp")) GTEST_SKIP() << "eil51.tsp not present";
    auto li = load_instance(test::data_file("eil51.tsp"));
    auto seq = solve_pcenter_sequence(li.inst, parse_schedule("4,5,6"));
    ASSERT_EQ(seq.size(), 3u);
    EXPECT_EQ(seq[0].d_star, 22);
    EXPECT_EQ(seq[1].d_star, 19);
    EXPECT_EQ(seq[2].d_star, 17);
    for (const auto& r : seq) {
        EXPECT_TRUE(r.exact);
        EXPECT_EQ(eval_radius(li.inst, r.witness), r.d_star);
    }
}

TEST(PCenter, Pmed1) {
    if (!test::has_data("pmed1.txt")) GTEST_SKIP() << "pmed1.txt not present";
    auto li = load_instance(test::data_file("pmed1.txt"));
    EXPECT_EQ(li.inst.n, 100);
    EXPECT_EQ(*li.p_file, 5);
    EXPECT_EQ(solve_pcenter(li.inst, 5).d_star, 127);
}

TEST(PCenter, Hints) {
    Instance in = random_instance(8, 12);
    dist_t opt = solve_pcenter(in, 3).d_star;
    EXPECT_EQ(solve_pcenter(in, 3, opt, opt).d_star, opt);
    EXPECT_EQ(solve_pcenter(in, 3, 0, in.max_distance()).d_star, opt);
}

TEST(PCenter, Deadline) {
    if (!test::has_data("pr107.tsp")) GTEST_SKIP() << "pr107.tsp not present";
    auto li = load_instance(test::data_file("pr107.tsp"));
    SearchBudget b = SearchBudget::seconds(0.05);
    auto r = solve_pcenter(li.inst, 15, 0, dist_inf, &b);
    // a cut-short search still returns a valid witness and a lower bound
    EXPECT_EQ(eval_radius(li.inst, r.witness), r.d_star);
    EXPECT_LE(r.lower, r.d_star);
    EXPECT_EQ(r.witness.size(), 15u);
}

TEST(CriticalRadius, Examples) {
    Instance t = test::toy();
    EXPECT_EQ(critical_radius(t, 0, {0.4, 0.2, 0.4}), 20);
    EXPECT_EQ(critical_radius(t, 0, {0, 0, 1}), 15);
    Instance line = make_instance("line", {{3, 7, 9}});
    EXPECT_EQ(critical_radius(line, 0, {0.5, 0.5, 0}), 7);
    EXPECT_THROW(critical_radius(line, 0, {0.3, 0.3, 0.3}), std::invalid_argument);
}
