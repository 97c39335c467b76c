#include <gtest/gtest.h>

#include "support.hpp"

using namespace npc;
using test::fa;
using test::fb;
using test::fc;

namespace {
const Schedule toy_s{{1, 2}};
}

TEST(Shrink, Toy) {
    Instance t = test::toy();
    HeuristicResult r = heuristic_shrink(t, toy_s, {fa, fb});
    EXPECT_EQ(r.objective_abs, 20);
    EXPECT_EQ(r.chain.sets[0], std::vector<int>{fa});  // lexicographic tie-break
    EXPECT_EQ(r.chain.sets[1], (std::vector<int>{fa, fb}));
    EXPECT_EQ(r.source, "shrink");
}

TEST(Grow, Toy) {
    Instance t = test::toy();
    HeuristicResult r = heuristic_grow(t, toy_s, {fc});
    EXPECT_EQ(r.objective_abs, 30);
    EXPECT_EQ(r.chain.radii, (std::vector<dist_t>{15, 15}));
}

TEST(Count, Toy) {
    Instance t = test::toy();
    HeuristicResult r = heuristic_count(t, toy_s, {{fc}, {fa, fb}});
    EXPECT_EQ(r.chain.sets[0], std::vector<int>{fa});
    EXPECT_EQ(r.chain.sets[1], (std::vector<int>{fa, fb}));
    EXPECT_EQ(r.objective_abs, 20);
}

TEST(Count, SinglePeriodReturnsSolution) {
    Instance in = random_instance(3, 10);
    auto pc = solve_pcenter(in, 3);
    HeuristicResult r = heuristic_count(in, Schedule{{3}}, {pc.witness});
    EXPECT_EQ(r.chain.sets[0], pc.witness);
}

TEST(Count, FallsBackBeyondUnion) {
    Instance in = random_instance(3, 10);
    Schedule s{{1, 6}};
    HeuristicResult r = heuristic_count(in, s, {{0}, {0, 1, 2, 3, 4, 5}});
    EXPECT_FALSE(chain_error(in, s, r.chain));
    r = heuristic_count(in, Schedule{{1, 4}}, {{2}, {2, 5, 6, 7}});
    EXPECT_FALSE(chain_error(in, Schedule{{1, 4}}, r.chain));
}

TEST(Steps, ZeroDelta) {
    Instance in = random_instance(6, 8);
    Schedule s{{2, 2, 3}};
    HeuristicResult g = heuristic_grow(in, s, {1, 4});
    EXPECT_EQ(g.chain.sets[0], g.chain.sets[1]);
    HeuristicResult k = heuristic_shrink(in, s, {1, 4, 6});
    EXPECT_EQ(k.chain.sets[0], k.chain.sets[1]);
}

TEST(Primal, Scores) {
    Instance t = test::toy();
    Chain c = primal_from_scores(t, toy_s, {{1.0, 0.7}, {0.2, 1.0}, {0.1, 0.0}});
    EXPECT_EQ(c.sets[0], std::vector<int>{fa});
    EXPECT_EQ(c.sets[1], (std::vector<int>{fa, fb}));
    Chain eq = primal_from_scores(t, toy_s, {{1, 1}, {1, 1}, {1, 1}});
    EXPECT_EQ(eq.sets[1], (std::vector<int>{fa, fb}));
    // integral scores of a chain give back that chain
    Chain back = primal_from_scores(t, toy_s, {{0, 1}, {0, 0}, {1, 1}});
    EXPECT_EQ(back.sets[0], std::vector<int>{fc});
    EXPECT_EQ(back.sets[1], (std::vector<int>{fa, fc}));
}

TEST(BestStart, Toy) {
    Instance t = test::toy();
    auto pc = solve_pcenter_sequence(t, toy_s);
    HeuristicResult r = best_start(t, toy_s, pc);
    EXPECT_EQ(r.objective_abs, 20);
    EXPECT_EQ(r.source, "shrink");
}

TEST(BestStart, SinglePeriod) {
    Instance in = random_instance(9, 11);
    Schedule s{{4}};
    auto pc = solve_pcenter_sequence(in, s);
    EXPECT_EQ(best_start(in, s, pc).objective_abs, pc[0].d_star);
}

TEST(BestStart, Eil51) {
    if (!test::has_data("eil51.tsp")) GTEST_SKIP() << "eil51.tsp not present";
    auto li = load_instance(test::data_file("eil51.tsp"));
    Schedule s = parse_schedule("4,5,6");
    auto pc = solve_pcenter_sequence(li.inst, s);
    HeuristicResult r = best_start(li.inst, s, pc);
    EXPECT_GE(r.objective_abs, 61);
    EXPECT_FALSE(chain_error(li.inst, s, r.chain));
}

TEST(Heuristics, GoldenAtLeastOptimum) {
    // seed-0 fixture: oracle optimum 33
    Instance in = random_instance(0, 10);
    Schedule s{{2, 3}};
    auto pc = solve_pcenter_sequence(in, s);
    std::vector<std::vector<int>> sols{pc[0].witness, pc[1].witness};
    EXPECT_GE(heuristic_shrink(in, s, pc[1].witness).objective_abs, 33);
    EXPECT_GE(heuristic_grow(in, s, pc[0].witness).objective_abs, 33);
    EXPECT_GE(heuristic_count(in, s, sols).objective_abs, 33);
}
