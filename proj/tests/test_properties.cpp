// Randomized agreement with the exhaustive oracle. Cases come from
// test::tiny_case, so every failure names a reproducible seed.
#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support.hpp"

using namespace npc;

namespace {

SolveOptions opts(Engine e, Setting s = Setting::PH) {
    SolveOptions o;
    o.engine = e;
    o.setting = s;
    o.time_limit_s = 60;
    return o;
}

}  // namespace

TEST(Property, AbsoluteMatchesOracle) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto c = test::tiny_case(seed);
        OracleResult o = enumerate_nested(c.inst, c.schedule);
        for (Engine e : {Engine::radius, Engine::chain}) {
            SolveReport r = solve_absolute(c.inst, c.schedule, opts(e, seed % 3 == 0 ? Setting::B : Setting::PH));
            ASSERT_EQ(r.status, Status::optimal);
            EXPECT_EQ(r.objective, o.optimum_abs) << "seed " << seed << " " << to_string(e);
            EXPECT_FALSE(chain_error(c.inst, c.schedule, r.chain)) << "seed " << seed;
            EXPECT_EQ(r.chain.sum(), o.optimum_abs);
            EXPECT_EQ(r.d_star, o.d_star);
        }
    }
}

TEST(Property, RelativeMatchesOracle) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto c = test::tiny_case(seed);
        OracleResult o = enumerate_nested(c.inst, c.schedule);
        ASSERT_TRUE(o.optimum_rel) << "seed " << seed;
        for (Engine e : {Engine::radius, Engine::chain}) {
            SolveReport r = solve_relative(c.inst, c.schedule, opts(e, seed % 3 == 1 ? Setting::P : Setting::PH));
            ASSERT_TRUE(r.objective_exact);
            EXPECT_EQ(*r.objective_exact, *o.optimum_rel) << "seed " << seed << " " << to_string(e);
            EXPECT_EQ(relative_objective(r.chain.radii, o.d_star), *o.optimum_rel);
            EXPECT_FALSE(chain_error(c.inst, c.schedule, r.chain));
        }
    }
}

TEST(Property, PCenterMatchesOracle) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto c = test::tiny_case(seed);
        for (int p = 1; p <= c.inst.n; ++p) {
            PCenterResult r = solve_pcenter(c.inst, p);
            PCenterOracle o = enumerate_pcenter(c.inst, p);
            EXPECT_EQ(r.d_star, o.optimum) << "seed " << seed << " p " << p;
            EXPECT_EQ(static_cast<int>(r.witness.size()), p);
            EXPECT_EQ(eval_radius(c.inst, r.witness), r.d_star);
        }
    }
}

TEST(Property, BoundsHold) {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        auto c = test::tiny_case(seed);
        OracleResult o = enumerate_nested(c.inst, c.schedule);
        Preprocessing pre = preprocess(c.inst, c.schedule);
        const BoundSet& b = pre.bounds;
        dist_t lb = 0;
        for (dist_t v : b.LB) lb += v;
        EXPECT_LE(lb, o.optimum_abs) << "seed " << seed;
        EXPECT_LE(o.optimum_abs, b.UB_global) << "seed " << seed;
        // some optimal chain respects every per-period UB derived from any valid global UB
        BoundSet tight = make_bounds(o.d_star, o.optimum_abs);
        bool inside = false;
        for (const Chain& ch : o.all_optimal_chains_abs) {
            bool ok = true;
            for (std::size_t h = 0; h < ch.radii.size(); ++h) ok = ok && ch.radii[h] <= b.UB[h] && ch.radii[h] <= tight.UB[h];
            inside = inside || ok;
        }
        EXPECT_TRUE(inside) << "seed " << seed;
    }
}

TEST(Property, PeriodBoundsIncomparable) {
    std::mt19937_64 rng(11);
    int residual_wins = 0, averaged_wins = 0;
    for (int t = 0; t < 500; ++t) {
        int H = 2 + static_cast<int>(rng() % 3);
        std::vector<dist_t> lb(H);
        dist_t prev = 40 + static_cast<dist_t>(rng() % 40);
        for (int h = 0; h < H; ++h) lb[h] = prev = prev - static_cast<dist_t>(rng() % 10);
        dist_t sum = 0;
        for (dist_t v : lb) sum += v;
        dist_t ub = sum + static_cast<dist_t>(rng() % 60);
        auto r = ub_periods_residual(ub, lb);
        auto a = ub_periods_averaged(ub, lb);
        auto m = ub_periods_combined(ub, lb);
        for (int h = 0; h < H; ++h) {
            EXPECT_EQ(m[h], std::min(r[h], a[h]));
            EXPECT_GE(m[h], lb[h]);
            residual_wins += r[h] < a[h];
            averaged_wins += a[h] < r[h];
        }
    }
    EXPECT_GT(residual_wins, 0);
    EXPECT_GT(averaged_wins, 0);
}

TEST(Property, HeuristicsNeverBeatOptimum) {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        auto c = test::tiny_case(seed);
        OracleResult o = enumerate_nested(c.inst, c.schedule);
        auto pc = solve_pcenter_sequence(c.inst, c.schedule);
        std::vector<std::vector<int>> sols;
        for (const auto& r : pc) sols.push_back(r.witness);
        for (const HeuristicResult& h : {heuristic_shrink(c.inst, c.schedule, sols.back(), o.d_star),
                                         heuristic_grow(c.inst, c.schedule, sols.front(), o.d_star),
                                         heuristic_count(c.inst, c.schedule, sols, o.d_star)}) {
            EXPECT_FALSE(chain_error(c.inst, c.schedule, h.chain)) << "seed " << seed << " " << h.source;
            EXPECT_GE(h.objective_abs, o.optimum_abs);
            ASSERT_TRUE(h.objective_rel_exact);
            EXPECT_GE(*h.objective_rel_exact, *o.optimum_rel);
        }
    }
}

TEST(Property, NodeBoundNeverExceedsCompletion) {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto c = test::tiny_case(seed, 6, 9);
        Preprocessing pre = preprocess(c.inst, c.schedule);
        for (int trial = 0; trial < 4; ++trial) {
            int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(c.schedule.p[0]));
            std::vector<int> ids(c.inst.n);
            for (int j = 0; j < c.inst.n; ++j) ids[j] = j;
            std::shuffle(ids.begin(), ids.end(), rng);
            std::vector<int> part(ids.begin(), ids.begin() + k);
            std::sort(part.begin(), part.end());
            SearchNode node{0, part, part.back(), {}};
            dist_t best = dist_inf;
            for_each_nested_chain(c.inst, c.schedule, [&](const auto& sets, const auto& radii) {
                const auto& j1 = sets[0];
                if (!std::includes(j1.begin(), j1.end(), part.begin(), part.end())) return;
                // the node only extends J^1 with facilities past last_added
                for (int j : j1)
                    if (!std::binary_search(part.begin(), part.end(), j) && j < part.back()) return;
                dist_t s = 0;
                for (dist_t r : radii) s += r;
                best = std::min(best, s);
            });
            if (best == dist_inf) continue;
            for (int depth : {0, 1, 3}) {
                SolveOptions o;
                o.constrained_bound = depth > 0;
                o.constrained_depth = depth;
                EXPECT_LE(node_bound_absolute(c.inst, c.schedule, node, pre.bounds, o), best)
                    << "seed " << seed << " depth " << depth;
            }
        }
    }
}

TEST(Property, ModelsAcceptOptimalChains) {
    const Formulation all[] = {Formulation::A1, Formulation::A2, Formulation::A3, Formulation::R1, Formulation::R2};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto c = test::tiny_case(seed, 6, 9);
        OracleResult o = enumerate_nested(c.inst, c.schedule);
        BoundSet b = make_bounds(o.d_star, o.optimum_abs);
        for (Formulation f : all)
            for (bool lift : {false, true})
                for (bool fix : {false, true}) {
                    if (fix && f != Formulation::A3) continue;
                    ModelSpec sp;
                    sp.formulation = f;
                    sp.lift = lift;
                    sp.fix = fix;
                    sp.bounds = b;
                    sp.rel_lb = o.optimum_rel->value();
                    ModelDocument doc = emit_model(c.inst, c.schedule, sp);
                    const auto& opt = is_relative(f) ? o.all_optimal_chains_rel : o.all_optimal_chains_abs;
                    for (const Chain& ch : opt) {
                        ModelCheck mc = validate_chain_against_model(doc, c.inst, ch);
                        EXPECT_TRUE(mc.ok) << "seed " << seed << " " << to_string(f) << " lift=" << lift
                                           << " fix=" << fix << " first violation "
                                           << (mc.violated.empty() ? "-" : mc.violated.front());
                        double want = is_relative(f) ? o.optimum_rel->value() : static_cast<double>(o.optimum_abs);
                        EXPECT_NEAR(mc.model_objective, want, 1e-9);
                    }
                }
    }
}

// Lifting with LB = d* removes no feasible chain at all.
TEST(Property, LiftedModelsAcceptEveryChain) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto c = test::tiny_case(seed, 6, 8);
        OracleResult o = enumerate_nested(c.inst, c.schedule);
        BoundSet b = make_bounds(o.d_star, o.optimum_abs);
        for (Formulation f : {Formulation::A1, Formulation::A2, Formulation::A3, Formulation::R1, Formulation::R2}) {
            ModelSpec sp;
            sp.formulation = f;
            sp.lift = true;
            sp.bounds = b;
            ModelDocument doc = emit_model(c.inst, c.schedule, sp);
            int bad = 0;
            for_each_nested_chain(c.inst, c.schedule, [&](const auto& sets, const auto& radii) {
                bad += !validate_chain_against_model(doc, c.inst, Chain{sets, radii}).ok;
            });
            EXPECT_EQ(bad, 0) << "seed " << seed << " " << to_string(f);
        }
    }
}

TEST(Property, Monotonicity) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto c = test::tiny_case(seed);
        OracleResult o = enumerate_nested(c.inst, c.schedule);
        for (std::size_t h = 1; h < o.d_star.size(); ++h) EXPECT_LE(o.d_star[h], o.d_star[h - 1]);
        EXPECT_LE(o.optimum_abs, static_cast<dist_t>(c.schedule.H()) * o.d_star.front());
        // relaxing the last period never hurts
        if (c.schedule.p.back() < c.inst.n) {
            Schedule s2 = c.schedule;
            ++s2.p.back();
            EXPECT_LE(enumerate_nested(c.inst, s2).optimum_abs, o.optimum_abs) << "seed " << seed;
        }
        for (const Chain& ch : o.all_optimal_chains_abs) {
            auto g = compute_regrets(ch, o.d_star);
            for (dist_t a : g.abs) EXPECT_GE(a, 0);
        }
    }
}
