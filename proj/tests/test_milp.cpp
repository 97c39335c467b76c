#include <gtest/gtest.h>

#include "support.hpp"

using namespace npc;
using test::fa;
using test::fb;
using test::fc;

namespace {

ModelSpec spec_of(Formulation f, bool lift = false, bool fix = false, BoundSet b = {}) {
    ModelSpec s;
    s.formulation = f;
    s.lift = lift;
    s.fix = fix;
    s.bounds = std::move(b);
    return s;
}

}  // namespace

TEST(Milp, ToyA2Shape) {
    ModelDocument doc = emit_model(test::toy(), Schedule{{1, 2}}, spec_of(Formulation::A2));
    EXPECT_EQ(doc.count_vars(VarKind::y), 6);
    EXPECT_EQ(doc.count_vars(VarKind::z), 2);
    EXPECT_EQ(doc.count_vars(VarKind::x), 0);
    EXPECT_EQ(doc.count_rows("card"), 2);
    EXPECT_EQ(doc.count_rows("nest"), 3);
    EXPECT_EQ(doc.count_rows("zpush"), 12);
    ASSERT_NE(doc.find_var("y_3_1"), nullptr);
    EXPECT_TRUE(doc.find_var("y_3_1")->binary);
    EXPECT_FALSE(doc.find_var("z_2")->binary);
}

TEST(Milp, ToyA2ChainObjective) {
    Instance t = test::toy();
    Schedule s{{1, 2}};
    ModelDocument doc = emit_model(t, s, spec_of(Formulation::A2));
    ModelCheck c = validate_chain_against_model(doc, t, make_chain(t, {{fc}, {fa, fc}}));
    EXPECT_TRUE(c.ok);
    EXPECT_DOUBLE_EQ(c.model_objective, 30);
    ModelCheck best = validate_chain_against_model(doc, t, make_chain(t, {{fa}, {fa, fb}}));
    EXPECT_TRUE(best.ok);
    EXPECT_DOUBLE_EQ(best.model_objective, 20);
}

TEST(Milp, A1Shape) {
    if (!test::has_data("eil51.tsp")) GTEST_SKIP() << "eil51.tsp not present";
    auto li = load_instance(test::data_file("eil51.tsp"));
    ModelDocument doc = emit_model(li.inst, parse_schedule("4,5,6"), spec_of(Formulation::A1));
    EXPECT_EQ(static_cast<int>(doc.vars.size()), 51 * 51 * 3 + 51 * 3 + 3);
    EXPECT_EQ(doc.count_rows("assign"), 51 * 3);
    EXPECT_EQ(doc.count_rows("open"), 51 * 51 * 3);
    EXPECT_EQ(doc.count_rows("zpush"), 51 * 3);
}

TEST(Milp, A3FixToy) {
    Instance t = test::toy();
    BoundSet b;
    b.LB = {15, 0};
    b.UB = {20, 5};
    ModelDocument doc = emit_model(t, Schedule{{1, 2}}, spec_of(Formulation::A3, false, true, b));
    // distinct distances 0, 15, 20
    auto fixed = [&](const char* n) {
        const Variable* v = doc.find_var(n);
        return v && v->lb == v->ub ? static_cast<int>(v->lb) : -1;
    };
    EXPECT_EQ(fixed("u_1_1"), 1);
    EXPECT_EQ(fixed("u_2_1"), -1);
    EXPECT_EQ(fixed("u_3_1"), -1);
    EXPECT_EQ(fixed("u_1_2"), -1);
    EXPECT_EQ(fixed("u_2_2"), 0);
    EXPECT_EQ(fixed("u_3_2"), 0);
    EXPECT_TRUE(validate_chain_against_model(doc, t, make_chain(t, {{fa}, {fa, fb}})).ok);
}

TEST(Milp, Errors) {
    Instance t = test::toy();
    Schedule s{{1, 2}};
    EXPECT_THROW(emit_model(t, s, spec_of(Formulation::A2, false, true)), std::invalid_argument);
    EXPECT_THROW(emit_model(t, s, spec_of(Formulation::A3, false, true)), std::invalid_argument);
    BoundSet zero;
    zero.d_star = {15, 0};
    EXPECT_THROW(emit_model(t, s, spec_of(Formulation::R1, false, false, zero)), std::domain_error);
    EXPECT_THROW(emit_model(t, s, spec_of(Formulation::R2, false, false, zero)), std::domain_error);
    EXPECT_THROW(parse_formulation("A4"), std::invalid_argument);
}

TEST(Milp, Eil51OptimalChainFitsLiftedA2) {
    if (!test::has_data("eil51.tsp")) GTEST_SKIP() << "eil51.tsp not present";
    auto li = load_instance(test::data_file("eil51.tsp"));
    Schedule s = parse_schedule("4,5,6");
    SolveReport r = solve_absolute(li.inst, s);
    ASSERT_EQ(r.objective, 61);
    BoundSet b;
    b.LB = r.d_star;
    b.d_star = r.d_star;
    ModelDocument doc = emit_model(li.inst, s, spec_of(Formulation::A2, true, false, b));
    ModelCheck c = validate_chain_against_model(doc, li.inst, r.chain);
    EXPECT_TRUE(c.ok);
    EXPECT_DOUBLE_EQ(c.model_objective, 61);

    Chain bad = r.chain;
    bad.sets[0].pop_back();
    ModelCheck cb = validate_chain_against_model(doc, li.inst, bad);
    EXPECT_FALSE(cb.ok);
    EXPECT_NE(std::find(cb.violated.begin(), cb.violated.end(), "card_1"), cb.violated.end());
}

TEST(Milp, LpText) {
    Instance t = test::toy();
    Schedule s{{1, 2}};
    std::string a = to_lp(emit_model(t, s, spec_of(Formulation::A2)));
    std::string b = to_lp(emit_model(t, s, spec_of(Formulation::A2)));
    EXPECT_EQ(a, b);
    EXPECT_NE(a.find("Minimize\n obj: z_1 + z_2"), std::string::npos);
    EXPECT_NE(a.find(" card_1: y_1_1 + y_2_1 + y_3_1 = 1\n"), std::string::npos);
    EXPECT_NE(a.find("Binaries\n"), std::string::npos);
    EXPECT_EQ(a.substr(a.size() - 4), "End\n");
}

TEST(Milp, FileName) {
    ModelSpec sp = spec_of(Formulation::A3, true, true);
    EXPECT_EQ(model_file_name("pmed1", Schedule{{5, 6, 7}}, sp), "pmed1_5-6-7_A3_lift_fix.lp");
    EXPECT_EQ(model_file_name("eil51", Schedule{{4, 5, 6}}, spec_of(Formulation::R2)), "eil51_4-5-6_R2.lp");
}

TEST(Milp, RelativeModelsOnGolden) {
    Instance in = random_instance(0, 10);
    Schedule s{{2, 3}};
    OracleResult o = enumerate_nested(in, s);
    BoundSet b = make_bounds(o.d_star, o.optimum_abs);
    for (Formulation f : {Formulation::R1, Formulation::R2})
        for (bool lift : {false, true}) {
            ModelSpec sp = spec_of(f, lift, false, b);
            sp.rel_lb = 0;
            ModelDocument doc = emit_model(in, s, sp);
            for (const Chain& c : o.all_optimal_chains_rel) {
                ModelCheck mc = validate_chain_against_model(doc, in, c);
                EXPECT_TRUE(mc.ok) << to_string(f) << " lift=" << lift;
                EXPECT_NEAR(mc.model_objective, 3.0 / 19.0, 1e-12);
            }
        }
}
