#include <gtest/gtest.h>

#include "gsplit/heuristics.hpp"
#include "support.hpp"

using namespace gsplit;

namespace {

Partition example_on(std::size_t n) {
    return partition(fixture::with_graph(fixture::scenario("example1.lp"), fixture::complete(n)));
}

std::vector<const Decision*> from_origin(const Partition& p, int origin) {
    std::vector<const Decision*> out;
    for (const auto& d : p.report)
        if (d.origin_rule_id == origin) out.push_back(&d);
    return out;
}

}  // namespace

TEST(Heuristics, ExampleOnK7) {
    const auto p = example_on(7);
    EXPECT_EQ(p.report.size(), 8u);
    EXPECT_EQ(p.facts.size(), 43u);  // 42 edges and the seed
    EXPECT_EQ(p.pi_h.size(), 1u);
    EXPECT_EQ(p.pi_g.size(), 7u);

    for (int choice : {0, 1, 2}) {
        auto ds = from_origin(p, choice);
        ASSERT_EQ(ds.size(), 1u);
        EXPECT_EQ(ds[0]->branch, Branch::forced_sota);
        EXPECT_EQ(ds[0]->forced_reason, "choice head");
    }

    auto r1 = from_origin(p, 3);
    ASSERT_EQ(r1.size(), 3u);
    EXPECT_EQ(to_string(r1[0]->rule), "__td_1(X3) :- f(X3,X4).");
    for (const auto* d : r1) {
        EXPECT_EQ(d->marker, Marker::sota);
        ASSERT_TRUE(d->rewritten_from.has_value());
        EXPECT_EQ(d->rewritten_from->rule_id, 3);
        // Original: 42 -> 252 -> 1512; each rewritten rule 42.
        EXPECT_DOUBLE_EQ(d->rewritten_from->estimates.sota, 1512);
        EXPECT_DOUBLE_EQ(*d->rewritten_from->estimates.lpopt_sota, 126);
        EXPECT_DOUBLE_EQ(d->estimates.sota, 42);
    }

    auto r2 = from_origin(p, 4);
    ASSERT_EQ(r2.size(), 1u);
    EXPECT_EQ(r2[0]->marker, Marker::bdg);
    EXPECT_EQ(r2[0]->branch, Branch::bdg_constraint);
    EXPECT_DOUBLE_EQ(r2[0]->estimates.sota, 216);
    EXPECT_DOUBLE_EQ(*r2[0]->estimates.bdg, 191);
    EXPECT_EQ(r2[0]->measures.phi, 3u);
    EXPECT_EQ(r2[0]->measures.max_arity, 2u);

    auto r3 = from_origin(p, 5);
    ASSERT_EQ(r3.size(), 1u);
    EXPECT_EQ(r3[0]->marker, Marker::sota);
    EXPECT_EQ(r3[0]->branch, Branch::default_sota);

    for (std::size_t i = 0; i < p.report.size(); ++i) {
        EXPECT_EQ(p.report[i].rule_id, static_cast<int>(i));
        EXPECT_TRUE(decision_is_sound(p.report[i])) << to_string(p.report[i].rule);
    }
}

TEST(Heuristics, ExampleOnK4HasNoBdg) {
    const auto p = example_on(4);
    EXPECT_TRUE(p.pi_h.empty());
    auto r2 = from_origin(p, 4);
    ASSERT_EQ(r2.size(), 1u);
    EXPECT_DOUBLE_EQ(r2[0]->estimates.sota, 27);
    EXPECT_DOUBLE_EQ(*r2[0]->estimates.bdg, 74);
    EXPECT_EQ(r2[0]->branch, Branch::default_sota);
    EXPECT_EQ(from_origin(p, 3).size(), 3u);
    EXPECT_DOUBLE_EQ(*from_origin(p, 5)[0]->estimates.bdg, 314);
}

TEST(Heuristics, TieGoesSota) {
    const auto p = partition(fixture::tie_fixture());
    auto ds = from_origin(p, 3);
    ASSERT_EQ(ds.size(), 1u);
    EXPECT_DOUBLE_EQ(ds[0]->estimates.sota, 242);
    EXPECT_DOUBLE_EQ(*ds[0]->estimates.bdg, 242);
    EXPECT_EQ(ds[0]->marker, Marker::sota);
    EXPECT_EQ(ds[0]->branch, Branch::default_sota);
    EXPECT_TRUE(decision_is_sound(*ds[0]));
}

TEST(Heuristics, StratifiedNeverBdg) {
    auto prog = fixture::with_graph(parse_program(":- e(X1,X2), e(X1,X3), e(X2,X3).\n"), fixture::complete(12));
    const auto p = partition(prog);
    ASSERT_EQ(p.report.size(), 1u);
    EXPECT_EQ(p.report[0].branch, Branch::stratified);
    EXPECT_EQ(p.report[0].marker, Marker::sota);
    // The estimates alone would pick BDG.
    EXPECT_LT(*p.report[0].estimates.bdg, p.report[0].estimates.sota);
}

TEST(Heuristics, TightUnaryRule) {
    std::ostringstream s;
    s << "{q(X)} :- d(X).\np :- q(X), q(Y), q(Z), X < Y, Y < Z, X < Z.\n";
    for (int i = 1; i <= 20; ++i) s << "d(" << i << ").\n";
    const auto p = partition(parse_program(s.str()));
    const auto ds = from_origin(p, 1);
    ASSERT_EQ(ds.size(), 1u);
    EXPECT_EQ(ds[0]->measures.phi, 3u);
    EXPECT_TRUE(ds[0]->measures.is_tight);
    EXPECT_EQ(ds[0]->branch, Branch::bdg_tight);
    EXPECT_EQ(ds[0]->marker, Marker::bdg);
    EXPECT_TRUE(decision_is_sound(*ds[0]));
}

TEST(Heuristics, ConditionTable) {
    Measures m;
    m.num_vars = 4;
    m.max_arity = 2;
    m.phi = 3;
    m.is_constraint = true;
    m.estimable = true;
    Estimates e{100, 50.0, std::nullopt};
    EXPECT_TRUE(branch_condition_holds(Branch::bdg_constraint, m, e));
    EXPECT_FALSE(branch_condition_holds(Branch::bdg_tight, m, e));
    e.lpopt_sota = 10;
    EXPECT_TRUE(branch_condition_holds(Branch::lpopt_recursed, m, e));
    m.phi = 4;
    EXPECT_FALSE(branch_condition_holds(Branch::lpopt_recursed, m, e));
    m.estimable = false;
    EXPECT_TRUE(branch_condition_holds(Branch::forced_sota, m, e));

    Decision d;
    d.measures = m;
    d.estimates = e;
    d.branch = Branch::bdg_constraint;
    d.marker = Marker::bdg;
    EXPECT_FALSE(decision_is_sound(d));  // forced_sota comes first
    d.measures.estimable = true;
    EXPECT_TRUE(decision_is_sound(d));
    d.marker = Marker::sota;
    EXPECT_FALSE(decision_is_sound(d));
}

TEST(Heuristics, DisjunctiveForced) {
    const auto p = partition(parse_program("a(X) | b(X) :- e(X). e(1)."));
    ASSERT_EQ(p.report.size(), 1u);
    EXPECT_EQ(p.report[0].branch, Branch::forced_sota);
    EXPECT_EQ(p.report[0].forced_reason, "disjunctive head");
    EXPECT_FALSE(p.report[0].estimates.bdg.has_value());
}

TEST(Heuristics, RandomProgramsAreSound) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const auto p = partition(parse_program(fixture::random_rewrite_program(rng)));
        for (const auto& d : p.report) {
            EXPECT_TRUE(decision_is_sound(d)) << to_string(d.rule);
            if (d.measures.is_stratified) EXPECT_EQ(d.marker, Marker::sota);
        }
        EXPECT_EQ(p.pi_h.size() + p.pi_g.size(), p.report.size());
    }
}
