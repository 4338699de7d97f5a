#include <gtest/gtest.h>

#include "gsplit/analysis.hpp"
#include "gsplit/estimator.hpp"
#include "gsplit/rewriter.hpp"
#include "support.hpp"

using namespace gsplit;

namespace {

Rule first_rule(const std::string& text) { return parse_program(text).rules.at(0); }

std::vector<std::string> texts(const RewriteResult& r) {
    std::vector<std::string> out;
    for (const auto& x : r.new_rules) out.push_back(to_string(x));
    return out;
}

}  // namespace

TEST(Rewrite, ChainListing) {
    const Rule r = first_rule(":- f(X1,X2), f(X2,X3), f(X3,X4).");
    FreshNames names;
    auto res = lpopt_rewrite(r, decompose(build_variable_graph(r), TdStrategy::exact), names);
    ASSERT_TRUE(res.applicable) << res.reason;
    EXPECT_FALSE(res.is_identity());
    EXPECT_EQ(texts(res), (std::vector<std::string>{"__td_1(X3) :- f(X3,X4).", "__td_2(X2) :- f(X2,X3), __td_1(X3).",
                                                    ":- f(X1,X2), __td_2(X2)."}));
    ASSERT_EQ(res.fresh_predicates.size(), 2u);
    EXPECT_EQ(res.fresh_predicates[0], (std::pair<std::string, std::size_t>{"__td_1", 1}));
    for (const auto& x : res.new_rules) EXPECT_EQ(x.id, r.id);
}

TEST(Rewrite, NormalHeadAtRoot) {
    const Rule r = first_rule("p(X1) :- f(X1,X2), f(X2,X3), f(X3,X4).");
    FreshNames names(5);
    auto res = lpopt_rewrite(r, decompose(build_variable_graph(r), TdStrategy::exact), names);
    ASSERT_TRUE(res.applicable);
    EXPECT_EQ(res.new_rules.back().head.at(0).predicate, "p");
    EXPECT_EQ(res.fresh_predicates.front().first, "__td_5");
}

TEST(Rewrite, SingleBagIsIdentity) {
    const Rule r = first_rule(":- g(X1,X2), g(X1,X3), g(X2,X3).");
    FreshNames names;
    auto res = lpopt_rewrite(r, decompose(build_variable_graph(r), TdStrategy::exact), names);
    EXPECT_TRUE(res.is_identity());
    ASSERT_EQ(res.new_rules.size(), 1u);
    EXPECT_TRUE(res.new_rules[0].same_shape(r));
    EXPECT_EQ(names.next(), "__td_1");  // nothing consumed
}

TEST(Rewrite, NotApplicable) {
    FreshNames names;
    const Rule choice = first_rule("{p(X)} :- e(X,Y), e(Y,Z).");
    auto res = lpopt_rewrite(choice, decompose(build_variable_graph(choice), TdStrategy::exact), names);
    EXPECT_FALSE(res.applicable);
    EXPECT_FALSE(res.reason.empty());

    // The negative literal needs X1 and X4 bound in one bag, which a
    // hand-made chain decomposition cannot give.
    const Rule neg = first_rule(":- f(X1,X2), f(X2,X3), not f(X3,X1).");
    TreeDecomposition td;
    td.bags = {{"X1", "X2"}, {"X2", "X3"}};
    td.tree_edges = {{0, 1}};
    EXPECT_FALSE(lpopt_rewrite(neg, td, names).applicable);
}

TEST(Rewrite, FreshNamesSkipExisting) {
    auto p = parse_program("__td_7(X) :- e(X). :- __td_7(X), not __td_2(X). __td_2(1). e(1).");
    auto names = FreshNames::for_rules(p.rules);
    EXPECT_EQ(names.next(), "__td_8");
    EXPECT_EQ(names.next(), "__td_9");
}

// r1 over a guess on K4: T̂(f) = 12 and every variable ranges over 4.
// Original join 12 -> 36 -> 108; each rewritten rule stays at 12.
TEST(Rewrite, EstimateShrinksOnChain) {
    auto p = fixture::with_graph(parse_program("{f(X,Y)} :- e(X,Y).\n:- f(X1,X2), f(X2,X3), f(X3,X4).\n"),
                                 fixture::complete(4));
    auto a = analyze(p);
    const Rule* r = nullptr;
    for (const auto& x : a.rules)
        if (x.id == 1) r = &x;
    ASSERT_NE(r, nullptr);
    EXPECT_DOUBLE_EQ(join_estimate(*r, a.domains).final_estimate, 108);
    FreshNames names;
    auto res = lpopt_rewrite(*r, decompose(build_variable_graph(*r), TdStrategy::exact), names);
    EXPECT_DOUBLE_EQ(rewrite_estimate(res, *r, a.domains), 36);

    DomainTable d = a.domains;
    augment_domains(d, res, *r);
    EXPECT_EQ(d.position("__td_1", 0).size(), 4u);
    EXPECT_DOUBLE_EQ(d.tuples("__td_1"), 4);
}

TEST(Rewrite, AlwaysSafeWhenApplicable) {
    std::mt19937_64 rng(5);
    int applicable = 0;
    for (int i = 0; i < 300; ++i) {
        auto p = parse_program(fixture::random_rewrite_program(rng));
        const Rule& r = p.rules.at(1);
        FreshNames names;
        for (auto s : {TdStrategy::exact, TdStrategy::min_fill}) {
            auto res = lpopt_rewrite(r, decompose(build_variable_graph(r), s), names);
            if (!res.applicable) continue;
            ++applicable;
            for (const auto& x : res.new_rules) EXPECT_NO_THROW(check_safety(x)) << to_string(x);
        }
    }
    EXPECT_GT(applicable, 300);
}
