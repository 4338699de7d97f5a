#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "gsplit/errors.hpp"
#include "gsplit/estimator.hpp"
#include "support.hpp"

using namespace gsplit;

namespace {

struct Fixture {
    Analysis a;
    const Rule& rule(int id) const {
        for (const auto& r : a.rules)
            if (r.id == id) return r;
        throw std::runtime_error("no rule");
    }
};

Fixture triangle_on(const GraphSpec& spec) {
    return {analyze(fixture::with_graph(parse_program(fixture::kTriangleEncoding), spec))};
}

}  // namespace

// Hand evaluation over K_n: T̂(g) = n(n-1); the join runs
// n(n-1) -> n(n-1)^2 -> (n-1)^3. T̂_H = 2·3n + 2 + 3n².
TEST(Estimator, TriangleOnCompleteGraphs) {
    for (std::size_t n : {4u, 7u, 10u}) {
        auto f = triangle_on(fixture::complete(n));
        const double dn = static_cast<double>(n);
        const auto j = join_estimate(f.rule(1), f.a.domains);
        ASSERT_EQ(j.per_step.size(), 3u);
        EXPECT_DOUBLE_EQ(j.per_step[0].running, dn * (dn - 1));
        EXPECT_DOUBLE_EQ(j.per_step[1].running, dn * (dn - 1) * (dn - 1));
        EXPECT_DOUBLE_EQ(j.final_estimate, std::pow(dn - 1, 3));
        const auto b = bdg_estimate(f.rule(1), f.a.domains);
        EXPECT_DOUBLE_EQ(b.g, 0);
        EXPECT_DOUBLE_EQ(b.s1, 6 * dn);
        EXPECT_DOUBLE_EQ(b.s2, 2);
        EXPECT_DOUBLE_EQ(b.s3, 3 * dn * dn);
        EXPECT_DOUBLE_EQ(b.f1 + b.f2 + b.f3, 0);
        EXPECT_DOUBLE_EQ(b.total, 6 * dn + 2 + 3 * dn * dn);
    }
    auto k4 = triangle_on(fixture::complete(4));
    EXPECT_DOUBLE_EQ(join_estimate(k4.rule(1), k4.a.domains).final_estimate, 27);
    EXPECT_DOUBLE_EQ(bdg_estimate(k4.rule(1), k4.a.domains).total, 74);
    auto k7 = triangle_on(fixture::complete(7));
    EXPECT_DOUBLE_EQ(join_estimate(k7.rule(1), k7.a.domains).final_estimate, 216);
    EXPECT_DOUBLE_EQ(bdg_estimate(k7.rule(1), k7.a.domains).total, 191);
}

// r3 of the example over K4: head i(X1), three h literals of 16 each.
// g 8, s1 24, s2 2, s3 4+48, f1 4, f2 2·16, f3 3·64.
TEST(Estimator, NormalRuleParts) {
    Fixture f{analyze(fixture::with_graph(fixture::scenario("example1.lp"), fixture::complete(4)))};
    const auto b = bdg_estimate(f.rule(5), f.a.domains);
    EXPECT_DOUBLE_EQ(b.g, 8);
    EXPECT_DOUBLE_EQ(b.s1, 24);
    EXPECT_DOUBLE_EQ(b.s3, 52);
    EXPECT_DOUBLE_EQ(b.f1, 4);
    EXPECT_DOUBLE_EQ(b.f2, 32);
    EXPECT_DOUBLE_EQ(b.f3, 192);
    EXPECT_DOUBLE_EQ(b.total, 314);
}

TEST(Estimator, Propositional) {
    auto a = analyze(parse_program("a :- b. {b}."));
    const Rule* r = nullptr;
    for (const auto& x : a.rules)
        if (x.id == 0) r = &x;
    ASSERT_NE(r, nullptr);
    // g 2, s2 2, s3 2, f1 1, f3 1
    EXPECT_DOUBLE_EQ(bdg_estimate(*r, a.domains).total, 8);
}

// Directed path 1..100: X1 and X3 range over 99 values, X2 over 100
// (sources 1..99 joined with targets 2..100).
TEST(Estimator, PathDomains) {
    auto f = triangle_on(fixture::path(100));
    const auto b = bdg_estimate(f.rule(1), f.a.domains);
    EXPECT_DOUBLE_EQ(b.s1, 2 * (99 + 100 + 99));
    EXPECT_DOUBLE_EQ(b.s3, 99 * 100 + 99 * 99 + 100 * 99);
    EXPECT_DOUBLE_EQ(b.total, 30199);
    const double target = 3 * 99.0 * 99 + 6 * 99 + 2;
    EXPECT_LE(b.total, 2 * target);
    EXPECT_GE(b.total, target / 2);
}

TEST(Estimator, ComparisonSelectivity) {
    auto g = fixture::complete(4);
    auto run = [&](const char* cmp) {
        auto p = fixture::with_graph(parse_program(std::string("{g(X,Y)} :- e(X,Y).\n:- g(X,Y), ") + cmp + ".\n"), g);
        auto a = analyze(p);
        for (const auto& r : a.rules)
            if (r.id == 1) return join_estimate(r, a.domains).final_estimate;
        return -1.0;
    };
    EXPECT_DOUBLE_EQ(run("X < Y"), 6);
    EXPECT_DOUBLE_EQ(run("X >= Y"), 6);
    EXPECT_DOUBLE_EQ(run("X = Y"), 3);
    EXPECT_DOUBLE_EQ(run("X != Y"), 9);
}

TEST(Estimator, NotEstimableKinds) {
    auto a = analyze(parse_program("{p(X)} :- e(X). a(X) | b(X) :- e(X). e(1)."));
    for (const auto& r : a.rules) EXPECT_THROW(bdg_estimate(r, a.domains), NotEstimable);
}

TEST(Estimator, DerivedTuplesUseRuleEstimate) {
    // q over e: rule estimate 3 < 3·3 positions.
    auto a = analyze(parse_program("e(1,2). e(2,3). e(3,1). q(X,Y) :- e(X,Y). r(X) :- r(Y), e(X,Y)."));
    EXPECT_DOUBLE_EQ(a.domains.tuples("q"), 3);
    EXPECT_LE(a.domains.tuples("r"), 3);  // recursive: positional product only
}

TEST(Profile, ShapeAndCsv) {
    auto rows = density_profile(parse_program(fixture::kTriangleEncoding), 1, {8, 10}, {20, 100}, 3);
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& r : rows) ASSERT_TRUE(r.actual_sota.has_value());
    EXPECT_EQ(rows[0].n, 8u);
    EXPECT_DOUBLE_EQ(rows[1].density, 100);
    // Full density is K_n.
    EXPECT_DOUBLE_EQ(rows[1].sota_estimate, 343);
    EXPECT_EQ(*rows[1].actual_sota, 8u * 7 * 6);
    EXPECT_DOUBLE_EQ(rows[0].bdg_estimate, rows[1].bdg_estimate);

    std::ostringstream out;
    write_profile_csv(out, rows);
    std::string first;
    std::istringstream in(out.str());
    std::getline(in, first);
    EXPECT_EQ(first, "n,density,sota_estimate,bdg_estimate,actual_sota");
    std::string second;
    std::getline(in, second);
    EXPECT_EQ(second.rfind("8,20,", 0), 0u) << second;
}
