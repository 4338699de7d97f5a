#include <gtest/gtest.h>

#include <random>

#include "gsplit/errors.hpp"
#include "gsplit/treedecomp.hpp"
#include "support.hpp"

using namespace gsplit;

namespace {

Rule first_rule(const std::string& text) { return parse_program(text).rules.at(0); }

using Bags = std::vector<std::vector<std::string>>;

}  // namespace

TEST(VariableGraph, ChainAndTriangle) {
    auto chain = build_variable_graph(first_rule(":- f(X1,X2), f(X2,X3), f(X3,X4)."));
    EXPECT_EQ(chain.vertices, (std::vector<std::string>{"X1", "X2", "X3", "X4"}));
    EXPECT_EQ(chain.edges.size(), 3u);
    EXPECT_TRUE(chain.adjacent(1, 2));
    EXPECT_FALSE(chain.adjacent(0, 2));

    auto tri = build_variable_graph(first_rule(":- g(X1,X2), g(X1,X3), g(X2,X3)."));
    EXPECT_EQ(tri.edges.size(), 3u);

    // Comparisons and negative literals connect too; the head counts.
    auto mixed = build_variable_graph(first_rule("p(X,W) :- q(X,Y), r(Z,W), not s(Y,Z), X < W."));
    EXPECT_TRUE(mixed.adjacent(mixed.index_of("Y"), mixed.index_of("Z")));
    EXPECT_TRUE(mixed.adjacent(mixed.index_of("X"), mixed.index_of("W")));
    EXPECT_FALSE(mixed.adjacent(mixed.index_of("X"), mixed.index_of("Z")));
}

TEST(Decompose, ChainBags) {
    auto g = build_variable_graph(first_rule(":- f(X1,X2), f(X2,X3), f(X3,X4)."));
    for (auto s : {TdStrategy::exact, TdStrategy::min_fill, TdStrategy::min_degree}) {
        auto td = decompose(g, s);
        EXPECT_TRUE(is_valid_decomposition(g, td)) << to_string(s);
        EXPECT_EQ(td.width(), 1) << to_string(s);
        EXPECT_EQ(bag_size(td), 2u);
        EXPECT_EQ(td.bags.size(), 3u);
    }
    auto td = decompose(g, TdStrategy::exact);
    EXPECT_EQ(td.bags, (Bags{{"X1", "X2"}, {"X2", "X3"}, {"X3", "X4"}}));
}

TEST(Decompose, TriangleIsOneBag) {
    auto g = build_variable_graph(first_rule(":- g(X1,X2), g(X1,X3), g(X2,X3)."));
    auto td = decompose(g, TdStrategy::exact);
    EXPECT_EQ(td.bags, (Bags{{"X1", "X2", "X3"}}));
    EXPECT_TRUE(td.tree_edges.empty());
    EXPECT_EQ(td.width(), 2);
}

TEST(Decompose, EmptyGraph) {
    VariableGraph g;
    for (auto s : {TdStrategy::exact, TdStrategy::min_fill, TdStrategy::min_degree}) {
        auto td = decompose(g, s);
        ASSERT_EQ(td.bags.size(), 1u);
        EXPECT_TRUE(td.bags[0].empty());
        EXPECT_EQ(td.width(), -1);
        EXPECT_TRUE(is_valid_decomposition(g, td));
    }
}

TEST(Decompose, DisconnectedComponentsFormATree) {
    auto g = fixture::graph_from_edges(5, {{0, 1}, {2, 3}});
    auto td = decompose(g, TdStrategy::min_fill);
    std::string why;
    EXPECT_TRUE(is_valid_decomposition(g, td, &why)) << why;
    EXPECT_EQ(td.width(), 1);
}

TEST(Decompose, CycleHasWidthTwo) {
    auto g = fixture::graph_from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    for (auto s : {TdStrategy::exact, TdStrategy::min_fill, TdStrategy::min_degree}) {
        auto td = decompose(g, s);
        EXPECT_TRUE(is_valid_decomposition(g, td));
        EXPECT_EQ(td.width(), 2);
    }
}

TEST(Decompose, ExactCap) {
    auto g = fixture::complete_graph(9);
    EXPECT_THROW(decompose(g, TdStrategy::exact, 8), ExactCapExceeded);
    EXPECT_EQ(decompose(g, TdStrategy::exact, 9).width(), 8);
    TdOptions o;
    o.exact_auto_cap = 4;
    EXPECT_EQ(decompose(g, o).width(), 8);  // falls back to min-fill
}

TEST(Validity, RejectsBrokenDecompositions) {
    auto g = fixture::graph_from_edges(3, {{0, 1}, {1, 2}});
    TreeDecomposition missing_edge;
    missing_edge.bags = {{"V0", "V1"}, {"V2"}};
    missing_edge.tree_edges = {{0, 1}};
    std::string why;
    EXPECT_FALSE(is_valid_decomposition(g, missing_edge, &why));
    EXPECT_FALSE(why.empty());

    TreeDecomposition disconnected_vertex;
    disconnected_vertex.bags = {{"V0", "V1"}, {"V2"}, {"V1", "V2"}};
    disconnected_vertex.tree_edges = {{0, 1}, {1, 2}};
    EXPECT_FALSE(is_valid_decomposition(g, disconnected_vertex));

    TreeDecomposition not_a_tree;
    not_a_tree.bags = {{"V0", "V1"}, {"V1", "V2"}};
    EXPECT_FALSE(is_valid_decomposition(g, not_a_tree));

    TreeDecomposition good;
    good.bags = {{"V0", "V1"}, {"V1", "V2"}};
    good.tree_edges = {{0, 1}};
    EXPECT_TRUE(is_valid_decomposition(g, good));
}

TEST(Decompose, MatchesBruteForceOnSmallGraphs) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 150; ++i) {
        const std::size_t n = 1 + rng() % 7;
        auto g = fixture::random_variable_graph(rng, n, 0.2 + 0.6 * (i % 5) / 4.0);
        const int truth = fixture::brute_force_treewidth(g);
        auto exact = decompose(g, TdStrategy::exact);
        EXPECT_TRUE(is_valid_decomposition(g, exact));
        EXPECT_EQ(exact.width(), truth);
        for (auto s : {TdStrategy::min_fill, TdStrategy::min_degree}) {
            auto td = decompose(g, s);
            EXPECT_TRUE(is_valid_decomposition(g, td));
            EXPECT_GE(td.width(), truth);
        }
    }
}

TEST(EliminationOrder, WidthAndDecomposition) {
    // Star centred at 0: eliminating the centre first costs n-1.
    auto g = fixture::graph_from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    EXPECT_EQ(elimination_width(g, {0, 1, 2, 3, 4}), 4);
    EXPECT_EQ(elimination_width(g, {1, 2, 3, 4, 0}), 1);
    auto td = decomposition_from_order(g, {0, 1, 2, 3, 4});
    EXPECT_TRUE(is_valid_decomposition(g, td));
    EXPECT_EQ(td.width(), 4);
}

TEST(Strategy, Parse) {
    EXPECT_EQ(parse_td_strategy("min-fill"), TdStrategy::min_fill);
    EXPECT_EQ(parse_td_strategy("min-degree"), TdStrategy::min_degree);
    EXPECT_EQ(parse_td_strategy("exact"), TdStrategy::exact);
    EXPECT_ANY_THROW(parse_td_strategy("greedy"));
    EXPECT_EQ(to_string(TdStrategy::min_degree), "min-degree");
}
