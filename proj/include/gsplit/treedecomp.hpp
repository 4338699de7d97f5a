#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gsplit/ast.hpp"

namespace gsplit {

/// Undirected co-occurrence graph over the variables of a rule. Vertices are
/// kept in first-occurrence order; edges are index pairs (i < j).
struct VariableGraph {
    std::vector<std::string> vertices;
    std::set<std::pair<std::size_t, std::size_t>> edges;

    std::size_t index_of(const std::string& name) const;
    bool adjacent(std::size_t a, std::size_t b) const;
    void add_edge(std::size_t a, std::size_t b);
};

/// Two variables are adjacent iff they share a literal of H_r ∪ B_r or a
/// comparison.
VariableGraph build_variable_graph(const Rule& rule);

enum class TdStrategy { min_fill, min_degree, exact };

struct TreeDecomposition {
    /// Bag contents, each in vertex order of the source graph.
    std::vector<std::vector<std::string>> bags;
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
    std::size_t root = 0;

    /// max |bag| - 1; -1 for the single empty bag of an empty graph.
    int width() const;
};

/// φ = max_t |χ(t)|
std::size_t bag_size(const TreeDecomposition& td);

constexpr std::size_t kDefaultExactCap = 12;

/// Heuristic strategies eliminate greedily with ties broken by variable
/// name; `exact` minimises the width over all elimination orders with a
/// subset dynamic program. Throws ExactCapExceeded above `exact_cap`.
TreeDecomposition decompose(const VariableGraph& graph, TdStrategy strategy,
                            std::size_t exact_cap = kDefaultExactCap);

/// Builds the decomposition induced by eliminating vertices in `order`
/// (indices into graph.vertices); bags contained in a neighbour are merged.
TreeDecomposition decomposition_from_order(const VariableGraph& graph, const std::vector<std::size_t>& order);

/// Width of the elimination order, i.e. max over eliminated vertices of the
/// number of higher neighbours in the filled graph.
int elimination_width(const VariableGraph& graph, const std::vector<std::size_t>& order);

/// Checks vertex cover, edge cover, connectedness and that the bags form a
/// tree. On failure `why` (if given) receives a description.
bool is_valid_decomposition(const VariableGraph& graph, const TreeDecomposition& td, std::string* why = nullptr);

/// Strategy selection used by the splitter: exact search for graphs with at
/// most `exact_auto_cap` vertices, the configured heuristic otherwise.
struct TdOptions {
    TdStrategy strategy = TdStrategy::min_fill;
    std::size_t exact_auto_cap = 6;
    std::size_t exact_cap = kDefaultExactCap;
};

TreeDecomposition decompose(const VariableGraph& graph, const TdOptions& options);

TdStrategy parse_td_strategy(const std::string& text);
std::string to_string(TdStrategy strategy);

}  // namespace gsplit
