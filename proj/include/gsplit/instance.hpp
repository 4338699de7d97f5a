#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gsplit/ast.hpp"

namespace gsplit {

enum class Topology { random, path, complete };

Topology parse_topology(const std::string& text);

struct GraphSpec {
    std::size_t n = 0;
    double density = 100.0;  // percent of the candidate pairs
    std::uint64_t seed = 0;
    bool directed = true;
    Topology topology = Topology::random;
    std::string edge_predicate = "e";
    std::string node_predicate;  // empty: no vertex facts
};

/// Number of generated edges:
/// round(density/100 · n(n−1)), halved for undirected graphs; for paths
/// round(density/100 · (n−1)).
std::size_t edge_count(const GraphSpec& spec);

/// Vertices are 1..n. Edges come from a seed-keyed permutation of all
/// candidate pairs (mt19937_64, Fisher-Yates with rejection sampling) that
/// starts with the edges of a random Hamiltonian cycle: once m ≥ n every
/// vertex of a directed graph is the source and the target of some edge,
/// so the positional domains do not depend on the density. Undirected edges
/// are stored once as (u, v) with u < v. The last fact is `seed(S)`.
std::vector<Literal> generate_graph(const GraphSpec& spec);

/// One fact per line.
std::string format_facts(const std::vector<Literal>& facts);

}  // namespace gsplit
