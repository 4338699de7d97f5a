#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsplit/ast.hpp"

namespace gsplit {

/// Fact splitting, the predicate dependency graph and its SCC structure,
/// rule classification, and domain inference.

struct SplitResult {
    std::vector<Literal> facts;
    std::vector<Rule> rules;
};

/// Facts are rules with a ground singleton normal head and an empty body.
/// Duplicate facts are kept once.
SplitResult split_facts(const Program& program);

enum class Sign { positive, negative };

struct DependencyEdge {
    std::string from;
    std::string to;
    Sign sign;

    auto operator<=>(const DependencyEdge&) const = default;
};

struct DependencyGraph {
    std::set<std::string> vertices;
    std::set<DependencyEdge> edges;
};

/// Body-to-head edges labelled by the sign of the body literal. A choice
/// head additionally gets a negative self-loop, the collapsed form of its
/// even negative cycle.
DependencyGraph build_dependency_graph(std::span<const Rule> rules);

struct SccInfo {
    std::map<std::string, int> scc_of;
    /// SCC ids are assigned in a topological order of the reduced graph:
    /// every reduced edge (s, t) has s < t.
    std::vector<std::vector<std::string>> sccs;
    std::set<std::pair<int, int>> reduced_edges;
    std::vector<int> topo_order;
    /// True iff the SCC contains no cycle through a negative edge.
    std::vector<bool> stratified_scc;
    /// Least fixpoint S_{<p}: the SCC itself plus every SCC it depends on.
    std::vector<std::set<int>> ancestors;
    /// SCCs of the positive-edge subgraph, used for head-cycle checks.
    std::map<std::string, int> positive_scc_of;
    std::vector<bool> positive_scc_cyclic;

    int scc(const std::string& predicate) const;
    /// A predicate is stratified iff every SCC in its ancestor set is.
    bool is_stratified(const std::string& predicate) const;
};

SccInfo compute_sccs(const DependencyGraph& graph);

struct RuleClass {
    bool is_constraint = false;
    bool is_stratified = false;
    bool is_tight = false;
    bool is_hcf = true;
};

RuleClass classify_rule(const Rule& rule, const SccInfo& scc);

using ConstantSet = std::set<std::string>;

struct DomainTable {
    ConstantSet global_domain;
    std::map<std::string, std::size_t> fact_counts;
    std::map<std::pair<std::string, std::size_t>, ConstantSet> pos_domain;
    std::map<std::pair<int, std::string>, ConstantSet> var_domain;
    std::map<std::string, double> derived_estimate;

    /// Empty set for unknown predicate positions.
    const ConstantSet& position(const std::string& predicate, std::size_t index) const;
    /// T̂(p); zero for unknown predicates.
    double tuples(const std::string& predicate) const;
};

/// dom(X, r): union of the positional domains of X over the positive body
/// literals that contain it.
ConstantSet variable_domain(const Rule& rule, const std::string& variable, const DomainTable& domains);

/// Domain of a term inside a rule: {c} for constants.
ConstantSet term_domain(const Rule& rule, const Term& term, const DomainTable& domains);

DomainTable infer_domains(std::span<const Literal> facts, std::span<const Rule> rules, const SccInfo& scc);

/// Bundles the analysis products of a split program.
struct Analysis {
    std::vector<Literal> facts;
    std::vector<Rule> rules;
    DependencyGraph graph;
    SccInfo scc;
    DomainTable domains;
};

Analysis analyze(const Program& program);

}  // namespace gsplit
