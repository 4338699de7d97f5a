#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsplit/analysis.hpp"
#include "gsplit/ast.hpp"

namespace gsplit {

struct JoinStep {
    Literal literal;
    double running = 0.0;
};

/// Bottom-up grounding size estimate T̂⋈(r): the positive body is treated
/// as a left-deep join in source order.
struct JoinEstimate {
    int rule_id = 0;
    std::vector<JoinStep> per_step;
    std::vector<std::pair<Comparison, double>> selectivity_applied;
    double final_estimate = 0.0;
};

JoinEstimate join_estimate(const Rule& rule, const DomainTable& domains);

/// Selectivity factor of a comparison builtin:
///   <, <=, >, >=  : 1/2
///   =             : 1 / max(|dom(lhs) ∪ dom(rhs)|, 1)
///   !=            : 1 - 1 / max(|dom(lhs) ∪ dom(rhs)|, 1)
double comparison_selectivity(const Comparison& cmp, const Rule& rule, const DomainTable& domains);

/// Body-decoupled grounding size estimate T̂_H(r), split into the seven
/// reduction parts (head guess, three satisfiability parts, three
/// foundedness parts). |dom(X)| is read as |dom(X, r)|.
struct BdgEstimate {
    int rule_id = 0;
    double g = 0, s1 = 0, s2 = 0, s3 = 0, f1 = 0, f2 = 0, f3 = 0;
    double total = 0;
};

/// Throws NotEstimable for choice, disjunctive and weak rules.
BdgEstimate bdg_estimate(const Rule& rule, const DomainTable& domains);

/// Fills derived_estimate for every predicate of the analysed program, in
/// topological SCC order. Fact predicates get their exact count; a derived
/// predicate p gets
///   min(Π_j |pos_domain(p,j)|, facts(p) + Σ_r min(T̂⋈(r), Π_{X ∈ head vars} |dom(X,r)|))
/// over its defining rules, or the positional product alone when p is
/// defined recursively.
void estimate_derived_tuples(std::span<const Rule> rules, const SccInfo& scc, DomainTable& domains);

// ---------------------------------------------------------------------------
// Density profile

struct ProfileOptions {
    std::size_t oracle_cap = 60;
    std::string edge_predicate = "e";
    std::string node_predicate;  // empty: no vertex facts
    bool directed = true;
    std::uint64_t ground_cap = 10'000'000;
};

struct ProfileRow {
    std::size_t n = 0;
    double density = 0;
    double sota_estimate = 0;
    double bdg_estimate = 0;
    std::optional<std::size_t> actual_sota;
};

/// Estimates one rule of `encoding` over generated random graphs for every
/// (size, density) pair. The actual bottom-up instance count of the rule is
/// added for sizes up to `oracle_cap`.
std::vector<ProfileRow> density_profile(const Program& encoding, int rule_id,
                                        const std::vector<std::size_t>& sizes,
                                        const std::vector<double>& densities, std::uint64_t seed,
                                        const ProfileOptions& options = {});

/// Header `n,density,sota_estimate,bdg_estimate,actual_sota`.
void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows);

}  // namespace gsplit
