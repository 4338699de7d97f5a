#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsplit/analysis.hpp"
#include "gsplit/ast.hpp"
#include "gsplit/rewriter.hpp"
#include "gsplit/treedecomp.hpp"

namespace gsplit {

enum class Marker { bdg, sota };

enum class Branch { stratified, lpopt_recursed, bdg_constraint, bdg_tight, bdg_hcf, default_sota, forced_sota };

std::string_view to_string(Marker marker) noexcept;
std::string_view to_string(Branch branch) noexcept;

struct Measures {
    std::size_t num_vars = 0;
    std::size_t max_arity = 0;   // a
    std::size_t head_arity = 0;  // a_h
    std::size_t body_arity = 0;  // a_b
    std::size_t phi = 0;
    bool is_constraint = false;
    bool is_tight = false;
    bool is_stratified = false;
    bool is_hcf = true;
    /// Normal rule or constraint, i.e. one the BDG estimate covers.
    bool estimable = false;
};

struct Estimates {
    double sota = 0.0;                 // T̂⋈(r)
    std::optional<double> bdg;         // T̂_H(r)
    std::optional<double> lpopt_sota;  // Σ T̂⋈ over the rewritten rules
};

/// The rule a rewritten rule came from, with the values that made the
/// rewriting fire.
struct RewriteOrigin {
    int rule_id = 0;
    Rule rule;
    Measures measures;
    Estimates estimates;
};

struct Decision {
    int rule_id = 0;         // position in the final rule list
    int origin_rule_id = 0;  // id of the input rule
    Rule rule;
    Marker marker = Marker::sota;
    Branch branch = Branch::default_sota;
    Measures measures;
    Estimates estimates;
    std::optional<RewriteOrigin> rewritten_from;
    std::string forced_reason;
};

struct HeuristicOptions {
    TdOptions td;
};

/// Everything decide() reads. `domains` grows when a rewriting registers
/// fresh predicates; `rules` is the current rule set, used to reclassify
/// rewritten rules.
struct DecisionContext {
    SccInfo scc;
    DomainTable domains;
    std::vector<Rule> rules;
    HeuristicOptions options;
    FreshNames* names = nullptr;
};

Measures measure(const Rule& rule, const SccInfo& scc, const TdOptions& td);

/// The splitting heuristic for one rule. Returns one Decision per final
/// rule: a single one, or one per rule of an accepted rewriting.
std::vector<Decision> decide(const Rule& rule, DecisionContext& ctx);

/// Re-evaluates the condition of `branch` from recorded values. For
/// lpopt_recursed, the measures and estimates are those of the original rule.
bool branch_condition_holds(Branch branch, const Measures& m, const Estimates& e);

/// The condition of the recorded branch holds and no earlier one does.
bool decision_is_sound(const Decision& d);

struct Partition {
    std::vector<Rule> pi_h;
    std::vector<Rule> pi_g;  // rules only; facts are kept separately
    std::vector<Literal> facts;
    std::vector<Decision> report;
    std::size_t global_domain_size = 0;
};

Partition partition(const Program& program, const HeuristicOptions& options = {});

}  // namespace gsplit
