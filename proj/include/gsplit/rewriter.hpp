#pragma once

#include <atomic>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsplit/analysis.hpp"
#include "gsplit/ast.hpp"
#include "gsplit/treedecomp.hpp"

namespace gsplit {

/// Reserved prefix of temporary predicates introduced by the rewriting.
inline constexpr std::string_view kFreshPrefix = "__td_";

/// Per-program generator of fresh predicate names. Safe to share between
/// threads; names never repeat.
class FreshNames {
public:
    explicit FreshNames(int first = 1) : next_(first) {}

    /// Starts above every `__td_N` already used by the rules.
    static FreshNames for_rules(std::span<const Rule> rules);

    std::string next();

private:
    std::atomic<int> next_;
};

struct RewriteResult {
    int original_rule_id = 0;
    std::vector<Rule> new_rules;
    std::vector<std::pair<std::string, std::size_t>> fresh_predicates;
    bool applicable = false;
    std::string reason;

    bool is_identity() const { return applicable && fresh_predicates.empty(); }
};

/// Splits a normal rule or constraint along the bags of `td`. Each literal
/// goes to the deepest bag holding all its variables; every non-root bag
/// whose subtree carries literals becomes
///   tmp(χ(t) ∩ χ(parent)) :- literals(t), child temps.
/// A one-bag decomposition yields the rule itself. When the rewriting would
/// be unsafe, `applicable` is false and `reason` says why.
RewriteResult lpopt_rewrite(const Rule& rule, const TreeDecomposition& td, FreshNames& names);

/// Registers the fresh predicates of `result` in `domains`: position j of a
/// temp predicate gets dom(X_j, original) and T̂ is the positional product.
void augment_domains(DomainTable& domains, const RewriteResult& result, const Rule& original);

/// Σ T̂⋈ over the new rules, evaluated on a copy of `domains` augmented as
/// above.
double rewrite_estimate(const RewriteResult& result, const Rule& original, const DomainTable& domains);

}  // namespace gsplit
