#include "gsplit/heuristics.hpp"

#include <algorithm>
#include <map>

#include "gsplit/estimator.hpp"

namespace gsplit {

std::string_view to_string(Marker marker) noexcept { return marker == Marker::bdg ? "bdg" : "sota"; }

std::string_view to_string(Branch branch) noexcept {
    switch (branch) {
        case Branch::stratified: return "stratified";
        case Branch::lpopt_recursed: return "lpopt_recursed";
        case Branch::bdg_constraint: return "bdg_constraint";
        case Branch::bdg_tight: return "bdg_tight";
        case Branch::bdg_hcf: return "bdg_hcf";
        case Branch::default_sota: return "default_sota";
        case Branch::forced_sota: return "forced_sota";
    }
    return "?";
}

Measures measure(const Rule& rule, const SccInfo& scc, const TdOptions& td) {
    Measures m;
    const auto cls = classify_rule(rule, scc);
    m.num_vars = rule.variables().size();
    m.max_arity = rule.max_arity();
    m.head_arity = rule.max_head_arity();
    m.body_arity = rule.max_body_arity();
    m.phi = bag_size(decompose(build_variable_graph(rule), td));
    m.is_constraint = cls.is_constraint;
    m.is_tight = cls.is_tight;
    m.is_stratified = cls.is_stratified;
    m.is_hcf = cls.is_hcf;
    m.estimable = rule.head_kind == HeadKind::normal || rule.head_kind == HeadKind::constraint;
    return m;
}

bool branch_condition_holds(Branch branch, const Measures& m, const Estimates& e) {
    const auto a = m.max_arity;
    const bool cheaper = e.bdg && *e.bdg < e.sota;
    switch (branch) {
        case Branch::forced_sota: return !m.estimable;
        case Branch::stratified: return m.is_stratified;
        case Branch::lpopt_recursed: return m.phi < m.num_vars && e.lpopt_sota && *e.lpopt_sota < e.sota;
        case Branch::bdg_constraint: return a < m.phi && m.is_constraint && cheaper;
        case Branch::bdg_tight: return 2 * a < m.phi && m.is_tight && cheaper;
        case Branch::bdg_hcf: return 3 * a < m.phi && cheaper;
        case Branch::default_sota: return true;
    }
    return false;
}

namespace {

constexpr Branch kOrder[] = {Branch::forced_sota,    Branch::stratified, Branch::lpopt_recursed,
                             Branch::bdg_constraint, Branch::bdg_tight,  Branch::bdg_hcf,
                             Branch::default_sota};

bool first_true_is(Branch wanted, const Measures& m, const Estimates& e) {
    for (Branch b : kOrder)
        if (branch_condition_holds(b, m, e)) return b == wanted;
    return false;
}

std::string forced_reason(const Rule& rule) {
    switch (rule.head_kind) {
        case HeadKind::choice: return "choice head";
        case HeadKind::weak: return "weak constraint";
        case HeadKind::disjunctive: return "disjunctive head";
        default: return {};
    }
}

}  // namespace

bool decision_is_sound(const Decision& d) {
    if (d.rewritten_from && !first_true_is(Branch::lpopt_recursed, d.rewritten_from->measures,
                                           d.rewritten_from->estimates))
        return false;
    if (!first_true_is(d.branch, d.measures, d.estimates)) return false;
    const bool bdg_branch =
        d.branch == Branch::bdg_constraint || d.branch == Branch::bdg_tight || d.branch == Branch::bdg_hcf;
    return bdg_branch == (d.marker == Marker::bdg);
}

std::vector<Decision> decide(const Rule& rule, DecisionContext& ctx) {
    Decision d;
    d.rule = rule;
    d.origin_rule_id = rule.id;
    d.measures = measure(rule, ctx.scc, ctx.options.td);
    d.estimates.sota = join_estimate(rule, ctx.domains).final_estimate;
    if (d.measures.estimable) d.estimates.bdg = bdg_estimate(rule, ctx.domains).total;

    auto finish = [&](Branch b) {
        d.branch = b;
        d.marker = (b == Branch::bdg_constraint || b == Branch::bdg_tight || b == Branch::bdg_hcf) ? Marker::bdg
                                                                                                     : Marker::sota;
        return std::vector<Decision>{d};
    };

    if (!d.measures.estimable) {
        d.forced_reason = forced_reason(rule);
        return finish(Branch::forced_sota);
    }
    if (d.measures.is_stratified) return finish(Branch::stratified);

    if (d.measures.phi < d.measures.num_vars) {
        const auto td = decompose(build_variable_graph(rule), ctx.options.td);
        FreshNames local;
        FreshNames& names = ctx.names ? *ctx.names : local;
        auto rewrite = lpopt_rewrite(rule, td, names);
        if (rewrite.applicable && !rewrite.is_identity()) {
            d.estimates.lpopt_sota = rewrite_estimate(rewrite, rule, ctx.domains);
            if (*d.estimates.lpopt_sota < d.estimates.sota) {
                // Replace the rule, then decide each new rule on the updated program.
                augment_domains(ctx.domains, rewrite, rule);
                auto it = std::find_if(ctx.rules.begin(), ctx.rules.end(),
                                       [&](const Rule& r) { return r.id == rule.id && r.same_shape(rule); });
                if (it != ctx.rules.end()) it = ctx.rules.erase(it);
                ctx.rules.insert(it, rewrite.new_rules.begin(), rewrite.new_rules.end());
                ctx.scc = compute_sccs(build_dependency_graph(ctx.rules));

                RewriteOrigin origin{rule.id, rule, d.measures, d.estimates};
                std::vector<Decision> out;
                for (const auto& nr : rewrite.new_rules) {
                    for (auto& sub : decide(nr, ctx)) {
                        if (!sub.rewritten_from) sub.rewritten_from = origin;
                        sub.origin_rule_id = rule.id;
                        out.push_back(std::move(sub));
                    }
                }
                return out;
            }
        }
    }

    const auto a = d.measures.max_arity;
    const bool cheaper = *d.estimates.bdg < d.estimates.sota;
    if (a < d.measures.phi && d.measures.is_constraint && cheaper) return finish(Branch::bdg_constraint);
    if (2 * a < d.measures.phi && d.measures.is_tight && cheaper) return finish(Branch::bdg_tight);
    if (3 * a < d.measures.phi && cheaper) return finish(Branch::bdg_hcf);
    return finish(Branch::default_sota);
}

Partition partition(const Program& program, const HeuristicOptions& options) {
    Analysis an = analyze(program);
    Partition out;
    out.facts = an.facts;
    out.global_domain_size = an.domains.global_domain.size();

    FreshNames names = FreshNames::for_rules(an.rules);
    DecisionContext ctx{an.scc, an.domains, an.rules, options, &names};

    // Lower strata first; constraints have no head and come last.
    std::vector<const Rule*> order;
    for (const auto& r : an.rules) order.push_back(&r);
    auto layer = [&](const Rule* r) {
        int s = -1;
        for (const auto& h : r->head) s = std::max(s, an.scc.scc(h.predicate));
        return r->head.empty() ? static_cast<int>(an.scc.sccs.size()) : s;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](const Rule* x, const Rule* y) { return layer(x) < layer(y); });

    std::map<int, std::vector<Decision>> by_origin;
    for (const Rule* r : order) by_origin[r->id] = decide(*r, ctx);

    for (const auto& r : an.rules) {
        for (auto& d : by_origin[r.id]) {
            d.rule_id = static_cast<int>(out.report.size());
            (d.marker == Marker::bdg ? out.pi_h : out.pi_g).push_back(d.rule);
            out.report.push_back(std::move(d));
        }
    }
    return out;
}

}  // namespace gsplit
