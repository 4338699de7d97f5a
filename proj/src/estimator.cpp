#include "gsplit/estimator.hpp"

#include <algorithm>
#include <set>

#include "gsplit/errors.hpp"

namespace gsplit {

namespace {

double domain_size(const Rule& rule, const Term& term, const DomainTable& domains) {
    if (!term.is_variable()) return 1.0;
    return static_cast<double>(variable_domain(rule, term.name, domains).size());
}

// Π over the distinct variables of a literal; constants count as 1.
double literal_domain_product(const Rule& rule, const Literal& lit, const DomainTable& domains) {
    double product = 1.0;
    for (const auto& v : lit.variables()) product *= domain_size(rule, Term::variable(v), domains);
    return product;
}

}  // namespace

double comparison_selectivity(const Comparison& cmp, const Rule& rule, const DomainTable& domains) {
    switch (cmp.op) {
        case CmpOp::lt:
        case CmpOp::le:
        case CmpOp::gt:
        case CmpOp::ge:
            return 0.5;
        case CmpOp::eq:
        case CmpOp::ne: {
            auto values = term_domain(rule, cmp.lhs, domains);
            auto rhs = term_domain(rule, cmp.rhs, domains);
            values.insert(rhs.begin(), rhs.end());
            const double d = std::max<double>(static_cast<double>(values.size()), 1.0);
            return cmp.op == CmpOp::eq ? 1.0 / d : 1.0 - 1.0 / d;
        }
    }
    return 1.0;
}

JoinEstimate join_estimate(const Rule& rule, const DomainTable& domains) {
    JoinEstimate est;
    est.rule_id = rule.id;
    double running = 1.0;
    std::set<std::string> joined;
    for (std::size_t i = 0; i < rule.body_pos.size(); ++i) {
        const auto& lit = rule.body_pos[i];
        const double tuples = domains.tuples(lit.predicate);
        const auto vars = lit.variables();
        if (i == 0) {
            running = tuples;
        } else {
            double divisor = 1.0;
            for (const auto& v : vars)
                if (joined.contains(v)) divisor *= domain_size(rule, Term::variable(v), domains);
            running = divisor > 0.0 ? running * tuples / divisor : 0.0;
        }
        joined.insert(vars.begin(), vars.end());
        est.per_step.push_back({lit, running});
    }
    for (const auto& cmp : rule.body_cmp) {
        const double factor = comparison_selectivity(cmp, rule, domains);
        est.selectivity_applied.emplace_back(cmp, factor);
        running *= factor;
    }
    est.final_estimate = std::max(running, 0.0);
    return est;
}

BdgEstimate bdg_estimate(const Rule& rule, const DomainTable& domains) {
    if (rule.head_kind != HeadKind::normal && rule.head_kind != HeadKind::constraint)
        throw NotEstimable("no body-decoupled estimate for " + std::string(to_string(rule.head_kind)) +
                           " rule: " + to_string(rule));

    std::vector<const Literal*> all;  // H_r ∪ B_r
    for (const auto& l : rule.head) all.push_back(&l);
    for (const auto& l : rule.body_pos) all.push_back(&l);
    for (const auto& l : rule.body_neg) all.push_back(&l);

    BdgEstimate e;
    e.rule_id = rule.id;
    const auto vars = rule.variables();

    for (const auto& h : rule.head) e.g += literal_domain_product(rule, h, domains);
    e.g *= 2.0;

    for (const auto& v : vars) e.s1 += domain_size(rule, Term::variable(v), domains);
    e.s1 *= 2.0;

    e.s2 = 2.0;

    for (const auto* l : all) e.s3 += literal_domain_product(rule, *l, domains);

    for (std::size_t hi = 0; hi < rule.head.size(); ++hi) {
        const auto& h = rule.head[hi];
        const double head_product = literal_domain_product(rule, h, domains);
        e.f1 += head_product;

        const auto head_vars = h.variables();
        for (const auto& y : vars) {
            if (std::find(head_vars.begin(), head_vars.end(), y) != head_vars.end()) continue;
            e.f2 += domain_size(rule, Term::variable(y), domains) * head_product;
        }

        for (std::size_t li = 0; li < all.size(); ++li) {
            if (li == hi) continue;  // the head literal itself
            e.f3 += literal_domain_product(rule, *all[li], domains) * head_product;
        }
    }

    e.total = e.g + e.s1 + e.s2 + e.s3 + e.f1 + e.f2 + e.f3;
    return e;
}

void estimate_derived_tuples(std::span<const Rule> rules, const SccInfo& scc, DomainTable& domains) {
    for (const auto& [pred, count] : domains.fact_counts) domains.derived_estimate[pred] = static_cast<double>(count);

    for (int s : scc.topo_order) {
        for (const auto& pred : scc.sccs[s]) {
            std::vector<std::pair<const Rule*, const Literal*>> defs;
            for (const auto& r : rules)
                for (const auto& h : r.head)
                    if (h.predicate == pred) defs.emplace_back(&r, &h);
            auto fc = domains.fact_counts.find(pred);
            const double facts = fc == domains.fact_counts.end() ? 0.0 : static_cast<double>(fc->second);
            if (defs.empty()) {
                domains.derived_estimate[pred] = facts;
                continue;
            }

            double product = 1.0;
            for (std::size_t j = 0; j < defs.front().second->arity(); ++j)
                product *= static_cast<double>(domains.position(pred, j).size());

            bool recursive = false;
            for (const auto& [r, h] : defs)
                for (const auto& b : r->body_pos)
                    if (scc.scc(b.predicate) == s) recursive = true;

            if (recursive) {
                domains.derived_estimate[pred] = product;
                continue;
            }
            double sum = facts;
            for (const auto& [r, h] : defs) {
                const double body = join_estimate(*r, domains).final_estimate;
                sum += std::min(body, literal_domain_product(*r, *h, domains));
            }
            domains.derived_estimate[pred] = std::min(product, sum);
        }
    }
}

}  // namespace gsplit
