#include "gsplit/rewriter.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <queue>
#include <set>

#include "gsplit/estimator.hpp"

namespace gsplit {

namespace {

int fresh_index(const std::string& predicate) {
    if (!predicate.starts_with(kFreshPrefix)) return 0;
    int value = 0;
    const char* first = predicate.data() + kFreshPrefix.size();
    const char* last = predicate.data() + predicate.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc() && ptr == last ? value : 0;
}

bool covers(const std::vector<std::string>& bag, const std::vector<std::string>& vars) {
    return std::all_of(vars.begin(), vars.end(),
                       [&](const std::string& v) { return std::find(bag.begin(), bag.end(), v) != bag.end(); });
}

RewriteResult not_applicable(const Rule& rule, std::string why) {
    RewriteResult r;
    r.original_rule_id = rule.id;
    r.applicable = false;
    r.reason = std::move(why);
    return r;
}

// What one bag contributes to its emitted rule.
struct Slot {
    std::vector<const Literal*> pos, neg;
    std::vector<const Comparison*> cmp;
};

}  // namespace

FreshNames FreshNames::for_rules(std::span<const Rule> rules) {
    int highest = 0;
    auto see = [&](const std::vector<Literal>& lits) {
        for (const auto& l : lits) highest = std::max(highest, fresh_index(l.predicate));
    };
    for (const auto& r : rules) {
        see(r.head);
        see(r.body_pos);
        see(r.body_neg);
    }
    return FreshNames(highest + 1);
}

std::string FreshNames::next() { return std::string(kFreshPrefix) + std::to_string(next_.fetch_add(1)); }

RewriteResult lpopt_rewrite(const Rule& rule, const TreeDecomposition& td, FreshNames& names) {
    if (rule.head_kind != HeadKind::normal && rule.head_kind != HeadKind::constraint)
        return not_applicable(rule, std::string(to_string(rule.head_kind)) + " head");
    if (td.bags.empty()) return not_applicable(rule, "empty decomposition");

    if (td.bags.size() == 1) {
        RewriteResult r;
        r.original_rule_id = rule.id;
        r.applicable = true;
        r.new_rules.push_back(rule);
        return r;
    }

    const std::size_t k = td.bags.size();
    std::size_t root = 0;
    if (rule.head_kind == HeadKind::normal) {
        const auto head_vars = rule.head.front().variables();
        root = k;
        for (std::size_t t = 0; t < k && root == k; ++t)
            if (covers(td.bags[t], head_vars)) root = t;
        if (root == k) return not_applicable(rule, "no bag holds all head variables");
    }

    std::vector<std::vector<std::size_t>> adj(k);
    for (const auto& [a, b] : td.tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& n : adj) std::sort(n.begin(), n.end());

    std::vector<std::size_t> parent(k, k), depth(k, 0), bfs;
    std::vector<std::vector<std::size_t>> children(k);
    std::vector<bool> seen(k, false);
    std::queue<std::size_t> q;
    q.push(root);
    seen[root] = true;
    while (!q.empty()) {
        auto t = q.front();
        q.pop();
        bfs.push_back(t);
        for (auto c : adj[t]) {
            if (seen[c]) continue;
            seen[c] = true;
            parent[c] = t;
            depth[c] = depth[t] + 1;
            children[t].push_back(c);
            q.push(c);
        }
    }
    if (bfs.size() != k) return not_applicable(rule, "decomposition is not a tree");

    auto place = [&](const std::vector<std::string>& vars) -> std::size_t {
        std::size_t best = k;
        for (std::size_t t = 0; t < k; ++t)
            if (covers(td.bags[t], vars) && (best == k || depth[t] > depth[best])) best = t;
        return best;
    };

    std::vector<Slot> slots(k);
    for (const auto& l : rule.body_pos) {
        auto t = place(l.variables());
        if (t == k) return not_applicable(rule, "literal " + to_string(l) + " fits no bag");
        slots[t].pos.push_back(&l);
    }
    for (const auto& l : rule.body_neg) {
        auto t = place(l.variables());
        if (t == k) return not_applicable(rule, "literal not " + to_string(l) + " fits no bag");
        slots[t].neg.push_back(&l);
    }
    for (const auto& c : rule.body_cmp) {
        auto t = place(c.variables());
        if (t == k) return not_applicable(rule, "comparison " + to_string(c) + " fits no bag");
        slots[t].cmp.push_back(&c);
    }

    RewriteResult out;
    out.original_rule_id = rule.id;
    out.applicable = true;

    // Leaves first: reverse BFS order visits children before parents.
    std::vector<std::set<std::string>> bound_below(k);  // variables bound in the subtree
    std::vector<std::optional<Literal>> temp_of(k);
    std::vector<Rule> emitted;
    for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
        const std::size_t t = *it;
        Rule nr;
        nr.id = rule.id;
        std::set<std::string> bound;
        for (const auto* l : slots[t].pos) {
            nr.body_pos.push_back(*l);
            for (const auto& v : l->variables()) bound.insert(v);
        }
        for (auto c : children[t]) {
            bound_below[t].insert(bound_below[c].begin(), bound_below[c].end());
            if (!temp_of[c]) continue;
            nr.body_pos.push_back(*temp_of[c]);
            for (const auto& v : temp_of[c]->variables()) bound.insert(v);
        }
        bound_below[t].insert(bound.begin(), bound.end());
        for (const auto* l : slots[t].neg) nr.body_neg.push_back(*l);
        for (const auto* c : slots[t].cmp) nr.body_cmp.push_back(*c);

        auto unbound = [&](const std::vector<std::string>& vars) -> std::string {
            for (const auto& v : vars)
                if (!bound.contains(v)) return v;
            return {};
        };
        for (const auto* l : slots[t].neg)
            if (auto v = unbound(l->variables()); !v.empty())
                return not_applicable(rule, "variable " + v + " of not " + to_string(*l) + " unbound in its bag");
        for (const auto* c : slots[t].cmp)
            if (auto v = unbound(c->variables()); !v.empty())
                return not_applicable(rule, "variable " + v + " of " + to_string(*c) + " unbound in its bag");

        if (t == root) {
            nr.head = rule.head;
            nr.head_kind = rule.head_kind;
            if (!rule.head.empty())
                if (auto v = unbound(rule.head.front().variables()); !v.empty())
                    return not_applicable(rule, "head variable " + v + " unbound at the root");
            emitted.push_back(std::move(nr));
            continue;
        }
        if (nr.body_pos.empty() && nr.body_neg.empty() && nr.body_cmp.empty()) continue;

        Literal tmp;
        tmp.predicate = names.next();
        const auto& up = td.bags[parent[t]];
        for (const auto& v : td.bags[t])
            if (std::find(up.begin(), up.end(), v) != up.end() && bound_below[t].contains(v))
                tmp.args.push_back(Term::variable(v));
        out.fresh_predicates.emplace_back(tmp.predicate, tmp.arity());
        nr.head = {tmp};
        nr.head_kind = HeadKind::normal;
        temp_of[t] = tmp;
        emitted.push_back(std::move(nr));
    }
    out.new_rules = std::move(emitted);
    return out;
}

void augment_domains(DomainTable& domains, const RewriteResult& result, const Rule& original) {
    for (const auto& r : result.new_rules) {
        if (r.head.empty()) continue;
        const auto& h = r.head.front();
        if (!h.predicate.starts_with(kFreshPrefix)) continue;
        double product = 1.0;
        for (std::size_t j = 0; j < h.args.size(); ++j) {
            auto d = variable_domain(original, h.args[j].name, domains);
            product *= static_cast<double>(d.size());
            domains.pos_domain[{h.predicate, j}] = std::move(d);
        }
        domains.derived_estimate[h.predicate] = product;
    }
    for (const auto& r : result.new_rules)
        for (const auto& v : r.variables()) domains.var_domain[{r.id, v}] = variable_domain(r, v, domains);
}

double rewrite_estimate(const RewriteResult& result, const Rule& original, const DomainTable& domains) {
    DomainTable augmented = domains;
    augment_domains(augmented, result, original);
    double total = 0.0;
    for (const auto& r : result.new_rules) total += join_estimate(r, augmented).final_estimate;
    return total;
}

}  // namespace gsplit
