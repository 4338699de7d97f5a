#include "gsplit/analysis.hpp"

#include <algorithm>
#include <functional>

#include "gsplit/estimator.hpp"

namespace gsplit {

SplitResult split_facts(const Program& program) {
    SplitResult out;
    std::set<Literal> seen(program.facts.begin(), program.facts.end());
    out.facts = program.facts;
    for (const auto& r : program.rules) {
        if (r.is_fact()) {
            if (seen.insert(r.head.front()).second) out.facts.push_back(r.head.front());
        } else {
            out.rules.push_back(r);
        }
    }
    return out;
}

DependencyGraph build_dependency_graph(std::span<const Rule> rules) {
    DependencyGraph g;
    for (const auto& r : rules) {
        for (const auto& l : r.head) g.vertices.insert(l.predicate);
        for (const auto& l : r.body_pos) g.vertices.insert(l.predicate);
        for (const auto& l : r.body_neg) g.vertices.insert(l.predicate);
        for (const auto& h : r.head) {
            for (const auto& b : r.body_pos) g.edges.insert({b.predicate, h.predicate, Sign::positive});
            for (const auto& b : r.body_neg) g.edges.insert({b.predicate, h.predicate, Sign::negative});
            if (r.head_kind == HeadKind::choice) g.edges.insert({h.predicate, h.predicate, Sign::negative});
        }
    }
    return g;
}

namespace {

// Tarjan over an adjacency list; components come out sinks first.
std::vector<std::vector<int>> tarjan(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> out;
    int counter = 0;

    std::function<void(int)> visit = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w : adj[v]) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<int> comp;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
    };
    for (int v = 0; v < n; ++v)
        if (index[v] < 0) visit(v);
    return out;
}

}  // namespace

int SccInfo::scc(const std::string& predicate) const {
    auto it = scc_of.find(predicate);
    return it == scc_of.end() ? -1 : it->second;
}

bool SccInfo::is_stratified(const std::string& predicate) const {
    const int s = scc(predicate);
    if (s < 0) return true;
    return std::all_of(ancestors[s].begin(), ancestors[s].end(),
                       [&](int a) { return stratified_scc[a]; });
}

SccInfo compute_sccs(const DependencyGraph& graph) {
    SccInfo info;
    std::vector<std::string> names(graph.vertices.begin(), graph.vertices.end());
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = static_cast<int>(i);

    std::vector<std::vector<int>> adj(names.size()), pos_adj(names.size());
    for (const auto& e : graph.edges) {
        adj[idx[e.from]].push_back(idx[e.to]);
        if (e.sign == Sign::positive) pos_adj[idx[e.from]].push_back(idx[e.to]);
    }

    auto comps = tarjan(adj);
    std::reverse(comps.begin(), comps.end());
    for (std::size_t s = 0; s < comps.size(); ++s) {
        std::vector<std::string> members;
        for (int v : comps[s]) {
            members.push_back(names[v]);
            info.scc_of[names[v]] = static_cast<int>(s);
        }
        info.sccs.push_back(std::move(members));
        info.topo_order.push_back(static_cast<int>(s));
    }

    info.stratified_scc.assign(info.sccs.size(), true);
    for (const auto& e : graph.edges) {
        const int a = info.scc_of[e.from], b = info.scc_of[e.to];
        if (a != b) {
            info.reduced_edges.emplace(a, b);
        } else if (e.sign == Sign::negative) {
            info.stratified_scc[a] = false;
        }
    }

    info.ancestors.resize(info.sccs.size());
    for (int s : info.topo_order) {
        info.ancestors[s].insert(s);
        for (const auto& [from, to] : info.reduced_edges) {
            if (to == s) info.ancestors[s].insert(info.ancestors[from].begin(), info.ancestors[from].end());
        }
    }

    auto pos_comps = tarjan(pos_adj);
    info.positive_scc_cyclic.assign(pos_comps.size(), false);
    for (std::size_t s = 0; s < pos_comps.size(); ++s) {
        for (int v : pos_comps[s]) info.positive_scc_of[names[v]] = static_cast<int>(s);
        if (pos_comps[s].size() > 1) info.positive_scc_cyclic[s] = true;
    }
    for (const auto& e : graph.edges) {
        if (e.sign == Sign::positive && e.from == e.to)
            info.positive_scc_cyclic[info.positive_scc_of[e.from]] = true;
    }
    return info;
}

RuleClass classify_rule(const Rule& rule, const SccInfo& scc) {
    RuleClass c;
    c.is_constraint = rule.is_constraint();

    c.is_stratified = true;
    for (const auto& l : rule.body_pos) c.is_stratified = c.is_stratified && scc.is_stratified(l.predicate);
    for (const auto& l : rule.body_neg) c.is_stratified = c.is_stratified && scc.is_stratified(l.predicate);

    c.is_tight = true;
    for (const auto& h : rule.head)
        for (const auto& b : rule.body_pos)
            if (scc.scc(h.predicate) == scc.scc(b.predicate)) c.is_tight = false;

    c.is_hcf = true;
    for (std::size_t i = 0; i < rule.head.size(); ++i) {
        for (std::size_t j = i + 1; j < rule.head.size(); ++j) {
            auto a = scc.positive_scc_of.find(rule.head[i].predicate);
            auto b = scc.positive_scc_of.find(rule.head[j].predicate);
            if (a != scc.positive_scc_of.end() && b != scc.positive_scc_of.end() &&
                a->second == b->second && scc.positive_scc_cyclic[a->second])
                c.is_hcf = false;
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Domains

const ConstantSet& DomainTable::position(const std::string& predicate, std::size_t index) const {
    static const ConstantSet empty;
    auto it = pos_domain.find({predicate, index});
    return it == pos_domain.end() ? empty : it->second;
}

double DomainTable::tuples(const std::string& predicate) const {
    auto it = derived_estimate.find(predicate);
    return it == derived_estimate.end() ? 0.0 : it->second;
}

ConstantSet variable_domain(const Rule& rule, const std::string& variable, const DomainTable& domains) {
    ConstantSet out;
    for (const auto& lit : rule.body_pos) {
        for (std::size_t j = 0; j < lit.args.size(); ++j) {
            if (lit.args[j].is_variable() && lit.args[j].name == variable) {
                const auto& d = domains.position(lit.predicate, j);
                out.insert(d.begin(), d.end());
            }
        }
    }
    return out;
}

ConstantSet term_domain(const Rule& rule, const Term& term, const DomainTable& domains) {
    if (!term.is_variable()) return {term.name};
    return variable_domain(rule, term.name, domains);
}

DomainTable infer_domains(std::span<const Literal> facts, std::span<const Rule> rules, const SccInfo& scc) {
    DomainTable table;
    std::set<Literal> distinct(facts.begin(), facts.end());
    for (const auto& f : distinct) {
        ++table.fact_counts[f.predicate];
        for (std::size_t j = 0; j < f.args.size(); ++j) {
            table.global_domain.insert(f.args[j].name);
            table.pos_domain[{f.predicate, j}].insert(f.args[j].name);
        }
    }

    std::vector<std::vector<const Rule*>> defining(scc.sccs.size());
    for (const auto& r : rules) {
        std::set<int> seen;
        for (const auto& h : r.head) {
            const int s = scc.scc(h.predicate);
            if (s >= 0 && seen.insert(s).second) defining[s].push_back(&r);
        }
    }

    // Propagate positional domains along the topological order; domains only
    // grow inside the finite constant universe, so each SCC loop terminates.
    for (int s : scc.topo_order) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Rule* r : defining[s]) {
                for (const auto& h : r->head) {
                    if (scc.scc(h.predicate) != s) continue;
                    for (std::size_t j = 0; j < h.args.size(); ++j) {
                        auto& target = table.pos_domain[{h.predicate, j}];
                        const auto before = target.size();
                        if (h.args[j].is_variable()) {
                            auto d = variable_domain(*r, h.args[j].name, table);
                            target.insert(d.begin(), d.end());
                        } else {
                            target.insert(h.args[j].name);
                        }
                        changed = changed || target.size() != before;
                    }
                }
            }
        }
    }

    for (const auto& r : rules)
        for (const auto& v : r.variables()) table.var_domain[{r.id, v}] = variable_domain(r, v, table);

    estimate_derived_tuples(rules, scc, table);
    return table;
}

Analysis analyze(const Program& program) {
    Analysis a;
    auto split = split_facts(program);
    a.facts = std::move(split.facts);
    a.rules = std::move(split.rules);
    a.graph = build_dependency_graph(a.rules);
    a.scc = compute_sccs(a.graph);
    a.domains = infer_domains(a.facts, a.rules, a.scc);
    return a;
}

}  // namespace gsplit
