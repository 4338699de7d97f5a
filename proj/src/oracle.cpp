#include "gsplit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "gsplit/analysis.hpp"
#include "gsplit/errors.hpp"

namespace gsplit {

namespace {

struct TupleHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::size_t h = v.size();
        for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

// A tuple store for one predicate. Tuples are only ever appended, so an
// index can be extended instead of rebuilt.
struct Relation {
    std::vector<int> atoms;  // atom ids in insertion order

    struct Index {
        std::size_t built = 0;
        std::unordered_map<std::vector<int>, std::vector<std::size_t>, TupleHash> rows;
    };
    std::map<unsigned, Index> indexes;  // keyed by bound-position mask
};

struct CTerm {
    bool variable = false;
    int value = 0;  // variable slot or constant id
};

struct CLiteral {
    std::string predicate;
    std::vector<CTerm> args;
};

struct CComparison {
    CmpOp op;
    CTerm lhs, rhs;
    int ready = -1;  // body position after which both sides are bound
};

struct CRule {
    const Rule* source = nullptr;
    std::vector<std::string> vars;
    std::vector<CLiteral> head, pos, neg;
    std::vector<CComparison> cmp;
};

class Grounder {
public:
    explicit Grounder(std::uint64_t cap) : cap_(cap) {}

    int constant(const std::string& name) {
        auto [it, fresh] = constant_ids_.emplace(name, static_cast<int>(constants_.size()));
        if (fresh) constants_.push_back(name);
        return it->second;
    }
    const std::vector<std::string>& constants() const { return constants_; }

    CRule compile(const Rule& rule) {
        CRule c;
        c.source = &rule;
        c.vars = rule.variables();
        auto term = [&](const Term& t) {
            CTerm ct;
            if (t.is_variable()) {
                ct.variable = true;
                ct.value = static_cast<int>(std::find(c.vars.begin(), c.vars.end(), t.name) - c.vars.begin());
            } else {
                ct.value = constant(t.name);
            }
            return ct;
        };
        auto lit = [&](const Literal& l) {
            CLiteral cl{l.predicate, {}};
            for (const auto& a : l.args) cl.args.push_back(term(a));
            return cl;
        };
        for (const auto& l : rule.head) c.head.push_back(lit(l));
        for (const auto& l : rule.body_pos) c.pos.push_back(lit(l));
        for (const auto& l : rule.body_neg) c.neg.push_back(lit(l));

        std::vector<int> bound_at(c.vars.size(), -1);
        for (int i = static_cast<int>(c.pos.size()) - 1; i >= 0; --i)
            for (const auto& a : c.pos[i].args)
                if (a.variable) bound_at[a.value] = i;
        for (const auto& cmp : rule.body_cmp) {
            CComparison cc{cmp.op, term(cmp.lhs), term(cmp.rhs), -1};
            if (cc.lhs.variable) cc.ready = std::max(cc.ready, bound_at[cc.lhs.value]);
            if (cc.rhs.variable) cc.ready = std::max(cc.ready, bound_at[cc.rhs.value]);
            c.cmp.push_back(cc);
        }
        return c;
    }

    int atom(const std::string& predicate, const std::vector<int>& tuple) {
        auto& table = atom_ids_[predicate];
        auto [it, fresh] = table.emplace(tuple, static_cast<int>(atoms_.size()));
        if (fresh) {
            Literal l{predicate, {}};
            for (int x : tuple) l.args.push_back(Term::constant(constants_[x]));
            atoms_.push_back(std::move(l));
            tuples_.push_back(tuple);
            in_d_.push_back(false);
            in_dt_.push_back(false);
        }
        return it->second;
    }

    // -1 when the atom was never created, i.e. it is surely false.
    int find_atom(const std::string& predicate, const std::vector<int>& tuple) const {
        auto p = atom_ids_.find(predicate);
        if (p == atom_ids_.end()) return -1;
        auto it = p->second.find(tuple);
        return it == p->second.end() ? -1 : it->second;
    }

    std::vector<int> tuple_of(const CLiteral& l, const std::vector<int>& binding) const {
        std::vector<int> t;
        t.reserve(l.args.size());
        for (const auto& a : l.args) t.push_back(a.variable ? binding[a.value] : a.value);
        return t;
    }

    bool add_possible(int a) {
        if (in_d_[a]) return false;
        in_d_[a] = true;
        relations_[atoms_[a].predicate].atoms.push_back(a);
        return true;
    }

    std::size_t size(const std::string& predicate) {
        auto it = relations_.find(predicate);
        return it == relations_.end() ? 0 : it->second.atoms.size();
    }

    bool cmp_holds(const CComparison& c, const std::vector<int>& binding) const {
        const int l = c.lhs.variable ? binding[c.lhs.value] : c.lhs.value;
        const int r = c.rhs.variable ? binding[c.rhs.value] : c.rhs.value;
        return evaluate(c.op, constants_[l], constants_[r]);
    }

    using Range = std::pair<std::size_t, std::size_t>;

    // Enumerates bindings of the positive body over D; `range(i)` limits the
    // rows of body literal i.
    void join(const CRule& rule, const std::function<Range(std::size_t)>& range,
              const std::function<void(const std::vector<int>&)>& emit) {
        std::vector<int> binding(rule.vars.size(), -1);
        for (const auto& c : rule.cmp)
            if (c.ready < 0 && !cmp_holds(c, binding)) return;
        std::uint64_t work = 0;
        step(rule, 0, binding, range, emit, work);
    }

    std::vector<Literal>& atoms() { return atoms_; }
    std::vector<bool>& in_d() { return in_d_; }
    std::vector<bool>& in_dt() { return in_dt_; }

private:
    void step(const CRule& rule, std::size_t k, std::vector<int>& binding,
              const std::function<Range(std::size_t)>& range,
              const std::function<void(const std::vector<int>&)>& emit, std::uint64_t& work) {
        if (k == rule.pos.size()) {
            emit(binding);
            return;
        }
        const auto& lit = rule.pos[k];
        auto rel_it = relations_.find(lit.predicate);
        if (rel_it == relations_.end()) return;
        Relation& rel = rel_it->second;
        auto [lo, hi] = range(k);
        hi = std::min(hi, rel.atoms.size());
        if (lo >= hi) return;

        unsigned mask = 0;
        std::vector<int> key;
        for (std::size_t j = 0; j < lit.args.size(); ++j) {
            const auto& a = lit.args[j];
            if (!a.variable || binding[a.value] >= 0) {
                mask |= 1u << j;
                key.push_back(a.variable ? binding[a.value] : a.value);
            }
        }

        auto visit = [&](std::size_t row) {
            if (++work > cap_)
                throw CapExceeded("grounding work for rule " + to_string(*rule.source) + " exceeds cap " +
                                  std::to_string(cap_));
            const auto& t = tuples_[rel.atoms[row]];
            std::vector<int> newly;
            bool ok = true;
            for (std::size_t j = 0; j < lit.args.size() && ok; ++j) {
                const auto& a = lit.args[j];
                if (!a.variable) {
                    ok = t[j] == a.value;
                } else if (binding[a.value] < 0) {
                    binding[a.value] = t[j];
                    newly.push_back(a.value);
                } else {
                    ok = binding[a.value] == t[j];
                }
            }
            if (ok) {
                for (const auto& c : rule.cmp)
                    if (c.ready == static_cast<int>(k) && !cmp_holds(c, binding)) {
                        ok = false;
                        break;
                    }
            }
            if (ok) step(rule, k + 1, binding, range, emit, work);
            for (int v : newly) binding[v] = -1;
        };

        if (mask == 0) {
            for (std::size_t row = lo; row < hi; ++row) visit(row);
            return;
        }
        auto& index = rel.indexes[mask];
        for (; index.built < rel.atoms.size(); ++index.built) {
            const auto& t = tuples_[rel.atoms[index.built]];
            std::vector<int> k2;
            for (std::size_t j = 0; j < t.size(); ++j)
                if (mask & (1u << j)) k2.push_back(t[j]);
            index.rows[k2].push_back(index.built);
        }
        auto found = index.rows.find(key);
        if (found == index.rows.end()) return;
        // Copy: recursion may append to the same bucket.
        const std::vector<std::size_t> rows = found->second;
        for (auto it = std::lower_bound(rows.begin(), rows.end(), lo); it != rows.end() && *it < hi; ++it) visit(*it);
    }

    std::uint64_t cap_;
    std::unordered_map<std::string, int> constant_ids_;
    std::vector<std::string> constants_;
    std::unordered_map<std::string, std::unordered_map<std::vector<int>, int, TupleHash>> atom_ids_;
    std::vector<Literal> atoms_;
    std::vector<std::vector<int>> tuples_;
    std::vector<bool> in_d_, in_dt_;
    std::unordered_map<std::string, Relation> relations_;
};

std::optional<WeakAnnotation> ground_weak(const Rule& rule, const std::vector<std::string>& vars,
                                          const std::vector<int>& binding, const std::vector<std::string>& names) {
    if (!rule.weak) return std::nullopt;
    auto sub = [&](const Term& t) {
        if (!t.is_variable()) return t;
        auto i = std::find(vars.begin(), vars.end(), t.name) - vars.begin();
        return Term::constant(names[binding[i]]);
    };
    WeakAnnotation w;
    w.weight = sub(rule.weak->weight);
    if (rule.weak->level) w.level = sub(*rule.weak->level);
    for (const auto& t : rule.weak->terms) w.terms.push_back(sub(t));
    return w;
}

void intern_constants(Grounder& g, const std::vector<Literal>& facts, const std::vector<Rule>& rules) {
    auto lit = [&](const Literal& l) {
        for (const auto& a : l.args)
            if (!a.is_variable()) g.constant(a.name);
    };
    for (const auto& f : facts) lit(f);
    for (const auto& r : rules) {
        for (const auto& l : r.head) lit(l);
        for (const auto& l : r.body_pos) lit(l);
        for (const auto& l : r.body_neg) lit(l);
        for (const auto& c : r.body_cmp) {
            if (!c.lhs.is_variable()) g.constant(c.lhs.name);
            if (!c.rhs.is_variable()) g.constant(c.rhs.name);
        }
    }
}

}  // namespace

Rule GroundProgram::to_rule(const GroundRule& rule) const {
    Rule r;
    r.id = rule.origin;
    r.head_kind = rule.kind;
    r.weak = rule.weak;
    for (int a : rule.head) r.head.push_back(atoms[a]);
    for (int a : rule.pos) r.body_pos.push_back(atoms[a]);
    for (int a : rule.neg) r.body_neg.push_back(atoms[a]);
    return r;
}

GroundProgram naive_ground(const Program& program, std::uint64_t cap) {
    auto split = split_facts(program);
    Grounder g(cap);
    intern_constants(g, split.facts, split.rules);
    const auto n = static_cast<double>(g.constants().size());

    double total = 0;
    for (const auto& r : split.rules) total += std::pow(n, static_cast<double>(r.variables().size()));
    if (total > static_cast<double>(cap))
        throw CapExceeded("naive grounding needs " + std::to_string(static_cast<std::uint64_t>(total)) +
                          " instantiations, cap is " + std::to_string(cap));

    GroundProgram out;
    std::set<int> facts;
    for (const auto& f : split.facts) {
        std::vector<int> t;
        for (const auto& a : f.args) t.push_back(g.constant(a.name));
        facts.insert(g.atom(f.predicate, t));
    }
    for (const auto& r : split.rules) {
        const CRule c = g.compile(r);
        std::vector<int> binding(c.vars.size(), 0);
        const std::size_t dom = g.constants().size();
        if (!c.vars.empty() && dom == 0) continue;
        while (true) {
            bool keep = true;
            for (const auto& cmp : c.cmp) keep = keep && g.cmp_holds(cmp, binding);
            if (keep) {
                GroundRule gr;
                gr.kind = r.head_kind;
                gr.origin = r.id;
                for (const auto& l : c.head) gr.head.push_back(g.atom(l.predicate, g.tuple_of(l, binding)));
                for (const auto& l : c.pos) gr.pos.push_back(g.atom(l.predicate, g.tuple_of(l, binding)));
                for (const auto& l : c.neg) gr.neg.push_back(g.atom(l.predicate, g.tuple_of(l, binding)));
                gr.weak = ground_weak(r, c.vars, binding, g.constants());
                out.rules.push_back(std::move(gr));
            }
            std::size_t i = 0;
            while (i < binding.size() && ++binding[i] == static_cast<int>(dom)) binding[i++] = 0;
            if (i == binding.size()) break;
        }
    }
    out.atoms = g.atoms();
    out.facts.assign(facts.begin(), facts.end());
    return out;
}

GroundResult bottom_up_ground(const Program& program, std::uint64_t cap) {
    auto split = split_facts(program);
    const auto graph = build_dependency_graph(split.rules);
    const auto scc = compute_sccs(graph);

    Grounder g(cap);
    intern_constants(g, split.facts, split.rules);
    for (const auto& f : split.facts) {
        std::vector<int> t;
        for (const auto& a : f.args) t.push_back(g.constant(a.name));
        const int a = g.atom(f.predicate, t);
        g.add_possible(a);
        g.in_dt()[a] = true;
    }

    std::vector<CRule> compiled;
    compiled.reserve(split.rules.size());
    for (const auto& r : split.rules) compiled.push_back(g.compile(r));

    // Rules are grounded with the lowest SCC among their heads; headless
    // rules after everything else.
    const int last = static_cast<int>(scc.sccs.size());
    std::vector<std::vector<std::size_t>> by_scc(scc.sccs.size() + 1);
    for (std::size_t i = 0; i < split.rules.size(); ++i) {
        int s = last;
        for (const auto& h : split.rules[i].head) s = std::min(s, scc.scc(h.predicate));
        by_scc[s].push_back(i);
    }

    auto blocked = [&](const CRule& r, const std::vector<int>& binding, int below) {
        for (const auto& l : r.neg) {
            if (below >= 0 && scc.scc(l.predicate) >= below) continue;
            const int a = g.find_atom(l.predicate, g.tuple_of(l, binding));
            if (a >= 0 && g.in_dt()[a]) return true;
        }
        return false;
    };
    auto full = [&](std::size_t) { return Grounder::Range{0, static_cast<std::size_t>(-1)}; };

    GroundProgram out;
    for (int s = 0; s <= last; ++s) {
        const auto& members = by_scc[s];
        if (members.empty()) continue;
        auto recursive = [&](const CLiteral& l) { return s < last && scc.scc(l.predicate) == s; };

        // Candidate atoms D of this component, semi-naively.
        if (s < last) {
            std::map<std::string, std::pair<std::size_t, std::size_t>> delta;  // predicate -> [lo, hi)
            for (const auto& p : scc.sccs[s]) delta[p] = {0, g.size(p)};
            auto derive = [&](const CRule& r, const std::function<Grounder::Range(std::size_t)>& range) {
                g.join(r, range, [&](const std::vector<int>& b) {
                    if (blocked(r, b, s)) return;
                    for (const auto& h : r.head) g.add_possible(g.atom(h.predicate, g.tuple_of(h, b)));
                });
            };
            for (auto i : members) derive(compiled[i], [&](std::size_t k) {
                const auto& l = compiled[i].pos[k];
                return recursive(l) ? Grounder::Range{0, delta[l.predicate].second} : full(k);
            });
            for (auto& [p, d] : delta) d = {d.second, g.size(p)};
            while (std::any_of(delta.begin(), delta.end(), [](const auto& e) { return e.second.first < e.second.second; })) {
                for (auto i : members) {
                    const auto& r = compiled[i];
                    for (std::size_t d = 0; d < r.pos.size(); ++d) {
                        if (!recursive(r.pos[d])) continue;
                        derive(r, [&](std::size_t k) {
                            const auto& l = r.pos[k];
                            if (!recursive(l)) return full(k);
                            const auto [lo, hi] = delta[l.predicate];
                            if (k < d) return Grounder::Range{0, lo};
                            if (k == d) return Grounder::Range{lo, hi};
                            return Grounder::Range{0, hi};
                        });
                    }
                }
                for (auto& [p, d] : delta) d = {d.second, g.size(p)};
            }
        }

        // Instances over the final D.
        std::vector<GroundRule> instances;
        for (auto i : members) {
            const auto& r = compiled[i];
            g.join(r, full, [&](const std::vector<int>& b) {
                if (blocked(r, b, -1)) return;
                GroundRule gr;
                gr.kind = r.source->head_kind;
                gr.origin = r.source->id;
                for (const auto& l : r.head) gr.head.push_back(g.atom(l.predicate, g.tuple_of(l, b)));
                for (const auto& l : r.pos) gr.pos.push_back(g.atom(l.predicate, g.tuple_of(l, b)));
                for (const auto& l : r.neg) {
                    gr.neg.push_back(g.atom(l.predicate, g.tuple_of(l, b)));
                }
                gr.weak = ground_weak(*r.source, r.vars, b, g.constants());
                instances.push_back(std::move(gr));
            });
        }

        // Surely true atoms D_T: normal heads whose positive body is surely
        // true and whose negative body is surely false (outside D).
        std::vector<std::size_t> missing(instances.size(), 0);
        std::unordered_map<int, std::vector<std::size_t>> waiting;
        std::vector<int> queue;
        auto fire = [&](std::size_t i) {
            const int h = instances[i].head.front();
            if (!g.in_dt()[h]) {
                g.in_dt()[h] = true;
                queue.push_back(h);
            }
        };
        for (std::size_t i = 0; i < instances.size(); ++i) {
            const auto& gr = instances[i];
            if (gr.kind != HeadKind::normal) continue;
            if (std::any_of(gr.neg.begin(), gr.neg.end(), [&](int a) { return g.in_d()[a]; })) continue;
            for (int a : gr.pos)
                if (!g.in_dt()[a]) {
                    ++missing[i];
                    waiting[a].push_back(i);
                }
            if (missing[i] == 0) fire(i);
        }
        while (!queue.empty()) {
            const int a = queue.back();
            queue.pop_back();
            auto it = waiting.find(a);
            if (it == waiting.end()) continue;
            for (auto i : it->second)
                if (--missing[i] == 0) fire(i);
        }

        for (auto& gr : instances) {
            if (std::any_of(gr.neg.begin(), gr.neg.end(), [&](int a) { return g.in_dt()[a]; })) continue;
            if (gr.kind == HeadKind::normal && g.in_dt()[gr.head.front()]) continue;
            out.rules.push_back(std::move(gr));
        }
    }

    GroundResult result;
    out.atoms = g.atoms();
    for (std::size_t a = 0; a < out.atoms.size(); ++a) {
        if (g.in_dt()[a]) {
            out.facts.push_back(static_cast<int>(a));
            result.candidates.surely_true.insert(out.atoms[a]);
        }
        if (g.in_d()[a]) result.candidates.possibly_true.insert(out.atoms[a]);
    }
    result.program = std::move(out);
    return result;
}

std::size_t count_ground_rules(const GroundProgram& ground) { return ground.rules.size(); }

std::size_t count_ground_rules(const GroundProgram& ground, int origin) {
    return static_cast<std::size_t>(std::count_if(ground.rules.begin(), ground.rules.end(),
                                                   [&](const GroundRule& r) { return r.origin == origin; }));
}

std::string print_ground(const GroundProgram& ground) {
    std::ostringstream out;
    for (const auto& r : ground.rules) out << to_string(ground.to_rule(r)) << '\n';
    for (int f : ground.facts) out << to_string(ground.atoms[f]) << ".\n";
    return out.str();
}

namespace {

// Least model of the definite rules selected by `active`, on top of `base`.
std::vector<bool> least_model(const GroundProgram& gp, const std::vector<bool>& base,
                              const std::function<bool(const GroundRule&)>& active) {
    std::vector<bool> model = base;
    std::vector<std::size_t> missing(gp.rules.size(), 0);
    std::vector<std::vector<std::size_t>> waiting(gp.atoms.size());
    std::vector<int> queue;
    for (std::size_t a = 0; a < model.size(); ++a)
        if (model[a]) queue.push_back(static_cast<int>(a));
    auto fire = [&](const GroundRule& r) {
        const int h = r.head.front();
        if (!model[h]) {
            model[h] = true;
            queue.push_back(h);
        }
    };
    for (std::size_t i = 0; i < gp.rules.size(); ++i) {
        const auto& r = gp.rules[i];
        if (r.head.empty() || !active(r)) continue;
        for (int a : r.pos)
            if (!base[a]) {
                ++missing[i];
                waiting[a].push_back(i);
            }
        if (missing[i] == 0) fire(r);
    }
    while (!queue.empty()) {
        const int a = queue.back();
        queue.pop_back();
        for (auto i : waiting[a])
            if (--missing[i] == 0) fire(gp.rules[i]);
        waiting[a].clear();
    }
    return model;
}

AnswerSet as_strings(const GroundProgram& gp, const std::vector<bool>& model) {
    AnswerSet s;
    for (std::size_t a = 0; a < model.size(); ++a)
        if (model[a]) s.insert(to_string(gp.atoms[a]));
    return s;
}

bool body_true(const GroundRule& r, const std::vector<bool>& m) {
    return std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return m[a]; }) &&
           std::none_of(r.neg.begin(), r.neg.end(), [&](int a) { return m[a]; });
}

std::vector<int> subset_atoms(const std::vector<int>& pool, std::uint64_t mask) {
    std::vector<int> out;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (mask & (std::uint64_t{1} << i)) out.push_back(pool[i]);
    return out;
}

// Disjunctive programs: every interpretation over the head atoms, with the
// subset-minimality test on the reduct.
std::set<AnswerSet> disjunctive_answer_sets(const GroundProgram& gp, const std::vector<bool>& facts,
                                            std::size_t max_atoms) {
    std::set<int> pool_set;
    for (const auto& r : gp.rules)
        for (int h : r.head)
            if (!facts[h]) pool_set.insert(h);
    const std::vector<int> pool(pool_set.begin(), pool_set.end());
    if (pool.size() > max_atoms)
        throw CapExceeded(std::to_string(pool.size()) + " candidate atoms exceed the cap of " +
                          std::to_string(max_atoms));

    auto reduct_model = [&](const std::vector<bool>& j, const std::vector<bool>& i) {
        for (const auto& r : gp.rules) {
            if (r.kind == HeadKind::weak) continue;
            if (std::any_of(r.neg.begin(), r.neg.end(), [&](int a) { return i[a]; })) continue;
            if (r.kind == HeadKind::choice && !i[r.head.front()]) continue;
            if (!std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return j[a]; })) continue;
            if (!std::any_of(r.head.begin(), r.head.end(), [&](int a) { return j[a]; })) return false;
        }
        return true;
    };

    std::set<AnswerSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pool.size()); ++mask) {
        std::vector<bool> i = facts;
        const auto chosen = subset_atoms(pool, mask);
        for (int a : chosen) i[a] = true;
        if (!reduct_model(i, i)) continue;
        bool minimal = true;
        for (std::uint64_t sub = (mask - 1) & mask; minimal && sub != mask; sub = (sub - 1) & mask) {
            std::vector<bool> j = facts;
            for (int a : subset_atoms(pool, sub)) j[a] = true;
            if (reduct_model(j, i)) minimal = false;
            if (sub == 0) break;
        }
        if (minimal) out.insert(as_strings(gp, i));
    }
    return out;
}

}  // namespace

std::set<AnswerSet> answer_sets_bruteforce(const GroundProgram& gp, std::size_t max_atoms) {
    std::vector<bool> facts(gp.atoms.size(), false);
    for (int f : gp.facts) facts[f] = true;

    if (std::any_of(gp.rules.begin(), gp.rules.end(), [](const GroundRule& r) { return r.kind == HeadKind::disjunctive; }))
        return disjunctive_answer_sets(gp, facts, max_atoms);

    // For normal programs with choices, the reduct only depends on the guess
    // over atoms that occur negatively or as choice heads; every other atom
    // of a candidate interpretation is fixed by the reduct's least model.
    std::vector<bool> derivable(gp.atoms.size(), false);
    for (const auto& r : gp.rules)
        for (int h : r.head) derivable[h] = true;
    std::set<int> guess_set;
    for (const auto& r : gp.rules) {
        for (int a : r.neg)
            if (derivable[a] && !facts[a]) guess_set.insert(a);
        if (r.kind == HeadKind::choice && !facts[r.head.front()]) guess_set.insert(r.head.front());
    }
    const std::vector<int> guess(guess_set.begin(), guess_set.end());
    if (guess.size() > max_atoms)
        throw CapExceeded(std::to_string(guess.size()) + " guessed atoms exceed the cap of " +
                          std::to_string(max_atoms));

    std::set<AnswerSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << guess.size()); ++mask) {
        std::vector<bool> i = facts;
        for (int a : subset_atoms(guess, mask)) i[a] = true;
        // Reduct w.r.t. the guess.
        auto model = least_model(gp, facts, [&](const GroundRule& r) {
            if (r.kind == HeadKind::weak) return false;
            if (std::any_of(r.neg.begin(), r.neg.end(), [&](int a) { return i[a]; })) return false;
            return r.kind != HeadKind::choice || i[r.head.front()];
        });
        const bool consistent =
            std::all_of(guess.begin(), guess.end(), [&](int a) { return model[a] == static_cast<bool>(i[a]); });
        if (!consistent) continue;
        const bool violated = std::any_of(gp.rules.begin(), gp.rules.end(), [&](const GroundRule& r) {
            return r.kind == HeadKind::constraint && body_true(r, model);
        });
        if (!violated) out.insert(as_strings(gp, model));
    }
    return out;
}

std::set<AnswerSet> project_out(const std::set<AnswerSet>& sets, std::string_view prefix) {
    std::set<AnswerSet> out;
    for (const auto& s : sets) {
        AnswerSet kept;
        for (const auto& a : s)
            if (!std::string_view(a).starts_with(prefix)) kept.insert(a);
        out.insert(std::move(kept));
    }
    return out;
}

}  // namespace gsplit
