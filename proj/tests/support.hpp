#pragma once

// Fixtures and random generators shared by the unit suites and the
// acceptance runner.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gsplit/ast.hpp"
#include "gsplit/instance.hpp"
#include "gsplit/treedecomp.hpp"

namespace gsplit::fixture {

inline std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline std::string scenario_path(const std::string& name) { return std::string(GSPLIT_SCENARIO_DIR) + "/" + name; }

inline std::string scenario_text(const std::string& name) { return read_text(scenario_path(name)); }

inline Program scenario(const std::string& name) { return parse_program(scenario_text(name)); }

inline Program with_facts(Program p, const std::vector<Literal>& facts) {
    int id = 0;
    for (const auto& r : p.rules) id = std::max(id, r.id + 1);
    for (const auto& f : facts) {
        Rule r;
        r.id = id++;
        r.head_kind = HeadKind::normal;
        r.head.push_back(f);
        p.rules.push_back(std::move(r));
    }
    return p;
}

inline Program with_graph(Program p, const GraphSpec& spec) { return with_facts(std::move(p), generate_graph(spec)); }

inline GraphSpec complete(std::size_t n, const std::string& edge = "e") {
    GraphSpec s;
    s.n = n;
    s.topology = Topology::complete;
    s.edge_predicate = edge;
    return s;
}

inline GraphSpec random_graph(std::size_t n, double density, std::uint64_t seed, const std::string& edge = "e",
                              const std::string& node = "") {
    GraphSpec s;
    s.n = n;
    s.density = density;
    s.seed = seed;
    s.edge_predicate = edge;
    s.node_predicate = node;
    return s;
}

inline GraphSpec path(std::size_t n, const std::string& edge = "e") {
    GraphSpec s;
    s.n = n;
    s.topology = Topology::path;
    s.edge_predicate = edge;
    return s;
}

/// The guess of g and the triangle constraint on it (rule id 1).
inline const char* kTriangleEncoding = "{g(X,Y)} :- e(X,Y).\n:- g(X1,X2), g(X1,X3), g(X2,X3).\n";

/// A constraint whose join and BDG estimates are both exactly 242.
/// Domains: 8 constants in every position; ea and eb keep 44 of the 64
/// pairs, ec all of them.
inline Program tie_fixture() {
    std::ostringstream s;
    s << "{a(X,Y)} :- ea(X,Y). {b(X,Y)} :- eb(X,Y). {c(X,Y)} :- ec(X,Y).\n";
    s << ":- a(X1,X2), b(X1,X3), c(X2,X3).\n";
    for (int i = 1; i <= 8; ++i) {
        for (int j = 1; j <= 8; ++j) {
            const int off = (j - i + 8) % 8;
            const bool dropped = off == 1 || off == 2 || (off == 3 && i <= 4);
            if (!dropped) s << "ea(" << i << "," << j << "). eb(" << i << "," << j << ").\n";
            s << "ec(" << i << "," << j << ").\n";
        }
    }
    return parse_program(s.str());
}

// ---------------------------------------------------------------------------
// Tree decomposition helpers

inline VariableGraph graph_from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    VariableGraph g;
    for (std::size_t i = 0; i < n; ++i) g.vertices.push_back("V" + std::to_string(i));
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

inline VariableGraph random_variable_graph(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    VariableGraph g = graph_from_edges(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng)) g.add_edge(i, j);
    return g;
}

inline VariableGraph random_tree(std::mt19937_64& rng, std::size_t n) {
    VariableGraph g = graph_from_edges(n, {});
    for (std::size_t v = 1; v < n; ++v) g.add_edge(v, rng() % v);
    return g;
}

inline VariableGraph complete_graph(std::size_t n) {
    VariableGraph g = graph_from_edges(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

/// Treewidth by trying every elimination order (bitmask simulation).
inline int brute_force_treewidth(const VariableGraph& g) {
    const std::size_t n = g.vertices.size();
    if (n == 0) return -1;
    std::vector<std::uint32_t> adj(n, 0);
    for (auto [a, b] : g.edges) {
        adj[a] |= 1u << b;
        adj[b] |= 1u << a;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    int best = static_cast<int>(n) - 1;
    do {
        auto work = adj;
        std::uint32_t alive = (n == 32) ? ~0u : ((1u << n) - 1);
        int width = 0;
        for (std::size_t v : order) {
            const std::uint32_t nb = work[v] & alive & ~(1u << v);
            width = std::max(width, std::popcount(nb));
            if (width >= best) break;
            for (std::size_t u = 0; u < n; ++u)
                if (nb & (1u << u)) work[u] |= nb & ~(1u << u);
            alive &= ~(1u << v);
        }
        best = std::min(best, width);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

// ---------------------------------------------------------------------------
// Random programs

/// At most three rules: a guess of a/2 over d/2 facts, a target rule over
/// at most four variables (constraint or `h(X)` head; id 1) and
/// occasionally a constraint consuming h. b/2 and c/1 are facts.
inline std::string random_rewrite_program(std::mt19937_64& rng) {
    auto pick = [&](std::size_t k) { return static_cast<std::size_t>(rng() % k); };
    const std::size_t consts = 2 + pick(3);  // 2..4
    std::ostringstream s;
    s << "{a(X,Y)} :- d(X,Y).\n";

    const std::size_t nvars = 2 + pick(3);  // 2..4
    auto var = [&](std::size_t i) { return "X" + std::to_string(i + 1); };
    std::vector<std::string> body;
    // A spanning structure over the variables keeps every variable bound.
    for (std::size_t v = 1; v < nvars; ++v) {
        const std::size_t u = pick(v);
        const char* pred = pick(2) ? "a" : "b";
        body.push_back(std::string(pred) + "(" + var(u) + "," + var(v) + ")");
    }
    if (nvars >= 3 && pick(3) == 0) body.push_back("a(" + var(nvars - 1) + "," + var(0) + ")");
    if (pick(3) == 0) body.push_back("c(" + var(pick(nvars)) + ")");
    if (pick(2) == 0) {
        const auto x = pick(nvars), y = pick(nvars);
        body.push_back(std::string(pick(2) ? "not a(" : "not b(") + var(x) + "," + var(y) + ")");
    }
    if (pick(3) == 0) {
        const auto x = pick(nvars);
        auto y = pick(nvars);
        if (y == x) y = (x + 1) % nvars;
        const char* ops[] = {"<", "!=", "<=", "="};
        body.push_back(var(x) + " " + ops[pick(4)] + " " + var(y));
    }
    std::shuffle(body.begin(), body.end(), rng);
    std::string joined;
    for (std::size_t i = 0; i < body.size(); ++i) joined += (i ? ", " : "") + body[i];

    const bool constraint = pick(2) == 0;
    if (constraint)
        s << ":- " << joined << ".\n";
    else
        s << "h(" << var(pick(nvars)) << ") :- " << joined << ".\n";
    if (!constraint && pick(2) == 0) s << ":- h(X), not c(X).\n";

    // At most six facts each for d and b keep the guess small.
    std::size_t nd = 0, nk = 0;
    for (std::size_t i = 1; i <= consts; ++i) {
        if (pick(2)) s << "c(" << i << ").\n";
        for (std::size_t j = 1; j <= consts; ++j) {
            if (nd < 6 && pick(3) == 0 && ++nd) s << "d(" << i << "," << j << ").\n";
            if (nk < 6 && pick(4) == 0 && ++nk) s << "b(" << i << "," << j << ").\n";
        }
    }
    return s.str();
}

/// Stratified program without choices or constraints: base facts over e/2
/// and c/1, derived predicates p1..p4 whose bodies only use base predicates,
/// earlier predicates and (positively) themselves; negation only on earlier
/// unary predicates.
inline std::string random_stratified_program(std::mt19937_64& rng) {
    auto pick = [&](std::size_t k) { return static_cast<std::size_t>(rng() % k); };
    const std::size_t consts = 2 + pick(3);
    std::ostringstream s;
    for (std::size_t i = 1; i <= consts; ++i) {
        if (pick(2)) s << "c(" << i << ").\n";
        for (std::size_t j = 1; j <= consts; ++j)
            if (pick(3) == 0) s << "e(" << i << "," << j << ").\n";
    }
    // p1, p3 unary; p2, p4 binary.
    auto arity = [](std::size_t p) { return p % 2 == 1 ? 1u : 2u; };
    for (std::size_t p = 1; p <= 4; ++p) {
        const std::size_t rules = 1 + pick(2);
        for (std::size_t r = 0; r < rules; ++r) {
            std::vector<std::string> body;
            std::string head;
            body.push_back("e(X,Y)");
            if (p > 1 && pick(2)) {
                const std::size_t q = 1 + pick(p - 1);
                body.push_back("p" + std::to_string(q) + (arity(q) == 1 ? "(Y)" : "(Y,Z)"));
                if (arity(q) == 2) body.push_back("e(Z,X)");
            }
            if (pick(3) == 0) body.push_back("p" + std::to_string(p) + (arity(p) == 1 ? "(Y)" : "(Y,X)"));
            if (pick(2) == 0) body.push_back("c(X)");
            if (p > 1 && pick(2) == 0) {
                const std::size_t q = pick(2) ? 1 : (p > 3 ? 3 : 1);
                body.push_back("not p" + std::to_string(q) + "(X)");
            } else if (pick(3) == 0) {
                body.push_back("not c(Y)");
            }
            head = "p" + std::to_string(p) + (arity(p) == 1 ? "(X)" : "(X,Y)");
            std::string joined;
            for (std::size_t i = 0; i < body.size(); ++i) joined += (i ? ", " : "") + body[i];
            s << head << " :- " << joined << ".\n";
        }
    }
    return s.str();
}

}  // namespace gsplit::fixture
