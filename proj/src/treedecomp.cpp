#include "gsplit/treedecomp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

#include "gsplit/errors.hpp"

namespace gsplit {

std::size_t VariableGraph::index_of(const std::string& name) const {
    auto it = std::find(vertices.begin(), vertices.end(), name);
    if (it == vertices.end()) throw std::out_of_range("unknown variable " + name);
    return static_cast<std::size_t>(it - vertices.begin());
}

bool VariableGraph::adjacent(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    return edges.contains({a, b});
}

void VariableGraph::add_edge(std::size_t a, std::size_t b) {
    if (a == b) return;
    if (a > b) std::swap(a, b);
    edges.emplace(a, b);
}

VariableGraph build_variable_graph(const Rule& rule) {
    VariableGraph g;
    g.vertices = rule.variables();
    auto clique = [&](const std::vector<std::string>& vars) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            for (std::size_t j = i + 1; j < vars.size(); ++j) g.add_edge(g.index_of(vars[i]), g.index_of(vars[j]));
    };
    for (const auto& l : rule.head) clique(l.variables());
    for (const auto& l : rule.body_pos) clique(l.variables());
    for (const auto& l : rule.body_neg) clique(l.variables());
    for (const auto& c : rule.body_cmp) clique(c.variables());
    return g;
}

int TreeDecomposition::width() const { return static_cast<int>(bag_size(*this)) - 1; }

std::size_t bag_size(const TreeDecomposition& td) {
    std::size_t m = 0;
    for (const auto& b : td.bags) m = std::max(m, b.size());
    return m;
}

namespace {

using Adjacency = std::vector<std::set<std::size_t>>;

Adjacency adjacency_of(const VariableGraph& g) {
    Adjacency adj(g.vertices.size());
    for (const auto& [a, b] : g.edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    return adj;
}

// Eliminates v: its neighbourhood becomes a clique and v disappears.
void eliminate(Adjacency& adj, std::size_t v) {
    for (std::size_t a : adj[v])
        for (std::size_t b : adj[v])
            if (a != b) adj[a].insert(b);
    for (std::size_t a : adj[v]) adj[a].erase(v);
    adj[v].clear();
}

std::size_t fill_in(const Adjacency& adj, std::size_t v) {
    std::size_t missing = 0;
    for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
            if (!adj[*a].contains(*b)) ++missing;
    return missing;
}

std::vector<std::size_t> greedy_order(const VariableGraph& g, TdStrategy strategy) {
    Adjacency adj = adjacency_of(g);
    std::vector<bool> done(g.vertices.size(), false);
    std::vector<std::size_t> order;
    for (std::size_t step = 0; step < g.vertices.size(); ++step) {
        std::size_t best = 0;
        bool have = false;
        std::size_t best_key = 0;
        for (std::size_t v = 0; v < g.vertices.size(); ++v) {
            if (done[v]) continue;
            const std::size_t key = strategy == TdStrategy::min_fill ? fill_in(adj, v) : adj[v].size();
            if (!have || key < best_key || (key == best_key && g.vertices[v] < g.vertices[best])) {
                best = v;
                best_key = key;
                have = true;
            }
        }
        done[best] = true;
        order.push_back(best);
        eliminate(adj, best);
    }
    return order;
}

// Vertices outside `eliminated ∪ {v}` reachable from v through eliminated ones.
std::size_t higher_degree(const std::vector<std::uint32_t>& nbr, std::uint32_t eliminated, std::size_t v) {
    std::uint32_t seen = 1u << v, frontier = 1u << v, reach = 0;
    while (frontier) {
        const std::size_t u = static_cast<std::size_t>(std::countr_zero(frontier));
        frontier &= frontier - 1;
        std::uint32_t next = nbr[u] & ~seen;
        seen |= next;
        reach |= next & ~eliminated;
        frontier |= next & eliminated;
    }
    return static_cast<std::size_t>(std::popcount(reach));
}

std::vector<std::size_t> exact_order(const VariableGraph& g) {
    const std::size_t n = g.vertices.size();
    std::vector<std::uint32_t> nbr(n, 0);
    for (const auto& [a, b] : g.edges) {
        nbr[a] |= 1u << b;
        nbr[b] |= 1u << a;
    }
    // Ties go to the largest name as the last vertex of each subset, so
    // that, as in the greedy strategies, smaller names are eliminated first.
    std::vector<std::size_t> by_name(n);
    for (std::size_t i = 0; i < n; ++i) by_name[i] = i;
    std::sort(by_name.begin(), by_name.end(),
              [&](std::size_t a, std::size_t b) { return g.vertices[a] > g.vertices[b]; });

    const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
    std::vector<int> best(std::size_t{1} << n, std::numeric_limits<int>::max());
    std::vector<std::int8_t> last(std::size_t{1} << n, -1);
    best[0] = -1;
    for (std::uint32_t s = 1; s <= full; ++s) {
        for (std::size_t v : by_name) {
            if (!(s & (1u << v))) continue;
            const std::uint32_t rest = s & ~(1u << v);
            const int w = std::max(best[rest], static_cast<int>(higher_degree(nbr, rest, v)));
            if (w < best[s]) {
                best[s] = w;
                last[s] = static_cast<std::int8_t>(v);
            }
        }
    }
    std::vector<std::size_t> order(n);
    std::uint32_t s = full;
    for (std::size_t k = n; k-- > 0;) {
        order[k] = static_cast<std::size_t>(last[s]);
        s &= ~(1u << order[k]);
    }
    return order;
}

bool subset_of(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

int elimination_width(const VariableGraph& graph, const std::vector<std::size_t>& order) {
    Adjacency adj = adjacency_of(graph);
    int width = -1;
    for (std::size_t v : order) {
        width = std::max(width, static_cast<int>(adj[v].size()));
        eliminate(adj, v);
    }
    return width;
}

TreeDecomposition decomposition_from_order(const VariableGraph& graph, const std::vector<std::size_t>& order) {
    TreeDecomposition td;
    const std::size_t n = graph.vertices.size();
    if (n == 0) {
        td.bags.emplace_back();
        return td;
    }
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

    Adjacency adj = adjacency_of(graph);
    std::vector<std::set<std::size_t>> bags(n);  // indexed by elimination step
    std::vector<std::set<std::size_t>> tree(n);
    std::vector<std::size_t> roots;
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t v = order[step];
        bags[step] = adj[v];
        bags[step].insert(v);
        if (adj[v].empty()) {
            roots.push_back(step);
        } else {
            std::size_t parent = n;
            for (std::size_t u : adj[v]) parent = std::min(parent, position[u]);
            tree[step].insert(parent);
            tree[parent].insert(step);
        }
        eliminate(adj, v);
    }
    for (std::size_t i = 1; i < roots.size(); ++i) {
        tree[roots[i - 1]].insert(roots[i]);
        tree[roots[i]].insert(roots[i - 1]);
    }

    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < n && !changed; ++a) {
            if (!alive[a]) continue;
            for (std::size_t b : tree[a]) {
                if (!subset_of(bags[a], bags[b])) continue;
                for (std::size_t c : tree[a]) {
                    if (c == b) continue;
                    tree[c].erase(a);
                    tree[c].insert(b);
                    tree[b].insert(c);
                }
                tree[b].erase(a);
                tree[a].clear();
                alive[a] = false;
                changed = true;
                break;
            }
        }
    }

    std::vector<std::size_t> renumber(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        renumber[i] = td.bags.size();
        std::vector<std::size_t> members(bags[i].begin(), bags[i].end());  // vertex order
        std::vector<std::string> names;
        for (std::size_t m : members) names.push_back(graph.vertices[m]);
        td.bags.push_back(std::move(names));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        for (std::size_t j : tree[i])
            if (i < j) td.tree_edges.emplace_back(renumber[i], renumber[j]);
    }
    std::sort(td.tree_edges.begin(), td.tree_edges.end());
    return td;
}

TreeDecomposition decompose(const VariableGraph& graph, TdStrategy strategy, std::size_t exact_cap) {
    if (strategy == TdStrategy::exact) {
        if (graph.vertices.size() > std::min<std::size_t>(exact_cap, 24))
            throw ExactCapExceeded(graph.vertices.size(), exact_cap);
        return decomposition_from_order(graph, exact_order(graph));
    }
    return decomposition_from_order(graph, greedy_order(graph, strategy));
}

TreeDecomposition decompose(const VariableGraph& graph, const TdOptions& options) {
    if (options.strategy != TdStrategy::exact && graph.vertices.size() <= options.exact_auto_cap &&
        graph.vertices.size() <= options.exact_cap)
        return decompose(graph, TdStrategy::exact, options.exact_cap);
    return decompose(graph, options.strategy, options.exact_cap);
}

bool is_valid_decomposition(const VariableGraph& graph, const TreeDecomposition& td, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const std::size_t k = td.bags.size();
    if (k == 0) return fail("no bags");
    if (td.tree_edges.size() != k - 1) return fail("bag graph is not a tree (edge count)");

    std::vector<std::vector<std::size_t>> tree(k);
    for (const auto& [a, b] : td.tree_edges) {
        if (a >= k || b >= k || a == b) return fail("bad tree edge");
        tree[a].push_back(b);
        tree[b].push_back(a);
    }
    auto connected = [&](const std::vector<bool>& member) {
        std::size_t start = k, total = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (member[i]) {
                ++total;
                if (start == k) start = i;
            }
        if (total == 0) return false;
        std::vector<bool> seen(k, false);
        std::queue<std::size_t> q;
        q.push(start);
        seen[start] = true;
        std::size_t reached = 0;
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            ++reached;
            for (auto w : tree[u])
                if (member[w] && !seen[w]) {
                    seen[w] = true;
                    q.push(w);
                }
        }
        return reached == total;
    };
    if (!connected(std::vector<bool>(k, true))) return fail("bag graph is not connected");

    auto in_bag = [&](std::size_t bag, const std::string& v) {
        return std::find(td.bags[bag].begin(), td.bags[bag].end(), v) != td.bags[bag].end();
    };
    for (const auto& v : graph.vertices) {
        std::vector<bool> member(k);
        for (std::size_t i = 0; i < k; ++i) member[i] = in_bag(i, v);
        if (std::none_of(member.begin(), member.end(), [](bool b) { return b; }))
            return fail("vertex " + v + " is in no bag");
        if (!connected(member)) return fail("occurrences of " + v + " are not connected");
    }
    for (const auto& [a, b] : graph.edges) {
        bool covered = false;
        for (std::size_t i = 0; i < k && !covered; ++i)
            covered = in_bag(i, graph.vertices[a]) && in_bag(i, graph.vertices[b]);
        if (!covered) return fail("edge " + graph.vertices[a] + "-" + graph.vertices[b] + " is not covered");
    }
    return true;
}

TdStrategy parse_td_strategy(const std::string& text) {
    if (text == "min-fill") return TdStrategy::min_fill;
    if (text == "min-degree") return TdStrategy::min_degree;
    if (text == "exact") return TdStrategy::exact;
    throw std::invalid_argument("unknown tree decomposition strategy: " + text);
}

std::string to_string(TdStrategy strategy) {
    switch (strategy) {
        case TdStrategy::min_fill: return "min-fill";
        case TdStrategy::min_degree: return "min-degree";
        case TdStrategy::exact: return "exact";
    }
    return "?";
}

}  // namespace gsplit
