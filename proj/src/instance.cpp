#include "gsplit/instance.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace gsplit {

namespace {

// Uniform draw from [0, bound) by rejection, so the sequence does not
// depend on the standard library's distribution implementation.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % bound;
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw(rng, i)]);
}

Literal fact(const std::string& predicate, std::initializer_list<std::uint64_t> args) {
    Literal l{predicate, {}};
    for (auto a : args) l.args.push_back(Term::constant(std::to_string(a)));
    return l;
}

}  // namespace

Topology parse_topology(const std::string& text) {
    if (text == "random") return Topology::random;
    if (text == "path") return Topology::path;
    if (text == "complete") return Topology::complete;
    throw std::invalid_argument("unknown topology: " + text);
}

std::size_t edge_count(const GraphSpec& spec) {
    const double n = static_cast<double>(spec.n);
    const double fraction = spec.topology == Topology::complete ? 1.0 : spec.density / 100.0;
    if (spec.topology == Topology::path) return spec.n == 0 ? 0 : static_cast<std::size_t>(std::llround(fraction * (n - 1)));
    const double pairs = spec.directed ? n * (n - 1) : n * (n - 1) / 2;
    return static_cast<std::size_t>(std::llround(fraction * pairs));
}

std::vector<Literal> generate_graph(const GraphSpec& spec) {
    if (spec.n == 0) throw std::invalid_argument("graph needs at least one vertex");
    if (spec.density < 0.0 || spec.density > 100.0) throw std::invalid_argument("density must lie in [0, 100]");

    using Edge = std::pair<std::uint64_t, std::uint64_t>;
    const std::size_t m = edge_count(spec);
    std::vector<Edge> order;

    if (spec.topology == Topology::path) {
        for (std::uint64_t v = 1; v < spec.n; ++v) order.emplace_back(v, v + 1);
    } else {
        std::mt19937_64 rng(spec.seed);
        auto normal = [&](Edge e) { return spec.directed || e.first < e.second ? e : Edge{e.second, e.first}; };

        std::vector<std::uint64_t> cycle(spec.n);
        for (std::uint64_t v = 0; v < spec.n; ++v) cycle[v] = v + 1;
        shuffle(cycle, rng);

        std::set<Edge> used;
        if (spec.n > 1) {
            for (std::size_t i = 0; i < spec.n; ++i) {
                const Edge e = normal({cycle[i], cycle[(i + 1) % spec.n]});
                if (used.insert(e).second) order.push_back(e);
            }
        }
        std::vector<Edge> rest;
        for (std::uint64_t u = 1; u <= spec.n; ++u)
            for (std::uint64_t v = 1; v <= spec.n; ++v) {
                if (u == v || (!spec.directed && u > v)) continue;
                if (!used.contains({u, v})) rest.emplace_back(u, v);
            }
        shuffle(rest, rng);
        order.insert(order.end(), rest.begin(), rest.end());
    }

    std::set<Edge> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(std::min(m, order.size())));
    std::vector<Literal> facts;
    if (!spec.node_predicate.empty())
        for (std::uint64_t v = 1; v <= spec.n; ++v) facts.push_back(fact(spec.node_predicate, {v}));
    for (const auto& [u, v] : chosen) facts.push_back(fact(spec.edge_predicate, {u, v}));
    facts.push_back(fact("seed", {spec.seed}));
    return facts;
}

std::string format_facts(const std::vector<Literal>& facts) {
    std::ostringstream out;
    for (const auto& f : facts) out << to_string(f) << ".\n";
    return out.str();
}

}  // namespace gsplit
