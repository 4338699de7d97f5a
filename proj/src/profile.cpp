#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "gsplit/errors.hpp"
#include "gsplit/estimator.hpp"
#include "gsplit/instance.hpp"
#include "gsplit/oracle.hpp"

namespace gsplit {

std::vector<ProfileRow> density_profile(const Program& encoding, int rule_id, const std::vector<std::size_t>& sizes,
                                        const std::vector<double>& densities, std::uint64_t seed,
                                        const ProfileOptions& options) {
    auto has_rule = [&](const Program& p) {
        return std::any_of(p.rules.begin(), p.rules.end(), [&](const Rule& r) { return r.id == rule_id; });
    };
    if (!has_rule(encoding)) throw Error("no rule with id " + std::to_string(rule_id));

    std::vector<ProfileRow> rows;
    for (auto n : sizes) {
        for (double density : densities) {
            GraphSpec spec;
            spec.n = n;
            spec.density = density;
            spec.seed = seed;
            spec.directed = options.directed;
            spec.edge_predicate = options.edge_predicate;
            spec.node_predicate = options.node_predicate;

            Program program = encoding;
            for (auto& f : generate_graph(spec)) {
                Rule r;
                r.id = static_cast<int>(program.rules.size()) + 1'000'000;
                r.head_kind = HeadKind::normal;
                r.head.push_back(std::move(f));
                program.rules.push_back(std::move(r));
            }
            const Analysis an = analyze(program);
            const Rule& rule = *std::find_if(an.rules.begin(), an.rules.end(),
                                             [&](const Rule& r) { return r.id == rule_id; });

            ProfileRow row;
            row.n = n;
            row.density = density;
            row.sota_estimate = join_estimate(rule, an.domains).final_estimate;
            row.bdg_estimate = bdg_estimate(rule, an.domains).total;
            if (n <= options.oracle_cap)
                row.actual_sota = count_ground_rules(bottom_up_ground(program, options.ground_cap).program, rule_id);
            rows.push_back(row);
        }
    }
    return rows;
}

void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
    out << "n,density,sota_estimate,bdg_estimate,actual_sota\n";
    for (const auto& r : rows) {
        std::ostringstream density;
        density << r.density;
        out << r.n << ',' << density.str() << ',' << std::fixed << std::setprecision(2) << r.sota_estimate << ','
            << r.bdg_estimate << ',';
        out.unsetf(std::ios::floatfield);
        if (r.actual_sota) out << *r.actual_sota;
        out << '\n';
    }
}

}  // namespace gsplit
