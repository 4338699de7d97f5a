#include "gsplit/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gsplit/errors.hpp"
#include "gsplit/estimator.hpp"
#include "gsplit/heuristics.hpp"
#include "gsplit/instance.hpp"
#include "gsplit/oracle.hpp"
#include "gsplit/report.hpp"

namespace gsplit {

namespace {

struct Settings {
    std::string td_strategy = "min-fill";
    std::size_t exact_td_cap = 6;
    double ground_cap = static_cast<double>(kDefaultGroundCap);
    bool csv = false;
    std::string output;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Inputs are concatenated in command-line order.
std::string read_inputs(const std::vector<std::string>& paths) {
    std::string text;
    for (const auto& p : paths) {
        text += read_file(p);
        if (!text.empty() && text.back() != '\n') text += '\n';
    }
    return text;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

HeuristicOptions heuristic_options(const Settings& s) {
    HeuristicOptions o;
    o.td.strategy = parse_td_strategy(s.td_strategy);
    o.td.exact_auto_cap = s.exact_td_cap;
    return o;
}

std::string fixed2(double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << v;
    return s.str();
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

int cmd_split(const std::vector<std::string>& inputs, const Settings& s, std::ostream& out) {
    const std::string text = read_inputs(inputs);
    const Partition part = partition(parse_program(text), heuristic_options(s));
    const std::string base = s.output.empty() ? inputs.front() : s.output;
    write_file(base + ".annotated.lp", annotated_program(part));
    write_file(base + ".report.json", build_report(part, sha256_hex(text)).dump(2) + "\n");
    out << "rules " << part.report.size() << ", bdg " << part.pi_h.size() << ", sota " << part.pi_g.size()
        << ", facts " << part.facts.size() << "\n"
        << "wrote " << base << ".annotated.lp and " << base << ".report.json\n";
    return kExitOk;
}

int cmd_estimate(const std::vector<std::string>& inputs, const Settings& s, std::ostream& out) {
    const Partition part = partition(parse_program(read_inputs(inputs)), heuristic_options(s));
    if (s.csv) {
        out << "rule,origin,vars,a,phi,sota,bdg,decision,text\n";
        for (const auto& d : part.report) {
            std::string text = to_string(d.rule);
            std::string quoted = "\"";
            for (char c : text) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
            quoted += '"';
            out << d.rule_id << ',' << d.origin_rule_id << ',' << d.measures.num_vars << ',' << d.measures.max_arity
                << ',' << d.measures.phi << ',' << fixed2(d.estimates.sota) << ','
                << (d.estimates.bdg ? fixed2(*d.estimates.bdg) : "") << ',' << upper(to_string(d.marker)) << ','
                << quoted << '\n';
        }
        return kExitOk;
    }
    out << std::left << std::setw(6) << "rule" << std::setw(8) << "origin" << std::setw(6) << "vars" << std::setw(4)
        << "a" << std::setw(5) << "phi" << std::right << std::setw(14) << "sota" << std::setw(14) << "bdg"
        << "  " << std::left << std::setw(10) << "decision"
        << "text\n";
    for (const auto& d : part.report) {
        out << std::left << std::setw(6) << d.rule_id << std::setw(8) << d.origin_rule_id << std::setw(6)
            << d.measures.num_vars << std::setw(4) << d.measures.max_arity << std::setw(5) << d.measures.phi
            << std::right << std::setw(14) << fixed2(d.estimates.sota) << std::setw(14)
            << (d.estimates.bdg ? fixed2(*d.estimates.bdg) : "-") << "  " << std::left << std::setw(10)
            << upper(to_string(d.marker)) << to_string(d.rule) << '\n';
    }
    return kExitOk;
}

int cmd_ground(const std::vector<std::string>& inputs, const std::string& mode, std::optional<int> rule,
               const Settings& s, std::ostream& out, std::ostream& err) {
    const Program program = parse_program(read_inputs(inputs));
    const auto cap = static_cast<std::uint64_t>(s.ground_cap);
    GroundProgram gp;
    if (mode == "naive")
        gp = naive_ground(program, cap);
    else
        gp = bottom_up_ground(program, cap).program;
    const std::string text = print_ground(gp);
    if (s.output.empty())
        out << text;
    else
        write_file(s.output, text);
    err << (rule ? count_ground_rules(gp, *rule) : count_ground_rules(gp)) << '\n';
    return kExitOk;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) parts.push_back(item);
    return parts;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Per-rule grounding analysis and BDG/SOTA splitting for ASP programs", "gsplit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    Settings s;
    app.add_option("--td-strategy", s.td_strategy, "tree decomposition heuristic")
        ->check(CLI::IsMember({"min-fill", "min-degree", "exact"}))
        ->capture_default_str();
    app.add_option("--exact-td-cap", s.exact_td_cap, "use exact decomposition up to this many variables")
        ->capture_default_str();
    app.add_option("--ground-cap", s.ground_cap, "grounding work limit")->capture_default_str();
    app.add_flag("--csv", s.csv, "CSV instead of a table");
    app.add_option("--output", s.output, "output path (prefix for split)");
    app.fallthrough();

    std::vector<std::string> inputs;

    auto* split = app.add_subcommand("split", "write <input>.annotated.lp and <input>.report.json");
    split->add_option("inputs", inputs, "program files, concatenated")->required()->check(CLI::ExistingFile);

    auto* estimate = app.add_subcommand("estimate", "per-rule measures, estimates and decisions");
    estimate->add_option("inputs", inputs, "program files, concatenated")->required()->check(CLI::ExistingFile);

    std::string mode = "bottom-up";
    std::optional<int> ground_rule;
    auto* ground = app.add_subcommand("ground", "ground program on stdout, rule count on stderr");
    ground->add_option("inputs", inputs, "program files, concatenated")->required()->check(CLI::ExistingFile);
    ground->add_option("--mode", mode, "grounding procedure")
        ->check(CLI::IsMember({"naive", "bottom-up"}))
        ->capture_default_str();
    ground->add_option("--rule", ground_rule, "count only instances of this rule id");

    GraphSpec spec;
    std::string topology = "random";
    bool undirected = false;
    auto* gen = app.add_subcommand("gen", "random graph instance");
    gen->add_option("--n", spec.n, "vertices")->required()->check(CLI::PositiveNumber);
    gen->add_option("--density", spec.density, "percent of candidate edges")
        ->check(CLI::Range(0.0, 100.0))
        ->capture_default_str();
    gen->add_option("--seed", spec.seed, "generator seed")->capture_default_str();
    gen->add_flag("--undirected", undirected, "store each edge once with u < v");
    gen->add_option("--topology", topology, "random, path or complete")
        ->check(CLI::IsMember({"random", "path", "complete"}))
        ->capture_default_str();
    gen->add_option("--edge-predicate", spec.edge_predicate, "edge predicate")->capture_default_str();
    gen->add_option("--node-predicate", spec.node_predicate, "vertex predicate (none if empty)");

    std::string encoding_path;
    int profile_rule = 0;
    std::string sizes_text = "10,20,30,40,50,60", densities_text = "20,60,100";
    std::uint64_t profile_seed = 1;
    ProfileOptions popts;
    bool profile_undirected = false;
    auto* profile = app.add_subcommand("profile", "estimates against actual counts over generated graphs (CSV)");
    profile->add_option("encoding", encoding_path, "encoding file")->required()->check(CLI::ExistingFile);
    profile->add_option("--rule", profile_rule, "rule id")->required();
    profile->add_option("--sizes", sizes_text, "comma-separated vertex counts")->capture_default_str();
    profile->add_option("--densities", densities_text, "comma-separated densities in percent")->capture_default_str();
    profile->add_option("--seed", profile_seed, "generator seed")->capture_default_str();
    profile->add_option("--oracle-cap", popts.oracle_cap, "largest n with an actual count")->capture_default_str();
    profile->add_option("--edge-predicate", popts.edge_predicate, "edge predicate")->capture_default_str();
    profile->add_option("--node-predicate", popts.node_predicate, "vertex predicate");
    profile->add_flag("--undirected", profile_undirected, "undirected graphs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (split->parsed()) return cmd_split(inputs, s, out);
        if (estimate->parsed()) return cmd_estimate(inputs, s, out);
        if (ground->parsed()) return cmd_ground(inputs, mode, ground_rule, s, out, err);
        if (gen->parsed()) {
            spec.directed = !undirected;
            spec.topology = parse_topology(topology);
            const std::string text = format_facts(generate_graph(spec));
            if (s.output.empty())
                out << text;
            else
                write_file(s.output, text);
            return kExitOk;
        }
        if (profile->parsed()) {
            popts.directed = !profile_undirected;
            popts.ground_cap = static_cast<std::uint64_t>(s.ground_cap);
            std::vector<std::size_t> sizes;
            for (const auto& x : split_list(sizes_text)) sizes.push_back(std::stoul(x));
            std::vector<double> densities;
            for (const auto& x : split_list(densities_text)) densities.push_back(std::stod(x));
            const auto rows = density_profile(parse_program(read_file(encoding_path)), profile_rule, sizes, densities,
                                              profile_seed, popts);
            if (s.output.empty()) {
                write_profile_csv(out, rows);
            } else {
                std::ofstream f(s.output);
                if (!f) throw std::runtime_error("cannot write " + s.output);
                write_profile_csv(f, rows);
            }
            return kExitOk;
        }
    } catch (const SyntaxError& e) {
        err << e.what() << '\n';
        return kExitParse;
    } catch (const SafetyError& e) {
        err << e.what() << '\n';
        return kExitParse;
    } catch (const ArityClashError& e) {
        err << e.what() << '\n';
        return kExitParse;
    } catch (const UnsupportedConstruct& e) {
        err << e.what() << '\n';
        return kExitUnsupported;
    } catch (const CapExceeded& e) {
        err << e.what() << '\n';
        return kExitCap;
    } catch (const ExactCapExceeded& e) {
        err << e.what() << '\n';
        return kExitCap;
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace gsplit
