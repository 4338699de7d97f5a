#include "gsplit/report.hpp"

#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "gsplit/errors.hpp"

namespace gsplit {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> number_or_null(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

Branch branch_from(const std::string& s) {
    for (Branch b : {Branch::stratified, Branch::lpopt_recursed, Branch::bdg_constraint, Branch::bdg_tight,
                     Branch::bdg_hcf, Branch::default_sota, Branch::forced_sota})
        if (to_string(b) == s) return b;
    throw Error("unknown branch " + s);
}

Rule rule_from_text(const std::string& text, int id) {
    auto p = parse_program(text);
    if (p.rules.size() != 1) throw Error("expected one rule in: " + text);
    Rule r = p.rules.front();
    r.id = id;
    return r;
}

}  // namespace

json to_json(const Measures& m) {
    return {{"num_vars", m.num_vars},         {"a", m.max_arity},
            {"a_h", m.head_arity},            {"a_b", m.body_arity},
            {"phi", m.phi},                   {"is_constraint", m.is_constraint},
            {"is_tight", m.is_tight},         {"is_stratified", m.is_stratified},
            {"is_hcf", m.is_hcf},             {"estimable", m.estimable}};
}

json to_json(const Estimates& e) {
    return {{"sota", e.sota}, {"bdg", optional_number(e.bdg)}, {"lpopt_sota", optional_number(e.lpopt_sota)}};
}

json to_json(const Decision& d) {
    json j = {{"rule_id", d.rule_id},
              {"origin_rule_id", d.origin_rule_id},
              {"source_id", d.rule.id},
              {"text", to_string(d.rule)},
              {"marker", std::string(to_string(d.marker))},
              {"branch", std::string(to_string(d.branch))},
              {"measures", to_json(d.measures)},
              {"estimates", to_json(d.estimates)},
              {"forced_reason", d.forced_reason},
              {"rewrite", nullptr}};
    if (d.rewritten_from) {
        const auto& o = *d.rewritten_from;
        j["rewrite"] = {{"from", o.rule_id},
                        {"text", to_string(o.rule)},
                        {"branch", std::string(to_string(Branch::lpopt_recursed))},
                        {"measures", to_json(o.measures)},
                        {"estimates", to_json(o.estimates)}};
    }
    return j;
}

Measures measures_from_json(const json& j) {
    Measures m;
    m.num_vars = j.at("num_vars");
    m.max_arity = j.at("a");
    m.head_arity = j.at("a_h");
    m.body_arity = j.at("a_b");
    m.phi = j.at("phi");
    m.is_constraint = j.at("is_constraint");
    m.is_tight = j.at("is_tight");
    m.is_stratified = j.at("is_stratified");
    m.is_hcf = j.at("is_hcf");
    m.estimable = j.at("estimable");
    return m;
}

Estimates estimates_from_json(const json& j) {
    return {j.at("sota").get<double>(), number_or_null(j.at("bdg")), number_or_null(j.at("lpopt_sota"))};
}

Decision decision_from_json(const json& j) {
    Decision d;
    d.rule_id = j.at("rule_id");
    d.origin_rule_id = j.at("origin_rule_id");
    d.rule = rule_from_text(j.at("text"), j.at("source_id"));
    d.marker = j.at("marker") == "bdg" ? Marker::bdg : Marker::sota;
    d.branch = branch_from(j.at("branch"));
    d.measures = measures_from_json(j.at("measures"));
    d.estimates = estimates_from_json(j.at("estimates"));
    d.forced_reason = j.at("forced_reason");
    if (const auto& rw = j.at("rewrite"); !rw.is_null()) {
        RewriteOrigin o;
        o.rule_id = rw.at("from");
        o.rule = rule_from_text(rw.at("text"), o.rule_id);
        o.measures = measures_from_json(rw.at("measures"));
        o.estimates = estimates_from_json(rw.at("estimates"));
        d.rewritten_from = o;
    }
    return d;
}

json build_report(const Partition& partition, const std::string& input_digest) {
    json records = json::array();
    std::map<std::string, int> markers{{"bdg", 0}, {"sota", 0}};
    std::map<std::string, int> branches;
    std::set<int> rewritten;
    double pi_h_total = 0, pi_g_total = 0;
    for (const auto& d : partition.report) {
        records.push_back(to_json(d));
        ++markers[std::string(to_string(d.marker))];
        ++branches[std::string(to_string(d.branch))];
        if (d.rewritten_from) rewritten.insert(d.rewritten_from->rule_id);
        if (d.marker == Marker::bdg)
            pi_h_total += d.estimates.bdg.value_or(0.0);
        else
            pi_g_total += d.estimates.sota;
    }
    if (!rewritten.empty()) branches[std::string(to_string(Branch::lpopt_recursed))] = static_cast<int>(rewritten.size());
    json summary = {{"rules", partition.report.size()},
                    {"facts", partition.facts.size()},
                    {"markers", markers},
                    {"branches", branches},
                    {"pi_h_bdg_estimate", pi_h_total},
                    {"pi_g_sota_estimate", pi_g_total}};
    return {{"schema", kReportSchema},
            {"tool_version", std::string(kToolVersion)},
            {"input_digest", input_digest},
            {"records", records},
            {"summary", summary}};
}

std::string annotated_program(const Partition& partition) {
    std::ostringstream out;
    for (const auto& d : partition.report) {
        out << "%!marker: " << to_string(d.marker) << '\n';
        if (d.rewritten_from) out << "%!from: " << d.rewritten_from->rule_id << '\n';
        out << to_string(d.rule) << '\n';
    }
    for (const auto& f : partition.facts) out << to_string(f) << ".\n";
    return out.str();
}

}  // namespace gsplit
