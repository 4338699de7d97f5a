#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "gsplit/heuristics.hpp"

namespace gsplit {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

std::string sha256_hex(std::string_view bytes);

nlohmann::json to_json(const Measures& m);
nlohmann::json to_json(const Estimates& e);
nlohmann::json to_json(const Decision& d);

Measures measures_from_json(const nlohmann::json& j);
Estimates estimates_from_json(const nlohmann::json& j);
/// Rules are re-parsed from their text; the rule id is restored.
Decision decision_from_json(const nlohmann::json& j);

/// {"schema", "tool_version", "input_digest", "records", "summary"}
nlohmann::json build_report(const Partition& partition, const std::string& input_digest);

/// The final program: each rule preceded by `%!marker: bdg|sota` (and
/// `%!from: <id>` for rewritten rules), then the facts without markers.
std::string annotated_program(const Partition& partition);

}  // namespace gsplit
