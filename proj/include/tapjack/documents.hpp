#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "tapjack/analysis.hpp"
#include "tapjack/scenario.hpp"

namespace tapjack {

// Parse or schema failure in a scenario or report document. The message
// names the offending key path, e.g. "screens[1].targets[0].rect".
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown keys are rejected and every module invariant is re-checked, so a
// successfully loaded script is structurally valid.
AttackScript scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const AttackScript& script);

AttackScript load_scenario(const std::filesystem::path& path);
AttackScript parse_scenario(const std::string& text);

nlohmann::json ratings_to_json(const Ratings& ratings);
nlohmann::json report_to_json(const FeasibilityReport& report);
FeasibilityReport report_from_json(const nlohmann::json& doc);

}  // namespace tapjack
