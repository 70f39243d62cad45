/**
 * scenario.h
 *
 * Headless replay of the teaching scenarios shipped as JSON fixtures in
 * data/scenarios. Scenarios run cumulatively on one session: scenario N
 * starts from the operators left by scenarios 1..N-1.
 */

#ifndef PBD_SCENARIO_H_
#define PBD_SCENARIO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbd/session.h"

namespace pbd {

struct ScenarioCheck {
  int scenario = 0;
  std::string description;
  bool passed = false;
  std::string detail;  // mismatch explanation when failed
};

struct ScenarioReport {
  std::vector<ScenarioCheck> checks;
  std::optional<TeachingSession> session;
  std::string error;  // a step that threw; later steps were skipped

  bool passed() const;
};

/// Scenario fixtures from `data_dir`/scenarios, ordered by their number.
std::vector<nlohmann::json> LoadScenarios(const std::filesystem::path& data_dir);

/// Runs scenarios 1..`up_to`. Throws Error("NotFound") if one is missing.
ScenarioReport RunScenarios(const std::filesystem::path& data_dir, int up_to,
                            TeachingSession::Clock clock = {});

/// True when every key of `expected` appears in `actual` with an equal
/// value; nested objects are compared the same way, arrays exactly.
bool JsonSubset(const nlohmann::json& expected, const nlohmann::json& actual);

}  // namespace pbd

#endif  // PBD_SCENARIO_H_
