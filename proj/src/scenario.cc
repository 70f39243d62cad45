/**
 * scenario.cc
 */

#include "pbd/scenario.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pbd/error.h"
#include "pbd/json_io.h"
#include "pbd/pddl.h"

namespace fs = std::filesystem;

namespace pbd {

namespace {

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("NotFound", "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class Runner {
 public:
  Runner(fs::path data_dir, TeachingSession::Clock clock)
      : data_dir_(std::move(data_dir)), clock_(std::move(clock)) {}

  void Run(const Json& scenario, ScenarioReport& report) {
    scenario_ = scenario.at("scenario").get<int>();
    report_ = &report;
    for (const Json& step : scenario.at("steps")) Step(step);
  }

 private:
  void Check(std::string description, bool passed, std::string detail = "") {
    report_->checks.push_back({scenario_, std::move(description), passed,
                               passed ? "" : std::move(detail)});
  }

  void CheckJson(const std::string& description, const Json& expected,
                 const Json& actual) {
    Check(description, JsonSubset(expected, actual),
          "expected " + expected.dump() + ", got " + actual.dump());
  }

  TeachingSession& Session() {
    if (!report_->session) throw Error("SchemaError", "no session created");
    return *report_->session;
  }

  void Step(const Json& step) {
    const std::string op = step.at("op").get<std::string>();
    if (op == "create") {
      report_->session = TeachingSession::Create(
          step.at("id").get<std::string>(), WorldConfigFromJson(step.at("world")),
          ParseInductionMode(step.value("mode", "minimal")), clock_);
    } else if (op == "reset_world") {
      Session().ResetWorld(WorldConfigFromJson(step.at("world")));
    } else if (op == "add_position") {
      Session().AddPosition(step.at("name").get<std::string>());
    } else if (op == "expect_state") {
      const State expected = StateFromJson(step.at("atoms"));
      Check("state is " + ToJson(expected).dump(),
            Session().state() == expected,
            "got " + ToJson(Session().state()).dump());
    } else if (op == "demonstrate") {
      TeachingSession& s = Session();
      const DemonstrationRequest request =
          DemonstrationRequestFromJson(step.at("request"));
      s.BeginDemonstration();
      s.RecordDemonstration(request);
    } else if (op == "expect_operator") {
      ExpectOperator(step);
    } else if (op == "set_plan") {
      Session().SetPlan(PlanFromJson(step.at("steps")));
    } else if (op == "set_goal") {
      Session().SetGoal(LiteralSetFromJson(step.at("goal")));
    } else if (op == "plan") {
      TeachingSession& s = Session();
      const SearchResult& result =
          s.RunPlanner(SearchConfigFromJson(step.value("config", Json())));
      Json actual = ToJson(result);
      if (result.found()) {
        actual["valid"] = ValidatePlan(s.MakeProblem(), result.plan).valid();
      }
      CheckJson(step.value("check", "planner result"), step.at("expect"),
                actual);
    } else if (op == "execute") {
      const ExecutionTrace& trace = Session().ExecutePlan();
      Json actual = {{"status", trace.succeeded() ? "success" : "failure"},
                     {"goal_satisfied", trace.goal_satisfied},
                     {"steps", trace.steps.size()}};
      if (!trace.steps.empty()) {
        actual["last_outcome"] = ToJson(trace.steps.back().outcome);
      }
      CheckJson(step.value("check", "execution outcome"), step.at("expect"),
                actual);
    } else if (op == "diagnose") {
      const FailureReport failure = Session().Diagnose();
      suggestions_ = failure.suggestions;
      operator_ = failure.operator_name;
      if (step.contains("expect_suggestions")) {
        Json actual = Json::array();
        for (const Refinement& r : failure.suggestions) {
          actual.push_back(ToJson(r));
        }
        Check("diagnosis suggestions", actual == step["expect_suggestions"],
              "expected " + step["expect_suggestions"].dump() + ", got " +
                  actual.dump());
      }
    } else if (op == "apply_suggestions") {
      for (const Refinement& r : suggestions_) {
        Session().RefineOperator(operator_, r);
      }
      suggestions_.clear();
    } else if (op == "refine") {
      Session().RefineOperator(step.at("operator").get<std::string>(),
                               RefinementFromJson(step.at("refinement")));
    } else {
      throw Error("SchemaError", "unknown scenario step '" + op + "'");
    }
  }

  void ExpectOperator(const Json& step) {
    const std::string name = step.at("name").get<std::string>();
    const LiftedOperator* op = Session().FindOperator(name);
    if (op == nullptr) {
      Check("operator " + name + " exists", false, "not induced");
      return;
    }
    const LiteralSet pre = LiteralSetFromJson(step.at("preconditions"));
    const LiteralSet eff = LiteralSetFromJson(step.at("effects"));
    Check(name + " preconditions " + ToJson(pre).dump(),
          op->preconditions == pre,
          "got " + ToJson(op->preconditions).dump());
    Check(name + " effects " + ToJson(eff).dump(), op->effects == eff,
          "got " + ToJson(op->effects).dump());
    if (step.contains("golden")) {
      const std::string file = step["golden"].get<std::string>();
      const std::string golden = ReadFile(data_dir_ / file);
      const std::string emitted = EmitOperator(*op);
      Check(name + " PDDL matches " + file,
            NormalizeWhitespace(emitted) == NormalizeWhitespace(golden),
            "emitted " + emitted);
    }
  }

  fs::path data_dir_;
  TeachingSession::Clock clock_;
  ScenarioReport* report_ = nullptr;
  int scenario_ = 0;
  std::vector<Refinement> suggestions_;
  std::string operator_;
};

}  // namespace

bool ScenarioReport::passed() const {
  if (!error.empty() || checks.empty()) return false;
  for (const ScenarioCheck& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

bool JsonSubset(const Json& expected, const Json& actual) {
  if (!expected.is_object()) return expected == actual;
  if (!actual.is_object()) return false;
  for (const auto& [key, value] : expected.items()) {
    auto it = actual.find(key);
    if (it == actual.end() || !JsonSubset(value, *it)) return false;
  }
  return true;
}

std::vector<Json> LoadScenarios(const fs::path& data_dir) {
  std::vector<Json> scenarios;
  const fs::path dir = data_dir / "scenarios";
  if (!fs::is_directory(dir)) {
    throw Error("NotFound", "no scenario directory " + dir.string());
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    Json j = ParseJson(ReadFile(entry.path()));
    if (!j.is_object() || !j.contains("scenario") ||
        !j["scenario"].is_number_integer() || !j.contains("steps")) {
      throw Error("SchemaError", entry.path().string() + " is not a scenario");
    }
    scenarios.push_back(std::move(j));
  }
  std::sort(scenarios.begin(), scenarios.end(),
            [](const Json& a, const Json& b) {
              return a["scenario"].get<int>() < b["scenario"].get<int>();
            });
  return scenarios;
}

ScenarioReport RunScenarios(const fs::path& data_dir, int up_to,
                            TeachingSession::Clock clock) {
  const std::vector<Json> scenarios = LoadScenarios(data_dir);
  for (int n = 1; n <= up_to; ++n) {
    const bool present =
        std::any_of(scenarios.begin(), scenarios.end(),
                    [&](const Json& s) { return s["scenario"] == n; });
    if (!present) throw Error("NotFound", "no scenario " + std::to_string(n));
  }
  ScenarioReport report;
  Runner runner(data_dir, std::move(clock));
  for (const Json& scenario : scenarios) {
    if (scenario["scenario"].get<int>() > up_to) break;
    try {
      runner.Run(scenario, report);
    } catch (const std::exception& e) {
      report.error = "scenario " + scenario["scenario"].dump() + ": " + e.what();
      break;
    }
  }
  return report;
}

}  // namespace pbd
