// pbd: batch front-end for planning, validation, induction, the scenario
// suite and the HTTP service.
//
// Exit codes: 0 success, 1 invalid plan or failed scenario check, 2 no plan,
// 64 usage error, 65 malformed input, 66 unreadable input file.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pbd/error.h"
#include "pbd/induction.h"
#include "pbd/json_io.h"
#include "pbd/pddl.h"
#include "pbd/planner.h"
#include "pbd/scenario.h"
#include "pbd/service.h"

#ifndef PBD_DATA_DIR
#define PBD_DATA_DIR "data"
#endif

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitDataError = 65;
constexpr int kExitNoInput = 66;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

pbd::PlanningProblem LoadProblem(const std::string& domain_path,
                                 const std::string& problem_path) {
  const pbd::DomainDef domain = pbd::ParseDomain(ReadFile(domain_path));
  const pbd::ProblemDef problem = pbd::ParseProblem(ReadFile(problem_path));
  return pbd::MakePlanningProblem(domain, problem);
}

int RunPlan(const std::string& domain, const std::string& problem,
            bool optimal, std::size_t max_expansions) {
  pbd::SearchConfig config;
  config.strategy = optimal ? pbd::SearchStrategy::kBfsOptimal
                            : pbd::SearchStrategy::kAStarGoalCount;
  config.max_expansions = max_expansions;
  const pbd::SearchResult result =
      pbd::Search(LoadProblem(domain, problem), config);
  if (!result.found()) {
    std::cerr << pbd::ToString(result.status) << ": unsatisfied goals "
              << pbd::ToJson(result.unsatisfied_goals).dump() << "\n";
    return 2;
  }
  for (const pbd::GroundAction& step : result.plan.steps) {
    std::cout << pbd::ToString(step) << "\n";
  }
  return 0;
}

int RunValidate(const std::string& domain, const std::string& problem,
                const std::string& plan_path) {
  const pbd::PlanningProblem planning = LoadProblem(domain, problem);
  const pbd::Plan plan = pbd::PlanFromJson(pbd::ParseJson(ReadFile(plan_path)));
  const pbd::ValidationReport report = pbd::ValidatePlan(planning, plan);
  if (report.valid()) {
    std::cout << "valid: " << plan.steps.size() << " steps, goal satisfied\n";
    return 0;
  }
  if (report.failing_step) {
    const std::size_t i = *report.failing_step;
    std::cout << "invalid: step " << i + 1 << " "
              << pbd::ToString(plan.steps[i]);
    if (!report.unsatisfied.empty()) {
      std::cout << " unsatisfied " << pbd::ToJson(report.unsatisfied).dump();
    } else if (!report.error.empty()) {
      std::cout << " " << report.error;
    }
    std::cout << "\n";
  } else {
    std::cout << "invalid: goal not satisfied after " << plan.steps.size()
              << " steps\n";
  }
  return 1;
}

int RunInduce(const std::string& demo_path, const std::string& mode,
              const std::string& domain_path,
              const std::vector<std::string>& statics) {
  const pbd::Demonstration demo =
      pbd::DemonstrationFromJson(pbd::ParseJson(ReadFile(demo_path)));
  std::vector<pbd::PredicateDecl> predicates;
  std::set<std::string> static_predicates(statics.begin(), statics.end());
  if (!domain_path.empty()) {
    const pbd::DomainDef domain = pbd::ParseDomain(ReadFile(domain_path));
    predicates = domain.predicates;
    if (statics.empty()) static_predicates = domain.static_predicates;
  } else {
    predicates = {
        {"at", {{"?obj", "object"}, {"?pos", "position"}}},
        {"empty", {{"?pos", "position"}}},
        {"color", {{"?obj", "object"}, {"?col", "color"}}},
    };
    if (statics.empty()) static_predicates = {"color"};
  }
  const pbd::LiftedOperator op =
      pbd::Induce(demo, pbd::ParseInductionMode(mode), static_predicates,
                  pbd::InferSymbolTypes(predicates, demo));
  std::cout << pbd::EmitOperator(op);
  return 0;
}

int RunScenario(int up_to, const std::string& data_dir,
                const std::string& events_path) {
  const pbd::ScenarioReport report = pbd::RunScenarios(data_dir, up_to);
  for (const pbd::ScenarioCheck& c : report.checks) {
    std::cout << (c.passed ? "PASS" : "FAIL") << " scenario " << c.scenario
              << ": " << c.description;
    if (!c.passed) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
  }
  if (!report.error.empty()) std::cout << "ERROR " << report.error << "\n";
  if (!events_path.empty() && report.session) {
    std::ofstream out(events_path, std::ios::binary | std::ios::trunc);
    for (const pbd::Event& e : report.session->events()) {
      out << pbd::ToJson(e).dump() << "\n";
    }
  }
  std::cout << (report.passed() ? "all scenario checks passed"
                                : "scenario checks failed")
            << "\n";
  return report.passed() ? 0 : 1;
}

int RunServe(const std::string& host, int port, std::string store) {
  if (store.empty()) {
    if (const char* env = std::getenv("PBD_STORE")) store = env;
  }
  std::optional<std::filesystem::path> root;
  if (!store.empty()) root = store;
  pbd::Service service(root);
  pbd::HttpServer server(service);
  if (!server.Bind(host, port)) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  std::cerr << "listening on http://" << host << ":" << port
            << (root ? " store " + root->string() : " (in-memory)") << "\n";
  return server.ListenAfterBind() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Programming-by-demonstration planning workbench"};
  app.require_subcommand(1);

  std::string domain, problem, plan_path, demo_path, mode = "minimal";
  std::string data_dir = PBD_DATA_DIR, events_path, host = "127.0.0.1", store;
  std::vector<std::string> statics;
  bool optimal = false;
  std::size_t max_expansions = pbd::SearchConfig{}.max_expansions;
  int run = 4, port = 8080;

  CLI::App* plan = app.add_subcommand("plan", "Find a plan for a PDDL problem");
  plan->add_option("-d,--domain", domain, "Domain file")->required();
  plan->add_option("-p,--problem", problem, "Problem file")->required();
  plan->add_flag("--optimal", optimal, "Breadth-first, shortest plan");
  plan->add_option("--max-expansions", max_expansions, "Search budget");

  CLI::App* validate =
      app.add_subcommand("validate", "Check a plan against a PDDL problem");
  validate->add_option("-d,--domain", domain, "Domain file")->required();
  validate->add_option("-p,--problem", problem, "Problem file")->required();
  validate->add_option("--plan", plan_path, "plan.json")->required();

  CLI::App* induce =
      app.add_subcommand("induce", "Induce an operator from a demonstration");
  induce->add_option("--demo", demo_path, "demo.json")->required();
  induce->add_option("--mode", mode, "minimal or full-delta")
      ->check(CLI::IsMember({"minimal", "full-delta", "full_delta"}));
  induce->add_option("-d,--domain", domain, "Domain supplying predicates");
  induce->add_option("--static", statics, "Static predicate names");

  CLI::App* scenario =
      app.add_subcommand("scenario", "Replay the scenario suite headlessly");
  scenario->add_option("--run", run, "Run scenarios 1..N")
      ->check(CLI::Range(1, 99));
  scenario->add_option("--data", data_dir, "Data directory");
  scenario->add_option("--events", events_path, "Write the event log here");

  CLI::App* serve = app.add_subcommand("serve", "Start the HTTP service");
  serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--store", store, "Session store directory (or PBD_STORE)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*plan) return RunPlan(domain, problem, optimal, max_expansions);
    if (*validate) return RunValidate(domain, problem, plan_path);
    if (*induce) return RunInduce(demo_path, mode, domain, statics);
    if (*scenario) return RunScenario(run, data_dir, events_path);
    if (*serve) return RunServe(host, port, store);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const pbd::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}
