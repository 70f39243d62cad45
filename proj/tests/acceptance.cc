// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#define DOCTEST_CONFIG_DISABLE  // the shared helpers reference doctest macros

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "agreement.h"
#include "instances.h"
#include "oracle.h"
#include "pbd/induction.h"
#include "pbd/json_io.h"
#include "pbd/pddl.h"
#include "pbd/planner.h"
#include "pbd/scenario.h"
#include "pbd/store.h"
#include "sessions.h"
#include "test_helpers.h"

using namespace pbd;

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Returns an empty string on success, else what went wrong.
using Criterion = std::function<std::string()>;

std::string ScenarioSuite() {
  const auto start = Clock::now();
  std::string problems;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) problems += (problems.empty() ? "" : "; ") + what;
  };

  const ScenarioReport one = RunScenarios(testing::DataDir(), 1, testing::FixedClock());
  expect(one.passed(), "scenario 1 checks");
  expect(one.session && one.session->FindOperator("moveObject") &&
             *one.session->FindOperator("moveObject") == testing::NaiveMove(),
         "naive operator");

  const ScenarioReport two = RunScenarios(testing::DataDir(), 2, testing::FixedClock());
  expect(two.passed(), "scenario 2 checks");
  const ExecutionTrace* t2 =
      two.session && two.session->last_trace() ? &*two.session->last_trace() : nullptr;
  expect(t2 && !t2->steps.empty() &&
             t2->steps.back().outcome.kind == StepOutcome::Kind::kModelFailure &&
             t2->steps.back().outcome.unsatisfied ==
                 std::vector<Literal>{ParseLiteral("color(blueObj,red)")},
         "model failure on color");
  expect(two.session && two.session->FindOperator("moveObject")->preconditions ==
                            testing::Lits({"at(?obj,?pos1)"}),
         "generalised preconditions");

  const ScenarioReport three = RunScenarios(testing::DataDir(), 3, testing::FixedClock());
  expect(three.passed(), "scenario 3 checks");
  const ExecutionTrace* t3 = three.session && three.session->last_trace()
                                 ? &*three.session->last_trace()
                                 : nullptr;
  expect(t3 && !t3->steps.empty() &&
             t3->steps.back().outcome.constraint == "occupied(A)",
         "world failure occupied(A)");
  expect(three.session &&
             *three.session->FindOperator("moveObject") == testing::RefinedMove(),
         "refined operator");

  const ScenarioReport four = RunScenarios(testing::DataDir(), 4, testing::FixedClock());
  expect(four.passed(), "scenario 4 checks");
  if (four.session && four.session->last_plan()) {
    const Plan& plan = *four.session->last_plan();
    bool via_m = false;
    for (const GroundAction& a : plan.steps) {
      for (const std::string& arg : a.args) via_m |= arg == "M";
    }
    PlanningProblem p = four.session->MakeProblem();
    p.init = MakeState(four.session->world());  // validate from the initial world
    expect(plan.cost() == 3 && via_m, "3-step swap via M");
    expect(ValidatePlan(p, plan).valid(), "swap plan validates");
  } else {
    expect(false, "scenario 4 plan");
  }
  for (const ScenarioCheck& c : four.checks) {
    if (!c.passed) expect(false, c.description + ": " + c.detail);
  }

  const double seconds = SecondsSince(start);
  expect(seconds < 1.0, "took " + std::to_string(seconds) + " s");
  return problems;
}

std::string InductionFidelity() {
  const Demonstration demo =
      DemonstrationFromJson(ParseJson(testing::ReadData("demos/generic-move-demo.json")));
  const LiftedOperator op = Induce(demo, InductionMode::kFullDelta, {"color"},
             InferSymbolTypes(testing::TabletopPredicates(), demo));
  if (op == testing::RefinedMove()) return "";
  return "induced " + EmitOperator(op);
}

std::string PddlRoundTrip() {
  oracle::PddlGenerator gen(8128);
  for (int i = 0; i < 200; ++i) {
    const DomainDef d = gen.Domain();
    if (ParseDomain(EmitDomain(d)) != d) return "domain " + std::to_string(i);
    const ProblemDef p = gen.Problem(d);
    if (ParseProblem(EmitProblem(p)) != p) return "problem " + std::to_string(i);
  }
  if (NormalizeWhitespace(EmitOperator(testing::RefinedMove())) !=
      NormalizeWhitespace(testing::ReadData("pddl/moveobject-refined.pddl"))) {
    return "refined operator differs from the golden file";
  }
  return "";
}

std::string PlannerVsOracle() {
  const auto start = Clock::now();
  const DomainDef domain =
      ParseDomain(testing::ReadData("pddl/tabletop-domain.pddl"));
  std::mt19937 rng(31337);
  int solvable = 0;
  for (int i = 0; i < 100; ++i) {
    const oracle::Instance inst = oracle::RandomInstance(rng, 5, 6);
    const PlanningProblem p = testing::InstanceProblem(domain, inst);
    const std::optional<int> optimal = oracle::ShortestPlanLength(inst);
    const SearchResult bfs = Search(p, {SearchStrategy::kBfsOptimal, 1000000});
    const SearchResult astar = Search(p, {SearchStrategy::kAStarGoalCount, 1000000});
    const std::string at = "instance " + std::to_string(i) + ": ";
    if (bfs.found() != optimal.has_value()) return at + "bfs solvability";
    if (astar.found() != optimal.has_value()) return at + "astar solvability";
    if (!optimal) continue;
    ++solvable;
    if (static_cast<int>(bfs.plan.cost()) != *optimal) return at + "bfs length";
    if (!ValidatePlan(p, bfs.plan).valid()) return at + "bfs plan invalid";
    if (!ValidatePlan(p, astar.plan).valid()) return at + "astar plan invalid";
  }
  const double seconds = SecondsSince(start);
  if (seconds >= 10.0) return "took " + std::to_string(seconds) + " s";
  if (solvable == 0 || solvable == 100) return "degenerate instance mix";
  return "";
}

std::string ModelWorldAgreement() {
  const testing::AgreementResult r =
      testing::CheckModelWorldAgreement({"redObj", "blueObj"}, {"A", "D", "M"});
  if (r.cases != 6 * 18) return std::to_string(r.cases) + " cases checked";
  return r.mismatches.empty() ? "" : r.mismatches.front();
}

std::string Durability() {
  const auto dir = testing::ScratchDir("acceptance");
  SessionStore store(dir);
  const TeachingSession s = testing::SwappedSession("durable");
  store.Save(s);
  const TeachingSession loaded = store.Load("durable", nullptr, testing::FixedClock());
  std::string problem;
  if (loaded.ExportPddl() != s.ExportPddl()) problem = "export.pddl differs after load";

  if (problem.empty()) {
    const std::string full = ReadFile(store.LogPath("durable"));
    const std::size_t last = full.rfind('\n', full.size() - 2) + 1;
    std::ofstream(store.LogPath("durable"), std::ios::binary | std::ios::trunc)
        << full.substr(0, last + 7);
    std::vector<std::string> warnings;
    const std::vector<Event> events = store.LoadEvents("durable", &warnings);
    if (events.size() != s.events().size() - 1 || warnings.size() != 1) {
      problem = "torn log kept " + std::to_string(events.size()) + " of " +
                std::to_string(s.events().size()) + " events";
    } else {
      for (std::size_t i = 0; i < events.size(); ++i) {
        if (ToJson(events[i]) != ToJson(s.events()[i])) problem = "event changed";
      }
    }
  }
  std::filesystem::remove_all(dir);
  return problem;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"scenario suite replay", ScenarioSuite},
      {"induction fidelity", InductionFidelity},
      {"pddl round-trip", PddlRoundTrip},
      {"planner vs oracle", PlannerVsOracle},
      {"model/world agreement", ModelWorldAgreement},
      {"session durability", Durability},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    std::string problem;
    try {
      problem = run();
    } catch (const std::exception& e) {
      problem = std::string("threw: ") + e.what();
    }
    if (problem.empty()) {
      std::cout << "PASS " << name << "\n";
    } else {
      std::cout << "FAIL " << name << ": " << problem << "\n";
      ++failed;
    }
  }
  return failed;
}
