#include <chrono>
#include <random>

#include "doctest.h"
#include "instances.h"
#include "oracle.h"
#include "pbd/pddl.h"
#include "pbd/planner.h"
#include "test_helpers.h"

using namespace pbd;
using testing::Act;
using testing::Atoms;
using testing::ErrorCode;
using testing::Lits;

namespace {

DomainDef Tabletop() {
  return ParseDomain(testing::ReadData("pddl/tabletop-domain.pddl"));
}

PlanningProblem SwapProblem() {
  return MakePlanningProblem(
      Tabletop(), ParseProblem(testing::ReadData("pddl/swap-problem.pddl")));
}

std::vector<Symbol> Objects(std::vector<std::string> objects,
                            std::vector<std::string> positions) {
  std::vector<Symbol> out;
  for (auto& o : objects) out.push_back({o, "object"});
  for (auto& p : positions) out.push_back({p, "position"});
  return out;
}

Plan PlanOf(std::initializer_list<const char*> steps) {
  Plan plan;
  for (const char* s : steps) plan.steps.push_back(Act(s));
  return plan;
}

std::vector<std::pair<std::string, std::vector<std::string>>> TextSteps(
    const Plan& plan) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (const GroundAction& a : plan.steps) out.push_back({a.operator_name, a.args});
  return out;
}

}  // namespace

TEST_CASE("grounding") {
  const DomainDef d = Tabletop();
  SUBCASE("one object, two positions") {
    const auto ground = GroundOperators(d, Objects({"redObj"}, {"A", "D"}));
    REQUIRE(ground.size() == 2);
    CHECK(ground[0].action == Act("moveObject(redObj,A,D)"));
    CHECK(ground[1].action == Act("moveObject(redObj,D,A)"));
    CHECK(ground[1].preconditions ==
          Lits({"at(redObj,D)", "not empty(D)", "empty(A)"}));
  }
  SUBCASE("two objects, three positions") {
    const auto ground =
        GroundOperators(d, Objects({"redObj", "blueObj"}, {"A", "D", "M"}));
    CHECK(ground.size() == 2 * 3 * 2);
    for (std::size_t i = 1; i < ground.size(); ++i) {
      CHECK(ToString(ground[i - 1].action) < ToString(ground[i].action));
    }
  }
  SUBCASE("no operators") {
    DomainDef empty = d;
    empty.operators.clear();
    CHECK(GroundOperators(empty, Objects({"redObj"}, {"A"})).empty());
  }
  SUBCASE("same-position bindings survive without contradictions") {
    DomainDef naive = d;
    naive.operators = {testing::NaiveMove()};
    // No empty() literals, so nothing rules out p1 == p2.
    CHECK(GroundOperators(naive, Objects({"redObj"}, {"A", "D"})).size() == 4);
  }
}

TEST_CASE("scenario 4 swap") {
  const PlanningProblem p = SwapProblem();
  const Plan expected = PlanOf({"moveObject(blueObj,A,M)", "moveObject(redObj,D,A)",
                                "moveObject(blueObj,M,D)"});
  const SearchResult bfs = Search(p, {SearchStrategy::kBfsOptimal, 100000});
  REQUIRE(bfs.found());
  CHECK(bfs.plan == expected);
  CHECK(bfs.plan.cost() == 3);
  const SearchResult astar = Search(p, {});
  REQUIRE(astar.found());
  CHECK(ValidatePlan(p, astar.plan).valid());
  // Deterministic.
  CHECK(Search(p, {}).plan == astar.plan);
  CHECK(FindPlan(p, {SearchStrategy::kBfsOptimal, 100000}) == expected);
}

TEST_CASE("goal already satisfied") {
  PlanningProblem p = SwapProblem();
  p.goal = Lits({"at(blueObj,A)", "not empty(D)"});
  for (SearchStrategy s : {SearchStrategy::kBfsOptimal, SearchStrategy::kAStarGoalCount}) {
    const SearchResult r = Search(p, {s, 100000});
    REQUIRE(r.found());
    CHECK(r.plan.steps.empty());
    CHECK(r.plan.cost() == 0);
  }
  p.goal.clear();
  CHECK(Search(p, {}).plan.steps.empty());
}

TEST_CASE("no plan without position M") {
  const PlanningProblem p = MakePlanningProblem(
      Tabletop(), ParseProblem(testing::ReadData("pddl/swap-problem-no-m.pddl")));
  const SearchResult r = Search(p, {SearchStrategy::kBfsOptimal, 100000});
  CHECK(r.status == SearchResult::Status::kNoPlan);
  CHECK(ToString(r.status) == "no_plan");
  CHECK(r.unsatisfied_goals ==
        std::vector<Literal>{ParseLiteral("at(blueObj,D)"),
                             ParseLiteral("at(redObj,A)")});
  // Some ground move adds each goal atom; the blockage is only reachability.
  CHECK(r.unachievable_goals.empty());
  CHECK(ErrorCode([&] { FindPlan(p, {}); }) == "NoPlanFound");
}

TEST_CASE("unsatisfiable goal reports what cannot be achieved") {
  PlanningProblem p = SwapProblem();
  p.goal = Lits({"at(blueObj,M)", "at(redObj,M)"});
  const SearchResult r = Search(p, {});
  CHECK(r.status == SearchResult::Status::kNoPlan);
  CHECK(r.unsatisfied_goals.size() == 2);
  CHECK(r.unachievable_goals.empty());  // each is reachable on its own
  p.goal = Lits({"color(blueObj,red)"});
  const SearchResult s = Search(p, {});
  CHECK(s.unachievable_goals == std::vector<Literal>{ParseLiteral("color(blueObj,red)")});
}

TEST_CASE("expansion budget") {
  const PlanningProblem p = SwapProblem();
  const SearchResult r = Search(p, {SearchStrategy::kBfsOptimal, 1});
  CHECK(r.status == SearchResult::Status::kBudgetExceeded);
  CHECK(ToString(r.status) == "budget_exceeded");
  CHECK(ErrorCode([&] { FindPlan(p, {SearchStrategy::kBfsOptimal, 1}); }) ==
        "BudgetExceeded");
}

TEST_CASE("validate_plan") {
  const PlanningProblem p = SwapProblem();
  const std::map<std::string, oracle::TextOperator> ops = {
      {"moveObject", oracle::RefinedMoveText()}};
  std::set<std::string> init;
  for (const Literal& a : p.init) init.insert(ToString(a));

  SUBCASE("the swap plan") {
    const Plan plan = PlanOf({"moveObject(blueObj,A,M)", "moveObject(redObj,D,A)",
                              "moveObject(blueObj,M,D)"});
    const ValidationReport r = ValidatePlan(p, plan);
    CHECK(r.valid());
    const oracle::ReplayResult expected = oracle::Replay(ops, init, TextSteps(plan));
    CHECK(expected.executable);
    std::set<std::string> final_state;
    for (const Literal& a : r.final_state) final_state.insert(ToString(a));
    CHECK(final_state == expected.final_state);
  }
  SUBCASE("steps 2 and 3 swapped") {
    const Plan plan = PlanOf({"moveObject(blueObj,A,M)", "moveObject(blueObj,M,D)",
                              "moveObject(redObj,D,A)"});
    const ValidationReport r = ValidatePlan(p, plan);
    const oracle::ReplayResult expected = oracle::Replay(ops, init, TextSteps(plan));
    CHECK_FALSE(r.valid());
    CHECK_FALSE(r.executable);
    REQUIRE(r.failing_step.has_value());
    CHECK(static_cast<int>(*r.failing_step) == expected.failing_step);
    CHECK(*r.failing_step == 1);
    std::vector<std::string> unsatisfied;
    for (const Literal& l : r.unsatisfied) unsatisfied.push_back(ToString(l));
    CHECK(unsatisfied == expected.unsatisfied);
    CHECK(unsatisfied == std::vector<std::string>{"empty(D)"});
  }
  SUBCASE("empty plan") {
    PlanningProblem satisfied = p;
    satisfied.goal = Lits({"at(blueObj,A)"});
    CHECK(ValidatePlan(satisfied, Plan{}).valid());
    const ValidationReport r = ValidatePlan(p, Plan{});
    CHECK(r.executable);
    CHECK_FALSE(r.goal_satisfied);
  }
  SUBCASE("unknown operator") {
    const ValidationReport r = ValidatePlan(p, PlanOf({"fly(blueObj,A,M)"}));
    CHECK_FALSE(r.executable);
    CHECK(r.failing_step == std::optional<std::size_t>(0));
    CHECK_FALSE(r.error.empty());
  }
}

TEST_CASE("goal-count heuristic") {
  const PlanningProblem p = SwapProblem();
  CHECK(GoalCountHeuristic(p.init, p.goal) == 2);
  CHECK(GoalCountHeuristic(p.init, {}) == 0);
  CHECK(GoalCountHeuristic(Atoms({"at(blueObj,D)", "at(redObj,A)"}), p.goal) == 0);
  CHECK(GoalCountHeuristic(Atoms({"empty(A)"}), Lits({"not empty(A)"})) == 1);
}

TEST_CASE("planner agrees with the placement oracle") {
  const DomainDef domain = Tabletop();
  std::mt19937 rng(5);
  int solvable = 0;
  for (int i = 0; i < 60; ++i) {
    const oracle::Instance inst = oracle::RandomInstance(rng, 4, 5);
    const PlanningProblem p = testing::InstanceProblem(domain, inst);
    const std::optional<int> optimal = oracle::ShortestPlanLength(inst);
    const SearchResult bfs = Search(p, {SearchStrategy::kBfsOptimal, 100000});
    const SearchResult astar = Search(p, {});
    CAPTURE(i);
    REQUIRE(bfs.status != SearchResult::Status::kBudgetExceeded);
    CHECK(bfs.found() == optimal.has_value());
    CHECK(astar.found() == optimal.has_value());
    if (optimal) {
      ++solvable;
      CHECK(static_cast<int>(bfs.plan.cost()) == *optimal);
      CHECK(ValidatePlan(p, bfs.plan).valid());
      CHECK(ValidatePlan(p, astar.plan).valid());
      CHECK(astar.plan.cost() >= bfs.plan.cost());
    }
  }
  CHECK(solvable > 10);
  CHECK(solvable < 60);
}
