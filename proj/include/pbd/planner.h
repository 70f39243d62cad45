/**
 * planner.h
 *
 * Grounding, forward state-space search and plan validation.
 */

#ifndef PBD_PLANNER_H_
#define PBD_PLANNER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbd/domain.h"
#include "pbd/state.h"

namespace pbd {

struct PlanningProblem {
  DomainDef domain;
  std::vector<Symbol> objects;
  State init;
  LiteralSet goal;
};

PlanningProblem MakePlanningProblem(const DomainDef& domain,
                                    const ProblemDef& problem);

enum class SearchStrategy { kAStarGoalCount, kBfsOptimal };

std::string ToString(SearchStrategy strategy);

struct SearchConfig {
  SearchStrategy strategy = SearchStrategy::kAStarGoalCount;
  std::size_t max_expansions = 100000;
};

struct GroundOperator {
  GroundAction action;
  LiteralSet preconditions;
  LiteralSet effects;
};

/// Every type-respecting binding of every operator, minus bindings whose
/// preconditions contain both `p` and `not p`. Sorted by action text.
std::vector<GroundOperator> GroundOperators(const DomainDef& domain,
                                            const std::vector<Symbol>& objects);

struct Plan {
  std::vector<GroundAction> steps;

  std::size_t cost() const { return steps.size(); }
  bool operator==(const Plan&) const = default;
};

/// Number of goal literals that do not hold in `state`.
std::size_t GoalCountHeuristic(const State& state, const LiteralSet& goal);

struct SearchResult {
  enum class Status { kFound, kNoPlan, kBudgetExceeded };

  Status status = Status::kNoPlan;
  Plan plan;
  std::size_t expansions = 0;
  /// On failure: goal literals false in the initial state, and the subset no
  /// ground action can ever make true.
  std::vector<Literal> unsatisfied_goals;
  std::vector<Literal> unachievable_goals;

  bool found() const { return status == Status::kFound; }
};

std::string ToString(SearchResult::Status status);

/// Plans from `problem.init` to `problem.goal`. bfs_optimal returns a
/// shortest plan. Ties are broken by action text, so results are
/// deterministic.
SearchResult Search(const PlanningProblem& problem, const SearchConfig& config);

/// Search() that throws Error("NoPlanFound") or Error("BudgetExceeded").
Plan FindPlan(const PlanningProblem& problem, const SearchConfig& config);

struct ValidationReport {
  bool executable = true;
  std::optional<std::size_t> failing_step;  // 0-based
  std::vector<Literal> unsatisfied;         // at the failing step
  std::string error;                        // non-precondition failure
  bool goal_satisfied = false;
  State final_state;

  bool valid() const { return executable && goal_satisfied; }
};

/// Replays `plan` from the initial state with the domain's operators.
ValidationReport ValidatePlan(const PlanningProblem& problem, const Plan& plan);

}  // namespace pbd

#endif  // PBD_PLANNER_H_
