/**
 * session.h
 *
 * The teaching loop: demonstrate, induce, review and refine, set a goal,
 * plan, execute against the simulated world, diagnose, repeat.
 *
 * Sessions are event-sourced. Every accepted command appends one event; a
 * session is reproduced exactly by replaying its events from the `create`
 * event. Commands have the strong exception guarantee: a rejected command
 * leaves the session untouched and logs nothing.
 */

#ifndef PBD_SESSION_H_
#define PBD_SESSION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pbd/domain.h"
#include "pbd/induction.h"
#include "pbd/planner.h"
#include "pbd/state.h"
#include "pbd/world.h"

namespace pbd {

enum class Phase {
  kIdle,
  kDemonstrating,
  kReviewing,
  kPlanning,
  kExecuting,
  kDiagnosing,
};

std::string ToString(Phase phase);

struct Move {
  std::string object;
  std::string from;
  std::string to;

  bool operator==(const Move&) const = default;
};

/// A demonstration as supplied by the user: the action signature, plus
/// either physical moves performed in the simulator or explicit before/after
/// snapshots. With neither, the single move (args[0], args[1], args[2]) is
/// performed.
struct DemonstrationRequest {
  GroundAction action;
  std::vector<Move> moves;
  std::optional<State> before;
  std::optional<State> after;
  bool merge = false;  // intersect with an existing operator of that name

  bool operator==(const DemonstrationRequest&) const = default;
};

struct StepOutcome {
  enum class Kind { kOk, kModelFailure, kWorldFailure };

  Kind kind = Kind::kOk;
  std::vector<Literal> unsatisfied;  // model failure
  std::string constraint;            // world failure, e.g. occupied(A)
};

std::string ToString(StepOutcome::Kind kind);

struct TraceStep {
  GroundAction action;
  StepOutcome outcome;
  State state;  // true world state after the step
  /// For steps the model and world both accepted: atoms the model predicted
  /// but the world did not produce, and vice versa.
  LiteralSet predicted_only;
  LiteralSet actual_only;
};

struct ExecutionTrace {
  std::vector<TraceStep> steps;
  bool goal_satisfied = false;

  bool succeeded() const;
};

struct FailureReport {
  std::string operator_name;
  GroundAction failing_step;
  StepOutcome outcome;
  std::vector<Refinement> suggestions;
};

struct Event {
  std::uint64_t seq = 0;
  std::string timestamp;
  std::string type;
  nlohmann::json payload;
};

nlohmann::json ToJson(const Event& event);
Event EventFromJson(const nlohmann::json& j);

class TeachingSession {
 public:
  using Clock = std::function<std::string()>;

  /// Starts a session in the idle phase.
  static TeachingSession Create(const std::string& id, const WorldConfig& world,
                                InductionMode mode = InductionMode::kMinimal,
                                Clock clock = {});

  /// Rebuilds a session from its event log. Throws Error("CorruptLog") if
  /// the log does not start with `create` or an event fails to apply.
  static TeachingSession Replay(const std::vector<Event>& events,
                                Clock clock = {});

  void BeginDemonstration();
  /// Records and induces. Errors: InvalidMove, EmptyDelta, IllegalPhase.
  const Demonstration& RecordDemonstration(const DemonstrationRequest& request);
  const LiftedOperator& RefineOperator(const std::string& name,
                                       const Refinement& refinement);
  void SetGoal(const LiteralSet& goal);
  const SearchResult& RunPlanner(const SearchConfig& config);
  /// Supplies the plan to execute directly, e.g. to try an operator on a new
  /// situation without a goal.
  void SetPlan(const Plan& plan);
  const ExecutionTrace& ExecutePlan();
  /// Replaces the world with a new situation; operators are kept.
  void ResetWorld(const WorldConfig& world);
  void AddPosition(const std::string& name);

  /// Suggested refinements for the last failed execution. Throws
  /// Error("NoFailure") unless the session is diagnosing.
  FailureReport Diagnose() const;

  const std::string& id() const { return id_; }
  Phase phase() const { return phase_; }
  InductionMode mode() const { return mode_; }
  const WorldConfig& world() const { return world_; }
  const State& state() const { return state_; }
  const std::vector<LiftedOperator>& operators() const { return operators_; }
  const LiftedOperator* FindOperator(const std::string& name) const;
  const std::optional<LiteralSet>& goal() const { return goal_; }
  const std::optional<Plan>& last_plan() const { return last_plan_; }
  const std::optional<ExecutionTrace>& last_trace() const {
    return last_trace_;
  }
  const std::optional<Demonstration>& last_demonstration() const {
    return last_demonstration_;
  }
  const std::optional<SearchResult>& last_search() const {
    return last_search_;
  }
  const std::vector<Event>& events() const { return events_; }

  DomainDef Domain() const;
  ProblemDef Problem() const;
  PlanningProblem MakeProblem() const;
  /// Domain text, a blank line, then problem text.
  std::string ExportPddl() const;

 private:
  TeachingSession() = default;

  void Command(const std::string& type, nlohmann::json payload);
  void Dispatch(const Event& event);
  void RequirePhase(std::initializer_list<Phase> allowed,
                    std::string_view command) const;
  void CheckGroundLiteral(const Literal& literal) const;

  void DoRecordDemonstration(const DemonstrationRequest& request);
  void DoRefine(const std::string& name, const Refinement& refinement);
  void DoSetGoal(const LiteralSet& goal);
  void DoRunPlanner(const SearchConfig& config);
  void DoSetPlan(const Plan& plan);
  void DoExecute();
  void DoResetWorld(const WorldConfig& world);

  std::string id_;
  InductionMode mode_ = InductionMode::kMinimal;
  Phase phase_ = Phase::kIdle;
  WorldConfig world_;
  State state_;
  std::vector<LiftedOperator> operators_;
  std::optional<LiteralSet> goal_;
  std::optional<Plan> last_plan_;
  std::optional<ExecutionTrace> last_trace_;
  std::optional<Demonstration> last_demonstration_;
  std::optional<SearchResult> last_search_;
  std::vector<Event> events_;
  Clock clock_;
};

/// Literals over `parameters` (and, for slots no parameter can fill, the
/// declared constants of that type) in both polarities.
std::vector<Literal> ConditionVocabulary(
    const std::vector<PredicateDecl>& predicates,
    const std::vector<Symbol>& parameters,
    const std::vector<Symbol>& constants);

/// Display templates such as `at(?obj,?pos)` and `color(?obj,<c>)`, with
/// their negations.
std::vector<std::string> VocabularyTemplates(
    const std::vector<PredicateDecl>& predicates);

}  // namespace pbd

#endif  // PBD_SESSION_H_
