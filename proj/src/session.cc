/**
 * session.cc
 */

#include "pbd/session.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <map>

#include "pbd/error.h"
#include "pbd/json_io.h"
#include "pbd/pddl.h"

namespace pbd {

namespace {

std::string UtcNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

const std::string* ParameterBoundTo(const LiftedOperator& op,
                                    const GroundAction& action,
                                    const std::string& constant) {
  for (std::size_t i = 0; i < action.args.size() && i < op.parameters.size();
       ++i) {
    if (action.args[i] == constant) return &op.parameters[i].name;
  }
  return nullptr;
}

}  // namespace

std::string ToString(Phase phase) {
  switch (phase) {
    case Phase::kIdle:
      return "idle";
    case Phase::kDemonstrating:
      return "demonstrating";
    case Phase::kReviewing:
      return "reviewing";
    case Phase::kPlanning:
      return "planning";
    case Phase::kExecuting:
      return "executing";
    case Phase::kDiagnosing:
      return "diagnosing";
  }
  return "";
}

std::string ToString(StepOutcome::Kind kind) {
  switch (kind) {
    case StepOutcome::Kind::kOk:
      return "ok";
    case StepOutcome::Kind::kModelFailure:
      return "model_failure";
    case StepOutcome::Kind::kWorldFailure:
      return "world_failure";
  }
  return "";
}

bool ExecutionTrace::succeeded() const {
  return std::all_of(steps.begin(), steps.end(), [](const TraceStep& s) {
    return s.outcome.kind == StepOutcome::Kind::kOk;
  });
}

nlohmann::json ToJson(const Event& event) {
  return {{"seq", event.seq},
          {"ts", event.timestamp},
          {"type", event.type},
          {"payload", event.payload}};
}

Event EventFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("seq") || !j.contains("type") ||
      !j["seq"].is_number_unsigned() || !j["type"].is_string()) {
    throw Error("SchemaError", "malformed event");
  }
  Event event;
  event.seq = j["seq"].get<std::uint64_t>();
  event.type = j["type"].get<std::string>();
  if (j.contains("ts") && j["ts"].is_string()) {
    event.timestamp = j["ts"].get<std::string>();
  }
  event.payload = j.value("payload", nlohmann::json::object());
  return event;
}

TeachingSession TeachingSession::Create(const std::string& id,
                                        const WorldConfig& world,
                                        InductionMode mode, Clock clock) {
  TeachingSession session;
  session.clock_ = std::move(clock);
  session.Command("create", {{"id", id},
                             {"world", ToJson(world)},
                             {"mode", ToString(mode)}});
  return session;
}

TeachingSession TeachingSession::Replay(const std::vector<Event>& events,
                                        Clock clock) {
  if (events.empty() || events.front().type != "create") {
    throw Error("CorruptLog", "event log must start with a create event");
  }
  TeachingSession session;
  session.clock_ = std::move(clock);
  for (const Event& event : events) {
    try {
      session.Dispatch(event);
    } catch (const std::exception& e) {
      throw Error("CorruptLog", "event " + std::to_string(event.seq) + " (" +
                                    event.type + ") failed to replay: " +
                                    e.what());
    }
    session.events_.push_back(event);
  }
  return session;
}

void TeachingSession::Command(const std::string& type,
                              nlohmann::json payload) {
  Event event{events_.size() + 1, clock_ ? clock_() : UtcNow(), type,
              std::move(payload)};
  std::vector<Event> log = std::move(events_);
  events_.clear();
  TeachingSession next = *this;
  try {
    next.Dispatch(event);
  } catch (...) {
    events_ = std::move(log);
    throw;
  }
  log.push_back(std::move(event));
  next.events_ = std::move(log);
  *this = std::move(next);
}

void TeachingSession::Dispatch(const Event& event) {
  const nlohmann::json& p = event.payload;
  const std::string& type = event.type;
  if (type == "create") {
    if (!events_.empty()) throw Error("CorruptLog", "duplicate create event");
    id_ = p.at("id").get<std::string>();
    CheckName(id_);
    mode_ = ParseInductionMode(p.at("mode").get<std::string>());
    world_ = WorldConfigFromJson(p.at("world"));
    state_ = MakeState(world_);
    phase_ = Phase::kIdle;
  } else if (type == "begin_demonstration") {
    RequirePhase({Phase::kIdle, Phase::kReviewing, Phase::kDiagnosing,
                  Phase::kPlanning},
                 type);
    phase_ = Phase::kDemonstrating;
  } else if (type == "record_demonstration") {
    DoRecordDemonstration(DemonstrationRequestFromJson(p));
  } else if (type == "refine") {
    DoRefine(p.at("operator").get<std::string>(),
             RefinementFromJson(p.at("refinement")));
  } else if (type == "set_goal") {
    DoSetGoal(LiteralSetFromJson(p.at("goal")));
  } else if (type == "run_planner") {
    DoRunPlanner(SearchConfigFromJson(p));
  } else if (type == "set_plan") {
    DoSetPlan(PlanFromJson(p));
  } else if (type == "execute") {
    DoExecute();
  } else if (type == "reset_world") {
    DoResetWorld(WorldConfigFromJson(p.at("world")));
  } else if (type == "add_position") {
    RequirePhase({Phase::kIdle, Phase::kReviewing, Phase::kPlanning,
                  Phase::kExecuting, Phase::kDiagnosing},
                 type);
    pbd::AddPosition(world_, state_, p.at("name").get<std::string>());
  } else {
    throw Error("SchemaError", "unknown event type '" + type + "'");
  }
}

void TeachingSession::RequirePhase(std::initializer_list<Phase> allowed,
                                   std::string_view command) const {
  if (std::find(allowed.begin(), allowed.end(), phase_) != allowed.end()) {
    return;
  }
  throw Error("IllegalPhase", std::string(command) + " is not allowed while " +
                                  ToString(phase_));
}

void TeachingSession::CheckGroundLiteral(const Literal& literal) const {
  if (!literal.IsGround()) {
    throw Error("NonGroundLiteral", ToString(literal) + " is not ground");
  }
  CheckLiteral(WorldPredicates(world_), literal);
  const auto types = SymbolTypes(world_);
  for (const std::string& a : literal.args) {
    if (!types.count(a)) {
      throw Error("UnknownSymbol", ToString(literal) + " names unknown " + a);
    }
  }
}

void TeachingSession::BeginDemonstration() {
  Command("begin_demonstration", nlohmann::json::object());
}

const Demonstration& TeachingSession::RecordDemonstration(
    const DemonstrationRequest& request) {
  Command("record_demonstration", ToJson(request));
  return *last_demonstration_;
}

const LiftedOperator& TeachingSession::RefineOperator(
    const std::string& name, const Refinement& refinement) {
  Command("refine", {{"operator", name}, {"refinement", ToJson(refinement)}});
  return *FindOperator(name);
}

void TeachingSession::SetGoal(const LiteralSet& goal) {
  Command("set_goal", {{"goal", ToJson(goal)}});
}

const SearchResult& TeachingSession::RunPlanner(const SearchConfig& config) {
  Command("run_planner", ToJson(config));
  return *last_search_;
}

void TeachingSession::SetPlan(const Plan& plan) {
  Command("set_plan", {{"steps", ToJson(plan)}});
}

const ExecutionTrace& TeachingSession::ExecutePlan() {
  Command("execute", nlohmann::json::object());
  return *last_trace_;
}

void TeachingSession::ResetWorld(const WorldConfig& world) {
  Command("reset_world", {{"world", ToJson(world)}});
}

void TeachingSession::AddPosition(const std::string& name) {
  Command("add_position", {{"name", name}});
}

void TeachingSession::DoRecordDemonstration(
    const DemonstrationRequest& request) {
  RequirePhase({Phase::kDemonstrating}, "record_demonstration");
  Demonstration demo{request.action, state_, state_};
  if (request.before) {
    demo.before = *request.before;
    demo.after = *request.after;
  } else {
    std::vector<Move> moves = request.moves;
    if (moves.empty()) {
      if (request.action.args.size() < 3) {
        throw Error("InvalidDemonstration",
                    "give moves or snapshots for " + ToString(request.action));
      }
      moves.push_back({request.action.args[0], request.action.args[1],
                       request.action.args[2]});
    }
    for (const Move& m : moves) {
      try {
        demo.after = WorldExecute(world_, demo.after,
                                  GroundAction{"move", {m.object, m.from, m.to}});
      } catch (const ConstraintViolation& v) {
        throw Error("InvalidMove", "cannot move " + m.object + " from " +
                                       m.from + " to " + m.to + ": " +
                                       v.constraint());
      } catch (const Error& e) {
        throw Error("InvalidMove", e.what());
      }
    }
    state_ = demo.after;
  }

  const std::vector<PredicateDecl> predicates = WorldPredicates(world_);
  std::map<std::string, std::string> types = SymbolTypes(world_);
  for (const auto& [symbol, type] : InferSymbolTypes(predicates, demo)) {
    types.emplace(symbol, type);
  }
  LiftedOperator op =
      Induce(demo, mode_, world_.static_predicates, types);
  auto existing = std::find_if(
      operators_.begin(), operators_.end(),
      [&](const LiftedOperator& o) { return o.name == op.name; });
  if (existing != operators_.end()) {
    *existing = request.merge ? MergeDemonstrations({*existing, op}) : op;
  } else {
    operators_.push_back(op);
  }
  Validate(Domain());
  last_demonstration_ = std::move(demo);
  phase_ = Phase::kReviewing;
}

void TeachingSession::DoRefine(const std::string& name,
                               const Refinement& refinement) {
  RequirePhase({Phase::kIdle, Phase::kReviewing, Phase::kDiagnosing,
                Phase::kPlanning},
               "refine");
  auto it = std::find_if(operators_.begin(), operators_.end(),
                         [&](const LiftedOperator& o) { return o.name == name; });
  if (it == operators_.end()) {
    throw Error("UnknownOperator", "no operator named " + name);
  }
  *it = Refine(*it, refinement, WorldPredicates(world_));
  phase_ = Phase::kReviewing;
}

void TeachingSession::DoSetGoal(const LiteralSet& goal) {
  RequirePhase({Phase::kIdle, Phase::kReviewing, Phase::kPlanning,
                Phase::kDiagnosing, Phase::kExecuting},
               "set_goal");
  for (const Literal& l : goal) CheckGroundLiteral(l);
  goal_ = goal;
  last_plan_.reset();
  last_search_.reset();
  phase_ = Phase::kPlanning;
}

void TeachingSession::DoRunPlanner(const SearchConfig& config) {
  RequirePhase({Phase::kPlanning}, "run_planner");
  last_search_ = Search(MakeProblem(), config);
  if (last_search_->found()) {
    last_plan_ = last_search_->plan;
    phase_ = Phase::kExecuting;
  }
}

void TeachingSession::DoSetPlan(const Plan& plan) {
  RequirePhase({Phase::kIdle, Phase::kReviewing, Phase::kDiagnosing,
                Phase::kPlanning},
               "set_plan");
  const auto types = SymbolTypes(world_);
  for (const GroundAction& step : plan.steps) {
    const LiftedOperator* op = FindOperator(step.operator_name);
    if (op == nullptr) {
      throw Error("UnknownOperator", "no operator named " + step.operator_name);
    }
    BindParameters(*op, step);
    for (const std::string& a : step.args) {
      if (!types.count(a)) {
        throw Error("UnknownSymbol", ToString(step) + " names unknown " + a);
      }
    }
  }
  last_plan_ = plan;
  phase_ = Phase::kExecuting;
}

void TeachingSession::DoExecute() {
  RequirePhase({Phase::kExecuting}, "execute");
  ExecutionTrace trace;
  for (const GroundAction& step : last_plan_->steps) {
    TraceStep record{step, {}, state_, {}, {}};
    const LiftedOperator* op = FindOperator(step.operator_name);
    State predicted;
    try {
      predicted = ApplyModelAction(state_, step, *op);
    } catch (const PreconditionFailure& failure) {
      record.outcome.kind = StepOutcome::Kind::kModelFailure;
      for (const std::string& t : failure.unsatisfied()) {
        record.outcome.unsatisfied.push_back(ParseLiteral(t));
      }
      trace.steps.push_back(std::move(record));
      break;
    }
    try {
      state_ = WorldExecute(world_, state_, step);
    } catch (const ConstraintViolation& v) {
      record.outcome.kind = StepOutcome::Kind::kWorldFailure;
      record.outcome.constraint = v.constraint();
      trace.steps.push_back(std::move(record));
      break;
    } catch (const Error&) {
      record.outcome.kind = StepOutcome::Kind::kWorldFailure;
      record.outcome.constraint =
          ToString(Literal("unsupported", {step.operator_name}));
      trace.steps.push_back(std::move(record));
      break;
    }
    const StateDiff divergence = DiffStates(state_, predicted);
    record.predicted_only = divergence.added;
    record.actual_only = divergence.removed;
    record.state = state_;
    trace.steps.push_back(std::move(record));
  }
  trace.goal_satisfied =
      trace.succeeded() && goal_ && GoalCountHeuristic(state_, *goal_) == 0;
  phase_ = trace.succeeded() ? Phase::kIdle : Phase::kDiagnosing;
  last_trace_ = std::move(trace);
}

void TeachingSession::DoResetWorld(const WorldConfig& world) {
  RequirePhase({Phase::kIdle, Phase::kReviewing, Phase::kDiagnosing,
                Phase::kPlanning, Phase::kExecuting},
               "reset_world");
  state_ = MakeState(world);
  world_ = world;
  goal_.reset();
  last_plan_.reset();
  last_trace_.reset();
  last_search_.reset();
  phase_ = Phase::kIdle;
  Validate(Domain());
}

FailureReport TeachingSession::Diagnose() const {
  if (phase_ != Phase::kDiagnosing || !last_trace_ ||
      last_trace_->succeeded() || last_trace_->steps.empty()) {
    throw Error("NoFailure", "the last execution did not fail");
  }
  const TraceStep& failed = last_trace_->steps.back();
  const LiftedOperator& op = *FindOperator(failed.action.operator_name);
  FailureReport report{op.name, failed.action, failed.outcome, {}};
  auto suggest = [&](Refinement r) {
    if (std::find(report.suggestions.begin(), report.suggestions.end(), r) ==
        report.suggestions.end()) {
      report.suggestions.push_back(std::move(r));
    }
  };

  if (failed.outcome.kind == StepOutcome::Kind::kModelFailure) {
    const Binding binding = BindParameters(op, failed.action);
    for (const Literal& ground : failed.outcome.unsatisfied) {
      for (const Literal& lifted : op.preconditions) {
        if (Substitute(lifted, binding) != ground) continue;
        bool has_constant = false;
        for (const std::string& a : lifted.args) {
          if (IsVariable(a)) continue;
          has_constant = true;
          suggest({RefinementKind::kGeneralizeConstant, {}, a, {}});
        }
        if (!has_constant) {
          suggest({RefinementKind::kRemovePrecondition, lifted, {}, {}});
        }
      }
    }
    return report;
  }

  const Literal constraint = ParseLiteral(failed.outcome.constraint);
  const std::vector<std::string>& args = failed.action.args;
  auto add = [&](RefinementKind kind, Literal literal) {
    const LiteralSet& target = kind == RefinementKind::kAddPrecondition
                                   ? op.preconditions
                                   : op.effects;
    if (target.count(literal) || target.count(literal.Negation())) return;
    suggest({kind, std::move(literal), {}, {}});
  };
  if (constraint.predicate == "occupied" && args.size() == 3) {
    const std::string* dst = ParameterBoundTo(op, failed.action,
                                              constraint.args.at(0));
    const std::string* src = ParameterBoundTo(op, failed.action, args[1]);
    if (dst != nullptr) {
      add(RefinementKind::kAddPrecondition, Literal("empty", {*dst}));
    }
    if (src != nullptr) {
      add(RefinementKind::kAddPrecondition, Literal("empty", {*src}, true));
      add(RefinementKind::kAddEffect, Literal("empty", {*src}));
    }
    if (dst != nullptr) {
      add(RefinementKind::kAddEffect, Literal("empty", {*dst}, true));
    }
  } else if (constraint.predicate == "not_at" && constraint.args.size() == 2) {
    const std::string* object =
        ParameterBoundTo(op, failed.action, constraint.args[0]);
    const std::string* from =
        ParameterBoundTo(op, failed.action, constraint.args[1]);
    if (object != nullptr && from != nullptr) {
      add(RefinementKind::kAddPrecondition, Literal("at", {*object, *from}));
    }
  }
  return report;
}

const LiftedOperator* TeachingSession::FindOperator(
    const std::string& name) const {
  auto it = std::find_if(operators_.begin(), operators_.end(),
                         [&](const LiftedOperator& o) { return o.name == name; });
  return it == operators_.end() ? nullptr : &*it;
}

DomainDef TeachingSession::Domain() const {
  DomainDef domain;
  domain.name = world_.domain_name;
  domain.types = {std::string(kObjectType), std::string(kPositionType),
                  std::string(kColorType)};
  domain.predicates = WorldPredicates(world_);
  domain.operators = operators_;
  for (const std::string& s : world_.static_predicates) {
    if (domain.FindPredicate(s) != nullptr) domain.static_predicates.insert(s);
  }
  return domain;
}

ProblemDef TeachingSession::Problem() const {
  return ProblemDef{"current", world_.domain_name, DeclaredSymbols(world_),
                    state_, goal_.value_or(LiteralSet{})};
}

PlanningProblem TeachingSession::MakeProblem() const {
  return PlanningProblem{Domain(), DeclaredSymbols(world_), state_,
                         goal_.value_or(LiteralSet{})};
}

std::string TeachingSession::ExportPddl() const {
  return EmitDomain(Domain()) + "\n" + EmitProblem(Problem());
}

std::vector<Literal> ConditionVocabulary(
    const std::vector<PredicateDecl>& predicates,
    const std::vector<Symbol>& parameters,
    const std::vector<Symbol>& constants) {
  std::vector<Literal> out;
  for (const PredicateDecl& decl : predicates) {
    std::vector<std::vector<std::string>> slots;
    for (const Symbol& slot : decl.params) {
      std::vector<std::string> fill;
      for (const Symbol& p : parameters) {
        if (p.type == slot.type) fill.push_back(p.name);
      }
      if (fill.empty()) {
        for (const Symbol& c : constants) {
          if (c.type == slot.type) fill.push_back(c.name);
        }
      }
      slots.push_back(std::move(fill));
    }
    std::vector<std::vector<std::string>> combos = {{}};
    for (const auto& fill : slots) {
      std::vector<std::vector<std::string>> next;
      for (const auto& prefix : combos) {
        for (const std::string& f : fill) {
          next.push_back(prefix);
          next.back().push_back(f);
        }
      }
      combos = std::move(next);
    }
    for (const auto& args : combos) {
      out.emplace_back(decl.name, args, false);
      out.emplace_back(decl.name, args, true);
    }
  }
  return out;
}

std::vector<std::string> VocabularyTemplates(
    const std::vector<PredicateDecl>& predicates) {
  std::vector<std::string> out;
  for (const PredicateDecl& decl : predicates) {
    std::string text = decl.name + "(";
    for (std::size_t i = 0; i < decl.params.size(); ++i) {
      const std::string& type = decl.params[i].type;
      if (i > 0) text += ",";
      if (type == kObjectType) {
        text += "?obj";
      } else if (type == kPositionType) {
        text += "?pos";
      } else {
        text += "<" + type.substr(0, 1) + ">";
      }
    }
    text += ")";
    out.push_back(text);
    out.push_back("not " + text);
  }
  return out;
}

}  // namespace pbd
