/**
 * json_io.cc
 */

#include "pbd/json_io.h"

#include "pbd/error.h"

namespace pbd {

namespace {

[[noreturn]] void Schema(const std::string& message) {
  throw Error("SchemaError", message);
}

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object()) Schema(std::string("expected an object with '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) Schema(std::string("missing field '") + key + "'");
  return *it;
}

const Json* OptionalField(const Json& j, const char* key) {
  if (!j.is_object()) Schema(std::string("expected an object"));
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::string String(const Json& j, const char* what) {
  if (!j.is_string()) Schema(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> Strings(const Json& j, const char* what) {
  if (!j.is_array()) Schema(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const Json& item : j) out.push_back(String(item, what));
  return out;
}

Json ToJson(const Symbol& s) { return {{"name", s.name}, {"type", s.type}}; }

}  // namespace

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    Schema(std::string("invalid JSON: ") + e.what());
  }
}

Json ToJson(const std::vector<Literal>& literals) {
  Json out = Json::array();
  for (const Literal& l : literals) out.push_back(ToString(l));
  return out;
}

Json ToJson(const LiteralSet& literals) { return Json(ToStrings(literals)); }
Json ToJson(const State& state) { return Json(ToStrings(state)); }

Json ToJson(const GroundAction& action) {
  return {{"action", action.operator_name}, {"args", action.args}};
}

Json ToJson(const Plan& plan) {
  Json out = Json::array();
  for (const GroundAction& step : plan.steps) out.push_back(ToJson(step));
  return out;
}

Json ToJson(const WorldConfig& world) {
  Json placement = Json::object();
  for (const auto& [object, position] : world.initial_placement) {
    placement[object] = position;
  }
  return {{"domain", world.domain_name},
          {"positions", world.positions},
          {"objects", world.objects},
          {"static_facts", ToJson(world.static_facts)},
          {"static_predicates", world.static_predicates},
          {"initial_placement", placement}};
}

Json ToJson(const LiftedOperator& op) {
  Json params = Json::array();
  for (const Symbol& p : op.parameters) params.push_back(ToJson(p));
  return {{"name", op.name},
          {"parameters", params},
          {"preconditions", ToJson(op.preconditions)},
          {"effects", ToJson(op.effects)}};
}

Json ToJson(const Refinement& refinement) {
  Json out = {{"kind", ToString(refinement.kind)}};
  if (refinement.kind == RefinementKind::kGeneralizeConstant) {
    out["constant"] = refinement.constant;
    if (!refinement.variable.empty()) out["variable"] = refinement.variable;
  } else {
    out["literal"] = ToString(refinement.literal);
  }
  return out;
}

Json ToJson(const Demonstration& demo) {
  return {{"action", demo.action.operator_name},
          {"args", demo.action.args},
          {"before", ToJson(demo.before)},
          {"after", ToJson(demo.after)}};
}

Json ToJson(const DemonstrationRequest& request) {
  Json out = {{"action", request.action.operator_name},
              {"args", request.action.args}};
  if (!request.moves.empty()) {
    Json moves = Json::array();
    for (const Move& m : request.moves) {
      moves.push_back({{"object", m.object}, {"from", m.from}, {"to", m.to}});
    }
    out["moves"] = moves;
  }
  if (request.before) out["before"] = ToJson(*request.before);
  if (request.after) out["after"] = ToJson(*request.after);
  if (request.merge) out["merge"] = true;
  return out;
}

Json ToJson(const SearchConfig& config) {
  return {{"strategy", ToString(config.strategy)},
          {"max_expansions", config.max_expansions}};
}

Json ToJson(const SearchResult& result) {
  Json out = {{"status", ToString(result.status)},
              {"expansions", result.expansions}};
  if (result.found()) {
    out["plan"] = ToJson(result.plan);
    out["cost"] = result.plan.cost();
  } else {
    out["unsatisfied_goals"] = ToJson(result.unsatisfied_goals);
    out["unachievable_goals"] = ToJson(result.unachievable_goals);
  }
  return out;
}

Json ToJson(const ValidationReport& report) {
  Json out = {{"valid", report.valid()},
              {"executable", report.executable},
              {"goal_satisfied", report.goal_satisfied},
              {"final_state", ToJson(report.final_state)}};
  if (report.failing_step) {
    out["failing_step"] = *report.failing_step;
    out["unsatisfied"] = ToJson(report.unsatisfied);
    out["error"] = report.error;
  }
  return out;
}

Json ToJson(const StepOutcome& outcome) {
  Json out = {{"kind", ToString(outcome.kind)}};
  if (outcome.kind == StepOutcome::Kind::kModelFailure) {
    out["unsatisfied"] = ToJson(outcome.unsatisfied);
  } else if (outcome.kind == StepOutcome::Kind::kWorldFailure) {
    out["constraint"] = outcome.constraint;
  }
  return out;
}

Json ToJson(const ExecutionTrace& trace) {
  Json steps = Json::array();
  for (const TraceStep& step : trace.steps) {
    Json s = ToJson(step.action);
    s["outcome"] = ToJson(step.outcome);
    s["state"] = ToJson(step.state);
    if (!step.predicted_only.empty() || !step.actual_only.empty()) {
      s["predicted_only"] = ToJson(step.predicted_only);
      s["actual_only"] = ToJson(step.actual_only);
    }
    steps.push_back(std::move(s));
  }
  return {{"status", trace.succeeded() ? "success" : "failure"},
          {"goal_satisfied", trace.goal_satisfied},
          {"steps", steps}};
}

Json ToJson(const FailureReport& report) {
  Json suggestions = Json::array();
  for (const Refinement& r : report.suggestions) {
    suggestions.push_back(ToJson(r));
  }
  Json out = {{"operator", report.operator_name},
              {"failing_step", ToJson(report.failing_step)},
              {"cause", ToString(report.outcome.kind)},
              {"suggestions", suggestions}};
  if (report.outcome.kind == StepOutcome::Kind::kModelFailure) {
    out["unsatisfied"] = ToJson(report.outcome.unsatisfied);
  } else {
    out["constraint"] = report.outcome.constraint;
  }
  return out;
}

Json SessionView(const TeachingSession& session) {
  Json operators = Json::array();
  for (const LiftedOperator& op : session.operators()) {
    operators.push_back(ToJson(op));
  }
  Json view = {{"id", session.id()},
               {"phase", ToString(session.phase())},
               {"mode", ToString(session.mode())},
               {"world", ToJson(session.world())},
               {"state", ToJson(session.state())},
               {"operators", operators},
               {"goal", nullptr},
               {"last_plan", nullptr},
               {"last_trace", nullptr}};
  if (session.goal()) view["goal"] = ToJson(*session.goal());
  if (session.last_plan()) view["last_plan"] = ToJson(*session.last_plan());
  if (session.last_trace()) view["last_trace"] = ToJson(*session.last_trace());
  return view;
}

LiteralSet LiteralSetFromJson(const Json& j) {
  return ParseLiterals(Strings(j, "literal list"));
}

State StateFromJson(const Json& j) { return State(LiteralSetFromJson(j)); }

GroundAction GroundActionFromJson(const Json& j) {
  GroundAction action{String(Field(j, "action"), "action"),
                      Strings(Field(j, "args"), "args")};
  CheckName(action.operator_name);
  for (const std::string& a : action.args) {
    CheckName(a);
    if (IsVariable(a)) Schema("action arguments must be constants");
  }
  return action;
}

Plan PlanFromJson(const Json& j) {
  const Json* steps = &j;
  if (j.is_object()) steps = &Field(j, "steps");
  if (!steps->is_array()) Schema("plan must be an array of steps");
  Plan plan;
  for (const Json& step : *steps) plan.steps.push_back(GroundActionFromJson(step));
  return plan;
}

WorldConfig WorldConfigFromJson(const Json& j) {
  WorldConfig world;
  if (const Json* d = OptionalField(j, "domain")) {
    world.domain_name = String(*d, "domain");
  }
  world.positions = Strings(Field(j, "positions"), "positions");
  if (const Json* o = OptionalField(j, "objects")) {
    world.objects = Strings(*o, "objects");
  }
  if (const Json* f = OptionalField(j, "static_facts")) {
    world.static_facts = LiteralSetFromJson(*f);
  }
  if (const Json* s = OptionalField(j, "static_predicates")) {
    for (const std::string& name : Strings(*s, "static_predicates")) {
      world.static_predicates.insert(name);
    }
  } else {
    for (const Literal& f : world.static_facts) {
      world.static_predicates.insert(f.predicate);
    }
  }
  if (const Json* p = OptionalField(j, "initial_placement")) {
    if (!p->is_object()) Schema("initial_placement must be an object");
    for (const auto& [object, position] : p->items()) {
      world.initial_placement[object] = String(position, "placement");
    }
  }
  Validate(world);
  return world;
}

LiftedOperator OperatorFromJson(const Json& j) {
  LiftedOperator op;
  op.name = String(Field(j, "name"), "name");
  const Json& params = Field(j, "parameters");
  if (!params.is_array()) Schema("parameters must be an array");
  for (const Json& p : params) {
    op.parameters.push_back(
        {String(Field(p, "name"), "name"), String(Field(p, "type"), "type")});
  }
  op.preconditions = LiteralSetFromJson(Field(j, "preconditions"));
  op.effects = LiteralSetFromJson(Field(j, "effects"));
  Validate(op);
  return op;
}

Refinement RefinementFromJson(const Json& j) {
  Refinement r;
  r.kind = ParseRefinementKind(String(Field(j, "kind"), "kind"));
  if (r.kind == RefinementKind::kGeneralizeConstant) {
    r.constant = String(Field(j, "constant"), "constant");
    if (const Json* v = OptionalField(j, "variable")) {
      r.variable = String(*v, "variable");
    }
  } else {
    r.literal = ParseLiteral(String(Field(j, "literal"), "literal"));
  }
  return r;
}

Demonstration DemonstrationFromJson(const Json& j) {
  return Demonstration{GroundActionFromJson(j), StateFromJson(Field(j, "before")),
                       StateFromJson(Field(j, "after"))};
}

DemonstrationRequest DemonstrationRequestFromJson(const Json& j) {
  DemonstrationRequest request;
  request.action = GroundActionFromJson(j);
  if (const Json* moves = OptionalField(j, "moves")) {
    if (!moves->is_array()) Schema("moves must be an array");
    for (const Json& m : *moves) {
      request.moves.push_back({String(Field(m, "object"), "object"),
                               String(Field(m, "from"), "from"),
                               String(Field(m, "to"), "to")});
    }
  }
  const Json* before = OptionalField(j, "before");
  const Json* after = OptionalField(j, "after");
  if ((before == nullptr) != (after == nullptr)) {
    Schema("before and after must be given together");
  }
  if (before != nullptr) {
    if (!request.moves.empty()) Schema("give either moves or snapshots");
    request.before = StateFromJson(*before);
    request.after = StateFromJson(*after);
  }
  if (const Json* merge = OptionalField(j, "merge")) {
    if (!merge->is_boolean()) Schema("merge must be a boolean");
    request.merge = merge->get<bool>();
  }
  return request;
}

SearchConfig SearchConfigFromJson(const Json& j) {
  SearchConfig config;
  if (j.is_null()) return config;
  if (const Json* s = OptionalField(j, "strategy")) {
    const std::string strategy = String(*s, "strategy");
    if (strategy == "bfs_optimal") {
      config.strategy = SearchStrategy::kBfsOptimal;
    } else if (strategy == "astar_goalcount") {
      config.strategy = SearchStrategy::kAStarGoalCount;
    } else {
      Schema("unknown strategy '" + strategy + "'");
    }
  }
  if (const Json* o = OptionalField(j, "optimal")) {
    if (!o->is_boolean()) Schema("optimal must be a boolean");
    if (o->get<bool>()) config.strategy = SearchStrategy::kBfsOptimal;
  }
  if (const Json* m = OptionalField(j, "max_expansions")) {
    if (!m->is_number_integer() || m->get<long long>() < 1) {
      Schema("max_expansions must be a positive integer");
    }
    config.max_expansions = m->get<std::size_t>();
  }
  return config;
}

}  // namespace pbd
