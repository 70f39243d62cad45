/**
 * json_io.h
 *
 * JSON wire formats. Literals travel in their canonical text form
 * (`at(redObj,D)`, `not empty(A)`). Decoders throw Error("SchemaError") on
 * shape violations and the usual parse errors on bad literal text.
 */

#ifndef PBD_JSON_IO_H_
#define PBD_JSON_IO_H_

#include <string>

#include "json.hpp"
#include "pbd/domain.h"
#include "pbd/induction.h"
#include "pbd/planner.h"
#include "pbd/session.h"
#include "pbd/world.h"

namespace pbd {

using Json = nlohmann::json;

Json ToJson(const LiteralSet& literals);
Json ToJson(const std::vector<Literal>& literals);
Json ToJson(const State& state);
Json ToJson(const GroundAction& action);
Json ToJson(const Plan& plan);
Json ToJson(const WorldConfig& world);
Json ToJson(const LiftedOperator& op);
Json ToJson(const Refinement& refinement);
Json ToJson(const Demonstration& demo);
Json ToJson(const DemonstrationRequest& request);
Json ToJson(const SearchConfig& config);
Json ToJson(const SearchResult& result);
Json ToJson(const ValidationReport& report);
Json ToJson(const StepOutcome& outcome);
Json ToJson(const ExecutionTrace& trace);
Json ToJson(const FailureReport& report);
/// Observable session state: id, phase, mode, world, atoms, operators, goal,
/// plan, trace.
Json SessionView(const TeachingSession& session);

LiteralSet LiteralSetFromJson(const Json& j);
State StateFromJson(const Json& j);
GroundAction GroundActionFromJson(const Json& j);
Plan PlanFromJson(const Json& j);
WorldConfig WorldConfigFromJson(const Json& j);
LiftedOperator OperatorFromJson(const Json& j);
Refinement RefinementFromJson(const Json& j);
Demonstration DemonstrationFromJson(const Json& j);
DemonstrationRequest DemonstrationRequestFromJson(const Json& j);
SearchConfig SearchConfigFromJson(const Json& j);

/// Parses text, mapping JSON syntax errors to Error("SchemaError").
Json ParseJson(const std::string& text);

}  // namespace pbd

#endif  // PBD_JSON_IO_H_
