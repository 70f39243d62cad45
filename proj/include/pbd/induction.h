/**
 * induction.h
 *
 * Generalising demonstrations into lifted operators, and user refinements.
 */

#ifndef PBD_INDUCTION_H_
#define PBD_INDUCTION_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pbd/domain.h"
#include "pbd/state.h"

namespace pbd {

struct Demonstration {
  GroundAction action;
  State before;
  State after;

  bool operator==(const Demonstration&) const = default;
};

enum class InductionMode {
  kMinimal,    // manipulated-object atoms plus static properties of the args
  kFullDelta,  // every changed atom, statics excluded
};

std::string ToString(InductionMode mode);
/// Accepts `minimal`, `full_delta` and `full-delta`.
InductionMode ParseInductionMode(std::string_view text);

/// Parameter list for a ground action: one variable per argument slot, typed
/// from `symbol_types` (`object` when unknown). Variables are named by type,
/// `?obj`, `?pos`, `?col`; a type used in more than one slot is numbered
/// (`?pos1`, `?pos2`).
std::vector<Symbol> VariablizeArguments(
    const GroundAction& action,
    const std::map<std::string, std::string>& symbol_types);

/// Types of the symbols in a demonstration, read off the predicate slots
/// they occupy in the before/after states. The action's arguments that
/// appear in no atom default to `object`.
std::map<std::string, std::string> InferSymbolTypes(
    const std::vector<PredicateDecl>& predicates, const Demonstration& demo);

/// Builds an operator from one demonstration.
///
/// Removed atoms become positive preconditions and delete effects. Added
/// atoms become add effects and, by the closed-world assumption, negative
/// preconditions, except when the added atom is the new value of a fluent
/// whose old value was removed (same predicate, at least one shared
/// argument, exactly one differing slot, e.g. `at(o,D)` -> `at(o,A)`): the
/// old value already excludes the new one.
///
/// Throws Error("EmptyDelta") when nothing relevant changed.
LiftedOperator Induce(const Demonstration& demo, InductionMode mode,
                      const std::set<std::string>& static_predicates,
                      const std::map<std::string, std::string>& symbol_types);

enum class RefinementKind {
  kAddPrecondition,
  kRemovePrecondition,
  kAddEffect,
  kRemoveEffect,
  kGeneralizeConstant,
};

std::string ToString(RefinementKind kind);
RefinementKind ParseRefinementKind(std::string_view text);

struct Refinement {
  RefinementKind kind = RefinementKind::kAddPrecondition;
  Literal literal;        // add/remove kinds
  std::string constant;   // generalize_constant
  std::string variable;   // generalize_constant; generated when empty

  bool operator==(const Refinement&) const = default;
};

std::string ToString(const Refinement& refinement);

/// Applies one edit. Literal payloads are type-checked against `predicates`
/// and the operator's parameters.
///
/// generalize_constant replaces every occurrence of the constant by the
/// variable. When the variable then occurs only in a single positive
/// precondition, that literal holds for every binding of the remaining
/// parameters and is dropped; otherwise the variable becomes a new parameter.
///
/// Errors: NoSuchLiteral, NoSuchConstant, DuplicateLiteral,
/// ContradictionError, DuplicateParameter, plus literal check errors.
LiftedOperator Refine(const LiftedOperator& op, const Refinement& refinement,
                      const std::vector<PredicateDecl>& predicates);

/// Combines operators induced from several demonstrations of one action:
/// preconditions and effects are intersected after aligning parameter names
/// by position. Errors: SignatureMismatch, EffectConflict.
LiftedOperator MergeDemonstrations(const std::vector<LiftedOperator>& ops);

}  // namespace pbd

#endif  // PBD_INDUCTION_H_
