/**
 * domain.h
 *
 * Lifted operators, predicate declarations, and the domain/problem
 * definitions exchanged with PDDL files.
 */

#ifndef PBD_DOMAIN_H_
#define PBD_DOMAIN_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pbd/state.h"

namespace pbd {

struct PredicateDecl {
  std::string name;
  std::vector<Symbol> params;  // variables with types

  bool operator==(const PredicateDecl&) const = default;
};

/// Parameterized action schema. Preconditions may be negative; effects with
/// positive polarity are adds, negative polarity are deletes.
struct LiftedOperator {
  std::string name;
  std::vector<Symbol> parameters;
  LiteralSet preconditions;
  LiteralSet effects;

  const Symbol* FindParameter(const std::string& name) const;

  LiteralSet AddEffects() const;
  LiteralSet DeleteEffects() const;  // returned as positive atoms

  bool operator==(const LiftedOperator&) const = default;
};

/// Checks the operator invariants: valid names, unique parameters, every
/// variable declared, no atom both added and deleted, no `p` together with
/// `not p` among the preconditions. Throws Error on violation.
void Validate(const LiftedOperator& op);

/// Maps parameter i to args[i]. Throws Error("SignatureMismatch") when the
/// name or arity differs.
Binding BindParameters(const LiftedOperator& op, const GroundAction& action);

/// Model-level successor: (state - deletes) + adds. Throws
/// PreconditionFailure listing every unsatisfied ground precondition.
State ApplyModelAction(const State& state, const GroundAction& action,
                       const LiftedOperator& op);

/// Successor for already-grounded effects.
State ApplyEffects(const State& state, const LiteralSet& ground_effects);

struct DomainDef {
  std::string name;
  std::vector<std::string> types;
  std::vector<PredicateDecl> predicates;
  std::vector<LiftedOperator> operators;
  std::set<std::string> static_predicates;

  const PredicateDecl* FindPredicate(const std::string& name) const;
  const LiftedOperator* FindOperator(const std::string& name) const;
  LiftedOperator* FindOperator(const std::string& name);

  bool operator==(const DomainDef&) const = default;
};

/// Predicates never changed by any operator effect.
std::set<std::string> DeriveStaticPredicates(const DomainDef& domain);

/// Checks a literal against the predicate declarations: predicate declared
/// (UnknownPredicate), arity (ArityError). When `variable_types` is given,
/// variables must be listed there (UndeclaredParameter) with the slot's type
/// (TypeMismatch).
void CheckLiteral(const std::vector<PredicateDecl>& predicates,
                  const Literal& literal,
                  const std::vector<Symbol>* variable_types = nullptr);

/// Full domain validation (unique operators, operator invariants, literal
/// checks). Throws Error.
void Validate(const DomainDef& domain);

struct ProblemDef {
  std::string name;
  std::string domain_name;
  std::vector<Symbol> objects;
  State init;
  LiteralSet goal;

  bool operator==(const ProblemDef&) const = default;
};

/// Checks that init/goal use declared objects (UndeclaredObject) and, when a
/// domain is given, declared predicates with matching arity.
void Validate(const ProblemDef& problem, const DomainDef* domain = nullptr);

}  // namespace pbd

#endif  // PBD_DOMAIN_H_
