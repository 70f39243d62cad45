/**
 * domain.cc
 */

#include "pbd/domain.h"

#include <algorithm>

#include "pbd/error.h"

namespace pbd {

namespace {

void CheckParameters(const std::vector<Symbol>& params,
                     const std::string& owner) {
  std::set<std::string> seen;
  for (const Symbol& p : params) {
    CheckName(p.name);
    CheckName(p.type);
    if (!p.is_variable()) {
      throw Error("InvalidParameter", owner + ": parameter '" + p.name +
                                          "' must start with '?'");
    }
    if (!seen.insert(p.name).second) {
      throw Error("DuplicateParameter",
                  owner + ": duplicate parameter " + p.name);
    }
  }
}

}  // namespace

const Symbol* LiftedOperator::FindParameter(const std::string& name) const {
  auto it = std::find_if(parameters.begin(), parameters.end(),
                         [&](const Symbol& s) { return s.name == name; });
  return it == parameters.end() ? nullptr : &*it;
}

LiteralSet LiftedOperator::AddEffects() const {
  LiteralSet out;
  for (const Literal& e : effects) {
    if (!e.negated) out.insert(e);
  }
  return out;
}

LiteralSet LiftedOperator::DeleteEffects() const {
  LiteralSet out;
  for (const Literal& e : effects) {
    if (e.negated) out.insert(e.Atom());
  }
  return out;
}

void Validate(const LiftedOperator& op) {
  CheckName(op.name);
  if (IsVariable(op.name)) {
    throw Error("InvalidName", "operator name cannot be a variable");
  }
  CheckParameters(op.parameters, op.name);

  auto check_vars = [&](const LiteralSet& literals) {
    for (const Literal& l : literals) {
      CheckName(l.predicate);
      for (const std::string& a : l.args) {
        CheckName(a);
        if (IsVariable(a) && op.FindParameter(a) == nullptr) {
          throw Error("UndeclaredParameter", op.name + ": " + ToString(l) +
                                                 " uses undeclared " + a);
        }
      }
    }
  };
  check_vars(op.preconditions);
  check_vars(op.effects);

  for (const Literal& l : op.preconditions) {
    if (!l.negated && op.preconditions.count(l.Negation())) {
      throw Error("ContradictionError",
                  op.name + ": precondition " + ToString(l) +
                      " contradicts its negation");
    }
  }
  for (const Literal& l : op.effects) {
    if (!l.negated && op.effects.count(l.Negation())) {
      throw Error("ContradictionError",
                  op.name + ": " + ToString(l) + " is both added and deleted");
    }
  }
}

Binding BindParameters(const LiftedOperator& op, const GroundAction& action) {
  if (action.operator_name != op.name ||
      action.args.size() != op.parameters.size()) {
    throw Error("SignatureMismatch", ToString(action) +
                                         " does not match operator " + op.name +
                                         "/" +
                                         std::to_string(op.parameters.size()));
  }
  Binding binding;
  for (std::size_t i = 0; i < op.parameters.size(); ++i) {
    binding[op.parameters[i].name] = action.args[i];
  }
  return binding;
}

State ApplyEffects(const State& state, const LiteralSet& ground_effects) {
  State next = state;
  for (const Literal& e : ground_effects) {
    if (e.negated) next.Erase(e);
  }
  for (const Literal& e : ground_effects) {
    if (!e.negated) next.Insert(e);
  }
  return next;
}

State ApplyModelAction(const State& state, const GroundAction& action,
                       const LiftedOperator& op) {
  const Binding binding = BindParameters(op, action);
  const std::vector<Literal> unsatisfied =
      Unsatisfied(state, Substitute(op.preconditions, binding));
  if (!unsatisfied.empty()) {
    std::vector<std::string> texts;
    for (const Literal& l : unsatisfied) texts.push_back(ToString(l));
    std::string message = ToString(action) + ": unsatisfied";
    for (const std::string& t : texts) message += " " + t;
    throw PreconditionFailure(message, std::move(texts));
  }
  return ApplyEffects(state, Substitute(op.effects, binding));
}

const PredicateDecl* DomainDef::FindPredicate(const std::string& name) const {
  auto it = std::find_if(predicates.begin(), predicates.end(),
                         [&](const PredicateDecl& p) { return p.name == name; });
  return it == predicates.end() ? nullptr : &*it;
}

const LiftedOperator* DomainDef::FindOperator(const std::string& name) const {
  auto it = std::find_if(operators.begin(), operators.end(),
                         [&](const LiftedOperator& o) { return o.name == name; });
  return it == operators.end() ? nullptr : &*it;
}

LiftedOperator* DomainDef::FindOperator(const std::string& name) {
  auto it = std::find_if(operators.begin(), operators.end(),
                         [&](const LiftedOperator& o) { return o.name == name; });
  return it == operators.end() ? nullptr : &*it;
}

std::set<std::string> DeriveStaticPredicates(const DomainDef& domain) {
  std::set<std::string> changed;
  for (const LiftedOperator& op : domain.operators) {
    for (const Literal& e : op.effects) changed.insert(e.predicate);
  }
  std::set<std::string> out;
  for (const PredicateDecl& p : domain.predicates) {
    if (!changed.count(p.name)) out.insert(p.name);
  }
  return out;
}

void CheckLiteral(const std::vector<PredicateDecl>& predicates,
                  const Literal& literal,
                  const std::vector<Symbol>* variable_types) {
  auto it = std::find_if(
      predicates.begin(), predicates.end(),
      [&](const PredicateDecl& p) { return p.name == literal.predicate; });
  if (it == predicates.end()) {
    throw Error("UnknownPredicate", "unknown predicate '" + literal.predicate +
                                        "' in " + ToString(literal));
  }
  if (it->params.size() != literal.args.size()) {
    throw Error("ArityError",
                ToString(literal) + ": predicate " + literal.predicate +
                    " takes " + std::to_string(it->params.size()) +
                    " arguments");
  }
  if (variable_types == nullptr) return;
  for (std::size_t i = 0; i < literal.args.size(); ++i) {
    const std::string& arg = literal.args[i];
    if (!IsVariable(arg)) continue;
    auto var = std::find_if(variable_types->begin(), variable_types->end(),
                            [&](const Symbol& s) { return s.name == arg; });
    if (var == variable_types->end()) {
      throw Error("UndeclaredParameter",
                  ToString(literal) + " uses undeclared parameter " + arg);
    }
    if (var->type != it->params[i].type) {
      throw Error("TypeMismatch", ToString(literal) + ": " + arg + " is " +
                                      var->type + ", slot expects " +
                                      it->params[i].type);
    }
  }
}

void Validate(const DomainDef& domain) {
  CheckName(domain.name);
  std::set<std::string> names;
  for (const std::string& t : domain.types) CheckName(t);
  for (const PredicateDecl& p : domain.predicates) {
    CheckName(p.name);
    if (IsReservedWord(p.name)) {
      throw Error("InvalidName", "reserved word used as predicate: " + p.name);
    }
    if (!names.insert(p.name).second) {
      throw Error("DuplicatePredicate", "duplicate predicate " + p.name);
    }
    CheckParameters(p.params, p.name);
  }
  names.clear();
  for (const LiftedOperator& op : domain.operators) {
    if (!names.insert(op.name).second) {
      throw Error("DuplicateOperator", "duplicate operator " + op.name);
    }
    Validate(op);
    for (const Literal& l : op.preconditions) {
      CheckLiteral(domain.predicates, l, &op.parameters);
    }
    for (const Literal& l : op.effects) {
      CheckLiteral(domain.predicates, l, &op.parameters);
    }
  }
  for (const std::string& s : domain.static_predicates) {
    if (domain.FindPredicate(s) == nullptr) {
      throw Error("UnknownPredicate", "static predicate " + s +
                                          " is not declared");
    }
  }
}

void Validate(const ProblemDef& problem, const DomainDef* domain) {
  CheckName(problem.name);
  std::set<std::string> objects;
  for (const Symbol& o : problem.objects) {
    CheckName(o.name);
    CheckName(o.type);
    if (o.is_variable()) {
      throw Error("InvalidName", "object " + o.name + " cannot be a variable");
    }
    if (!objects.insert(o.name).second) {
      throw Error("DuplicateObject", "duplicate object " + o.name);
    }
  }
  auto check = [&](const Literal& l) {
    if (!l.IsGround()) {
      throw Error("NonGroundLiteral", "problem literal must be ground: " +
                                          ToString(l));
    }
    for (const std::string& a : l.args) {
      if (!objects.count(a)) {
        throw Error("UndeclaredObject",
                    ToString(l) + " uses undeclared object " + a);
      }
    }
    if (domain != nullptr) CheckLiteral(domain->predicates, l);
  };
  for (const Literal& l : problem.init) check(l);
  for (const Literal& l : problem.goal) check(l);
}

}  // namespace pbd
