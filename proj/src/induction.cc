/**
 * induction.cc
 */

#include "pbd/induction.h"

#include <algorithm>
#include <iterator>
#include <optional>

#include "pbd/error.h"

namespace pbd {

namespace {

std::string TypeAbbreviation(const std::string& type) {
  if (type == kObjectType) return "obj";
  if (type == kPositionType) return "pos";
  if (type == kColorType) return "col";
  return type;
}

bool Mentions(const Literal& l, const std::string& symbol) {
  return std::find(l.args.begin(), l.args.end(), symbol) != l.args.end();
}

// `added` is the new value of a fluent whose old value is in `removed`.
bool IsFluentUpdate(const Literal& added, const LiteralSet& removed) {
  for (const Literal& r : removed) {
    if (r.predicate != added.predicate || r.args.size() != added.args.size()) {
      continue;
    }
    std::size_t differing = 0;
    for (std::size_t i = 0; i < r.args.size(); ++i) {
      if (r.args[i] != added.args[i]) ++differing;
    }
    if (differing == 1 && r.args.size() >= 2) return true;
  }
  return false;
}

std::string FreshVariable(const LiftedOperator& op, const std::string& type) {
  const std::string base = "?" + TypeAbbreviation(type);
  if (op.FindParameter(base) == nullptr) return base;
  for (int i = 1;; ++i) {
    const std::string name = base + std::to_string(i);
    if (op.FindParameter(name) == nullptr) return name;
  }
}

LiftedOperator RenameParameters(const LiftedOperator& op,
                                const std::vector<Symbol>& names) {
  Binding rename;
  for (std::size_t i = 0; i < op.parameters.size(); ++i) {
    rename[op.parameters[i].name] = names[i].name;
  }
  LiftedOperator out = op;
  out.parameters = names;
  out.preconditions = Substitute(op.preconditions, rename);
  out.effects = Substitute(op.effects, rename);
  return out;
}

}  // namespace

std::string ToString(InductionMode mode) {
  return mode == InductionMode::kMinimal ? "minimal" : "full_delta";
}

InductionMode ParseInductionMode(std::string_view text) {
  if (text == "minimal") return InductionMode::kMinimal;
  if (text == "full_delta" || text == "full-delta") {
    return InductionMode::kFullDelta;
  }
  throw Error("InvalidMode", "unknown induction mode '" + std::string(text) +
                                 "'");
}

std::vector<Symbol> VariablizeArguments(
    const GroundAction& action,
    const std::map<std::string, std::string>& symbol_types) {
  std::vector<std::string> types;
  std::map<std::string, int> totals;
  for (const std::string& arg : action.args) {
    auto it = symbol_types.find(arg);
    types.push_back(it == symbol_types.end() ? std::string(kObjectType)
                                             : it->second);
    ++totals[types.back()];
  }
  std::vector<Symbol> params;
  std::map<std::string, int> seen;
  for (const std::string& type : types) {
    std::string name = "?" + TypeAbbreviation(type);
    if (totals[type] > 1) name += std::to_string(++seen[type]);
    params.push_back({name, type});
  }
  return params;
}

std::map<std::string, std::string> InferSymbolTypes(
    const std::vector<PredicateDecl>& predicates, const Demonstration& demo) {
  std::map<std::string, std::string> types;
  for (const State* state : {&demo.before, &demo.after}) {
    for (const Literal& atom : *state) {
      auto decl = std::find_if(
          predicates.begin(), predicates.end(),
          [&](const PredicateDecl& p) { return p.name == atom.predicate; });
      if (decl == predicates.end() || decl->params.size() != atom.args.size()) {
        continue;
      }
      for (std::size_t i = 0; i < atom.args.size(); ++i) {
        types.emplace(atom.args[i], decl->params[i].type);
      }
    }
  }
  for (const std::string& arg : demo.action.args) {
    types.emplace(arg, std::string(kObjectType));
  }
  return types;
}

LiftedOperator Induce(const Demonstration& demo, InductionMode mode,
                      const std::set<std::string>& static_predicates,
                      const std::map<std::string, std::string>& symbol_types) {
  const GroundAction& action = demo.action;
  for (const std::string& arg : action.args) {
    CheckName(arg);
    if (IsVariable(arg)) {
      throw Error("InvalidDemonstration",
                  "demonstrated action arguments must be constants");
    }
  }

  LiftedOperator op;
  op.name = action.operator_name;
  op.parameters = VariablizeArguments(action, symbol_types);

  // Constant -> parameter, first slot wins for repeated constants.
  Binding lift;
  for (std::size_t i = 0; i < action.args.size(); ++i) {
    lift.emplace(action.args[i], op.parameters[i].name);
  }

  const StateDiff diff = DiffStates(demo.before, demo.after);
  if (diff.empty()) {
    throw Error("EmptyDelta", ToString(action) + " changed nothing");
  }

  auto relevant = [&](const Literal& atom) {
    if (static_predicates.count(atom.predicate)) return false;
    if (mode == InductionMode::kMinimal) {
      return !action.args.empty() && Mentions(atom, action.args.front());
    }
    return true;
  };
  LiteralSet removed;
  LiteralSet added;
  for (const Literal& a : diff.removed) {
    if (relevant(a)) removed.insert(a);
  }
  for (const Literal& a : diff.added) {
    if (relevant(a)) added.insert(a);
  }

  LiteralSet preconditions;
  LiteralSet effects;
  for (const Literal& r : removed) {
    preconditions.insert(r);
    effects.insert(r.Negation());
  }
  for (const Literal& a : added) {
    effects.insert(a);
    if (!IsFluentUpdate(a, removed)) preconditions.insert(a.Negation());
  }
  if (effects.empty()) {
    throw Error("EmptyDelta", ToString(action) +
                                  " changed nothing about the manipulated "
                                  "object");
  }

  if (mode == InductionMode::kMinimal) {
    for (const Literal& atom : demo.before) {
      if (!static_predicates.count(atom.predicate)) continue;
      const bool over_args =
          std::any_of(action.args.begin(), action.args.end(),
                      [&](const std::string& a) { return Mentions(atom, a); });
      if (over_args) preconditions.insert(atom);
    }
  }

  op.preconditions = Substitute(preconditions, lift);
  op.effects = Substitute(effects, lift);
  Validate(op);
  return op;
}

std::string ToString(RefinementKind kind) {
  switch (kind) {
    case RefinementKind::kAddPrecondition:
      return "add_precondition";
    case RefinementKind::kRemovePrecondition:
      return "remove_precondition";
    case RefinementKind::kAddEffect:
      return "add_effect";
    case RefinementKind::kRemoveEffect:
      return "remove_effect";
    case RefinementKind::kGeneralizeConstant:
      return "generalize_constant";
  }
  return "";
}

RefinementKind ParseRefinementKind(std::string_view text) {
  for (RefinementKind kind :
       {RefinementKind::kAddPrecondition, RefinementKind::kRemovePrecondition,
        RefinementKind::kAddEffect, RefinementKind::kRemoveEffect,
        RefinementKind::kGeneralizeConstant}) {
    if (ToString(kind) == text) return kind;
  }
  throw Error("InvalidRefinement",
              "unknown refinement kind '" + std::string(text) + "'");
}

std::string ToString(const Refinement& refinement) {
  if (refinement.kind == RefinementKind::kGeneralizeConstant) {
    return ToString(refinement.kind) + " " + refinement.constant +
           (refinement.variable.empty() ? "" : " -> " + refinement.variable);
  }
  return ToString(refinement.kind) + " " + ToString(refinement.literal);
}

LiftedOperator Refine(const LiftedOperator& op, const Refinement& refinement,
                      const std::vector<PredicateDecl>& predicates) {
  LiftedOperator out = op;
  const Literal& literal = refinement.literal;

  switch (refinement.kind) {
    case RefinementKind::kAddPrecondition:
    case RefinementKind::kAddEffect: {
      CheckLiteral(predicates, literal, &op.parameters);
      const bool is_pre = refinement.kind == RefinementKind::kAddPrecondition;
      LiteralSet& target = is_pre ? out.preconditions : out.effects;
      if (target.count(literal)) {
        throw Error("DuplicateLiteral", ToString(literal) + " is already " +
                                            (is_pre ? "a precondition"
                                                    : "an effect"));
      }
      if (target.count(literal.Negation())) {
        throw Error("ContradictionError",
                    ToString(literal) + " contradicts " +
                        ToString(literal.Negation()));
      }
      target.insert(literal);
      break;
    }
    case RefinementKind::kRemovePrecondition:
    case RefinementKind::kRemoveEffect: {
      LiteralSet& target = refinement.kind == RefinementKind::kRemovePrecondition
                               ? out.preconditions
                               : out.effects;
      if (target.erase(literal) == 0) {
        throw Error("NoSuchLiteral", ToString(literal) + " is not in " +
                                         op.name);
      }
      break;
    }
    case RefinementKind::kGeneralizeConstant: {
      const std::string& constant = refinement.constant;
      CheckName(constant);
      if (IsVariable(constant)) {
        throw Error("InvalidRefinement", constant + " is not a constant");
      }
      // Type of the first slot the constant occupies.
      std::optional<std::string> type;
      for (const LiteralSet* set : {&op.preconditions, &op.effects}) {
        for (const Literal& l : *set) {
          for (std::size_t i = 0; i < l.args.size() && !type; ++i) {
            if (l.args[i] != constant) continue;
            auto decl = std::find_if(
                predicates.begin(), predicates.end(),
                [&](const PredicateDecl& p) { return p.name == l.predicate; });
            type = decl != predicates.end() && i < decl->params.size()
                       ? decl->params[i].type
                       : std::string(kObjectType);
          }
        }
      }
      if (!type) {
        throw Error("NoSuchConstant", constant + " does not occur in " +
                                          op.name);
      }
      const std::string variable = refinement.variable.empty()
                                       ? FreshVariable(op, *type)
                                       : refinement.variable;
      CheckName(variable);
      if (!IsVariable(variable)) {
        throw Error("InvalidRefinement", variable + " is not a variable");
      }
      if (op.FindParameter(variable) != nullptr) {
        throw Error("DuplicateParameter",
                    variable + " is already a parameter of " + op.name);
      }
      const Binding binding = {{constant, variable}};
      out.preconditions = Substitute(op.preconditions, binding);
      out.effects = Substitute(op.effects, binding);

      std::vector<Literal> uses;
      bool only_positive_preconditions = true;
      for (const Literal& l : out.preconditions) {
        if (!Mentions(l, variable)) continue;
        uses.push_back(l);
        if (l.negated) only_positive_preconditions = false;
      }
      for (const Literal& l : out.effects) {
        if (Mentions(l, variable)) only_positive_preconditions = false;
      }
      if (only_positive_preconditions && uses.size() == 1) {
        out.preconditions.erase(uses.front());
      } else {
        out.parameters.push_back({variable, *type});
      }
      break;
    }
  }
  Validate(out);
  return out;
}

LiftedOperator MergeDemonstrations(const std::vector<LiftedOperator>& ops) {
  if (ops.empty()) {
    throw Error("SignatureMismatch", "nothing to merge");
  }
  const LiftedOperator& first = ops.front();
  std::vector<LiftedOperator> aligned;
  for (const LiftedOperator& op : ops) {
    bool same = op.name == first.name &&
                op.parameters.size() == first.parameters.size();
    for (std::size_t i = 0; same && i < op.parameters.size(); ++i) {
      same = op.parameters[i].type == first.parameters[i].type;
    }
    if (!same) {
      throw Error("SignatureMismatch", op.name + "/" +
                                           std::to_string(op.parameters.size()) +
                                           " does not match " + first.name +
                                           "/" +
                                           std::to_string(
                                               first.parameters.size()));
    }
    aligned.push_back(RenameParameters(op, first.parameters));
  }

  for (const LiftedOperator& a : aligned) {
    for (const LiftedOperator& b : aligned) {
      for (const Literal& e : a.effects) {
        if (!e.negated && b.effects.count(e.Negation())) {
          throw Error("EffectConflict", ToString(e.Atom()) +
                                            " is added by one demonstration "
                                            "and deleted by another");
        }
      }
    }
  }

  LiftedOperator merged = aligned.front();
  for (std::size_t i = 1; i < aligned.size(); ++i) {
    LiteralSet pre;
    LiteralSet eff;
    std::set_intersection(merged.preconditions.begin(),
                          merged.preconditions.end(),
                          aligned[i].preconditions.begin(),
                          aligned[i].preconditions.end(),
                          std::inserter(pre, pre.end()));
    std::set_intersection(merged.effects.begin(), merged.effects.end(),
                          aligned[i].effects.begin(), aligned[i].effects.end(),
                          std::inserter(eff, eff.end()));
    merged.preconditions = std::move(pre);
    merged.effects = std::move(eff);
  }
  Validate(merged);
  return merged;
}

}  // namespace pbd
