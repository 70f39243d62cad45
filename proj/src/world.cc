/**
 * world.cc
 */

#include "pbd/world.h"

#include <algorithm>
#include <optional>

#include "pbd/error.h"

namespace pbd {

namespace {

constexpr char kAt[] = "at";
constexpr char kEmpty[] = "empty";

bool Contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// Position -> occupying object, read from `at` atoms.
std::map<std::string, std::string> Occupancy(const State& state) {
  std::map<std::string, std::string> out;
  for (const Literal& a : state) {
    if (a.predicate == kAt && a.args.size() == 2) out[a.args[1]] = a.args[0];
  }
  return out;
}

void RederiveEmpty(const WorldConfig& config, State& state) {
  const auto occupancy = Occupancy(state);
  for (const std::string& p : config.positions) {
    const Literal empty(kEmpty, {p});
    if (occupancy.count(p)) {
      state.Erase(empty);
    } else {
      state.Insert(empty);
    }
  }
}

}  // namespace

void Validate(const WorldConfig& config) {
  CheckName(config.domain_name);
  std::set<std::string> declared;
  auto declare = [&](const std::string& name) {
    CheckName(name);
    if (IsVariable(name)) {
      throw Error("InvalidName", "world symbol " + name + " is a variable");
    }
    if (!declared.insert(name).second) {
      throw Error("DuplicateSymbol", "symbol " + name + " declared twice");
    }
  };
  for (const std::string& p : config.positions) declare(p);
  for (const std::string& o : config.objects) declare(o);

  std::map<std::string, std::string> occupant;
  for (const auto& [object, position] : config.initial_placement) {
    if (!Contains(config.objects, object)) {
      throw Error("UnknownSymbol", "placement of undeclared object " + object);
    }
    if (!Contains(config.positions, position)) {
      throw Error("UnknownSymbol",
                  "placement on undeclared position " + position);
    }
    auto [it, inserted] = occupant.emplace(position, object);
    if (!inserted) {
      throw Error("DuplicatePlacement", "objects " + it->second + " and " +
                                            object + " share position " +
                                            position);
    }
  }
  for (const std::string& o : config.objects) {
    if (!config.initial_placement.count(o)) {
      throw Error("UnplacedObject", "object " + o + " has no position");
    }
  }

  for (const std::string& s : config.static_predicates) {
    CheckName(s);
    if (s == kAt || s == kEmpty) {
      throw Error("InvalidStaticFact", s + " is a fluent, not static");
    }
  }
  for (const Literal& fact : config.static_facts) {
    if (fact.negated || !fact.IsGround()) {
      throw Error("InvalidStaticFact",
                  "static fact must be positive and ground: " +
                      ToString(fact));
    }
    if (!config.static_predicates.count(fact.predicate)) {
      throw Error("InvalidStaticFact", "predicate of " + ToString(fact) +
                                           " is not declared static");
    }
    for (const std::string& a : fact.args) CheckName(a);
  }
  WorldPredicates(config);  // slot-type consistency
}

State MakeState(const WorldConfig& config) {
  Validate(config);
  State state;
  for (const auto& [object, position] : config.initial_placement) {
    state.Insert(Literal(kAt, {object, position}));
  }
  for (const Literal& fact : config.static_facts) state.Insert(fact);
  RederiveEmpty(config, state);
  return state;
}

std::map<std::string, std::string> SymbolTypes(const WorldConfig& config) {
  std::map<std::string, std::string> types;
  for (const std::string& o : config.objects) types[o] = kObjectType;
  for (const std::string& p : config.positions) types[p] = kPositionType;
  for (const Literal& fact : config.static_facts) {
    for (const std::string& a : fact.args) {
      types.emplace(a, std::string(kColorType));
    }
  }
  return types;
}

std::vector<Symbol> DeclaredSymbols(const WorldConfig& config) {
  std::vector<Symbol> out;
  for (const std::string& o : config.objects) {
    out.push_back({o, std::string(kObjectType)});
  }
  for (const std::string& p : config.positions) {
    out.push_back({p, std::string(kPositionType)});
  }
  const auto types = SymbolTypes(config);
  std::set<std::string> seen(config.objects.begin(), config.objects.end());
  seen.insert(config.positions.begin(), config.positions.end());
  for (const Literal& fact : config.static_facts) {
    for (const std::string& a : fact.args) {
      if (seen.insert(a).second) out.push_back({a, types.at(a)});
    }
  }
  return out;
}

std::vector<PredicateDecl> WorldPredicates(const WorldConfig& config) {
  std::vector<PredicateDecl> out = {
      {kAt, {{"?obj", std::string(kObjectType)},
             {"?pos", std::string(kPositionType)}}},
      {kEmpty, {{"?pos", std::string(kPositionType)}}},
  };
  const auto types = SymbolTypes(config);
  for (const std::string& name : config.static_predicates) {
    std::optional<std::vector<std::string>> slot_types;
    for (const Literal& fact : config.static_facts) {
      if (fact.predicate != name) continue;
      std::vector<std::string> these;
      for (const std::string& a : fact.args) these.push_back(types.at(a));
      if (slot_types && *slot_types != these) {
        throw Error("InvalidStaticFact",
                    "inconsistent argument types for " + name);
      }
      slot_types = std::move(these);
    }
    if (!slot_types) continue;  // no facts, arity unknown
    PredicateDecl decl{name, {}};
    std::map<std::string, int> counts;
    for (const std::string& t : *slot_types) {
      decl.params.push_back(
          {"?" + t.substr(0, 1) + std::to_string(++counts[t.substr(0, 1)]),
           t});
    }
    out.push_back(std::move(decl));
  }
  return out;
}

State WorldExecute(const WorldConfig& config, const State& state,
                   const GroundAction& action) {
  const auto types = SymbolTypes(config);
  auto type_of = [&](const std::string& s) -> std::string {
    auto it = types.find(s);
    return it == types.end() ? "" : it->second;
  };
  if (action.args.size() != 3 || type_of(action.args[0]) != kObjectType ||
      type_of(action.args[1]) != kPositionType ||
      type_of(action.args[2]) != kPositionType) {
    throw Error("UnsupportedAction",
                ToString(action) +
                    " is not a move(object, position, position) over declared "
                    "symbols");
  }
  const std::string& object = action.args[0];
  const std::string& from = action.args[1];
  const std::string& to = action.args[2];

  if (!state.Contains(Literal(kAt, {object, from}))) {
    throw ConstraintViolation(ToString(Literal("not_at", {object, from})));
  }
  if (Occupancy(state).count(to)) {
    throw ConstraintViolation(ToString(Literal("occupied", {to})));
  }
  State next = state;
  next.Erase(Literal(kAt, {object, from}));
  next.Insert(Literal(kAt, {object, to}));
  RederiveEmpty(config, next);
  return next;
}

void AddPosition(WorldConfig& config, State& state, const std::string& name) {
  WorldConfig updated = config;
  updated.positions.push_back(name);
  Validate(updated);
  config = std::move(updated);
  state.Insert(Literal(kEmpty, {name}));
}

bool IsConsistentWorldState(const WorldConfig& config, const State& state) {
  std::map<std::string, int> object_count;
  std::map<std::string, int> position_count;
  for (const Literal& a : state) {
    if (a.predicate != kAt) continue;
    if (a.args.size() != 2) return false;
    ++object_count[a.args[0]];
    ++position_count[a.args[1]];
  }
  for (const std::string& o : config.objects) {
    if (object_count[o] != 1) return false;
  }
  for (const std::string& p : config.positions) {
    if (position_count[p] > 1) return false;
    const bool empty = state.Contains(Literal(kEmpty, {p}));
    if (empty != (position_count[p] == 0)) return false;
  }
  for (const Literal& fact : config.static_facts) {
    if (!state.Contains(fact)) return false;
  }
  return true;
}

}  // namespace pbd
