// Independent oracles and random generators for the test suites.
//
// Nothing here calls the planner, the simulator or the literal machinery
// under test: the placement BFS works on plain integer vectors and the plan
// replayer on literal text.

#ifndef PBD_TESTS_ORACLE_H_
#define PBD_TESTS_ORACLE_H_

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pbd/domain.h"
#include "pbd/state.h"

namespace oracle {

// --- Tabletop instances -----------------------------------------------------

// A goal condition over placements: at(object, position) or empty(position),
// either polarity.
struct Condition {
  bool is_at = true;
  int object = -1;
  int position = -1;
  bool negated = false;
};

struct Instance {
  std::vector<std::string> objects;
  std::vector<std::string> positions;
  std::vector<int> placement;  // object index -> position index
  std::vector<Condition> goal;
};

inline bool Satisfied(const Instance&, const std::vector<int>& placement,
                      const Condition& c) {
  bool value;
  if (c.is_at) {
    value = placement[c.object] == c.position;
  } else {
    value = true;
    for (int p : placement) value = value && p != c.position;
  }
  return value != c.negated;
}

inline bool GoalHolds(const Instance& inst, const std::vector<int>& placement) {
  for (const Condition& c : inst.goal) {
    if (!Satisfied(inst, placement, c)) return false;
  }
  return true;
}

// Breadth-first search over placements with single-occupancy moves. Returns
// the optimal plan length, or nullopt when the goal is unreachable.
inline std::optional<int> ShortestPlanLength(const Instance& inst) {
  std::map<std::vector<int>, int> depth;
  std::queue<std::vector<int>> frontier;
  depth[inst.placement] = 0;
  frontier.push(inst.placement);
  while (!frontier.empty()) {
    std::vector<int> current = frontier.front();
    frontier.pop();
    const int d = depth[current];
    if (GoalHolds(inst, current)) return d;
    std::vector<bool> occupied(inst.positions.size(), false);
    for (int p : current) occupied[p] = true;
    for (std::size_t o = 0; o < current.size(); ++o) {
      for (std::size_t p = 0; p < inst.positions.size(); ++p) {
        if (occupied[p]) continue;
        std::vector<int> next = current;
        next[o] = static_cast<int>(p);
        if (depth.emplace(next, d + 1).second) frontier.push(next);
      }
    }
  }
  return std::nullopt;
}

inline std::string AtText(const Instance& inst, int o, int p) {
  return "at(" + inst.objects[o] + "," + inst.positions[p] + ")";
}

inline std::string ConditionText(const Instance& inst, const Condition& c) {
  const std::string atom = c.is_at ? AtText(inst, c.object, c.position)
                                   : "empty(" + inst.positions[c.position] + ")";
  return c.negated ? "not " + atom : atom;
}

// Literal text of the placement: at/empty atoms plus one color per object.
inline std::set<std::string> PlacementAtoms(const Instance& inst,
                                            const std::vector<int>& placement) {
  std::set<std::string> atoms;
  std::vector<bool> occupied(inst.positions.size(), false);
  for (std::size_t o = 0; o < placement.size(); ++o) {
    atoms.insert(AtText(inst, static_cast<int>(o), placement[o]));
    atoms.insert("color(" + inst.objects[o] + "," +
                 (o % 2 == 0 ? "red" : "blue") + ")");
    occupied[placement[o]] = true;
  }
  for (std::size_t p = 0; p < inst.positions.size(); ++p) {
    if (!occupied[p]) atoms.insert("empty(" + inst.positions[p] + ")");
  }
  return atoms;
}

// Up to `max_objects` objects on up to `max_positions` positions with a
// random goal of 1-3 conditions. Goals may be unsatisfiable (two objects on
// one position, or a full table with an empty() goal).
inline Instance RandomInstance(std::mt19937& rng, int max_objects = 5,
                               int max_positions = 6) {
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  Instance inst;
  const int positions = uniform(2, max_positions);
  const int objects = uniform(1, std::min(max_objects, positions));
  for (int p = 0; p < positions; ++p) {
    inst.positions.push_back("p" + std::to_string(p));
  }
  for (int o = 0; o < objects; ++o) {
    inst.objects.push_back("obj" + std::to_string(o));
  }
  std::vector<int> free(positions);
  for (int p = 0; p < positions; ++p) free[p] = p;
  std::shuffle(free.begin(), free.end(), rng);
  for (int o = 0; o < objects; ++o) inst.placement.push_back(free[o]);
  const int conditions = uniform(1, 3);
  for (int i = 0; i < conditions; ++i) {
    Condition c;
    c.is_at = uniform(0, 3) != 0;
    c.object = c.is_at ? uniform(0, objects - 1) : -1;
    c.position = uniform(0, positions - 1);
    c.negated = uniform(0, 5) == 0;
    inst.goal.push_back(c);
  }
  return inst;
}

// --- Text-level plan replay -------------------------------------------------

// Replaces whole `?var` tokens inside literal text.
inline std::string SubstituteText(const std::string& text,
                                  const std::map<std::string, std::string>& b) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '?') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != ',' && text[j] != ')') ++j;
      const std::string var = text.substr(i, j - i);
      auto it = b.find(var);
      out += it == b.end() ? var : it->second;
      i = j;
    } else {
      out += text[i++];
    }
  }
  return out;
}

struct TextOperator {
  std::vector<std::string> parameters;
  std::vector<std::string> preconditions;  // "p(...)" or "not p(...)"
  std::vector<std::string> effects;
};

struct ReplayResult {
  bool executable = true;
  int failing_step = -1;
  std::vector<std::string> unsatisfied;
  std::set<std::string> final_state;
};

inline bool Negated(const std::string& lit) { return lit.rfind("not ", 0) == 0; }
inline std::string AtomOf(const std::string& lit) {
  return Negated(lit) ? lit.substr(4) : lit;
}

// Steps are (operator, args). Closed-world: a negative literal holds when
// its atom is absent.
inline ReplayResult Replay(
    const std::map<std::string, TextOperator>& ops,
    std::set<std::string> state,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& steps) {
  ReplayResult result;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const TextOperator& op = ops.at(steps[i].first);
    std::map<std::string, std::string> binding;
    for (std::size_t k = 0; k < op.parameters.size(); ++k) {
      binding[op.parameters[k]] = steps[i].second[k];
    }
    for (const std::string& pre : op.preconditions) {
      const std::string ground = SubstituteText(pre, binding);
      const bool present = state.count(AtomOf(ground)) > 0;
      if (present == Negated(ground)) result.unsatisfied.push_back(ground);
    }
    if (!result.unsatisfied.empty()) {
      result.executable = false;
      result.failing_step = static_cast<int>(i);
      break;
    }
    std::set<std::string> next = state;
    for (const std::string& eff : op.effects) {
      const std::string ground = SubstituteText(eff, binding);
      if (Negated(ground)) next.erase(AtomOf(ground));
    }
    for (const std::string& eff : op.effects) {
      const std::string ground = SubstituteText(eff, binding);
      if (!Negated(ground)) next.insert(ground);
    }
    state = std::move(next);
  }
  result.final_state = std::move(state);
  return result;
}

// The corrected moveObject operator in text form.
inline TextOperator RefinedMoveText() {
  return {{"?obj", "?pos1", "?pos2"},
          {"at(?obj,?pos1)", "not empty(?pos1)", "empty(?pos2)"},
          {"not at(?obj,?pos1)", "at(?obj,?pos2)", "empty(?pos1)",
           "not empty(?pos2)"}};
}

// --- Random PDDL structures -------------------------------------------------

class PddlGenerator {
 public:
  explicit PddlGenerator(unsigned seed) : rng_(seed) {}

  int Uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  std::string Name(const std::string& prefix) {
    static const std::string kChars =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-";
    std::string name = prefix;
    const int extra = Uniform(0, 4);
    for (int i = 0; i < extra; ++i) {
      name += kChars[Uniform(0, static_cast<int>(kChars.size()) - 1)];
    }
    return name + std::to_string(counter_++);
  }

  pbd::DomainDef Domain() {
    pbd::DomainDef d;
    d.name = Name("dom");
    const int types = Uniform(1, 3);
    for (int i = 0; i < types; ++i) d.types.push_back(Name("T"));
    const int predicates = Uniform(0, 5);
    for (int i = 0; i < predicates; ++i) {
      pbd::PredicateDecl decl{Name("pred"), {}};
      const int arity = Uniform(0, 3);
      for (int k = 0; k < arity; ++k) {
        decl.params.push_back({"?v" + std::to_string(k), Pick(d.types)});
      }
      d.predicates.push_back(decl);
    }
    const int operators = d.predicates.empty() ? 0 : Uniform(0, 3);
    for (int i = 0; i < operators; ++i) d.operators.push_back(Operator(d));
    d.static_predicates = pbd::DeriveStaticPredicates(d);
    return d;
  }

  pbd::ProblemDef Problem(const pbd::DomainDef& d) {
    pbd::ProblemDef p;
    p.name = Name("prob");
    p.domain_name = d.name;
    const int objects = Uniform(0, 5);
    for (int i = 0; i < objects; ++i) {
      p.objects.push_back({Name("o"), Pick(d.types)});
    }
    if (p.objects.empty()) return p;
    for (int i = 0; i < Uniform(0, 6); ++i) {
      if (auto l = GroundLiteral(d, p.objects, false)) p.init.Insert(*l);
    }
    for (int i = 0; i < Uniform(0, 4); ++i) {
      auto l = GroundLiteral(d, p.objects, Uniform(0, 2) == 0);
      if (l && !p.goal.count(l->Negation())) p.goal.insert(*l);
    }
    return p;
  }

 private:
  template <typename T>
  const T& Pick(const std::vector<T>& v) {
    return v[Uniform(0, static_cast<int>(v.size()) - 1)];
  }

  pbd::LiftedOperator Operator(const pbd::DomainDef& d) {
    pbd::LiftedOperator op;
    op.name = Name("act");
    const int params = Uniform(0, 3);
    for (int i = 0; i < params; ++i) {
      op.parameters.push_back({"?" + Name("x"), Pick(d.types)});
    }
    for (int i = 0; i < Uniform(0, 4); ++i) {
      pbd::Literal l = LiftedLiteral(d, op, Uniform(0, 2) == 0);
      if (!op.preconditions.count(l.Negation())) op.preconditions.insert(l);
    }
    for (int i = 0; i < Uniform(0, 4); ++i) {
      pbd::Literal l = LiftedLiteral(d, op, Uniform(0, 1) == 0);
      if (!op.effects.count(l.Negation())) op.effects.insert(l);
    }
    return op;
  }

  pbd::Literal LiftedLiteral(const pbd::DomainDef& d,
                             const pbd::LiftedOperator& op, bool negated) {
    const pbd::PredicateDecl& decl = Pick(d.predicates);
    pbd::Literal l(decl.name, {}, negated);
    for (const pbd::Symbol& slot : decl.params) {
      std::vector<std::string> candidates;
      for (const pbd::Symbol& p : op.parameters) {
        if (p.type == slot.type) candidates.push_back(p.name);
      }
      if (candidates.empty() || Uniform(0, 4) == 0) {
        candidates.push_back("k" + std::to_string(Uniform(0, 2)));
      }
      l.args.push_back(Pick(candidates));
    }
    return l;
  }

  std::optional<pbd::Literal> GroundLiteral(
      const pbd::DomainDef& d, const std::vector<pbd::Symbol>& objects,
      bool negated) {
    if (d.predicates.empty()) return std::nullopt;
    const pbd::PredicateDecl& decl = Pick(d.predicates);
    pbd::Literal l(decl.name, {}, negated);
    for (const pbd::Symbol& slot : decl.params) {
      std::vector<std::string> candidates;
      for (const pbd::Symbol& o : objects) {
        if (o.type == slot.type) candidates.push_back(o.name);
      }
      if (candidates.empty()) return std::nullopt;
      l.args.push_back(Pick(candidates));
    }
    return l;
  }

  std::mt19937 rng_;
  int counter_ = 0;
};

}  // namespace oracle

#endif  // PBD_TESTS_ORACLE_H_
