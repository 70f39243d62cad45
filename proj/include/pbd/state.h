/**
 * state.h
 *
 * Symbols, literals, closed-world states and ground actions.
 */

#ifndef PBD_STATE_H_
#define PBD_STATE_H_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pbd {

// Builtin type names used by the tabletop world.
inline constexpr std::string_view kObjectType = "object";
inline constexpr std::string_view kPositionType = "position";
inline constexpr std::string_view kColorType = "color";

/// True iff `name` is a variable (starts with `?`).
inline bool IsVariable(std::string_view name) {
  return !name.empty() && name.front() == '?';
}

/// True iff `name` matches `\??[A-Za-z0-9_-]+`.
bool IsValidName(std::string_view name);

/// Throws Error("InvalidName") unless IsValidName(name).
void CheckName(std::string_view name);

/// PDDL connectives that cannot name a predicate.
bool IsReservedWord(std::string_view name);

/// A declared name together with its type, e.g. `redObj - object` or
/// `?pos1 - position`.
struct Symbol {
  std::string name;
  std::string type;

  bool is_variable() const { return IsVariable(name); }

  auto operator<=>(const Symbol&) const = default;
};

/// Predicate atom with a polarity. Ordering is lexicographic by predicate,
/// then arguments, then polarity (positive first).
struct Literal {
  std::string predicate;
  std::vector<std::string> args;
  bool negated = false;

  Literal() = default;
  Literal(std::string predicate, std::vector<std::string> args,
          bool negated = false)
      : predicate(std::move(predicate)),
        args(std::move(args)),
        negated(negated) {}

  bool IsGround() const;

  /// Same atom, positive polarity.
  Literal Atom() const { return Literal(predicate, args, false); }
  Literal Negation() const { return Literal(predicate, args, !negated); }

  auto operator<=>(const Literal&) const = default;
};

using LiteralSet = std::set<Literal>;

/// Canonical text: `pred(a,b)` or `not pred(a,b)`.
std::string ToString(const Literal& literal);

/// Parses the canonical text form. Also accepts `¬pred(a)`, `not(pred(a))`
/// and a bare `pred` for nullary predicates.
Literal ParseLiteral(std::string_view text);

std::vector<std::string> ToStrings(const LiteralSet& literals);
LiteralSet ParseLiterals(const std::vector<std::string>& texts);

/// Variable (or constant) substitution.
using Binding = std::map<std::string, std::string>;

Literal Substitute(const Literal& literal, const Binding& binding);
LiteralSet Substitute(const LiteralSet& literals, const Binding& binding);

/// Closed-world state: a set of positive ground atoms.
class State {
 public:
  using const_iterator = LiteralSet::const_iterator;

  State() = default;
  State(std::initializer_list<Literal> atoms);
  explicit State(const LiteralSet& atoms);

  /// Inserts a positive ground atom. Throws Error("NonGroundLiteral") or
  /// Error("NegativeAtom").
  void Insert(const Literal& atom);
  void Erase(const Literal& atom) { atoms_.erase(atom.Atom()); }

  bool Contains(const Literal& atom) const {
    return atoms_.count(atom.Atom()) > 0;
  }

  const LiteralSet& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const_iterator begin() const { return atoms_.begin(); }
  const_iterator end() const { return atoms_.end(); }

  bool operator==(const State&) const = default;

 private:
  LiteralSet atoms_;
};

std::vector<std::string> ToStrings(const State& state);

/// Closed-world query. Throws Error("NonGroundLiteral") for non-ground input.
bool Holds(const State& state, const Literal& literal);

/// Ground literals of `literals` that do not hold in `state`.
std::vector<Literal> Unsatisfied(const State& state, const LiteralSet& literals);

struct StateDiff {
  LiteralSet added;
  LiteralSet removed;

  bool empty() const { return added.empty() && removed.empty(); }
  bool operator==(const StateDiff&) const = default;
};

/// added = after \ before, removed = before \ after.
StateDiff DiffStates(const State& before, const State& after);

/// Operator name applied to constant arguments, e.g. `moveObject(redObj,D,A)`.
struct GroundAction {
  std::string operator_name;
  std::vector<std::string> args;

  auto operator<=>(const GroundAction&) const = default;
};

std::string ToString(const GroundAction& action);
GroundAction ParseGroundAction(std::string_view text);

}  // namespace pbd

#endif  // PBD_STATE_H_
