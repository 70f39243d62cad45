/**
 * world.h
 *
 * Ground-truth tabletop simulator. Objects sit on positions, at most one per
 * position; `empty(p)` is re-derived after every move. The learned model is
 * never consulted here.
 */

#ifndef PBD_WORLD_H_
#define PBD_WORLD_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pbd/domain.h"
#include "pbd/state.h"

namespace pbd {

struct WorldConfig {
  std::string domain_name = "tabletop";
  std::vector<std::string> positions;
  std::vector<std::string> objects;
  LiteralSet static_facts;                 // e.g. color(redObj,red)
  std::set<std::string> static_predicates;  // e.g. {color}
  std::map<std::string, std::string> initial_placement;  // object -> position

  bool operator==(const WorldConfig&) const = default;
};

/// Throws Error on any invariant violation (DuplicatePlacement, UnplacedObject,
/// UnknownSymbol, DuplicateSymbol, InvalidStaticFact, InvalidName).
void Validate(const WorldConfig& config);

/// `at(o,p)` per placement, `empty(p)` per unoccupied position, plus the
/// static facts.
State MakeState(const WorldConfig& config);

/// Declared symbol types: objects, positions, and every other constant in the
/// static facts as a color.
std::map<std::string, std::string> SymbolTypes(const WorldConfig& config);

/// Typed symbol list in declaration order: objects, positions, colors.
std::vector<Symbol> DeclaredSymbols(const WorldConfig& config);

/// `at(?obj - object, ?pos - position)`, `empty(?pos - position)`, and one
/// declaration per static predicate with slot types taken from its facts.
std::vector<PredicateDecl> WorldPredicates(const WorldConfig& config);

/// Physical move. The action's arguments must be (object, position,
/// position); the operator name is irrelevant to the physics. Throws
/// ConstraintViolation(`not_at(o,p1)`) or ConstraintViolation(`occupied(p2)`),
/// or Error("UnsupportedAction") for anything that is not a move.
State WorldExecute(const WorldConfig& config, const State& state,
                   const GroundAction& action);

/// Appends an unoccupied position to a running world.
void AddPosition(WorldConfig& config, State& state, const std::string& name);

/// True iff `state` satisfies the occupancy invariants for `config`.
bool IsConsistentWorldState(const WorldConfig& config, const State& state);

}  // namespace pbd

#endif  // PBD_WORLD_H_
