/**
 * pddl.h
 *
 * Reader and writer for the STRIPS subset with typing and negative
 * preconditions. Supported requirement flags: `:strips`, `:typing`,
 * `:negative-preconditions`; anything richer raises
 * Error("UnsupportedFeature").
 *
 * Output is deterministic: two-space indentation, lowercase keywords, one
 * literal per line inside `and`, literals in canonical order, operators and
 * declarations in insertion order.
 */

#ifndef PBD_PDDL_H_
#define PBD_PDDL_H_

#include <string>
#include <string_view>

#include "pbd/domain.h"

namespace pbd {

/// Parses a domain. `static_predicates` is derived: declared predicates that
/// no operator effect mentions. Throws ParseError (with position),
/// Error("UnsupportedFeature"), Error("UnknownPredicate"), Error("ArityError").
DomainDef ParseDomain(std::string_view text);

std::string EmitDomain(const DomainDef& domain);

/// A single `(:action ...)` block at top-level indentation.
std::string EmitOperator(const LiftedOperator& op);

/// Parses a problem. Throws ParseError or Error("UndeclaredObject").
ProblemDef ParseProblem(std::string_view text);

std::string EmitProblem(const ProblemDef& problem);

/// Collapses whitespace runs to one space and drops spaces next to
/// parentheses, for golden-file comparison.
std::string NormalizeWhitespace(std::string_view text);

}  // namespace pbd

#endif  // PBD_PDDL_H_
