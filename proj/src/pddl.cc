/**
 * pddl.cc
 */

#include "pbd/pddl.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <vector>

#include "pbd/error.h"

namespace pbd {

namespace {

constexpr std::size_t kMaxDepth = 256;

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr ReadTop() {
    SkipSpace();
    if (AtEnd()) Fail("'('");
    SExpr expr = Read(0);
    if (!expr.is_list) FailAt(expr, "'('");
    SkipSpace();
    if (!AtEnd()) Fail("end of input");
    return expr;
  }

 private:
  SExpr Read(std::size_t depth) {
    if (depth > kMaxDepth) Fail("shallower nesting");
    SkipSpace();
    if (AtEnd()) Fail("expression");
    SExpr expr;
    expr.line = line_;
    expr.column = column_;
    const char c = text_[pos_];
    if (c == ')') Fail("expression");
    if (c == '(') {
      expr.is_list = true;
      Advance();
      while (true) {
        SkipSpace();
        if (AtEnd()) Fail("')'");
        if (text_[pos_] == ')') {
          Advance();
          return expr;
        }
        expr.items.push_back(Read(depth + 1));
      }
    }
    while (!AtEnd()) {
      const char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' ||
          std::isspace(static_cast<unsigned char>(d))) {
        break;
      }
      expr.atom += d;
      Advance();
    }
    return expr;
  }

  void SkipSpace() {
    while (!AtEnd()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (!AtEnd() && text_[pos_] != '\n') Advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else {
        break;
      }
    }
  }

  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool AtEnd() const { return pos_ >= text_.size(); }

  [[noreturn]] void Fail(const std::string& expected) const {
    throw ParseError(line_, column_, expected);
  }
  [[noreturn]] static void FailAt(const SExpr& e, const std::string& expected) {
    throw ParseError(e.line, e.column, expected);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

[[noreturn]] void FailAt(const SExpr& e, const std::string& expected) {
  throw ParseError(e.line, e.column, expected);
}

[[noreturn]] void Unsupported(const SExpr& e, const std::string& what) {
  throw Error("UnsupportedFeature",
              "line " + std::to_string(e.line) + ", column " +
                  std::to_string(e.column) + ": unsupported " + what);
}

const std::string& AtomOf(const SExpr& e, const std::string& expected) {
  if (e.is_list) FailAt(e, expected);
  return e.atom;
}

std::string NameOf(const SExpr& e, const std::string& expected) {
  const std::string& a = AtomOf(e, expected);
  if (!IsValidName(a)) FailAt(e, expected);
  return a;
}

bool IsKeyword(const SExpr& e, std::string_view keyword) {
  return !e.is_list && Lower(e.atom) == keyword;
}

const SExpr& ExpectList(const SExpr& e, const std::string& expected) {
  if (!e.is_list) FailAt(e, expected);
  return e;
}

// `a b - t c` with `default_type` for trailing untyped names.
std::vector<Symbol> ParseTypedList(const std::vector<SExpr>& items,
                                   std::size_t begin, bool variables,
                                   const std::string& default_type) {
  std::vector<Symbol> out;
  std::vector<Symbol> pending;
  const std::string what = variables ? "variable" : "name";
  for (std::size_t i = begin; i < items.size(); ++i) {
    const SExpr& e = items[i];
    if (IsKeyword(e, "-")) {
      if (pending.empty() || i + 1 >= items.size()) FailAt(e, what);
      const SExpr& type = items[++i];
      if (type.is_list) Unsupported(type, "either-types");
      const std::string t = NameOf(type, "type name");
      if (IsVariable(t)) FailAt(type, "type name");
      for (Symbol& s : pending) s.type = t;
      out.insert(out.end(), pending.begin(), pending.end());
      pending.clear();
      continue;
    }
    const std::string name = NameOf(e, what);
    if (IsVariable(name) != variables) FailAt(e, what);
    pending.push_back({name, default_type});
  }
  out.insert(out.end(), pending.begin(), pending.end());
  return out;
}

Literal ParseAtomExpr(const SExpr& e, bool allow_variables) {
  ExpectList(e, "literal");
  if (e.items.empty()) FailAt(e, "predicate name");
  const SExpr& head = e.items.front();
  if (head.is_list) FailAt(head, "predicate name");
  const std::string lower = Lower(head.atom);
  if (lower == "not" || lower == "and") FailAt(head, "predicate name");
  if (lower == "or" || lower == "forall" || lower == "exists" ||
      lower == "when" || lower == "imply" || lower == "=") {
    Unsupported(head, "'" + head.atom + "' expression");
  }
  Literal literal;
  literal.predicate = NameOf(head, "predicate name");
  if (IsVariable(literal.predicate)) FailAt(head, "predicate name");
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& arg = e.items[i];
    if (arg.is_list) FailAt(arg, "argument name");
    literal.args.push_back(NameOf(arg, "argument name"));
    if (!allow_variables && IsVariable(literal.args.back())) {
      FailAt(arg, "constant");
    }
  }
  return literal;
}

Literal ParseLiteralExpr(const SExpr& e, bool allow_variables) {
  ExpectList(e, "literal");
  if (!e.items.empty() && IsKeyword(e.items.front(), "not")) {
    if (e.items.size() != 2) FailAt(e, "(not (<atom>))");
    return ParseAtomExpr(e.items[1], allow_variables).Negation();
  }
  return ParseAtomExpr(e, allow_variables);
}

// Literals of a conjunction. Accepts `(and ...)`, a single literal, `()`, and
// the compact `not(p ?x)` spelling inside `and`.
std::vector<std::pair<Literal, const SExpr*>> ParseConjunction(
    const SExpr& e, bool allow_variables) {
  std::vector<std::pair<Literal, const SExpr*>> out;
  ExpectList(e, "'('");
  if (e.items.empty()) return out;
  if (!IsKeyword(e.items.front(), "and")) {
    out.emplace_back(ParseLiteralExpr(e, allow_variables), &e);
    return out;
  }
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& item = e.items[i];
    if (IsKeyword(item, "not")) {
      if (i + 1 >= e.items.size() || !e.items[i + 1].is_list) {
        FailAt(item, "atom after 'not'");
      }
      out.emplace_back(ParseAtomExpr(e.items[i + 1], allow_variables).Negation(),
                       &e.items[i + 1]);
      ++i;
      continue;
    }
    if (item.is_list && !item.items.empty() &&
        IsKeyword(item.items.front(), "and")) {
      Unsupported(item, "nested 'and'");
    }
    out.emplace_back(ParseLiteralExpr(item, allow_variables), &item);
  }
  return out;
}

void ParseRequirements(const SExpr& section) {
  for (std::size_t i = 1; i < section.items.size(); ++i) {
    const std::string flag = Lower(AtomOf(section.items[i], "requirement"));
    if (flag != ":strips" && flag != ":typing" &&
        flag != ":negative-preconditions") {
      Unsupported(section.items[i], "requirement " + flag);
    }
  }
}

LiftedOperator ParseAction(const SExpr& section) {
  if (section.items.size() < 2) FailAt(section, "action name");
  LiftedOperator op;
  op.name = NameOf(section.items[1], "action name");
  if (IsVariable(op.name)) FailAt(section.items[1], "action name");

  const SExpr* precondition = nullptr;
  const SExpr* effect = nullptr;
  for (std::size_t i = 2; i < section.items.size(); i += 2) {
    const SExpr& key = section.items[i];
    const std::string k = Lower(AtomOf(key, "action keyword"));
    if (i + 1 >= section.items.size()) FailAt(key, "value for " + k);
    const SExpr& value = section.items[i + 1];
    if (k == ":parameters") {
      ExpectList(value, "parameter list");
      op.parameters = ParseTypedList(value.items, 0, true,
                                     std::string(kObjectType));
    } else if (k == ":precondition") {
      precondition = &value;
    } else if (k == ":effect") {
      effect = &value;
    } else {
      Unsupported(key, "action keyword " + k);
    }
  }

  auto collect = [&](const SExpr* e, LiteralSet& into) {
    if (e == nullptr) return;
    for (auto& [literal, where] : ParseConjunction(*e, true)) {
      for (const std::string& a : literal.args) {
        if (IsVariable(a) && op.FindParameter(a) == nullptr) {
          FailAt(*where, "declared parameter (" + a + " is not declared)");
        }
      }
      into.insert(literal);
    }
  };
  collect(precondition, op.preconditions);
  collect(effect, op.effects);
  return op;
}

std::vector<const SExpr*> DefineBody(const SExpr& top, const char* kind,
                                     std::string& name) {
  if (top.items.empty() || !IsKeyword(top.items[0], "define")) {
    FailAt(top, "'define'");
  }
  if (top.items.size() < 2) FailAt(top, "(" + std::string(kind) + " <name>)");
  const SExpr& header = top.items[1];
  if (!header.is_list || header.items.size() != 2 ||
      !IsKeyword(header.items[0], kind)) {
    FailAt(header, "(" + std::string(kind) + " <name>)");
  }
  name = NameOf(header.items[1], std::string(kind) + " name");
  std::vector<const SExpr*> sections;
  for (std::size_t i = 2; i < top.items.size(); ++i) {
    const SExpr& s = top.items[i];
    if (!s.is_list || s.items.empty() || s.items[0].is_list) {
      FailAt(s, "section");
    }
    sections.push_back(&s);
  }
  return sections;
}

void EmitTypedSymbol(std::ostringstream& out, const Symbol& s) {
  out << s.name << " - " << s.type;
}

std::string EmitAtomPddl(const Literal& l) {
  std::string atom = "(" + l.predicate;
  for (const std::string& a : l.args) atom += " " + a;
  atom += ")";
  return l.negated ? "(not " + atom + ")" : atom;
}

void EmitConjunction(std::ostringstream& out, const LiteralSet& literals,
                     const std::string& indent) {
  if (literals.empty()) {
    out << "(and)";
    return;
  }
  out << "(and";
  for (const Literal& l : literals) out << "\n" << indent << EmitAtomPddl(l);
  out << ")";
}

void EmitOperatorInto(std::ostringstream& out, const LiftedOperator& op,
                      const std::string& indent) {
  out << indent << "(:action " << op.name << "\n";
  out << indent << "  :parameters (";
  for (std::size_t i = 0; i < op.parameters.size(); ++i) {
    if (i > 0) out << " ";
    EmitTypedSymbol(out, op.parameters[i]);
  }
  out << ")\n";
  out << indent << "  :precondition ";
  EmitConjunction(out, op.preconditions, indent + "    ");
  out << "\n" << indent << "  :effect ";
  EmitConjunction(out, op.effects, indent + "    ");
  out << ")";
}

// Constants used inside operators, typed from the predicate slots.
std::vector<Symbol> OperatorConstants(const DomainDef& domain) {
  std::map<std::string, std::string> constants;
  for (const LiftedOperator& op : domain.operators) {
    for (const LiteralSet* set : {&op.preconditions, &op.effects}) {
      for (const Literal& l : *set) {
        const PredicateDecl* decl = domain.FindPredicate(l.predicate);
        for (std::size_t i = 0; i < l.args.size(); ++i) {
          if (IsVariable(l.args[i])) continue;
          const std::string type =
              decl != nullptr && i < decl->params.size()
                  ? decl->params[i].type
                  : std::string(kObjectType);
          constants.emplace(l.args[i], type);
        }
      }
    }
  }
  std::vector<Symbol> out;
  for (const auto& [name, type] : constants) out.push_back({name, type});
  return out;
}

}  // namespace

DomainDef ParseDomain(std::string_view text) {
  const SExpr top = Reader(text).ReadTop();
  DomainDef domain;
  for (const SExpr* section : DefineBody(top, "domain", domain.name)) {
    const SExpr& head = section->items[0];
    const std::string key = Lower(head.atom);
    if (key == ":requirements") {
      ParseRequirements(*section);
    } else if (key == ":types") {
      for (std::size_t i = 1; i < section->items.size(); ++i) {
        const SExpr& t = section->items[i];
        if (IsKeyword(t, "-")) Unsupported(t, "type hierarchy");
        const std::string name = NameOf(t, "type name");
        if (IsVariable(name)) FailAt(t, "type name");
        domain.types.push_back(name);
      }
    } else if (key == ":constants") {
      // Re-derived from operator literals on emission.
      ParseTypedList(section->items, 1, false, std::string(kObjectType));
    } else if (key == ":predicates") {
      for (std::size_t i = 1; i < section->items.size(); ++i) {
        const SExpr& p = ExpectList(section->items[i], "predicate declaration");
        if (p.items.empty()) FailAt(p, "predicate name");
        PredicateDecl decl;
        decl.name = NameOf(p.items[0], "predicate name");
        if (IsVariable(decl.name)) FailAt(p.items[0], "predicate name");
        decl.params =
            ParseTypedList(p.items, 1, true, std::string(kObjectType));
        domain.predicates.push_back(std::move(decl));
      }
    } else if (key == ":action") {
      domain.operators.push_back(ParseAction(*section));
    } else {
      Unsupported(head, "section " + key);
    }
  }
  domain.static_predicates = DeriveStaticPredicates(domain);
  Validate(domain);
  return domain;
}

std::string EmitOperator(const LiftedOperator& op) {
  std::ostringstream out;
  EmitOperatorInto(out, op, "");
  out << "\n";
  return out.str();
}

std::string EmitDomain(const DomainDef& domain) {
  std::ostringstream out;
  out << "(define (domain " << domain.name << ")";
  const bool has_body = !domain.types.empty() || !domain.predicates.empty() ||
                        !domain.operators.empty();
  if (has_body) {
    out << "\n  (:requirements :strips :typing :negative-preconditions)";
  }
  if (!domain.types.empty()) {
    out << "\n  (:types";
    for (const std::string& t : domain.types) out << " " << t;
    out << ")";
  }
  const std::vector<Symbol> constants = OperatorConstants(domain);
  if (!constants.empty()) {
    out << "\n  (:constants";
    for (const Symbol& c : constants) {
      out << " ";
      EmitTypedSymbol(out, c);
    }
    out << ")";
  }
  if (!domain.predicates.empty()) {
    out << "\n  (:predicates";
    for (const PredicateDecl& p : domain.predicates) {
      out << "\n    (" << p.name;
      for (const Symbol& s : p.params) {
        out << " ";
        EmitTypedSymbol(out, s);
      }
      out << ")";
    }
    out << ")";
  }
  for (const LiftedOperator& op : domain.operators) {
    out << "\n";
    EmitOperatorInto(out, op, "  ");
  }
  out << ")\n";
  return out.str();
}

ProblemDef ParseProblem(std::string_view text) {
  const SExpr top = Reader(text).ReadTop();
  ProblemDef problem;
  bool has_goal = false;
  for (const SExpr* section : DefineBody(top, "problem", problem.name)) {
    const SExpr& head = section->items[0];
    const std::string key = Lower(head.atom);
    if (key == ":domain") {
      if (section->items.size() != 2) FailAt(*section, "(:domain <name>)");
      problem.domain_name = NameOf(section->items[1], "domain name");
    } else if (key == ":requirements") {
      ParseRequirements(*section);
    } else if (key == ":objects") {
      problem.objects = ParseTypedList(section->items, 1, false,
                                       std::string(kObjectType));
    } else if (key == ":init") {
      for (std::size_t i = 1; i < section->items.size(); ++i) {
        const SExpr& item = section->items[i];
        const Literal atom = ParseLiteralExpr(item, false);
        if (atom.negated) FailAt(item, "positive atom in :init");
        problem.init.Insert(atom);
      }
    } else if (key == ":goal") {
      if (has_goal || section->items.size() != 2) {
        FailAt(*section, "(:goal <condition>)");
      }
      has_goal = true;
      for (auto& [literal, where] : ParseConjunction(section->items[1], false)) {
        problem.goal.insert(literal);
      }
    } else if (key == ":metric") {
      Unsupported(head, "metric");
    } else {
      Unsupported(head, "section " + key);
    }
  }
  Validate(problem);
  return problem;
}

std::string EmitProblem(const ProblemDef& problem) {
  std::ostringstream out;
  out << "(define (problem " << problem.name << ")";
  if (!problem.domain_name.empty()) {
    out << "\n  (:domain " << problem.domain_name << ")";
  }
  if (!problem.objects.empty()) {
    // One line per run of consecutive objects sharing a type.
    out << "\n  (:objects";
    for (std::size_t i = 0; i < problem.objects.size(); ++i) {
      const Symbol& o = problem.objects[i];
      const bool run_start = i == 0 || problem.objects[i - 1].type != o.type;
      const bool run_end = i + 1 == problem.objects.size() ||
                           problem.objects[i + 1].type != o.type;
      out << (run_start ? "\n    " : " ") << o.name;
      if (run_end) out << " - " << o.type;
    }
    out << ")";
  }
  if (!problem.init.empty()) {
    out << "\n  (:init";
    for (const Literal& a : problem.init) out << "\n    " << EmitAtomPddl(a);
    out << ")";
  }
  out << "\n  (:goal ";
  EmitConjunction(out, problem.goal, "    ");
  out << "))\n";
  return out.str();
}

std::string NormalizeWhitespace(std::string_view text) {
  std::string collapsed;
  bool in_space = false;
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !collapsed.empty() && collapsed.back() != '(' &&
        c != ')') {
      collapsed += ' ';
    }
    in_space = false;
    collapsed += c;
  }
  return collapsed;
}

}  // namespace pbd
