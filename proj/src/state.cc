/**
 * state.cc
 */

#include "pbd/state.h"

#include <algorithm>
#include <cctype>
#include <iterator>

#include "pbd/error.h"

namespace pbd {

namespace {

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

// Cursor over single-line literal text; columns are 1-based.
class TextCursor {
 public:
  explicit TextCursor(std::string_view text) : text_(text) {}

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool AtEnd() const { return pos_ >= text_.size(); }

  bool Consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void Expect(char c, const std::string& what) {
    SkipSpace();
    if (AtEnd() || text_[pos_] != c) Fail(what);
    ++pos_;
  }

  std::string Name(const std::string& what) {
    SkipSpace();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '?') ++pos_;
    while (pos_ < text_.size() && IsNameChar(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (!IsValidName(name)) {
      pos_ = start;
      Fail(what);
    }
    return name;
  }

  char Peek() {
    SkipSpace();
    return AtEnd() ? '\0' : text_[pos_];
  }

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t pos) { pos_ = pos; }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(1, pos_ + 1, what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// Parses `name` or `name(arg, ...)`.
void ParseAtomInto(TextCursor& cursor, std::string& predicate,
                   std::vector<std::string>& args) {
  predicate = cursor.Name("predicate name");
  if (IsVariable(predicate) || IsReservedWord(predicate)) {
    cursor.Fail("predicate name");
  }
  if (cursor.Peek() != '(') return;
  cursor.Expect('(', "'('");
  if (cursor.Peek() == ')') {
    cursor.Expect(')', "')'");
    return;
  }
  while (true) {
    args.push_back(cursor.Name("argument name"));
    const char next = cursor.Peek();
    if (next == ',') {
      cursor.Expect(',', "','");
      continue;
    }
    cursor.Expect(')', "',' or ')'");
    return;
  }
}

}  // namespace

bool IsValidName(std::string_view name) {
  if (!name.empty() && name.front() == '?') name.remove_prefix(1);
  // A leading '-' would be read as a type separator in PDDL typed lists.
  return !name.empty() && name.front() != '-' &&
         std::all_of(name.begin(), name.end(), IsNameChar);
}

void CheckName(std::string_view name) {
  if (!IsValidName(name)) {
    throw Error("InvalidName", "invalid name '" + std::string(name) + "'");
  }
}

bool IsReservedWord(std::string_view name) {
  static const std::set<std::string, std::less<>> kReserved = {
      "and", "not", "or", "either", "forall", "exists", "when", "imply"};
  return kReserved.count(name) > 0;
}

bool Literal::IsGround() const {
  return std::none_of(args.begin(), args.end(),
                      [](const std::string& a) { return IsVariable(a); });
}

std::string ToString(const Literal& literal) {
  std::string out = literal.negated ? "not " : "";
  out += literal.predicate;
  out += '(';
  for (std::size_t i = 0; i < literal.args.size(); ++i) {
    if (i > 0) out += ',';
    out += literal.args[i];
  }
  out += ')';
  return out;
}

Literal ParseLiteral(std::string_view text) {
  TextCursor cursor(text);
  Literal literal;
  cursor.SkipSpace();

  bool wrapped = false;
  if (cursor.Consume("\xC2\xAC")) {  // U+00AC NOT SIGN
    literal.negated = true;
  } else {
    const std::size_t start = cursor.pos();
    if (cursor.Consume("not")) {
      const char next = cursor.AtEnd() ? '\0' : text[cursor.pos()];
      if (next == '(') {
        literal.negated = true;
        wrapped = true;
        cursor.Expect('(', "'('");
      } else if (std::isspace(static_cast<unsigned char>(next))) {
        literal.negated = true;
      } else {
        cursor.set_pos(start);  // a predicate that merely starts with "not"
      }
    }
  }

  ParseAtomInto(cursor, literal.predicate, literal.args);
  if (wrapped) cursor.Expect(')', "')'");
  cursor.SkipSpace();
  if (!cursor.AtEnd()) cursor.Fail("end of literal");
  return literal;
}

std::vector<std::string> ToStrings(const LiteralSet& literals) {
  std::vector<std::string> out;
  out.reserve(literals.size());
  for (const Literal& l : literals) out.push_back(ToString(l));
  return out;
}

LiteralSet ParseLiterals(const std::vector<std::string>& texts) {
  LiteralSet out;
  for (const std::string& t : texts) out.insert(ParseLiteral(t));
  return out;
}

Literal Substitute(const Literal& literal, const Binding& binding) {
  Literal out = literal;
  for (std::string& arg : out.args) {
    auto it = binding.find(arg);
    if (it != binding.end()) arg = it->second;
  }
  return out;
}

LiteralSet Substitute(const LiteralSet& literals, const Binding& binding) {
  LiteralSet out;
  for (const Literal& l : literals) out.insert(Substitute(l, binding));
  return out;
}

State::State(std::initializer_list<Literal> atoms) {
  for (const Literal& a : atoms) Insert(a);
}

State::State(const LiteralSet& atoms) {
  for (const Literal& a : atoms) Insert(a);
}

void State::Insert(const Literal& atom) {
  if (atom.negated) {
    throw Error("NegativeAtom",
                "state atoms must be positive: " + ToString(atom));
  }
  if (!atom.IsGround()) {
    throw Error("NonGroundLiteral",
                "state atoms must be ground: " + ToString(atom));
  }
  atoms_.insert(atom);
}

std::vector<std::string> ToStrings(const State& state) {
  return ToStrings(state.atoms());
}

bool Holds(const State& state, const Literal& literal) {
  if (!literal.IsGround()) {
    throw Error("NonGroundLiteral",
                "cannot evaluate non-ground literal " + ToString(literal));
  }
  return state.Contains(literal) != literal.negated;
}

std::vector<Literal> Unsatisfied(const State& state,
                                 const LiteralSet& literals) {
  std::vector<Literal> out;
  for (const Literal& l : literals) {
    if (!Holds(state, l)) out.push_back(l);
  }
  return out;
}

StateDiff DiffStates(const State& before, const State& after) {
  StateDiff diff;
  std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                      std::inserter(diff.added, diff.added.end()));
  std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                      std::inserter(diff.removed, diff.removed.end()));
  return diff;
}

std::string ToString(const GroundAction& action) {
  return ToString(Literal(action.operator_name, action.args));
}

GroundAction ParseGroundAction(std::string_view text) {
  const Literal parsed = ParseLiteral(text);
  if (parsed.negated) throw ParseError(1, 1, "action name");
  if (!parsed.IsGround()) {
    throw Error("NonGroundLiteral",
                "action arguments must be constants: " + std::string(text));
  }
  return GroundAction{parsed.predicate, parsed.args};
}

}  // namespace pbd
