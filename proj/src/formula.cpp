#include "campaign/formula.hpp"

#include <cctype>
#include <istream>
#include <sstream>
#include <utility>

#include "campaign/worlds.hpp"

namespace campaign {

// ---------------------------------------------------------------------------
// VarUniverse

bool VarUniverse::is_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (name == "true" || name == "false") return false;
  auto head = static_cast<unsigned char>(name[0]);
  if (!std::isalpha(head) && name[0] != '_') return false;
  for (char c : name.substr(1)) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_') return false;
  }
  return true;
}

VarUniverse::VarUniverse(const std::vector<std::string>& names) {
  for (const auto& n : names) add(n);
}

std::optional<std::size_t> VarUniverse::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t VarUniverse::add(const std::string& name) {
  if (!is_identifier(name)) throw ParseError("invalid variable name '" + name + "'");
  if (index_.contains(name)) throw ParseError("duplicate variable '" + name + "'");
  names_.push_back(name);
  index_.emplace(name, names_.size() - 1);
  return names_.size() - 1;
}

// ---------------------------------------------------------------------------
// Formula construction

Formula Formula::var(std::size_t index) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->var = index;
  return Formula(std::move(node));
}

Formula Formula::constant(bool value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Const;
  node->value = value;
  return Formula(std::move(node));
}

Formula Formula::negation(Formula f) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Not;
  node->children.push_back(std::move(f));
  return Formula(std::move(node));
}

Formula Formula::conjunction(std::vector<Formula> children) {
  if (children.empty()) return constant(true);
  if (children.size() == 1) return std::move(children.front());
  auto node = std::make_shared<Node>();
  node->kind = Kind::And;
  node->children = std::move(children);
  return Formula(std::move(node));
}

Formula Formula::disjunction(std::vector<Formula> children) {
  if (children.empty()) return constant(false);
  if (children.size() == 1) return std::move(children.front());
  auto node = std::make_shared<Node>();
  node->kind = Kind::Or;
  node->children = std::move(children);
  return Formula(std::move(node));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Implies;
  node->children.push_back(std::move(lhs));
  node->children.push_back(std::move(rhs));
  return Formula(std::move(node));
}

Formula Formula::equivalence(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Iff;
  node->children.push_back(std::move(lhs));
  node->children.push_back(std::move(rhs));
  return Formula(std::move(node));
}

std::size_t Formula::var_index() const {
  if (kind() != Kind::Var) throw Error("var_index on non-variable node");
  return node_->var;
}

bool Formula::const_value() const {
  if (kind() != Kind::Const) throw Error("const_value on non-constant node");
  return node_->value;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, True, False, Not, And, Or, Implies, Iff, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Tok::End, "", start};
      return;
    }
    char c = text_[pos_];
    if (c == '(') { ++pos_; current_ = {Tok::LParen, "(", start}; return; }
    if (c == ')') { ++pos_; current_ = {Tok::RParen, ")", start}; return; }
    if (c == '!') { ++pos_; current_ = {Tok::Not, "!", start}; return; }
    if (c == '&') { ++pos_; current_ = {Tok::And, "&", start}; return; }
    if (c == '|') { ++pos_; current_ = {Tok::Or, "|", start}; return; }
    if (c == '-') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        pos_ += 2;
        current_ = {Tok::Implies, "->", start};
        return;
      }
      throw ParseError("expected '->'", start);
    }
    if (c == '<') {
      if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' && text_[pos_ + 2] == '>') {
        pos_ += 3;
        current_ = {Tok::Iff, "<->", start};
        return;
      }
      throw ParseError("expected '<->'", start);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      std::string word(text_.substr(pos_, end - pos_));
      pos_ = end;
      if (word == "true") { current_ = {Tok::True, word, start}; return; }
      if (word == "false") { current_ = {Tok::False, word, start}; return; }
      current_ = {Tok::Ident, word, start};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_{Tok::End, "", 0};
};

class Parser {
 public:
  Parser(std::string_view text, VarUniverse& universe, VariableMode mode)
      : lexer_(text), universe_(universe), mode_(mode) {}

  Formula parse() {
    Formula f = parse_iff();
    const Token& t = lexer_.peek();
    if (t.kind != Tok::End) throw ParseError("unexpected '" + t.text + "'", t.pos);
    return f;
  }

 private:
  Formula parse_iff() {
    Formula lhs = parse_imp();
    while (lexer_.peek().kind == Tok::Iff) {
      lexer_.take();
      lhs = Formula::equivalence(std::move(lhs), parse_imp());
    }
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (lexer_.peek().kind == Tok::Implies) {
      lexer_.take();
      return Formula::implication(std::move(lhs), parse_imp());
    }
    return lhs;
  }

  Formula parse_or() {
    std::vector<Formula> parts;
    parts.push_back(parse_and());
    while (lexer_.peek().kind == Tok::Or) {
      lexer_.take();
      parts.push_back(parse_and());
    }
    return Formula::disjunction(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts;
    parts.push_back(parse_not());
    while (lexer_.peek().kind == Tok::And) {
      lexer_.take();
      parts.push_back(parse_not());
    }
    return Formula::conjunction(std::move(parts));
  }

  Formula parse_not() {
    if (lexer_.peek().kind == Tok::Not) {
      lexer_.take();
      return Formula::negation(parse_not());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    Token t = lexer_.take();
    switch (t.kind) {
      case Tok::True:
        return Formula::constant(true);
      case Tok::False:
        return Formula::constant(false);
      case Tok::Ident: {
        auto idx = universe_.find(t.text);
        if (!idx) {
          if (mode_ == VariableMode::Fixed) throw UnknownVariable(t.text);
          idx = universe_.add(t.text);
        }
        return Formula::var(*idx);
      }
      case Tok::LParen: {
        Formula inner = parse_iff();
        Token close = lexer_.take();
        if (close.kind != Tok::RParen) throw ParseError("expected ')'", close.pos);
        return inner;
      }
      default:
        throw ParseError("expected a formula, got '" + t.text + "'", t.pos);
    }
  }

  Lexer lexer_;
  VarUniverse& universe_;
  VariableMode mode_;
};

}  // namespace

Formula parse_formula(std::string_view text, VarUniverse& universe, VariableMode mode) {
  return Parser(text, universe, mode).parse();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// iff=1 implies=2 or=3 and=4 not=5 atom=6
int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    default: return 6;
  }
}

void print(const Formula& f, const VarUniverse& u, int min_prec, std::string& out) {
  int p = precedence(f.kind());
  if (p < min_prec) {
    out += '(';
    print(f, u, 0, out);
    out += ')';
    return;
  }
  switch (f.kind()) {
    case Formula::Kind::Var:
      out += u.name(f.var_index());
      break;
    case Formula::Kind::Const:
      out += f.const_value() ? "true" : "false";
      break;
    case Formula::Kind::Not:
      out += '!';
      print(f.child(), u, 5, out);
      break;
    case Formula::Kind::And:
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += " & ";
        print(f.children()[i], u, 5, out);
      }
      break;
    case Formula::Kind::Or:
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += " | ";
        print(f.children()[i], u, 4, out);
      }
      break;
    case Formula::Kind::Implies:
      print(f.child(0), u, 3, out);
      out += " -> ";
      print(f.child(1), u, 2, out);
      break;
    case Formula::Kind::Iff:
      print(f.child(0), u, 1, out);
      out += " <-> ";
      print(f.child(1), u, 2, out);
      break;
  }
}

}  // namespace

std::string to_string(const Formula& f, const VarUniverse& universe) {
  std::string out;
  print(f, universe, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

bool evaluate(const Formula& f, const World& w) {
  switch (f.kind()) {
    case Formula::Kind::Var:
      return w.value(f.var_index());
    case Formula::Kind::Const:
      return f.const_value();
    case Formula::Kind::Not:
      return !evaluate(f.child(), w);
    case Formula::Kind::And:
      for (const auto& c : f.children())
        if (!evaluate(c, w)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& c : f.children())
        if (evaluate(c, w)) return true;
      return false;
    case Formula::Kind::Implies:
      return !evaluate(f.child(0), w) || evaluate(f.child(1), w);
    case Formula::Kind::Iff:
      return evaluate(f.child(0), w) == evaluate(f.child(1), w);
  }
  throw Error("unreachable formula kind");
}

namespace {
void collect_vars(const Formula& f, std::set<std::size_t>& out) {
  if (f.kind() == Formula::Kind::Var) {
    out.insert(f.var_index());
    return;
  }
  for (const auto& c : f.children()) collect_vars(c, out);
}
}  // namespace

std::set<std::size_t> free_variables(const Formula& f) {
  std::set<std::size_t> out;
  collect_vars(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Theory

Theory::Theory(UniversePtr universe, std::vector<Formula> statements)
    : universe_(std::move(universe)), statements_(std::move(statements)) {
  if (!universe_) throw Error("theory requires a universe");
  for (const auto& s : statements_) {
    for (std::size_t v : free_variables(s)) {
      if (v >= universe_->size())
        throw Error("statement references variable index " + std::to_string(v) +
                    " outside the universe");
    }
  }
}

Theory Theory::extended(Formula statement) const {
  std::vector<Formula> stmts = statements_;
  stmts.push_back(std::move(statement));
  return Theory(universe_, std::move(stmts));
}

bool models_theory(const Theory& t, const World& w) {
  for (const auto& s : t.statements())
    if (!evaluate(s, w)) return false;
  return true;
}

std::vector<Formula> parse_theory_lines(std::istream& in, VarUniverse& universe,
                                        VariableMode mode) {
  std::vector<Formula> statements;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      statements.push_back(parse_formula(line, universe, mode));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.position());
    }
  }
  return statements;
}

}  // namespace campaign
