#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "campaign/errors.hpp"

namespace campaign {

class World;

// Ordered set of distinct variable identifiers. The construction order is
// fixed and defines world ordering everywhere downstream.
class VarUniverse {
 public:
  VarUniverse() = default;
  explicit VarUniverse(const std::vector<std::string>& names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  // Appends a variable and returns its index; the name must be a fresh,
  // well-formed identifier (grammar ident, not a keyword).
  std::size_t add(const std::string& name);

  bool operator==(const VarUniverse& other) const { return names_ == other.names_; }

  static bool is_identifier(std::string_view name);

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

using UniversePtr = std::shared_ptr<const VarUniverse>;

// Immutable propositional formula over variable indices. Cheap to copy;
// subtrees are shared.
class Formula {
 public:
  enum class Kind { Var, Const, Not, And, Or, Implies, Iff };

  static Formula var(std::size_t index);
  static Formula constant(bool value);
  static Formula negation(Formula f);
  // children < 2 collapse: empty conjunction is true, empty disjunction is
  // false, a single child is returned as-is.
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);

  Kind kind() const { return node_->kind; }
  std::size_t var_index() const;
  bool const_value() const;
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }

 private:
  struct Node {
    Kind kind;
    std::size_t var = 0;
    bool value = false;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class VariableMode {
  Fixed,   // unknown identifiers are an error
  Extend,  // unknown identifiers extend the universe in first-appearance order
};

// Parses the grammar
//   formula := iff ; iff := imp ("<->" imp)* ; imp := or ("->" imp)? ;
//   or := and ("|" and)* ; and := not ("&" not)* ;
//   not := "!" not | atom ; atom := ident | "true" | "false" | "(" formula ")" ;
// "->" is right-associative; "<->", "|", "&" associate to the left
// ("|" and "&" parse to n-ary nodes). Whitespace is insignificant.
Formula parse_formula(std::string_view text, VarUniverse& universe,
                      VariableMode mode = VariableMode::Extend);

// Renders with minimal parentheses; reparsing yields a semantically equal
// formula over the same universe.
std::string to_string(const Formula& f, const VarUniverse& universe);

bool evaluate(const Formula& f, const World& w);

std::set<std::size_t> free_variables(const Formula& f);

// A candidate's platform: the statements issued so far. Semantics are the
// worlds satisfying every statement; no closure is ever materialized.
class Theory {
 public:
  explicit Theory(UniversePtr universe, std::vector<Formula> statements = {});

  const VarUniverse& universe() const { return *universe_; }
  const UniversePtr& universe_ptr() const { return universe_; }
  const std::vector<Formula>& statements() const { return statements_; }

  Theory extended(Formula statement) const;

 private:
  UniversePtr universe_;
  std::vector<Formula> statements_;
};

bool models_theory(const Theory& t, const World& w);

// One formula per line; blank lines and lines starting with '#' are ignored.
std::vector<Formula> parse_theory_lines(std::istream& in, VarUniverse& universe,
                                        VariableMode mode = VariableMode::Extend);

}  // namespace campaign
