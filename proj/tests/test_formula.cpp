#include <doctest.h>

#include <random>
#include <sstream>

#include "campaign/formula.hpp"
#include "campaign/worlds.hpp"
#include "support.hpp"

using namespace campaign;

namespace {

UniversePtr freeze(VarUniverse u) {
  return std::make_shared<const VarUniverse>(std::move(u));
}

}  // namespace

TEST_CASE("universe enforces unique well-formed names") {
  VarUniverse u;
  CHECK(u.add("x1") == 0);
  CHECK(u.add("_a9") == 1);
  CHECK(u.size() == 2);
  CHECK(u.find("x1") == std::size_t{0});
  CHECK(!u.find("nope"));
  CHECK_THROWS_AS(u.add("x1"), ParseError);
  CHECK_THROWS_AS(u.add("true"), ParseError);
  CHECK_THROWS_AS(u.add("9x"), ParseError);
  CHECK_THROWS_AS(u.add(""), ParseError);
}

TEST_CASE("parser produces the grammar-forced shapes") {
  VarUniverse u;

  SUBCASE("implication") {
    Formula f = parse_formula("x1 -> x2", u);
    REQUIRE(f.kind() == Formula::Kind::Implies);
    CHECK(f.child(0).kind() == Formula::Kind::Var);
    CHECK(f.child(0).var_index() == 0);
    CHECK(f.child(1).var_index() == 1);
  }

  SUBCASE("negation and grouping") {
    Formula f = parse_formula("!x1 & (x2 | x3)", u);
    REQUIRE(f.kind() == Formula::Kind::And);
    REQUIRE(f.children().size() == 2);
    CHECK(f.child(0).kind() == Formula::Kind::Not);
    CHECK(f.child(0).child().var_index() == 0);
    REQUIRE(f.child(1).kind() == Formula::Kind::Or);
    CHECK(f.child(1).child(0).var_index() == 1);
    CHECK(f.child(1).child(1).var_index() == 2);
  }

  SUBCASE("implication is right-associative") {
    Formula f = parse_formula("x1 -> x2 -> x3", u);
    REQUIRE(f.kind() == Formula::Kind::Implies);
    CHECK(f.child(0).var_index() == 0);
    REQUIRE(f.child(1).kind() == Formula::Kind::Implies);
    CHECK(f.child(1).child(0).var_index() == 1);
    CHECK(f.child(1).child(1).var_index() == 2);
  }

  SUBCASE("iff is left-associative") {
    Formula f = parse_formula("x1 <-> x2 <-> x3", u);
    REQUIRE(f.kind() == Formula::Kind::Iff);
    CHECK(f.child(0).kind() == Formula::Kind::Iff);
    CHECK(f.child(1).var_index() == 2);
  }

  SUBCASE("precedence: ! over & over | over -> over <->") {
    Formula f = parse_formula("!x1 & x2 | x3", u);
    REQUIRE(f.kind() == Formula::Kind::Or);
    CHECK(f.child(0).kind() == Formula::Kind::And);
    Formula g = parse_formula("x1 | x2 -> x3 <-> x1", u);
    REQUIRE(g.kind() == Formula::Kind::Iff);
    CHECK(g.child(0).kind() == Formula::Kind::Implies);
    CHECK(g.child(0).child(0).kind() == Formula::Kind::Or);
  }

  SUBCASE("constants") {
    CHECK(parse_formula("true", u).const_value() == true);
    CHECK(parse_formula("false", u).const_value() == false);
  }
}

TEST_CASE("parser reports positions and unknown variables") {
  VarUniverse u;
  u.add("x1");

  CHECK_THROWS_AS(parse_formula("x1 &", u), ParseError);
  CHECK_THROWS_AS(parse_formula("(x1", u), ParseError);
  CHECK_THROWS_AS(parse_formula("x1 x1", u), ParseError);
  CHECK_THROWS_AS(parse_formula("x1 <- x1", u), ParseError);
  CHECK_THROWS_AS(parse_formula("x1 @", u), ParseError);
  CHECK_THROWS_AS(parse_formula("", u), ParseError);

  try {
    parse_formula("x1 & #", u);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }

  CHECK_THROWS_AS(parse_formula("x1 & y", u, VariableMode::Fixed), UnknownVariable);
  // auto mode extends in first-appearance order
  Formula f = parse_formula("b -> (a | x1)", u);
  CHECK(u.names() == std::vector<std::string>{"x1", "b", "a"});
  CHECK(f.child(0).var_index() == 1);
}

TEST_CASE("evaluate follows truth-table semantics") {
  VarUniverse u;
  Formula taut = parse_formula("x1 | !x1", u);
  auto frozen = freeze(u);
  for (std::uint64_t code = 0; code < 2; ++code)
    CHECK(evaluate(taut, World(frozen, code)));

  VarUniverse u2;
  Formula conj = parse_formula("x1 & x2", u2);
  Formula imp = parse_formula("x1 -> x2", u2);
  auto frozen2 = freeze(u2);
  World tf(frozen2, 0b10), ff(frozen2, 0b00);
  CHECK(evaluate(conj, tf) == false);
  CHECK(evaluate(imp, ff) == true);
  Formula iff = parse_formula("x1 <-> x2", u2);
  CHECK(evaluate(iff, World(frozen2, 0b11)));
  CHECK(evaluate(iff, World(frozen2, 0b00)));
  CHECK(!evaluate(iff, World(frozen2, 0b01)));
}

TEST_CASE("models_theory is the conjunction of statements") {
  VarUniverse u;
  u.add("x1");
  u.add("x2");
  auto frozen = freeze(u);

  Theory empty(frozen);
  for (std::uint64_t code = 0; code < 4; ++code)
    CHECK(models_theory(empty, World(frozen, code)));

  VarUniverse u1 = *frozen;
  Theory contradiction(frozen, {parse_formula("x1", u1), parse_formula("!x1", u1)});
  for (std::uint64_t code = 0; code < 4; ++code)
    CHECK(!models_theory(contradiction, World(frozen, code)));

  Theory chain(frozen, {parse_formula("x1 -> x2", u1), parse_formula("x1", u1)});
  CHECK(models_theory(chain, World(frozen, 0b11)));
  CHECK(!models_theory(chain, World(frozen, 0b10)));

  // matches evaluating the conjunction of the statements
  Formula conj = Formula::conjunction(chain.statements());
  for (std::uint64_t code = 0; code < 4; ++code)
    CHECK(models_theory(chain, World(frozen, code)) == evaluate(conj, World(frozen, code)));
}

TEST_CASE("free_variables collects var indices as a set") {
  VarUniverse u;
  CHECK(free_variables(parse_formula("x1 & x1", u)) == std::set<std::size_t>{0});
  CHECK(free_variables(parse_formula("true", u)).empty());
  Formula f = parse_formula("x1 -> (x3 | x2)", u);
  CHECK(free_variables(f) == std::set<std::size_t>{0, 1, 2});
}

TEST_CASE("theory construction validates variable indices") {
  VarUniverse small;
  small.add("x1");
  auto frozen = freeze(small);
  CHECK_THROWS_AS(Theory(frozen, {Formula::var(3)}), Error);
}

TEST_CASE("theory files skip blanks and comments") {
  std::istringstream in("# platform\n\nx1 -> x2\n   \nx2 | x3\n# done\n");
  VarUniverse u;
  auto statements = parse_theory_lines(in, u);
  CHECK(statements.size() == 2);
  CHECK(u.size() == 3);

  std::istringstream bad("x1 &\n");
  VarUniverse u2;
  CHECK_THROWS_AS(parse_theory_lines(bad, u2), ParseError);
}

TEST_CASE("print/parse round trip is semantically identity") {
  std::mt19937_64 rng(20260810);
  VarUniverse u;
  for (int i = 1; i <= 4; ++i) u.add("x" + std::to_string(i));

  for (int round = 0; round < 300; ++round) {
    Formula f = gen::random_formula(rng, 4, 4);
    std::string text = to_string(f, u);
    VarUniverse u2 = u;
    Formula g = parse_formula(text, u2, VariableMode::Fixed);
    for (std::uint64_t code = 0; code < 16; ++code) {
      auto a = oracle::assignment_of_code(code, 4);
      REQUIRE(oracle::eval(f, a) == oracle::eval(g, a));
    }
  }
}

TEST_CASE("printer emits expected concrete syntax") {
  VarUniverse u;
  Formula f = parse_formula("!x1 & (x2 | x3) -> x1 <-> x2", u);
  CHECK(to_string(f, u) == "!x1 & (x2 | x3) -> x1 <-> x2");
  Formula g = Formula::implication(Formula::implication(Formula::var(0), Formula::var(1)),
                                   Formula::var(2));
  CHECK(to_string(g, u) == "(x1 -> x2) -> x3");
  Formula h = Formula::negation(Formula::conjunction({Formula::var(0), Formula::var(1)}));
  CHECK(to_string(h, u) == "!(x1 & x2)");
}
