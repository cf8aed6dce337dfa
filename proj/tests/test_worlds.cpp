#include <doctest.h>

#include <random>

#include "campaign/worlds.hpp"
#include "support.hpp"

using namespace campaign;

namespace {

Theory theory_of(const char* const* lines, std::size_t count, std::size_t n_vars) {
  VarUniverse u;
  for (std::size_t i = 1; i <= n_vars; ++i) u.add("x" + std::to_string(i));
  std::vector<Formula> statements;
  for (std::size_t i = 0; i < count; ++i)
    statements.push_back(parse_formula(lines[i], u, VariableMode::Fixed));
  return Theory(std::make_shared<const VarUniverse>(std::move(u)), std::move(statements));
}

template <std::size_t N>
Theory theory_of(const char* (&&lines)[N], std::size_t n_vars) {
  return theory_of(lines, N, n_vars);
}

Theory empty_theory(std::size_t n_vars) { return theory_of(nullptr, 0, n_vars); }

}  // namespace

TEST_CASE("world order is binary with the first variable most significant") {
  Theory t = empty_theory(2);
  auto models = enumerate_models(t);
  REQUIRE(models.size() == 4);
  // FF, FT, TF, TT
  CHECK((models[0].value(0) == false && models[0].value(1) == false));
  CHECK((models[1].value(0) == false && models[1].value(1) == true));
  CHECK((models[2].value(0) == true && models[2].value(1) == false));
  CHECK((models[3].value(0) == true && models[3].value(1) == true));
  CHECK(models[1].numeric(0) == -1);
  CHECK(models[1].numeric(1) == 1);
}

TEST_CASE("enumerate_models yields exactly the modeled worlds") {
  Theory single = theory_of({"x1"}, 1);
  auto models = enumerate_models(single);
  REQUIRE(models.size() == 1);
  CHECK(models[0].value(0) == true);

  Theory disj = theory_of({"x1 | x2"}, 2);
  auto dmodels = enumerate_models(disj);
  REQUIRE(dmodels.size() == 3);  // all but FF, checked against the oracle below
  CHECK(dmodels[0].code() == 1);
  CHECK(dmodels[1].code() == 2);
  CHECK(dmodels[2].code() == 3);
  auto expected = oracle::model_assignments(disj.statements(), 2);
  REQUIRE(expected.size() == dmodels.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    for (std::size_t v = 0; v < 2; ++v) CHECK(expected[i][v] == dmodels[i].value(v));
}

TEST_CASE("count_models totals and per-variable counts") {
  ModelCount free3 = count_models(empty_theory(3));
  CHECK(free3.total == 8);
  for (std::size_t i = 0; i < 3; ++i) CHECK(free3.per_variable_true[i] == 4);

  ModelCount conj = count_models(theory_of({"x1 & x2"}, 2));
  CHECK(conj.total == 1);
  CHECK(conj.per_variable_true == std::vector<std::uint64_t>{1, 1});

  ModelCount disj = count_models(theory_of({"x1 | x2"}, 2));
  CHECK(disj.total == 3);
  CHECK(disj.per_variable_true == std::vector<std::uint64_t>{2, 2});
}

TEST_CASE("is_satisfiable") {
  CHECK(!is_satisfiable(theory_of({"x1", "!x1"}, 1)));
  CHECK(is_satisfiable(empty_theory(1)));
  CHECK(!is_satisfiable(theory_of({"x1 -> x2", "x1", "!x2"}, 2)));
}

TEST_CASE("variable limit guards enumeration") {
  Theory big = empty_theory(25);
  CHECK_THROWS_AS(enumerate_models(big), VariableLimitExceeded);
  CHECK_THROWS_AS(count_models(big), VariableLimitExceeded);
  CHECK_THROWS_AS(is_satisfiable(big), VariableLimitExceeded);
  Limits raised;
  raised.max_variables = 26;
  CHECK(count_models(big, raised).total == std::uint64_t{1} << 25);
  Limits lowered;
  lowered.max_variables = 3;
  CHECK_THROWS_AS(count_models(empty_theory(4), lowered), VariableLimitExceeded);
  CHECK(count_models(empty_theory(3), lowered).total == 8);
}

TEST_CASE("count matches enumeration on random theories") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = 1 + rng() % 6;
    VarUniverse u;
    for (std::size_t i = 1; i <= n; ++i) u.add("x" + std::to_string(i));
    std::vector<Formula> statements;
    int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) statements.push_back(gen::random_formula(rng, n, 3));
    Theory t(std::make_shared<const VarUniverse>(std::move(u)), statements);

    auto models = enumerate_models(t);
    ModelCount counts = count_models(t);
    CHECK(counts.total == models.size());
    CHECK(counts.total == oracle::model_assignments(statements, n).size());
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t trues = 0;
      for (const auto& w : models)
        if (w.value(i)) ++trues;
      CHECK(counts.per_variable_true[i] == trues);
    }
  }
}

TEST_CASE("a fresh unconstrained variable doubles every count") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 20; ++round) {
    std::size_t n = 1 + rng() % 5;
    VarUniverse u;
    for (std::size_t i = 1; i <= n; ++i) u.add("x" + std::to_string(i));
    std::vector<Formula> statements{gen::random_formula(rng, n, 3)};
    Theory t(std::make_shared<const VarUniverse>(u), statements);
    ModelCount before = count_models(t);

    VarUniverse extended = u;
    extended.add("fresh");
    Theory t2(std::make_shared<const VarUniverse>(std::move(extended)), statements);
    ModelCount after = count_models(t2);

    CHECK(after.total == 2 * before.total);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(after.per_variable_true[i] == 2 * before.per_variable_true[i]);
    CHECK(after.per_variable_true[n] == before.total);
  }
}

TEST_CASE("strengthening a theory shrinks its model set") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 20; ++round) {
    std::size_t n = 1 + rng() % 4;
    VarUniverse u;
    for (std::size_t i = 1; i <= n; ++i) u.add("x" + std::to_string(i));
    auto frozen = std::make_shared<const VarUniverse>(std::move(u));
    Theory t(frozen, {gen::random_formula(rng, n, 3)});
    Theory t2 = t.extended(gen::random_formula(rng, n, 3));

    auto inner = enumerate_models(t2);
    for (const auto& w : inner) CHECK(models_theory(t, w));
  }
}

TEST_CASE("world_conjunction pins exactly one world") {
  Theory t = empty_theory(3);
  for (std::uint64_t code = 0; code < 8; ++code) {
    World w(t.universe_ptr(), code);
    Theory pinned(t.universe_ptr(), {world_conjunction(w)});
    auto models = enumerate_models(pinned);
    REQUIRE(models.size() == 1);
    CHECK(models[0].code() == code);
  }
}

TEST_CASE("zero-variable universe has one world") {
  Theory t = empty_theory(0);
  auto models = enumerate_models(t);
  CHECK(models.size() == 1);
  CHECK(count_models(t).total == 1);
}

TEST_CASE("counts are identical across thread settings") {
  std::mt19937_64 rng(5);
  VarUniverse u;
  for (std::size_t i = 1; i <= 13; ++i) u.add("x" + std::to_string(i));
  std::vector<Formula> statements{gen::random_formula(rng, 13, 4),
                                  gen::random_formula(rng, 13, 3)};
  Theory t(std::make_shared<const VarUniverse>(std::move(u)), statements);

  Limits one;
  one.threads = 1;
  Limits four;
  four.threads = 4;
  Limits seven;
  seven.threads = 7;
  ModelCount a = count_models(t, one), b = count_models(t, four), c = count_models(t, seven);
  CHECK(a.total == b.total);
  CHECK(a.total == c.total);
  CHECK(a.per_variable_true == b.per_variable_true);
  CHECK(a.per_variable_true == c.per_variable_true);
}
