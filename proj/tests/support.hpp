#pragma once

// Test-side machinery kept independent of the library's enumeration and
// solver paths: a recursive evaluator over plain assignment vectors,
// exhaustive brute-force solvers built on it, and seeded random generators.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "campaign/reductions.hpp"
#include "campaign/strategy.hpp"

namespace oracle {

using campaign::Formula;
using campaign::Rational;

inline bool eval(const Formula& f, const std::vector<bool>& assignment) {
  using Kind = Formula::Kind;
  switch (f.kind()) {
    case Kind::Var: return assignment.at(f.var_index());
    case Kind::Const: return f.const_value();
    case Kind::Not: return !eval(f.child(), assignment);
    case Kind::And:
      for (const auto& c : f.children())
        if (!eval(c, assignment)) return false;
      return true;
    case Kind::Or:
      for (const auto& c : f.children())
        if (eval(c, assignment)) return true;
      return false;
    case Kind::Implies: return !eval(f.child(0), assignment) || eval(f.child(1), assignment);
    case Kind::Iff: return eval(f.child(0), assignment) == eval(f.child(1), assignment);
  }
  return false;
}

// Ascending world order: the assignment read as a binary number with
// variable 0 as the most significant bit.
inline std::vector<bool> assignment_of_code(std::uint64_t code, std::size_t n) {
  std::vector<bool> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = (code >> (n - 1 - i)) & 1u;
  return a;
}

inline std::vector<std::vector<bool>> model_assignments(const std::vector<Formula>& statements,
                                                        std::size_t n) {
  std::vector<std::vector<bool>> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    std::vector<bool> a = assignment_of_code(code, n);
    bool ok = true;
    for (const auto& s : statements)
      if (!eval(s, a)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(std::move(a));
  }
  return out;
}

inline bool satisfiable(const Formula& f, std::size_t n) {
  return !model_assignments({f}, n).empty();
}

inline std::uint64_t count_sat(const Formula& f, std::size_t n) {
  return model_assignments({f}, n).size();
}

inline Rational assignment_utility(const std::vector<Rational>& prefs,
                                   const std::vector<bool>& assignment) {
  Rational total;
  for (std::size_t i = 0; i < prefs.size(); ++i)
    total += assignment[i] ? prefs[i] : -prefs[i];
  return total;
}

// Optimal total weight of true variables over models of f; nullopt if
// unsatisfiable.
inline std::optional<Rational> best_weight(const Formula& f,
                                           const std::vector<Rational>& weights, bool maximize,
                                           std::size_t n) {
  std::optional<Rational> best;
  for (const auto& a : model_assignments({f}, n)) {
    Rational w;
    for (std::size_t i = 0; i < n; ++i)
      if (a[i]) w += weights[i];
    if (!best || (maximize ? w > *best : w < *best)) best = std::move(w);
  }
  return best;
}

// Best achievable number of satisfied voters over every nonempty set of
// worlds presented as a theory: pessimists need all chosen worlds acceptable,
// optimists need one. Exact small-n oracle for the turnout problems.
inline std::size_t best_turnout_count(const campaign::TurnoutInstance& instance) {
  std::size_t n = instance.universe->size();
  std::size_t worlds = std::size_t{1} << n;
  std::vector<std::uint32_t> acceptable(instance.voters.size(), 0);
  for (std::size_t v = 0; v < instance.voters.size(); ++v)
    for (std::size_t w = 0; w < worlds; ++w) {
      Rational u = assignment_utility(instance.voters[v].prefs, assignment_of_code(w, n));
      if (u >= *instance.voters[v].threshold) acceptable[v] |= std::uint32_t{1} << w;
    }
  std::size_t best = 0;
  for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << worlds); ++subset) {
    std::size_t count = 0;
    for (std::size_t v = 0; v < instance.voters.size(); ++v) {
      bool ok = instance.voters[v].kind == campaign::VoterKind::Pessimistic
                    ? (subset & ~acceptable[v]) == 0
                    : (subset & acceptable[v]) != 0;
      if (ok) ++count;
    }
    best = std::max(best, count);
  }
  return best;
}

}  // namespace oracle

namespace gen {

using campaign::Formula;
using campaign::Rational;

inline Rational random_pref(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> den_dist(1, 4);
  long long den = den_dist(rng);
  std::uniform_int_distribution<long long> num_dist(-den, den);
  return Rational(num_dist(rng), den);
}

inline Rational random_threshold(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> den_dist(1, 3);
  long long den = den_dist(rng);
  std::uniform_int_distribution<long long> num_dist(-2 * den, 2 * den);
  return Rational(num_dist(rng), den);
}

inline Formula random_formula(std::mt19937_64& rng, std::size_t n_vars, int depth) {
  std::uniform_int_distribution<int> op_dist(0, 6);
  std::uniform_int_distribution<std::size_t> var_dist(0, n_vars ? n_vars - 1 : 0);
  if (depth <= 0 || n_vars == 0) {
    if (n_vars == 0 || op_dist(rng) == 0)
      return Formula::constant(op_dist(rng) % 2 == 0);
    return Formula::var(var_dist(rng));
  }
  switch (op_dist(rng)) {
    case 0: return Formula::negation(random_formula(rng, n_vars, depth - 1));
    case 1:
    case 2: {
      std::vector<Formula> children;
      std::uniform_int_distribution<int> arity(2, 3);
      int k = arity(rng);
      for (int i = 0; i < k; ++i) children.push_back(random_formula(rng, n_vars, depth - 1));
      return op_dist(rng) % 2 == 0 ? Formula::conjunction(std::move(children))
                                   : Formula::disjunction(std::move(children));
    }
    case 3:
      return Formula::implication(random_formula(rng, n_vars, depth - 1),
                                  random_formula(rng, n_vars, depth - 1));
    case 4:
      return Formula::equivalence(random_formula(rng, n_vars, depth - 1),
                                  random_formula(rng, n_vars, depth - 1));
    default:
      return Formula::var(var_dist(rng));
  }
}

// 1-3 statements, regenerated until satisfiable (checked by the oracle).
inline std::vector<Formula> random_satisfiable_theory(std::mt19937_64& rng, std::size_t n_vars,
                                                      int max_statements = 3) {
  std::uniform_int_distribution<int> count_dist(1, max_statements);
  for (;;) {
    std::vector<Formula> statements;
    int k = count_dist(rng);
    for (int i = 0; i < k; ++i) statements.push_back(random_formula(rng, n_vars, 3));
    if (!oracle::model_assignments(statements, n_vars).empty()) return statements;
  }
}

inline std::vector<Rational> random_prefs(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> prefs;
  prefs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) prefs.push_back(random_pref(rng));
  return prefs;
}

inline campaign::UniversePtr make_universe(std::size_t n) {
  campaign::VarUniverse u;
  for (std::size_t i = 1; i <= n; ++i) u.add("x" + std::to_string(i));
  return std::make_shared<const campaign::VarUniverse>(std::move(u));
}

}  // namespace gen
