#include "campaign/reductions.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace campaign {

namespace {

std::string fresh_name(const VarUniverse& universe, const std::string& base) {
  if (!universe.find(base)) return base;
  for (int i = 2;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!universe.find(candidate)) return candidate;
  }
}

// Copies the source universe and appends fresh variables; source indices
// stay valid because the universe only grows at the end.
UniversePtr extend_with_fresh(const VarUniverse& source, const std::vector<std::string>& bases,
                              std::vector<std::size_t>& indices) {
  VarUniverse extended = source;
  for (const auto& base : bases) indices.push_back(extended.add(fresh_name(extended, base)));
  return std::make_shared<const VarUniverse>(std::move(extended));
}

ReductionInstance threshold_gadget(const Formula& phi, const VarUniverse& source, int star_sign,
                                   VoterKind kind, InverseKind inverse_kind,
                                   std::string inverse) {
  std::vector<std::size_t> fresh;
  UniversePtr universe = extend_with_fresh(source, {"x_star"}, fresh);
  std::size_t star = fresh.front();

  Theory theory(universe, {Formula::implication(Formula::var(star), phi)});
  Voter voter = make_voter("v_star", kind, universe->size(), {{star, Rational(star_sign)}},
                           Rational(1));
  return ReductionInstance{std::move(theory), std::move(voter), Rational(1), inverse_kind,
                           std::move(inverse)};
}

}  // namespace

ReductionInstance sat_to_optimistic_threshold(const Formula& phi, const VarUniverse& source) {
  return threshold_gadget(phi, source, 1, VoterKind::Optimistic, InverseKind::SatDecision,
                          "YES (optimistic utility >= 1) iff the source formula is satisfiable");
}

ReductionInstance unsat_to_pessimistic_threshold(const Formula& phi, const VarUniverse& source) {
  return threshold_gadget(
      phi, source, -1, VoterKind::Pessimistic, InverseKind::UnsatDecision,
      "YES (pessimistic utility >= 1) iff the source formula is unsatisfiable");
}

bool decide(const ReductionInstance& instance, const Limits& limits) {
  if (instance.inverse_kind == InverseKind::WeightRecovery)
    throw std::logic_error("weighted instances are solved, not decided");
  return meets_threshold(instance.theory, instance.voter, instance.threshold, limits);
}

ReductionInstance wsat_to_evaluation(const WsatInstance& instance, const Limits& limits) {
  if (!instance.universe) throw Error("missing universe");
  std::size_t n = instance.universe->size();
  if (instance.weights.size() != n) throw Error("one weight per variable required");
  for (const auto& r : instance.weights)
    if (r.sign() <= 0) throw Error("weights must be positive");
  if (n == 0) throw Error("weighted satisfiability needs at least one variable");

  Theory theory(instance.universe, {instance.formula});
  if (!is_satisfiable(theory, limits)) throw UnsatisfiableSource();

  Rational max_weight = instance.weights.front();
  Rational sum;
  for (const auto& r : instance.weights) {
    if (r > max_weight) max_weight = r;
    sum += r;
  }

  std::vector<std::pair<std::size_t, Rational>> prefs;
  for (std::size_t i = 0; i < n; ++i) prefs.emplace_back(i, instance.weights[i] / max_weight);
  bool maximize = instance.direction == WsatDirection::Max;
  Voter voter = make_voter("v_weights",
                           maximize ? VoterKind::Optimistic : VoterKind::Pessimistic,
                           n, prefs);

  std::string inverse = std::string("optimal weight W = (u*R + sum_r)/2 from the ") +
                        (maximize ? "optimistic" : "pessimistic") +
                        " utility u, with R = " + max_weight.str() +
                        " and sum_r = " + sum.str() +
                        "; the witness world is the optimal assignment";
  ReductionInstance out{std::move(theory), std::move(voter), std::nullopt,
                        InverseKind::WeightRecovery, std::move(inverse)};
  out.weight_scale = std::move(max_weight);
  out.weight_sum = std::move(sum);
  return out;
}

Rational recover_weight(const ReductionInstance& instance, const Rational& utility) {
  if (instance.inverse_kind != InverseKind::WeightRecovery)
    throw std::logic_error("instance has no weight inverse");
  return (utility * *instance.weight_scale + *instance.weight_sum) / Rational(2);
}

WsatSolution solve_wsat(const ReductionInstance& instance, const Limits& limits) {
  if (instance.inverse_kind != InverseKind::WeightRecovery)
    throw std::logic_error("instance has no weight inverse");
  UtilityResult target = utility(instance.theory, instance.voter, limits);
  return WsatSolution{recover_weight(instance, target.value), *std::move(target.witness)};
}

CountGadget make_count_gadget(const Formula& phi, const VarUniverse& source) {
  std::size_t n = source.size();
  std::vector<std::size_t> fresh;
  UniversePtr universe = extend_with_fresh(source, {"y", "z"}, fresh);
  std::size_t y = fresh[0], z = fresh[1];

  Formula psi = Formula::conjunction({phi, Formula::var(y), Formula::var(z)});

  std::vector<Formula> marker;
  marker.push_back(Formula::var(y));
  marker.push_back(Formula::negation(Formula::var(z)));
  for (std::size_t i = 0; i < n; ++i) marker.push_back(Formula::var(i));
  Formula psi_prime = Formula::disjunction({psi, Formula::conjunction(std::move(marker))});

  CountGadget gadget{Theory(universe, {psi}),
                     Theory(universe, {std::move(psi_prime)}),
                     make_voter("d", VoterKind::Expected, universe->size(),
                                {{y, Rational(1)}, {z, Rational(1)}}),
                     y,
                     z};
  return gadget;
}

std::uint64_t count_via_expected_utility(const Formula& phi, const VarUniverse& source,
                                         const Limits& limits) {
  CountGadget gadget = make_count_gadget(phi, source);
  // psi' always has the marker model, so this never divides by zero; a zero
  // utility there means phi itself has no models.
  Rational prime = utility_expected(gadget.psi_prime, gadget.d, ExpectedMethod::Enumerate,
                                    limits).value;
  if (prime.sign() == 0) return 0;
  Rational base = utility_expected(gadget.psi, gadget.d, ExpectedMethod::Enumerate, limits).value;
  Rational count = Rational(1) / (base / prime - Rational(1));
  if (!count.is_integer() || count.sign() < 0)
    throw Error("counting gadget identity violated: got " + count.str());
  return count.numerator().convert_to<std::uint64_t>();
}

// ---------------------------------------------------------------------------
// Clausal form

CnfFormula parse_dimacs(std::istream& in) {
  std::string line;
  std::size_t var_count = 0, clause_count = 0;
  bool header_seen = false;
  std::vector<std::vector<int>> clauses;
  std::vector<int> current;
  bool open_clause = false;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c' || line[first] == '%') continue;
    if (line[first] == 'p') {
      if (header_seen) throw ParseError("DIMACS line " + std::to_string(line_no) +
                                        ": duplicate header");
      std::istringstream hs(line.substr(first + 1));
      std::string format;
      long long n = -1, m = -1;
      hs >> format >> n >> m;
      if (format != "cnf" || n < 0 || m < 0)
        throw ParseError("DIMACS line " + std::to_string(line_no) + ": bad header");
      if (n > 63) throw VariableLimitExceeded(static_cast<std::size_t>(n), 63);
      var_count = static_cast<std::size_t>(n);
      clause_count = static_cast<std::size_t>(m);
      header_seen = true;
      continue;
    }
    if (!header_seen)
      throw ParseError("DIMACS line " + std::to_string(line_no) + ": clause before header");
    std::istringstream ls(line);
    long long lit;
    while (ls >> lit) {
      if (lit == 0) {
        clauses.push_back(std::move(current));
        current.clear();
        open_clause = false;
        continue;
      }
      auto magnitude = static_cast<std::size_t>(lit < 0 ? -lit : lit);
      if (magnitude > var_count)
        throw ParseError("DIMACS line " + std::to_string(line_no) + ": literal " +
                         std::to_string(lit) + " out of range");
      current.push_back(static_cast<int>(lit));
      open_clause = true;
    }
    if (!ls.eof()) throw ParseError("DIMACS line " + std::to_string(line_no) + ": bad token");
  }
  if (!header_seen) throw ParseError("DIMACS input has no header");
  if (open_clause) throw ParseError("DIMACS input ends inside a clause (missing 0)");
  if (clauses.size() != clause_count)
    throw ParseError("DIMACS header announces " + std::to_string(clause_count) +
                     " clauses, found " + std::to_string(clauses.size()));

  VarUniverse universe;
  for (std::size_t i = 1; i <= var_count; ++i) universe.add("x" + std::to_string(i));
  return CnfFormula{std::make_shared<const VarUniverse>(std::move(universe)),
                    std::move(clauses)};
}

namespace {

void flatten(const Formula& f, Formula::Kind kind, std::vector<Formula>& out) {
  if (f.kind() == kind) {
    for (const auto& c : f.children()) flatten(c, kind, out);
    return;
  }
  out.push_back(f);
}

std::vector<int> literals_of_clause(const Formula& clause) {
  std::vector<Formula> parts;
  flatten(clause, Formula::Kind::Or, parts);
  std::vector<int> literals;
  std::set<std::size_t> seen;
  for (const auto& part : parts) {
    bool negative = part.kind() == Formula::Kind::Not;
    const Formula& atom = negative ? part.child() : part;
    if (atom.kind() != Formula::Kind::Var)
      throw NotCnf("clause contains a non-literal subformula");
    std::size_t index = atom.var_index();
    if (!seen.insert(index).second)
      throw NotCnf("variable repeated within a clause");
    int lit = static_cast<int>(index) + 1;
    literals.push_back(negative ? -lit : lit);
  }
  return literals;
}

}  // namespace

CnfFormula clauses_from_formula(const Formula& f, UniversePtr universe) {
  if (!universe) throw Error("missing universe");
  std::vector<Formula> clause_formulas;
  flatten(f, Formula::Kind::And, clause_formulas);
  std::vector<std::vector<int>> clauses;
  clauses.reserve(clause_formulas.size());
  for (const auto& clause : clause_formulas) clauses.push_back(literals_of_clause(clause));
  return CnfFormula{std::move(universe), std::move(clauses)};
}

Formula cnf_to_formula(const CnfFormula& cnf) {
  std::vector<Formula> clause_formulas;
  clause_formulas.reserve(cnf.clauses.size());
  for (const auto& clause : cnf.clauses) {
    std::vector<Formula> literals;
    literals.reserve(clause.size());
    for (int lit : clause) {
      auto index = static_cast<std::size_t>(lit < 0 ? -lit : lit) - 1;
      Formula v = Formula::var(index);
      literals.push_back(lit < 0 ? Formula::negation(std::move(v)) : std::move(v));
    }
    clause_formulas.push_back(Formula::disjunction(std::move(literals)));
  }
  return Formula::conjunction(std::move(clause_formulas));
}

CnfTurnoutReduction cnfsat_to_pessimistic_turnout(const CnfFormula& cnf) {
  for (const auto& clause : cnf.clauses) {
    if (clause.empty())
      return CnfTurnoutReduction{std::nullopt, true,
                                 "source contains an empty clause, hence is unsatisfiable; "
                                 "decision is NO"};
    std::set<std::size_t> seen;
    for (int lit : clause) {
      auto index = static_cast<std::size_t>(lit < 0 ? -lit : lit) - 1;
      if (index >= cnf.universe->size()) throw NotCnf("literal out of range");
      if (!seen.insert(index).second) throw NotCnf("variable repeated within a clause");
    }
  }

  std::vector<Voter> voters;
  voters.reserve(cnf.clauses.size());
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    const auto& clause = cnf.clauses[c];
    auto r = static_cast<long long>(clause.size());
    std::vector<std::pair<std::size_t, Rational>> prefs;
    for (int lit : clause) {
      auto index = static_cast<std::size_t>(lit < 0 ? -lit : lit) - 1;
      prefs.emplace_back(index, Rational(lit < 0 ? -1 : 1, r));
    }
    voters.push_back(make_voter("c" + std::to_string(c + 1), VoterKind::Pessimistic,
                                cnf.universe->size(), prefs, Rational(-(r - 1), r)));
  }

  TurnoutInstance instance{cnf.universe, std::move(voters), cnf.clauses.size()};
  return CnfTurnoutReduction{std::move(instance), false,
                             "turnout YES iff the source CNF is satisfiable"};
}

bool decide(const CnfTurnoutReduction& reduction, const Limits& limits) {
  if (reduction.trivially_no) return false;
  return pessimistic_turnout(*reduction.instance, limits).decision;
}

}  // namespace campaign
