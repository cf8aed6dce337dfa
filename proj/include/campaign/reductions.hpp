#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "campaign/strategy.hpp"

namespace campaign {

// How a packaged instance's answer maps back to the source problem.
enum class InverseKind {
  SatDecision,     // threshold met <=> source satisfiable
  UnsatDecision,   // threshold met <=> source unsatisfiable
  WeightRecovery,  // W = (u * R + sum_r) / 2
};

// A target-problem instance generated from a source problem, carrying the
// data needed to read the source answer back out of the target answer.
struct ReductionInstance {
  Theory theory;
  Voter voter;
  std::optional<Rational> threshold;
  InverseKind inverse_kind;
  std::string inverse;  // human-readable recipe
  // WeightRecovery parameters:
  std::optional<Rational> weight_scale;  // R = max weight
  std::optional<Rational> weight_sum;    // sum of all weights
};

// T = {x* -> phi}, p(x*) = 1 elsewhere 0, k = 1: the optimistic voter
// reaches 1 exactly when phi is satisfiable.
ReductionInstance sat_to_optimistic_threshold(const Formula& phi, const VarUniverse& source);

// Same theory, p(x*) = -1: the pessimistic voter reaches 1 exactly when phi
// is unsatisfiable.
ReductionInstance unsat_to_pessimistic_threshold(const Formula& phi, const VarUniverse& source);

// Runs the packaged threshold check and applies the decision passthrough.
bool decide(const ReductionInstance& instance, const Limits& limits = {});

// Weighted satisfiability: find a model of `formula` maximizing (or
// minimizing) the total weight of true variables.
enum class WsatDirection { Max, Min };

struct WsatInstance {
  UniversePtr universe;
  Formula formula;
  std::vector<Rational> weights;  // positive, one per variable
  WsatDirection direction = WsatDirection::Max;
};

// T = {phi}, p(x_i) = r_i / R: the optimistic (max) or pessimistic (min)
// utility u recovers the optimal weight as W = (u*R + sum_r)/2.
ReductionInstance wsat_to_evaluation(const WsatInstance& instance, const Limits& limits = {});

Rational recover_weight(const ReductionInstance& instance, const Rational& utility);

struct WsatSolution {
  Rational weight;
  World witness;
};

// inverse-composed-with-target-solver: evaluates the packaged instance and
// maps the utility and witness back to the weighted-satisfiability answer.
WsatSolution solve_wsat(const ReductionInstance& instance, const Limits& limits = {});

// Counting gadget: psi = phi & y & z, psi' = psi | (y & !z & all variables
// true), voter d wants y and z. The psi'-only extra model has utility 0 for
// d, which pins the expected-utility ratio to (S+1)/S for S = #SAT(phi).
struct CountGadget {
  Theory psi;
  Theory psi_prime;
  Voter d;
  std::size_t y_index = 0;
  std::size_t z_index = 0;
};

CountGadget make_count_gadget(const Formula& phi, const VarUniverse& source);

// #SAT(phi) from two expected-utility evaluations: S = 1/(ut(psi)/ut(psi')-1),
// with an unsatisfiable phi detected by ut(psi') = 0 and mapped to 0.
std::uint64_t count_via_expected_utility(const Formula& phi, const VarUniverse& source,
                                         const Limits& limits = {});

// --------------------------------------------------------------------------
// Clausal form

// Clauses hold DIMACS-style literals: +-(index+1), never 0.
struct CnfFormula {
  UniversePtr universe;
  std::vector<std::vector<int>> clauses;
};

// Standard DIMACS CNF: "p cnf n m" header, 'c' comment lines, clauses
// terminated by 0. Variables are named x1..xn.
CnfFormula parse_dimacs(std::istream& in);

// Validates conjunction-of-disjunctions-of-literals shape; a variable
// occurring twice in a clause (either polarity) is rejected.
CnfFormula clauses_from_formula(const Formula& f, UniversePtr universe);

Formula cnf_to_formula(const CnfFormula& cnf);

// One pessimistic voter per clause with prefs +-1/r and threshold -(r-1)/r,
// h = clause count: turnout succeeds exactly when the CNF is satisfiable.
// An empty clause cannot be mapped (1/r undefined), so the whole instance
// degenerates to an immediate NO.
struct CnfTurnoutReduction {
  std::optional<TurnoutInstance> instance;
  bool trivially_no = false;
  std::string inverse;
};

CnfTurnoutReduction cnfsat_to_pessimistic_turnout(const CnfFormula& cnf);

bool decide(const CnfTurnoutReduction& reduction, const Limits& limits = {});

}  // namespace campaign
