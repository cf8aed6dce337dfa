#pragma once

#include <optional>
#include <string>
#include <vector>

#include "campaign/evaluation.hpp"
#include "campaign/voters.hpp"

namespace campaign {

struct StrategyResult {
  Theory theory;
  Rational total;
  // Rational arithmetic operations spent by the solver path (used to check
  // the O(n*m) contract of the aggregation solver).
  std::size_t arithmetic_ops = 0;
};

// Best complete theory for a uniform population of expected-value or
// pessimistic voters, via preference aggregation: one literal per variable,
// sign of the per-variable mean, mean 0 resolving to true. O(n*m) arithmetic.
StrategyResult optimal_complete_theory(const UniversePtr& universe,
                                       const std::vector<Voter>& voters, VoterKind kind);

// Best completion of an existing theory: pins the modeled world with maximal
// summed world-utility (first in world order on ties).
StrategyResult optimal_completion(const Theory& t, const std::vector<Voter>& voters,
                                  VoterKind kind, const Limits& limits = {});

// Exhaustive oracle over all complete theories; n <= 12.
StrategyResult brute_force_best_theory(const UniversePtr& universe,
                                       const std::vector<Voter>& voters, VoterKind kind);

// Turnout: does some theory give at least h voters a utility meeting their
// threshold?
struct TurnoutInstance {
  UniversePtr universe;
  std::vector<Voter> voters;  // every voter carries a threshold
  std::size_t h = 0;
};

struct TurnoutResult {
  bool decision = false;
  // On YES: voters satisfied by the returned witness, in voter order.
  // On NO: satisfied_count is the best achievable count, ids empty.
  std::size_t satisfied_count = 0;
  std::vector<std::string> satisfied_ids;
  std::optional<Theory> witness;
  std::optional<World> witness_world;   // pessimistic solver only
  std::vector<Rational> best_utilities; // optimistic solver only, voter order
};

// All voters optimistic: the empty theory is optimal, so compare each
// voter's best possible utility against their threshold. Polynomial.
TurnoutResult optimistic_turnout(const TurnoutInstance& instance);

// All voters pessimistic: scan worlds; the first world satisfying >= h
// voters is the witness (as a complete theory).
TurnoutResult pessimistic_turnout(const TurnoutInstance& instance, const Limits& limits = {});

// Optimistic + pessimistic mix: scan subsets P of the pessimistic voters;
// worlds safe for all of P can serve optimists; the witness is a disjunction
// of one qualifying world per served optimist. Exponential only in the
// number of pessimists and n.
TurnoutResult mixed_turnout(const TurnoutInstance& instance, const Limits& limits = {});

}  // namespace campaign
