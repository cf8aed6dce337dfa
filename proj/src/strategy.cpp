#include "campaign/strategy.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

namespace campaign {

namespace {

// Common-denominator view of a population: prefs and thresholds as exact
// integer multiples of 1/scale, so world scans stay in integer arithmetic.
struct ScaledVoter {
  std::vector<Integer> prefs;
  Integer threshold;
};

struct ScaledPopulation {
  Integer scale = 1;
  std::vector<ScaledVoter> voters;
};

ScaledPopulation scale_voters(const std::vector<Voter>& voters, bool with_thresholds) {
  ScaledPopulation out;
  for (const auto& v : voters) {
    for (const auto& p : v.prefs) out.scale = boost::multiprecision::lcm(out.scale, p.denominator());
    if (with_thresholds && v.threshold)
      out.scale = boost::multiprecision::lcm(out.scale, v.threshold->denominator());
  }
  for (const auto& v : voters) {
    ScaledVoter sv;
    sv.prefs.reserve(v.prefs.size());
    for (const auto& p : v.prefs) sv.prefs.push_back(p.numerator() * (out.scale / p.denominator()));
    if (with_thresholds && v.threshold)
      sv.threshold = v.threshold->numerator() * (out.scale / v.threshold->denominator());
    out.voters.push_back(std::move(sv));
  }
  return out;
}

Integer scaled_world_utility(const ScaledVoter& v, std::uint64_t code, std::size_t n) {
  Integer total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& p = v.prefs[i];
    if (p.is_zero()) continue;
    if ((code >> (n - 1 - i)) & 1u)
      total += p;
    else
      total -= p;
  }
  return total;
}

Rational unscale(const Integer& value, const Integer& scale) { return Rational(value, scale); }

void require_population(const UniversePtr& universe, const std::vector<Voter>& voters,
                        VoterKind kind) {
  if (!universe) throw Error("missing universe");
  if (voters.empty()) throw EmptyPopulation();
  if (kind == VoterKind::Optimistic)
    throw std::invalid_argument("optimal theories are built for expected or pessimistic voters");
  for (const auto& v : voters) {
    if (v.kind != kind)
      throw std::invalid_argument("voter '" + v.id + "' is not " + to_string(kind));
    if (v.prefs.size() != universe->size())
      throw Error("voter '" + v.id + "' does not match the universe");
  }
}

std::vector<Formula> literal_statements(std::uint64_t code, std::size_t n) {
  std::vector<Formula> statements;
  statements.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Formula v = Formula::var(i);
    bool positive = (code >> (n - 1 - i)) & 1u;
    statements.push_back(positive ? std::move(v) : Formula::negation(std::move(v)));
  }
  return statements;
}

void require_turnout(const TurnoutInstance& instance) {
  if (!instance.universe) throw Error("missing universe");
  if (instance.h > instance.voters.size())
    throw std::invalid_argument("h exceeds the number of voters");
  for (const auto& v : instance.voters) {
    if (v.prefs.size() != instance.universe->size())
      throw Error("voter '" + v.id + "' does not match the universe");
    if (!v.threshold) throw MissingThreshold(v.id);
  }
}

// Fixed-size bit set over world codes.
class WorldSet {
 public:
  explicit WorldSet(std::uint64_t bits, bool filled = false)
      : bits_(bits), words_((bits + 63) / 64, filled ? ~std::uint64_t{0} : 0) {
    trim();
  }

  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  void intersect(const WorldSet& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  bool intersects(const WorldSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & other.words_[w]) return true;
    return false;
  }

  bool contains_all_of(const WorldSet& other) const {
    // other subset of this
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (other.words_[w] & ~words_[w]) return false;
    return true;
  }

  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  // Lowest set bit; bits_ when empty.
  std::uint64_t first() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return (static_cast<std::uint64_t>(w) << 6) +
                            static_cast<std::uint64_t>(std::countr_zero(words_[w]));
    return bits_;
  }

  std::uint64_t first_common(const WorldSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t both = words_[w] & other.words_[w];
      if (both) return (static_cast<std::uint64_t>(w) << 6) +
                       static_cast<std::uint64_t>(std::countr_zero(both));
    }
    return bits_;
  }

 private:
  void trim() {
    if (bits_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
  }

  std::uint64_t bits_;
  std::vector<std::uint64_t> words_;
};

}  // namespace

StrategyResult optimal_complete_theory(const UniversePtr& universe,
                                       const std::vector<Voter>& voters, VoterKind kind) {
  require_population(universe, voters, kind);
  std::size_t n = universe->size();

  RationalOpCounter ops;
  std::vector<Rational> mean = aggregate_preferences(voters);

  std::uint64_t code = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (mean[i].sign() >= 0) code |= std::uint64_t{1} << (n - 1 - i);

  // Every voter kind agrees with the single modeled world, so the population
  // total is |V| times the aggregate's utility there.
  Rational per_aggregate;
  for (std::size_t i = 0; i < n; ++i)
    per_aggregate += mean[i].sign() >= 0 ? mean[i] : -mean[i];
  Rational total = per_aggregate * Rational(static_cast<long long>(voters.size()));

  Theory theory(universe, literal_statements(code, n));
  return StrategyResult{std::move(theory), std::move(total), ops.count()};
}

StrategyResult optimal_completion(const Theory& t, const std::vector<Voter>& voters,
                                  VoterKind kind, const Limits& limits) {
  require_population(t.universe_ptr(), voters, kind);
  std::size_t n = t.universe().size();
  ensure_enumerable(n, limits);

  ScaledPopulation scaled = scale_voters(voters, false);
  bool found = false;
  Integer best_total;
  std::uint64_t best_code = 0;
  for_each_model(
      t,
      [&](const World& w) {
        Integer total = 0;
        for (const auto& sv : scaled.voters) total += scaled_world_utility(sv, w.code(), n);
        if (!found || total > best_total) {
          best_total = std::move(total);
          best_code = w.code();
          found = true;
        }
        return true;
      },
      limits);
  if (!found) throw InconsistentTheory();

  Theory completion = t.extended(world_conjunction(World(t.universe_ptr(), best_code)));
  return StrategyResult{std::move(completion), unscale(best_total, scaled.scale)};
}

StrategyResult brute_force_best_theory(const UniversePtr& universe,
                                       const std::vector<Voter>& voters, VoterKind kind) {
  require_population(universe, voters, kind);
  std::size_t n = universe->size();
  if (n > 12) throw VariableLimitExceeded(n, 12);

  ScaledPopulation scaled = scale_voters(voters, false);
  Integer best_total;
  std::uint64_t best_code = 0;
  bool found = false;
  for (std::uint64_t code = 0; code < world_count(n); ++code) {
    Integer total = 0;
    for (const auto& sv : scaled.voters) total += scaled_world_utility(sv, code, n);
    if (!found || total > best_total) {
      best_total = std::move(total);
      best_code = code;
      found = true;
    }
  }

  Theory theory(universe, literal_statements(best_code, n));
  return StrategyResult{std::move(theory), unscale(best_total, scaled.scale)};
}

TurnoutResult optimistic_turnout(const TurnoutInstance& instance) {
  require_turnout(instance);
  for (const auto& v : instance.voters)
    if (v.kind != VoterKind::Optimistic)
      throw std::invalid_argument("voter '" + v.id + "' is not optimistic");

  TurnoutResult result;
  for (const auto& v : instance.voters) {
    Rational best = best_possible_utility(v);
    if (best >= *v.threshold) result.satisfied_ids.push_back(v.id);
    result.best_utilities.push_back(std::move(best));
  }
  result.satisfied_count = result.satisfied_ids.size();
  result.decision = result.satisfied_count >= instance.h;
  result.witness = Theory(instance.universe);  // silence is optimal
  if (!result.decision) {
    result.satisfied_ids.clear();  // satisfied_count stays: best achievable
  }
  return result;
}

TurnoutResult pessimistic_turnout(const TurnoutInstance& instance, const Limits& limits) {
  require_turnout(instance);
  for (const auto& v : instance.voters)
    if (v.kind != VoterKind::Pessimistic)
      throw std::invalid_argument("voter '" + v.id + "' is not pessimistic");
  std::size_t n = instance.universe->size();
  ensure_enumerable(n, limits);

  ScaledPopulation scaled = scale_voters(instance.voters, true);
  std::optional<std::uint64_t> witness_code;
  std::size_t witness_satisfied = 0;
  std::size_t best_count = 0;
  for (std::uint64_t code = 0; code < world_count(n); ++code) {
    std::size_t count = 0;
    for (const auto& sv : scaled.voters)
      if (scaled_world_utility(sv, code, n) >= sv.threshold) ++count;
    best_count = std::max(best_count, count);
    if (count >= instance.h) {
      witness_code = code;
      witness_satisfied = count;
      break;
    }
  }

  TurnoutResult result;
  if (!witness_code) {
    result.decision = false;
    result.satisfied_count = best_count;
    return result;
  }
  result.decision = true;
  result.satisfied_count = witness_satisfied;
  World w(instance.universe, *witness_code);
  for (std::size_t i = 0; i < instance.voters.size(); ++i)
    if (scaled_world_utility(scaled.voters[i], *witness_code, n) >= scaled.voters[i].threshold)
      result.satisfied_ids.push_back(instance.voters[i].id);
  result.witness = Theory(instance.universe, {world_conjunction(w)});
  result.witness_world = std::move(w);
  return result;
}

TurnoutResult mixed_turnout(const TurnoutInstance& instance, const Limits& limits) {
  require_turnout(instance);
  std::vector<std::size_t> optimists, pessimists;
  for (std::size_t i = 0; i < instance.voters.size(); ++i) {
    switch (instance.voters[i].kind) {
      case VoterKind::Optimistic: optimists.push_back(i); break;
      case VoterKind::Pessimistic: pessimists.push_back(i); break;
      default:
        throw std::invalid_argument("voter '" + instance.voters[i].id +
                                    "' is neither optimistic nor pessimistic");
    }
  }
  std::size_t n = instance.universe->size();
  ensure_enumerable(n, limits);
  auto pess_limit = static_cast<std::size_t>(
      limits.max_pessimistic_voters < 0 ? 0 : limits.max_pessimistic_voters);
  if (pessimists.size() > pess_limit)
    throw PopulationLimitExceeded(pessimists.size(), pess_limit);

  std::uint64_t worlds = world_count(n);
  ScaledPopulation scaled = scale_voters(instance.voters, true);

  // acceptable[i]: worlds where voter i's world utility meets their threshold.
  std::vector<WorldSet> acceptable;
  acceptable.reserve(instance.voters.size());
  for (const auto& sv : scaled.voters) {
    WorldSet set(worlds);
    for (std::uint64_t code = 0; code < worlds; ++code)
      if (scaled_world_utility(sv, code, n) >= sv.threshold) set.set(code);
    acceptable.push_back(std::move(set));
  }

  std::size_t best_count = 0;
  std::optional<std::uint64_t> chosen_mask;
  WorldSet chosen_safe(worlds);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pessimists.size()); ++mask) {
    WorldSet safe(worlds, true);
    for (std::size_t j = 0; j < pessimists.size(); ++j)
      if ((mask >> j) & 1u) safe.intersect(acceptable[pessimists[j]]);
    if (!safe.any()) continue;
    std::size_t count = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t opt : optimists)
      if (acceptable[opt].intersects(safe)) ++count;
    best_count = std::max(best_count, count);
    if (count >= instance.h) {
      chosen_mask = mask;
      chosen_safe = std::move(safe);
      break;
    }
  }

  TurnoutResult result;
  if (!chosen_mask) {
    result.decision = false;
    result.satisfied_count = best_count;
    return result;
  }

  // One qualifying world per served optimist, else any safe world.
  std::vector<std::uint64_t> codes;
  for (std::size_t opt : optimists) {
    std::uint64_t code = acceptable[opt].first_common(chosen_safe);
    if (code == worlds) continue;
    if (std::find(codes.begin(), codes.end(), code) == codes.end()) codes.push_back(code);
  }
  if (codes.empty()) codes.push_back(chosen_safe.first());

  std::vector<Formula> disjuncts;
  WorldSet modeled(worlds);
  for (std::uint64_t code : codes) {
    disjuncts.push_back(world_conjunction(World(instance.universe, code)));
    modeled.set(code);
  }
  result.witness = Theory(instance.universe, {Formula::disjunction(std::move(disjuncts))});

  // Actual satisfied set under the witness: pessimists need every modeled
  // world acceptable, optimists need one.
  for (std::size_t i = 0; i < instance.voters.size(); ++i) {
    bool ok = instance.voters[i].kind == VoterKind::Pessimistic
                  ? acceptable[i].contains_all_of(modeled)
                  : acceptable[i].intersects(modeled);
    if (ok) result.satisfied_ids.push_back(instance.voters[i].id);
  }
  result.satisfied_count = result.satisfied_ids.size();
  result.decision = true;
  return result;
}

}  // namespace campaign
