#include "campaign/evaluation.hpp"

#include <utility>

#include "parallel.hpp"

namespace campaign {

namespace {

struct Extremum {
  Rational value;
  std::uint64_t code = 0;
  bool found = false;
};

// Scans all modeled worlds; keep(candidate, incumbent) says whether the
// candidate value displaces the incumbent. Ties never displace, so each chunk
// keeps its first extremal world and the merge keeps the lowest code.
template <typename Keep>
Extremum extremal_model(const Theory& t, const Voter& v, const Limits& limits, Keep keep) {
  std::size_t n = t.universe().size();
  if (v.prefs.size() != n) throw Error("voter and theory use different universes");
  ensure_enumerable(n, limits);
  const UniversePtr& u = t.universe_ptr();

  auto ranges = detail::chunk_ranges(world_count(n), limits.threads);
  std::vector<Extremum> partial(ranges.size());
  detail::run_chunks(ranges.size(), [&](std::size_t chunk) {
    Extremum local;
    for (std::uint64_t code = ranges[chunk].first; code < ranges[chunk].second; ++code) {
      World w(u, code);
      if (!models_theory(t, w)) continue;
      Rational value = world_utility(v, w);
      if (!local.found || keep(value, local.value)) {
        local.value = std::move(value);
        local.code = code;
        local.found = true;
      }
    }
    partial[chunk] = std::move(local);
  });

  Extremum best;
  for (auto& p : partial) {
    if (!p.found) continue;
    if (!best.found || keep(p.value, best.value)) best = std::move(p);
  }
  if (!best.found) throw InconsistentTheory();
  return best;
}

}  // namespace

UtilityResult utility_optimistic(const Theory& t, const Voter& v, const Limits& limits) {
  Extremum best = extremal_model(t, v, limits,
                                 [](const Rational& a, const Rational& b) { return a > b; });
  return UtilityResult{best.value, World(t.universe_ptr(), best.code)};
}

UtilityResult utility_pessimistic(const Theory& t, const Voter& v, const Limits& limits) {
  Extremum best = extremal_model(t, v, limits,
                                 [](const Rational& a, const Rational& b) { return a < b; });
  return UtilityResult{best.value, World(t.universe_ptr(), best.code)};
}

UtilityResult utility_expected(const Theory& t, const Voter& v, ExpectedMethod method,
                               const Limits& limits) {
  std::size_t n = t.universe().size();
  if (v.prefs.size() != n) throw Error("voter and theory use different universes");
  ensure_enumerable(n, limits);

  if (method == ExpectedMethod::Count) {
    ModelCount mc = count_models(t, limits);
    if (mc.total == 0) throw InconsistentTheory();
    Rational total(static_cast<long long>(mc.total));
    Rational sum;
    for (std::size_t i = 0; i < n; ++i) {
      if (v.prefs[i].sign() == 0) continue;
      Rational trues(static_cast<long long>(mc.per_variable_true[i]));
      sum += v.prefs[i] * (Rational(2) * trues - total);
    }
    return UtilityResult{sum / total, std::nullopt};
  }

  const UniversePtr& u = t.universe_ptr();
  auto ranges = detail::chunk_ranges(world_count(n), limits.threads);
  std::vector<Rational> sums(ranges.size());
  std::vector<std::uint64_t> counts(ranges.size(), 0);
  detail::run_chunks(ranges.size(), [&](std::size_t chunk) {
    Rational sum;
    std::uint64_t count = 0;
    for (std::uint64_t code = ranges[chunk].first; code < ranges[chunk].second; ++code) {
      World w(u, code);
      if (!models_theory(t, w)) continue;
      sum += world_utility(v, w);
      ++count;
    }
    sums[chunk] = std::move(sum);
    counts[chunk] = count;
  });

  Rational sum;
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    sum += sums[i];
    count += counts[i];
  }
  if (count == 0) throw InconsistentTheory();
  return UtilityResult{sum / Rational(static_cast<long long>(count)), std::nullopt};
}

UtilityResult utility(const Theory& t, const Voter& v, const Limits& limits) {
  switch (v.kind) {
    case VoterKind::Optimistic: return utility_optimistic(t, v, limits);
    case VoterKind::Pessimistic: return utility_pessimistic(t, v, limits);
    case VoterKind::Expected: return utility_expected(t, v, ExpectedMethod::Enumerate, limits);
  }
  throw Error("unreachable voter kind");
}

bool meets_threshold(const Theory& t, const Voter& v, std::optional<Rational> k,
                     const Limits& limits) {
  if (!k) k = v.threshold;
  if (!k) throw MissingThreshold(v.id);
  return utility(t, v, limits).value >= *k;
}

Rational total_utility(const Theory& t, const std::vector<Voter>& voters, const Limits& limits) {
  Rational total;
  for (const auto& v : voters) total += utility(t, v, limits).value;
  return total;
}

}  // namespace campaign
