#pragma once

#include <optional>

#include "campaign/voters.hpp"

namespace campaign {

struct UtilityResult {
  Rational value;
  // First maximizer/minimizer in world order for optimistic/pessimistic;
  // absent for expected value.
  std::optional<World> witness;
};

enum class ExpectedMethod {
  Enumerate,  // sum utilities over modeled worlds, divide by their number
  Count,      // derive the same value from per-variable model counts
};

// ut_v(T) = max { u_v(w) : w models T }.
UtilityResult utility_optimistic(const Theory& t, const Voter& v, const Limits& limits = {});

// ut_v(T) = min { u_v(w) : w models T }.
UtilityResult utility_pessimistic(const Theory& t, const Voter& v, const Limits& limits = {});

// ut_v(T) = (sum over modeled w of u_v(w)) / #models. The Count method uses
// ut = sum_i p_v(x_i) * (2*C_i - C) / C for total C and per-variable true
// counts C_i; both methods agree exactly.
UtilityResult utility_expected(const Theory& t, const Voter& v,
                               ExpectedMethod method = ExpectedMethod::Enumerate,
                               const Limits& limits = {});

// Dispatch on v.kind.
UtilityResult utility(const Theory& t, const Voter& v, const Limits& limits = {});

// utility(t, v) >= k, with k defaulting to the voter's own threshold.
bool meets_threshold(const Theory& t, const Voter& v,
                     std::optional<Rational> k = std::nullopt, const Limits& limits = {});

// Sum of per-voter utilities, each voter by its own kind.
Rational total_utility(const Theory& t, const std::vector<Voter>& voters,
                       const Limits& limits = {});

}  // namespace campaign
