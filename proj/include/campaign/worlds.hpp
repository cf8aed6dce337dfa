#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "campaign/formula.hpp"

namespace campaign {

// Enumeration guards and the deterministic-parallelism knob. Results never
// depend on `threads`.
struct Limits {
  int max_variables = 24;
  int max_pessimistic_voters = 20;
  int threads = 1;
};

// Total assignment over a universe. Worlds are ordered by `code`: the
// assignment read as a binary number with the first variable as the most
// significant bit, false = 0 < true = 1.
class World {
 public:
  World(UniversePtr universe, std::uint64_t code);

  std::size_t size() const { return universe_->size(); }
  bool value(std::size_t index) const;
  // The paper-style numeric view: false -> -1, true -> +1.
  int numeric(std::size_t index) const { return value(index) ? 1 : -1; }
  std::uint64_t code() const { return code_; }
  const VarUniverse& universe() const { return *universe_; }
  const UniversePtr& universe_ptr() const { return universe_; }

  bool operator==(const World& other) const {
    return code_ == other.code_ && universe_->names() == other.universe_->names();
  }

 private:
  UniversePtr universe_;
  std::uint64_t code_;
};

// Throws VariableLimitExceeded when 2^n enumeration is out of bounds.
void ensure_enumerable(std::size_t n, const Limits& limits);

std::uint64_t world_count(std::size_t n);

// Streams the modeled worlds in ascending world order; `fn` returns false to
// stop early. Always sequential.
void for_each_model(const Theory& t, const std::function<bool(const World&)>& fn,
                    const Limits& limits = {});

std::vector<World> enumerate_models(const Theory& t, const Limits& limits = {});

struct ModelCount {
  std::uint64_t total = 0;
  // per_variable_true[i] = number of models where variable i is true.
  std::vector<std::uint64_t> per_variable_true;
};

ModelCount count_models(const Theory& t, const Limits& limits = {});

bool is_satisfiable(const Theory& t, const Limits& limits = {});

// Conjunction of literals pinning exactly this world.
Formula world_conjunction(const World& w);

}  // namespace campaign
