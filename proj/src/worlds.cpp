#include "campaign/worlds.hpp"

#include "parallel.hpp"

namespace campaign {

World::World(UniversePtr universe, std::uint64_t code)
    : universe_(std::move(universe)), code_(code) {
  if (!universe_) throw Error("world requires a universe");
  if (universe_->size() < 64 && code_ >= (std::uint64_t{1} << universe_->size()))
    throw Error("world code out of range for universe");
}

bool World::value(std::size_t index) const {
  std::size_t n = universe_->size();
  if (index >= n) throw Error("variable index out of range");
  return (code_ >> (n - 1 - index)) & 1u;
}

void ensure_enumerable(std::size_t n, const Limits& limits) {
  auto limit = static_cast<std::size_t>(limits.max_variables < 0 ? 0 : limits.max_variables);
  if (limit > 63) limit = 63;  // world codes are 64-bit
  if (n > limit) throw VariableLimitExceeded(n, limit);
}

std::uint64_t world_count(std::size_t n) {
  if (n > 63) throw VariableLimitExceeded(n, 63);
  return std::uint64_t{1} << n;
}

void for_each_model(const Theory& t, const std::function<bool(const World&)>& fn,
                    const Limits& limits) {
  std::size_t n = t.universe().size();
  ensure_enumerable(n, limits);
  const UniversePtr& u = t.universe_ptr();
  std::uint64_t total = world_count(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    World w(u, code);
    if (!models_theory(t, w)) continue;
    if (!fn(w)) return;
  }
}

std::vector<World> enumerate_models(const Theory& t, const Limits& limits) {
  std::vector<World> models;
  for_each_model(
      t,
      [&](const World& w) {
        models.push_back(w);
        return true;
      },
      limits);
  return models;
}

ModelCount count_models(const Theory& t, const Limits& limits) {
  std::size_t n = t.universe().size();
  ensure_enumerable(n, limits);
  const UniversePtr& u = t.universe_ptr();

  auto ranges = detail::chunk_ranges(world_count(n), limits.threads);
  std::vector<ModelCount> partial(ranges.size());
  detail::run_chunks(ranges.size(), [&](std::size_t chunk) {
    ModelCount local;
    local.per_variable_true.assign(n, 0);
    for (std::uint64_t code = ranges[chunk].first; code < ranges[chunk].second; ++code) {
      World w(u, code);
      if (!models_theory(t, w)) continue;
      ++local.total;
      for (std::size_t i = 0; i < n; ++i)
        if (w.value(i)) ++local.per_variable_true[i];
    }
    partial[chunk] = std::move(local);
  });

  ModelCount result;
  result.per_variable_true.assign(n, 0);
  for (const auto& p : partial) {
    result.total += p.total;
    for (std::size_t i = 0; i < n; ++i) result.per_variable_true[i] += p.per_variable_true[i];
  }
  return result;
}

bool is_satisfiable(const Theory& t, const Limits& limits) {
  bool found = false;
  for_each_model(
      t,
      [&](const World&) {
        found = true;
        return false;
      },
      limits);
  return found;
}

Formula world_conjunction(const World& w) {
  std::vector<Formula> literals;
  literals.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    Formula v = Formula::var(i);
    literals.push_back(w.value(i) ? std::move(v) : Formula::negation(std::move(v)));
  }
  return Formula::conjunction(std::move(literals));
}

}  // namespace campaign
