#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace campaign::detail {

// Contiguous, ascending partition of [0, total) into at most `threads` chunks.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> chunk_ranges(std::uint64_t total,
                                                                         int threads) {
  if (threads < 1) threads = 1;
  // Small ranges are not worth spawning for.
  if (threads == 1 || total < 4096) return {{0, total}};
  auto n = static_cast<std::uint64_t>(threads);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  std::uint64_t base = total / n, extra = total % n, begin = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint64_t len = base + (i < extra ? 1 : 0);
    ranges.emplace_back(begin, begin + len);
    begin += len;
  }
  return ranges;
}

// Runs fn(chunk_index) on one thread per chunk; rethrows the first exception.
template <typename Fn>
void run_chunks(std::size_t chunk_count, Fn&& fn) {
  if (chunk_count <= 1) {
    if (chunk_count == 1) fn(std::size_t{0});
    return;
  }
  std::vector<std::exception_ptr> errors(chunk_count);
  std::vector<std::thread> workers;
  workers.reserve(chunk_count);
  for (std::size_t i = 0; i < chunk_count; ++i) {
    workers.emplace_back([&, i] {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace campaign::detail
