#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

#include "ojl/random.hpp"

namespace ojl {

/// Event frequency with its binomial standard error.
struct Frequency {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;

  double rate() const { return trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials); }
  double std_error() const {
    if (trials == 0) return 0.0;
    const double p = rate();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
};

/// Runs `trials` Bernoulli experiments `event(Rng&) -> bool` split into a fixed
/// number of shards. Shard k draws from base.split(k), where base is seeded by
/// one 64-bit draw from `rng`, so the result depends on the seed but not on
/// the thread count.
template <typename Event>
Frequency count_events(Rng& rng, std::uint64_t trials, Event&& event, unsigned threads = 1) {
  constexpr std::uint64_t kShards = 64;
  const Rng base(rng());
  const std::uint64_t shards = std::min<std::uint64_t>(kShards, std::max<std::uint64_t>(trials, 1));
  std::vector<std::uint64_t> hits(shards, 0);

  auto run_shard = [&](std::uint64_t k) {
    const std::uint64_t count = trials / shards + (k < trials % shards ? 1 : 0);
    Rng local = base.split(k);
    std::uint64_t h = 0;
    for (std::uint64_t t = 0; t < count; ++t) h += event(local) ? 1 : 0;
    hits[k] = h;
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(shards)));
  if (threads == 1) {
    for (std::uint64_t k = 0; k < shards; ++k) run_shard(k);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t k = next++; k < shards; k = next++) run_shard(k);
      });
    }
  }
  Frequency out;
  out.trials = trials;
  for (auto h : hits) out.hits += h;
  return out;
}

}  // namespace ojl
