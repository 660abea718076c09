#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "translab/speeds.hpp"

namespace translab {

using Rng = std::mt19937_64;

/// Seed for shard `index` of a run seeded with `seed` (splitmix64 mix), so a
/// sharded run is independent of how shards are distributed over threads.
std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform point on the unit sphere S^{n-1}.
std::vector<double> uniform_direction(Rng& rng, int n);

/// Uniform direction on the unit sphere intersected with the open cone,
/// by rejection. Throws SamplingError after max_tries rejections.
std::vector<double> sample_cone_direction(Rng& rng, Cone cone, int n, int max_tries = 100000);

/// Cone direction times a log-uniform radius in [1e-2, 1e2].
std::vector<double> sample_cone_point(Rng& rng, Cone cone, int n);

/// Thread count from TRANSLATOR_LAB_THREADS (default: hardware concurrency).
unsigned worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Each
/// index writes only its own output slot, so results are deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Splits `total` samples into fixed-size shards (independent of thread
/// count) and returns per-shard results in shard order.
template <typename Result>
std::vector<Result> sharded_map(std::size_t total, std::uint64_t seed,
                                const std::function<Result(Rng&, std::size_t)>& shard_body,
                                std::size_t shard_size = 4096) {
  const std::size_t shards = total == 0 ? 0 : (total + shard_size - 1) / shard_size;
  std::vector<Result> out(shards);
  parallel_for(shards, [&](std::size_t k) {
    Rng rng(shard_seed(seed, k));
    const std::size_t count = std::min(shard_size, total - k * shard_size);
    out[k] = shard_body(rng, count);
  });
  return out;
}

}  // namespace translab
