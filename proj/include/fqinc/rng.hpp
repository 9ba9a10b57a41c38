#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fqinc {

using Rng = std::mt19937_64;

/// Independent stream for (seed, stream) via a splitmix64 finalizer, so
/// per-trial generators do not depend on scheduling order.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// k distinct values from [0, population), sorted ascending (Floyd's method).
[[nodiscard]] std::vector<std::uint64_t> sample_without_replacement(Rng& rng, std::uint64_t population,
                                                                    std::size_t k);

/// Uniform value in [lo, hi].
[[nodiscard]] std::uint64_t uniform_between(Rng& rng, std::uint64_t lo, std::uint64_t hi);

}  // namespace fqinc
