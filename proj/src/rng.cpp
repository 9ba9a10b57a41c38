#include "fqinc/rng.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "fqinc/error.hpp"

namespace fqinc {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

std::uint64_t uniform_between(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

std::vector<std::uint64_t> sample_without_replacement(Rng& rng, std::uint64_t population,
                                                      std::size_t k) {
  if (k > population)
    throw Error(ErrorCode::Unrealizable, "cannot draw " + std::to_string(k) + " distinct values from " +
                                             std::to_string(population));
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(k * 2);
  for (std::uint64_t j = population - k; j < population; ++j) {
    const std::uint64_t t = uniform_between(rng, 0, j);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fqinc
