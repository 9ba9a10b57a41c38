#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "fqinc/ffield.hpp"
#include "fqinc/geom.hpp"

namespace fqinc {

using Members = boost::dynamic_bitset<>;

/// A family of subsets of [0, ground_size). Duplicate members are kept;
/// labels[i] names the object member i came from (a point or plane index).
struct SetSystem {
  std::size_t ground_size = 0;
  std::vector<Members> family;
  std::vector<std::size_t> labels;

  /// Appends a member given as element indices; throws InvalidArgument for
  /// elements outside the ground set.
  void add(std::span<const std::size_t> elements, std::size_t label);
  [[nodiscard]] std::size_t size() const noexcept { return family.size(); }
  /// Drops repeated members, keeping the first label of each.
  [[nodiscard]] SetSystem deduplicated() const;
};

enum class Side { by_point, by_plane };

/// by_point: ground = plane indices, one member N(u) per point u.
/// by_plane: ground = point indices, one member N(v) per plane v.
[[nodiscard]] SetSystem neighborhood_system(const Field& f, std::span<const Point3> points,
                                            std::span<const Plane3> planes, Side side);

inline constexpr std::size_t kMaxShatterSubset = 20;

/// True iff every subset of S is the trace A ∩ S of some member.
/// Throws SubsetTooLarge for |S| > 20.
[[nodiscard]] bool is_shattered(const SetSystem& sys, std::span<const std::size_t> subset);

struct VcResult {
  int dimension = 0;
  /// A shattered set of size d_max exists, so the true dimension is >= d_max.
  bool saturated = false;
  std::vector<std::size_t> witness;  // one shattered set of size `dimension`
};

inline constexpr int kMaxVcSearch = 6;
inline constexpr double kVcBudget = 1e7;

/// Exact VC dimension capped at d_max (<= 6). Searches level by level and
/// only tests sets all of whose one-smaller subsets are shattered. Throws
/// BudgetExceeded when sum_{i <= d_max} C(ground, i) > 10^7. An empty
/// family has dimension 0 here (nothing, not even the empty set, is shattered).
[[nodiscard]] VcResult vc_dimension(const SetSystem& sys, int d_max);

struct ShatterSampling {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
};

struct ShatterResult {
  std::uint64_t value = 0;
  /// false when the value came from sampling and is only a lower bound.
  bool exact = true;
};

inline constexpr double kShatterExactBudget = 1e6;

/// pi(z) = max over z-subsets U' of the number of distinct traces A ∩ U'.
/// Exact mode throws BudgetExceeded when C(ground, z) > 10^6.
[[nodiscard]] ShatterResult shatter_function(const SetSystem& sys, std::size_t z,
                                             std::optional<ShatterSampling> sampling = std::nullopt);

/// sum_{i=0}^{d} C(z, i), saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t sauer_shelah(std::uint64_t z, std::uint64_t d) noexcept;

[[nodiscard]] double binomial(std::uint64_t n, std::uint64_t k) noexcept;

struct SeparationReport {
  std::size_t k = 0;
  std::size_t delta = 0;
  bool separated = true;
  bool exhaustive = true;
  std::optional<std::vector<std::size_t>> witness;  // violating k-tuple
};

inline constexpr double kSeparationBudget = 1e7;

/// (k, delta)-separation: every k distinct members have
/// |union \ intersection| >= delta. Exhaustive up to 10^7 tuples, else
/// sampled when `sampling` is given, else BudgetExceeded.
[[nodiscard]] SeparationReport separation_check(const SetSystem& sys, std::size_t k, std::size_t delta,
                                                std::optional<ShatterSampling> sampling = std::nullopt);

/// Indices of members of size >= threshold.
[[nodiscard]] std::vector<std::size_t> rich_elements(const SetSystem& sys, double threshold);

[[nodiscard]] SetSystem subsystem(const SetSystem& sys, std::span<const std::size_t> indices);

struct PackingReport {
  std::size_t family_size = 0;
  std::size_t ground_size = 0;
  std::size_t delta = 0;
  int d = 0;
  double ratio = 0.0;   // |F| / (|U| / delta)^d
  double c_prime = 0.0;
  bool holds = true;    // ratio <= c_prime
  SeparationReport separation;
};

/// Measures the packing ratio |F| / (|U|/delta)^d against c_prime. This is
/// a measurement, not a proof: the separation status is reported alongside.
[[nodiscard]] PackingReport packing_bound_check(const SetSystem& sys, std::size_t k, std::size_t delta,
                                                int d, double c_prime);

// --- set-system file ------------------------------------------------------

/// "ground N" header, then one member per line as sorted indices.
[[nodiscard]] std::string format_set_system(const SetSystem& sys);
[[nodiscard]] SetSystem parse_set_system(const std::string& text);

}  // namespace fqinc
