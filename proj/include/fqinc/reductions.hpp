#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fqinc/ffield.hpp"
#include "fqinc/geom.hpp"

namespace fqinc {

/// Number of (l, x, l', x') in L x A x L x A with a x + b = a' x' + b',
/// counting repeated lines or elements with multiplicity. The fast method
/// histograms r(v) = #{(l, x) : a x + b = v} and returns sum_v r(v)^2.
/// Throws VerticalLinePresent if L holds a vertical line.
[[nodiscard]] std::uint64_t count_solutions(const Field& f, std::span<const Line2> lines,
                                            std::span<const Elem> a_set, CountMethod method);

/// Which sign variant of the plane  a X + sy x' Y + sz Z = -b  encodes the
/// relation a x + b = a' x' + b' at the point (x, a', b').
struct PlaneSignConvention {
  int y_sign = -1;
  int z_sign = -1;
};

/// Finds the variant that reproduces the relation exactly over this field:
/// exhaustively for q <= 9, on a seeded probe set otherwise.
[[nodiscard]] PlaneSignConvention derive_sign_convention(const Field& f);

struct ReductionOutput {
  std::vector<Point3> points3;   // (x, a', b') for x in A, (a', b') in L
  std::vector<Plane3> planes3;   // one per (a, b) in L, x' in A
  std::size_t k_bound = 0;       // max{|A|, |L_x|}
  std::uint64_t solution_count = 0;
  PlaneSignConvention convention;
  bool has_duplicates = false;
  /// Largest number of points3 on one non-vertical line; only non-vertical
  /// lines can lie in a plane of planes3. Zero when the check was skipped.
  std::size_t k_measured = 0;
  bool collinearity_checked = false;
};

/// Point set above this size skips the O(n^2) collinearity verification.
inline constexpr std::size_t kCollinearityCheckCap = 4000;

/// Encodes the energy count as a point-plane incidence count in F_q^3 and
/// verifies I(points3, planes3) == count_solutions (InvariantFailure if not)
/// and, for small inputs, that no non-vertical line holds more than k_bound
/// of the points.
[[nodiscard]] ReductionOutput build_point_plane_sets(const Field& f, std::span<const Line2> lines,
                                                     std::span<const Elem> a_set);

struct CsUpperReport {
  double value = 0.0;               // |B|^{1/2} * count_solutions^{1/2}
  std::uint64_t solution_count = 0;
  std::uint64_t actual = 0;         // I(A x B, L)
  bool holds = true;                // actual^2 <= |B| * count_solutions, exact
};

/// Cauchy-Schwarz upper bound on I(A x B, L) through the energy count.
[[nodiscard]] CsUpperReport cs_upper(const Field& f, std::span<const Line2> lines, std::span<const Elem> a_set,
                                     std::span<const Elem> b_set);

/// Cartesian product A x B as a point list (row-major in A).
[[nodiscard]] std::vector<Point2> cartesian(std::span<const Elem> a_set, std::span<const Elem> b_set);

/// Number of distinct slopes among the non-vertical lines.
[[nodiscard]] std::size_t distinct_slopes(std::span<const Line2> lines);

}  // namespace fqinc
