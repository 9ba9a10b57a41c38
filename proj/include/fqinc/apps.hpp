#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fqinc/ffield.hpp"
#include "fqinc/geom.hpp"

namespace fqinc {

// --- distances --------------------------------------------------------------

/// x1^2 + x2^2 + x3^2. Throws EvenCharacteristic for p == 2.
[[nodiscard]] Elem norm3(const Field& f, const Point3& x);
[[nodiscard]] Elem dist(const Field& f, const Point3& x, const Point3& y);

struct DistanceReport {
  std::vector<Elem> distance_set;             // sorted
  std::vector<std::uint64_t> pairs_at;        // |R_gamma| indexed by gamma
  std::uint64_t zero_pairs = 0;
  std::uint64_t total_pairs = 0;              // |E||F|
  /// zero_pairs <= |E||F| / 2
  [[nodiscard]] bool zero_pair_hypothesis() const noexcept { return 2 * zero_pairs <= total_pairs; }
  [[nodiscard]] std::size_t nonzero_distances() const noexcept;
};

/// Exact distance set and per-distance pair counts by double loop.
[[nodiscard]] DistanceReport distance_set(const Field& f, std::span<const Point3> e, std::span<const Point3> fset);

/// The plane {u : ||x - u|| = ||y - u||}, written 2(y - x) . u = ||y|| - ||x||.
/// Throws EqualPoints for x == y.
[[nodiscard]] Plane3 bisector_plane(const Field& f, const Point3& x, const Point3& y);

struct TripleReport {
  std::uint64_t triples = 0;             // T(E, F)
  std::uint64_t nonzero_pairs = 0;       // sum_{gamma != 0} |R_gamma|
  std::size_t nonzero_distances = 0;     // |Delta(E, F) \ {0}|
  /// |Delta \ {0}| * |F| * T >= (sum_{gamma != 0} |R_gamma|)^2, exact.
  bool chain_ok = true;
  bool hypothesis_ok = true;             // zero pairs <= |E||F| / 2
  /// |Delta| >= |E|^2 |F| / (4T); meaningful only when hypothesis_ok.
  bool derived_ok = true;
  double chain_lhs = 0.0;
  double chain_rhs = 0.0;
};

inline constexpr double kTripleBudget = 2e9;

/// T(E, F) = #{(u, v, x) in E x E x F : ||x - u|| = ||x - v|| != 0}, computed
/// as sum over x and gamma != 0 of |R_gamma(x)|^2, plus the chain check.
[[nodiscard]] TripleReport triple_count(const Field& f, std::span<const Point3> e, std::span<const Point3> fset);

/// Literal triple loop; test oracle for triple_count. Throws BudgetExceeded
/// when |E|^2 |F| > 2e9.
[[nodiscard]] std::uint64_t triple_count_bruteforce(const Field& f, std::span<const Point3> e,
                                                    std::span<const Point3> fset);

inline constexpr double kBisectorBudget = 1e9;

struct BisectorK {
  std::size_t k = 0;
  std::optional<std::pair<Point3, Point3>> pair;  // (x, y) achieving k
  std::optional<Line3> line;
};

/// Max over x != y in E of the largest collinear subset of F on the bisector
/// of (x, y) at nonzero distance from x; 0 when no pair qualifies.
[[nodiscard]] BisectorK bisector_collinear_k(const Field& f, std::span<const Point3> e,
                                             std::span<const Point3> fset);

inline constexpr std::uint32_t kSphereScanMaxQ = 13;

/// Every line lying entirely on the sphere ||x|| = r, found by exhaustive
/// scan of directions through each sphere point. Canonical and sorted.
[[nodiscard]] std::vector<Line3> sphere_line_scan(const Field& f, Elem r);

struct BisectorInjectivity {
  bool injective = true;
  std::uint64_t collisions = 0;  // (x, y, y') with y != y' sharing a bisector
  std::optional<std::array<Point3, 3>> witness;
};

/// Checks, for every centre x in `centres`, that y -> bisector_plane(x, y)
/// is injective over all y != x in F_q^3.
[[nodiscard]] BisectorInjectivity bisector_injectivity(const Field& f, std::span<const Point3> centres);

struct DistanceBoundCheck {
  double alpha = 0.0;
  std::size_t k = 0;
  bool q_is_3_mod_4 = false;
  bool zero_pairs_ok = false;
  bool size_ok = false;                // |F| > 2 k q^alpha
  bool k_is_zero = false;
  double predicted = 0.0;              // max{k, q^alpha} or max{k, |E| / q^{2 alpha}}
  double measured_ratio = 0.0;         // |Delta| / predicted
  [[nodiscard]] bool hypotheses_ok() const noexcept { return q_is_3_mod_4 && zero_pairs_ok && size_ok; }
};

[[nodiscard]] DistanceBoundCheck distance_bound_check(const Field& f, std::size_t n_e, std::size_t n_f,
                                                          const DistanceReport& d, std::size_t k, double alpha);

// --- dot products -----------------------------------------------------------

struct DotReport {
  std::vector<Elem> dot_set;                  // sorted
  std::vector<std::uint64_t> lambda_counts;   // M_lambda indexed by lambda
  std::uint64_t orthogonal_pairs = 0;         // M_0
  std::uint64_t total_pairs = 0;
  std::optional<Elem> best_lambda;            // argmax over lambda != 0
  /// M_best * |D \ {0}| >= |E||F| - M_0 (averaging over nonzero products).
  bool averaging_ok = true;
  [[nodiscard]] bool orthogonal_hypothesis() const noexcept { return 2 * orthogonal_pairs <= total_pairs; }
};

[[nodiscard]] DotReport dot_product_set(const Field& f, std::span<const Point3> e, std::span<const Point3> fset);

struct DotCommonK {
  std::size_t k = 0;                           // global max
  std::vector<std::size_t> per_lambda;         // indexed by lambda; [0] unused
};

/// Max number of points of F common to two planes v . x = lambda and
/// w . x = lambda (v != w in E, lambda != 0).
[[nodiscard]] DotCommonK dot_common_collinear_k(const Field& f, std::span<const Point3> e,
                                                std::span<const Point3> fset);

/// True iff the points span an affine subspace of dimension <= 2.
[[nodiscard]] bool is_coplanar(const Field& f, std::span<const Point3> pts);

struct DotLineCheck {
  enum class Path { distinct_lambdas, transversal_witness };
  Path path = Path::transversal_witness;
  std::size_t k = 0;
  std::vector<Elem> lambdas;            // lambdas whose line l_lambda meets E
  std::optional<Point3> witness;        // w' with k distinct products on l0
  std::size_t products_on_marked = 0;   // |D(E, marked)|, computed directly
  bool ok = false;                      // products_on_marked >= k
};

/// For k >= 2 collinear marked points u_1..u_k and a non-coplanar E,
/// exhibits k distinct dot products: either k values lambda != 0 whose line
/// {w : u_i . w = lambda for all i} meets E, or some w' in E with distinct
/// products against every u_i. Throws KTooSmall, ECoplanar, InvalidArgument
/// (marked points not distinct and collinear).
[[nodiscard]] DotLineCheck dot_k_line_check(const Field& f, std::span<const Point3> e,
                                            std::span<const Point3> marked);

// --- regular subsets and traces --------------------------------------------

struct RegularSubsetReport {
  std::vector<std::size_t> regular;  // U1
  std::vector<std::size_t> heavy;    // |N(u)| >= 2|U|/q
  std::vector<std::size_t> light;    // |N(u)| <= |U|/(2q)
  std::vector<std::uint64_t> degree; // |N(u)|
  double heavy_threshold = 0.0;
  double light_threshold = 0.0;
  bool size_hypothesis = false;      // |U| >= 8 q^2
};

/// Partitions U by |N(u)| = #{u' in U : u . u' = 1}. Runs even when the
/// size hypothesis fails; the flag records it.
[[nodiscard]] RegularSubsetReport regular_subset(const Field& f, std::span<const Point3> u);

struct TracePairReport {
  std::vector<std::uint64_t> class_sizes;  // m(S), sorted descending
  std::uint64_t pair_count = 0;            // sum m(S)^2
  std::size_t classes = 0;
  std::uint64_t family_size = 0;           // sum m(S)
  double bound_value = 0.0;                // |U|^2 / |U'|^3 (inf for U' empty)
  double ratio = 0.0;                      // pair_count / bound_value
  bool cauchy_schwarz_ok = true;           // pair_count * classes >= |U|^2
};

/// Groups u in U by the trace {x in U' : u . x = 1}.
[[nodiscard]] TracePairReport trace_pairs(const Field& f, std::span<const Point3> u,
                                          std::span<const Point3> u_prime);

}  // namespace fqinc
