#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "fqinc/ffield.hpp"

namespace fqinc {

struct Point2 {
  Elem x;
  Elem y;

  friend constexpr auto operator<=>(const Point2&, const Point2&) = default;
};

using Point3 = std::array<Elem, 3>;

// --- vector helpers over GF(q)^3 -------------------------------------------

[[nodiscard]] Point3 vadd(const Field& f, const Point3& a, const Point3& b) noexcept;
[[nodiscard]] Point3 vsub(const Field& f, const Point3& a, const Point3& b) noexcept;
[[nodiscard]] Point3 vscale(const Field& f, Elem s, const Point3& a) noexcept;
[[nodiscard]] Elem dot(const Field& f, const Point3& a, const Point3& b) noexcept;
[[nodiscard]] Point3 cross(const Field& f, const Point3& a, const Point3& b) noexcept;
[[nodiscard]] bool is_zero(const Point3& a) noexcept;
/// Scales a nonzero vector so its first nonzero coordinate is 1.
[[nodiscard]] Point3 normalize_direction(const Field& f, const Point3& d);

/// Packs a point into a single integer x + q*y + q^2*z (bijective on F_q^3).
[[nodiscard]] std::uint64_t point_code(const Field& f, const Point3& a) noexcept;
[[nodiscard]] Point3 point_from_code(const Field& f, std::uint64_t code) noexcept;

// --- lines in the plane -----------------------------------------------------

/// An affine line of F_q^2: either y = slope*x + intercept or x = c.
class Line2 {
 public:
  struct NonVertical {
    Elem slope;
    Elem intercept;
    friend constexpr auto operator<=>(const NonVertical&, const NonVertical&) = default;
  };
  struct Vertical {
    Elem c;
    friend constexpr auto operator<=>(const Vertical&, const Vertical&) = default;
  };

  static Line2 non_vertical(Elem slope, Elem intercept) { return Line2(NonVertical{slope, intercept}); }
  static Line2 vertical(Elem c) { return Line2(Vertical{c}); }

  [[nodiscard]] bool is_vertical() const noexcept { return std::holds_alternative<Vertical>(form_); }
  /// Non-vertical with nonzero slope.
  [[nodiscard]] bool is_slanted() const noexcept {
    return !is_vertical() && std::get<NonVertical>(form_).slope.index != 0;
  }
  [[nodiscard]] const std::variant<NonVertical, Vertical>& form() const noexcept { return form_; }
  [[nodiscard]] const NonVertical& non_vertical_form() const { return std::get<NonVertical>(form_); }
  [[nodiscard]] const Vertical& vertical_form() const { return std::get<Vertical>(form_); }

  friend bool operator==(const Line2&, const Line2&) = default;
  friend bool operator<(const Line2& a, const Line2& b) { return a.form_ < b.form_; }

 private:
  explicit Line2(std::variant<NonVertical, Vertical> form) : form_(form) {}
  std::variant<NonVertical, Vertical> form_;
};

// --- lines and planes in space ---------------------------------------------

/// Affine line of F_q^3 in canonical form: direction with first nonzero
/// coordinate 1, base point with that coordinate zeroed.
struct Line3 {
  Point3 base;
  Point3 direction;

  friend constexpr auto operator<=>(const Line3&, const Line3&) = default;
};

/// Canonical line through `point` with direction `dir` (dir != 0).
[[nodiscard]] Line3 make_line3(const Field& f, const Point3& point, const Point3& dir);
[[nodiscard]] std::vector<Point3> points_on(const Field& f, const Line3& line);
[[nodiscard]] bool on_line(const Field& f, const Point3& point, const Line3& line);

/// The plane {x : normal . x = rhs}. Equality compares point sets.
class Plane3 {
 public:
  /// General plane as written; throws InvalidArgument for a zero normal.
  static Plane3 make(const Field& f, const Point3& normal, Elem rhs);
  /// The plane a . x = 1 (a != 0), stored in that normalized form.
  static Plane3 dual(const Field& f, const Point3& a);

  [[nodiscard]] const Point3& normal() const noexcept { return normal_; }
  [[nodiscard]] Elem rhs() const noexcept { return rhs_; }
  [[nodiscard]] bool affine_one() const noexcept { return affine_one_; }
  /// Canonical (normal, rhs) with the first nonzero normal coordinate 1.
  [[nodiscard]] const std::pair<Point3, Elem>& key() const noexcept { return key_; }

  friend bool operator==(const Plane3& a, const Plane3& b) { return a.key_ == b.key_; }
  friend bool operator<(const Plane3& a, const Plane3& b) { return a.key_ < b.key_; }

 private:
  Plane3(Point3 normal, Elem rhs, bool affine_one, std::pair<Point3, Elem> key)
      : normal_(normal), rhs_(rhs), affine_one_(affine_one), key_(key) {}

  Point3 normal_;
  Elem rhs_;
  bool affine_one_;
  std::pair<Point3, Elem> key_;
};

// --- incidence --------------------------------------------------------------

[[nodiscard]] bool incident(const Field& f, const Point2& pt, const Line2& line);
[[nodiscard]] bool incident(const Field& f, const Point3& pt, const Plane3& plane);

enum class CountMethod { oracle, fast };

struct IncidenceCount {
  std::uint64_t count = 0;
  CountMethod method = CountMethod::oracle;
};

/// Oracle product cap (|points| * |flats|).
inline constexpr std::uint64_t kOracleCap = 1'000'000'000;

/// Counts incident (point, line) pairs with multiplicity. The fast method
/// buckets lines by slope and probes b = y - a*x per point and slope.
[[nodiscard]] IncidenceCount count_incidences(const Field& f, std::span<const Point2> points,
                                              std::span<const Line2> lines, CountMethod method);
[[nodiscard]] IncidenceCount count_incidences(const Field& f, std::span<const Point3> points,
                                              std::span<const Plane3> planes, CountMethod method);

// --- collinearity -----------------------------------------------------------

struct CollinearResult {
  std::size_t k = 0;
  std::optional<Line3> witness;  // empty for k <= 1
};

using LineFilter = std::function<bool(const Line3&)>;

/// Maximum number of points of the set on a common line. Duplicate points
/// are counted once. When `accept` is given, only lines it accepts count
/// (a lone point still gives k = 1).
[[nodiscard]] CollinearResult max_collinear(const Field& f, std::span<const Point3> points,
                                            const LineFilter& accept = {});

struct PlaneIntersection {
  enum class Kind { Same, Empty, Line };
  Kind kind = Kind::Empty;
  std::optional<Line3> line;
};

[[nodiscard]] PlaneIntersection plane_intersection(const Field& f, const Plane3& a, const Plane3& b);

/// Largest number of points of P lying on two distinct planes of the set at
/// once. Those points are collinear, so this is the smallest k for which no
/// line carrying more than k points of P sits in two of the planes.
[[nodiscard]] std::size_t max_shared_points(const Field& f, std::span<const Point3> points,
                                            std::span<const Plane3> planes);

// --- enumeration ------------------------------------------------------------

[[nodiscard]] std::vector<Point2> all_points2(const Field& f);
[[nodiscard]] std::vector<Point3> all_points3(const Field& f);
/// All q^3 - 1 planes a . x = 1.
[[nodiscard]] std::vector<Plane3> all_dual_planes(const Field& f);
/// All q^2 lines y = ax + b (a = 0 included).
[[nodiscard]] std::vector<Line2> all_non_vertical_lines(const Field& f);

}  // namespace fqinc
