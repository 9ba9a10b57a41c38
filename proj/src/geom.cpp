#include "fqinc/geom.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include <boost/dynamic_bitset.hpp>

#include "fqinc/error.hpp"
#include "fqinc/parallel.hpp"

namespace fqinc {

namespace {

void check_elem(const Field& f, Elem e) {
  if (!f.contains(e))
    throw Error(ErrorCode::FieldMismatch,
                "element " + std::to_string(e.index) + " not in GF(" + std::to_string(f.q()) + ")");
}

void check_point(const Field& f, const Point2& p) {
  check_elem(f, p.x);
  check_elem(f, p.y);
}

void check_point(const Field& f, const Point3& p) {
  for (auto c : p) check_elem(f, c);
}

void check_line(const Field& f, const Line2& l) {
  if (l.is_vertical()) {
    check_elem(f, l.vertical_form().c);
  } else {
    check_elem(f, l.non_vertical_form().slope);
    check_elem(f, l.non_vertical_form().intercept);
  }
}

void check_plane(const Field& f, const Plane3& pl) {
  check_point(f, pl.normal());
  check_elem(f, pl.rhs());
}

void check_oracle_cap(std::size_t a, std::size_t b) {
  if (a != 0 && b > kOracleCap / a)
    throw Error(ErrorCode::SizeCap, "oracle product " + std::to_string(a) + " x " +
                                        std::to_string(b) + " exceeds 10^9");
}

std::size_t first_nonzero(const Point3& v) {
  for (std::size_t i = 0; i < 3; ++i)
    if (v[i].index != 0) return i;
  return 3;
}

}  // namespace

Point3 vadd(const Field& f, const Point3& a, const Point3& b) noexcept {
  return {f.add(a[0], b[0]), f.add(a[1], b[1]), f.add(a[2], b[2])};
}

Point3 vsub(const Field& f, const Point3& a, const Point3& b) noexcept {
  return {f.sub(a[0], b[0]), f.sub(a[1], b[1]), f.sub(a[2], b[2])};
}

Point3 vscale(const Field& f, Elem s, const Point3& a) noexcept {
  return {f.mul(s, a[0]), f.mul(s, a[1]), f.mul(s, a[2])};
}

Elem dot(const Field& f, const Point3& a, const Point3& b) noexcept {
  return f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]));
}

Point3 cross(const Field& f, const Point3& a, const Point3& b) noexcept {
  return {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])), f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
          f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

bool is_zero(const Point3& a) noexcept {
  return a[0].index == 0 && a[1].index == 0 && a[2].index == 0;
}

Point3 normalize_direction(const Field& f, const Point3& d) {
  const std::size_t i = first_nonzero(d);
  if (i == 3) throw Error(ErrorCode::InvalidArgument, "zero direction");
  return vscale(f, f.inv(d[i]), d);
}

std::uint64_t point_code(const Field& f, const Point3& a) noexcept {
  const std::uint64_t q = f.q();
  return a[0].index + q * (a[1].index + q * a[2].index);
}

Point3 point_from_code(const Field& f, std::uint64_t code) noexcept {
  const std::uint64_t q = f.q();
  Point3 out;
  for (auto& c : out) {
    c = Elem{static_cast<std::uint32_t>(code % q)};
    code /= q;
  }
  return out;
}

Line3 make_line3(const Field& f, const Point3& point, const Point3& dir) {
  const Point3 d = normalize_direction(f, dir);
  const std::size_t i = first_nonzero(d);
  return Line3{vsub(f, point, vscale(f, point[i], d)), d};
}

std::vector<Point3> points_on(const Field& f, const Line3& line) {
  std::vector<Point3> out;
  out.reserve(f.q());
  for (auto t : f.elements()) out.push_back(vadd(f, line.base, vscale(f, t, line.direction)));
  return out;
}

bool on_line(const Field& f, const Point3& point, const Line3& line) {
  return is_zero(cross(f, vsub(f, point, line.base), line.direction));
}

Plane3 Plane3::make(const Field& f, const Point3& normal, Elem rhs) {
  const std::size_t i = first_nonzero(normal);
  if (i == 3) throw Error(ErrorCode::InvalidArgument, "plane normal is zero");
  const Elem s = f.inv(normal[i]);
  return Plane3(normal, rhs, false, {vscale(f, s, normal), f.mul(s, rhs)});
}

Plane3 Plane3::dual(const Field& f, const Point3& a) {
  Plane3 pl = make(f, a, Elem{1});
  pl.affine_one_ = true;
  return pl;
}

bool incident(const Field& f, const Point2& pt, const Line2& line) {
  check_point(f, pt);
  check_line(f, line);
  if (line.is_vertical()) return pt.x == line.vertical_form().c;
  const auto& nv = line.non_vertical_form();
  return pt.y == f.add(f.mul(nv.slope, pt.x), nv.intercept);
}

bool incident(const Field& f, const Point3& pt, const Plane3& plane) {
  check_point(f, pt);
  check_plane(f, plane);
  return dot(f, plane.normal(), pt) == plane.rhs();
}

IncidenceCount count_incidences(const Field& f, std::span<const Point2> points,
                                std::span<const Line2> lines, CountMethod method) {
  for (const auto& p : points) check_point(f, p);
  for (const auto& l : lines) check_line(f, l);

  if (method == CountMethod::oracle) {
    check_oracle_cap(points.size(), lines.size());
    const auto total = parallel_sum(
        points.size(),
        [&](std::size_t i) {
          std::uint64_t c = 0;
          for (const auto& l : lines) c += incident(f, points[i], l) ? 1 : 0;
          return c;
        },
        64);
    return {total, CountMethod::oracle};
  }

  // Slope buckets of intercept multiplicities, plus a vertical pass.
  const std::uint32_t q = f.q();
  std::vector<std::int64_t> slot(q, -1);
  std::vector<Elem> slopes;
  std::vector<std::vector<std::uint32_t>> buckets;
  std::vector<std::uint32_t> vertical(q, 0);
  bool any_vertical = false;
  for (const auto& l : lines) {
    if (l.is_vertical()) {
      ++vertical[l.vertical_form().c.index];
      any_vertical = true;
      continue;
    }
    const auto& nv = l.non_vertical_form();
    auto& s = slot[nv.slope.index];
    if (s < 0) {
      s = static_cast<std::int64_t>(slopes.size());
      slopes.push_back(nv.slope);
      buckets.emplace_back(q, 0);
    }
    ++buckets[static_cast<std::size_t>(s)][nv.intercept.index];
  }
  const auto total = parallel_sum(
      points.size(),
      [&](std::size_t i) {
        const auto& p = points[i];
        std::uint64_t c = any_vertical ? vertical[p.x.index] : 0;
        for (std::size_t s = 0; s < slopes.size(); ++s)
          c += buckets[s][f.sub(p.y, f.mul(slopes[s], p.x)).index];
        return c;
      },
      256);
  return {total, CountMethod::fast};
}

IncidenceCount count_incidences(const Field& f, std::span<const Point3> points,
                                std::span<const Plane3> planes, CountMethod method) {
  for (const auto& p : points) check_point(f, p);
  for (const auto& pl : planes) check_plane(f, pl);

  if (method == CountMethod::oracle) {
    check_oracle_cap(points.size(), planes.size());
    std::uint64_t total = 0;
    for (const auto& p : points)
      for (const auto& pl : planes) total += incident(f, p, pl) ? 1 : 0;
    return {total, CountMethod::oracle};
  }

  const auto total = parallel_sum(
      points.size(),
      [&](std::size_t i) {
        std::uint64_t c = 0;
        for (const auto& pl : planes) c += dot(f, pl.normal(), points[i]) == pl.rhs() ? 1 : 0;
        return c;
      },
      64);
  return {total, CountMethod::fast};
}

CollinearResult max_collinear(const Field& f, std::span<const Point3> points,
                              const LineFilter& accept) {
  for (const auto& p : points) check_point(f, p);
  std::vector<std::uint64_t> codes;
  codes.reserve(points.size());
  for (const auto& p : points) codes.push_back(point_code(f, p));
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  if (codes.empty()) return {};
  if (codes.size() == 1) return {1, std::nullopt};

  std::vector<Point3> pts;
  pts.reserve(codes.size());
  for (auto c : codes) pts.push_back(point_from_code(f, c));

  struct Best {
    std::size_t k = 1;
    std::size_t anchor = 0;
    std::uint64_t dir = 0;
  };
  std::vector<Best> best(worker_count(pts.size(), 16));
  parallel_chunks(
      pts.size(),
      [&](std::size_t begin, std::size_t end, unsigned w) {
        Best local;
        std::unordered_map<std::uint64_t, std::uint32_t> dirs;
        for (std::size_t i = begin; i < end; ++i) {
          dirs.clear();
          // Only partners after i: a line is found from its first point.
          for (std::size_t j = i + 1; j < pts.size(); ++j)
            ++dirs[point_code(f, normalize_direction(f, vsub(f, pts[j], pts[i])))];
          std::vector<std::pair<std::uint64_t, std::uint32_t>> ordered(dirs.begin(), dirs.end());
          std::sort(ordered.begin(), ordered.end());
          for (const auto& [dir, cnt] : ordered) {
            const std::size_t k = std::size_t{cnt} + 1;
            if (k <= local.k) continue;
            if (accept && !accept(make_line3(f, pts[i], point_from_code(f, dir)))) continue;
            local = {k, i, dir};
          }
        }
        best[w] = local;
      },
      16);

  Best winner;
  for (const auto& b : best) {
    if (b.k > winner.k || (b.k == winner.k && b.k > 1 && winner.k > 1 && b.anchor < winner.anchor))
      winner = b;
  }
  if (winner.k <= 1) return {1, std::nullopt};
  return {winner.k, make_line3(f, pts[winner.anchor], point_from_code(f, winner.dir))};
}

PlaneIntersection plane_intersection(const Field& f, const Plane3& a, const Plane3& b) {
  const auto& n1 = a.normal();
  const auto& n2 = b.normal();
  const Point3 c = cross(f, n1, n2);
  if (is_zero(c)) {
    return a == b ? PlaneIntersection{PlaneIntersection::Kind::Same, std::nullopt}
                  : PlaneIntersection{PlaneIntersection::Kind::Empty, std::nullopt};
  }
  const std::size_t i = first_nonzero(c);
  const std::size_t j = (i + 1) % 3;
  const std::size_t k = (i + 2) % 3;
  // 2x2 system in coordinates j, k with coordinate i set to zero.
  const Elem det = f.sub(f.mul(n1[j], n2[k]), f.mul(n1[k], n2[j]));
  const Elem r1 = a.rhs();
  const Elem r2 = b.rhs();
  Point3 base{};
  base[j] = f.div(f.sub(f.mul(r1, n2[k]), f.mul(r2, n1[k])), det);
  base[k] = f.div(f.sub(f.mul(n1[j], r2), f.mul(n2[j], r1)), det);
  return {PlaneIntersection::Kind::Line, make_line3(f, base, c)};
}

std::size_t max_shared_points(const Field& f, std::span<const Point3> points,
                              std::span<const Plane3> planes) {
  for (const auto& p : points) check_point(f, p);
  std::vector<Plane3> distinct(planes.begin(), planes.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<boost::dynamic_bitset<>> members(distinct.size(), boost::dynamic_bitset<>(points.size()));
  for (std::size_t v = 0; v < distinct.size(); ++v)
    for (std::size_t u = 0; u < points.size(); ++u)
      if (dot(f, distinct[v].normal(), points[u]) == distinct[v].rhs()) members[v].set(u);

  std::vector<std::size_t> best(worker_count(distinct.size(), 8), 0);
  parallel_chunks(
      distinct.size(),
      [&](std::size_t begin, std::size_t end, unsigned w) {
        std::size_t local = 0;
        for (std::size_t v = begin; v < end; ++v)
          for (std::size_t x = v + 1; x < distinct.size(); ++x)
            local = std::max(local, (members[v] & members[x]).count());
        best[w] = local;
      },
      8);
  return best.empty() ? 0 : *std::max_element(best.begin(), best.end());
}

std::vector<Point2> all_points2(const Field& f) {
  std::vector<Point2> out;
  out.reserve(std::size_t{f.q()} * f.q());
  for (auto y : f.elements())
    for (auto x : f.elements()) out.push_back({x, y});
  return out;
}

std::vector<Point3> all_points3(const Field& f) {
  std::vector<Point3> out;
  const std::uint64_t total = std::uint64_t{f.q()} * f.q() * f.q();
  out.reserve(total);
  for (std::uint64_t c = 0; c < total; ++c) out.push_back(point_from_code(f, c));
  return out;
}

std::vector<Plane3> all_dual_planes(const Field& f) {
  std::vector<Plane3> out;
  for (const auto& a : all_points3(f))
    if (!is_zero(a)) out.push_back(Plane3::dual(f, a));
  return out;
}

std::vector<Line2> all_non_vertical_lines(const Field& f) {
  std::vector<Line2> out;
  for (auto a : f.elements())
    for (auto b : f.elements()) out.push_back(Line2::non_vertical(a, b));
  return out;
}

}  // namespace fqinc
