#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fqinc/geom.hpp"
#include "fqinc/harness.hpp"
#include "support.hpp"

using namespace fqinc;

namespace {

std::uint64_t naive_count(const Field& f, const std::vector<Point2>& pts, const std::vector<Line2>& lines) {
  std::uint64_t n = 0;
  for (const auto& l : lines)
    for (const auto& p : pts) {
      if (l.is_vertical()) {
        n += p.x == l.vertical_form().c;
      } else {
        const auto& nv = l.non_vertical_form();
        n += p.y == f.add(f.mul(nv.slope, p.x), nv.intercept);
      }
    }
  return n;
}

std::uint64_t naive_count(const Field& f, const std::vector<Point3>& pts, const std::vector<Plane3>& planes) {
  std::uint64_t n = 0;
  for (const auto& v : planes)
    for (const auto& p : pts) n += dot(f, v.normal(), p) == v.rhs();
  return n;
}

// Max points on a line, by trying every pair and every point.
std::size_t naive_max_collinear(const Field& f, const std::vector<Point3>& pts) {
  std::set<Point3> uniq(pts.begin(), pts.end());
  std::vector<Point3> u(uniq.begin(), uniq.end());
  if (u.size() <= 1) return u.size();
  std::size_t best = 2;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      const Point3 d = vsub(f, u[j], u[i]);
      std::size_t k = 0;
      for (const auto& w : u) k += is_zero(cross(f, vsub(f, w, u[i]), d)) ? 1 : 0;
      best = std::max(best, k);
    }
  return best;
}

}  // namespace

TEST(Geom, FullDualConfigurationAtThree) {
  const Field f = make_field(3, 1);
  const auto pts = all_points3(f);
  const auto planes = all_dual_planes(f);
  ASSERT_EQ(pts.size(), 27u);
  ASSERT_EQ(planes.size(), 26u);
  EXPECT_EQ(count_incidences(f, pts, planes, CountMethod::oracle).count, 234u);
  EXPECT_EQ(count_incidences(f, pts, planes, CountMethod::fast).count, 234u);
}

TEST(Geom, FullLineConfiguration) {
  for (std::uint32_t q : {3u, 4u, 5u}) {
    const Field f = make_field_of_order(q);
    const auto pts = all_points2(f);
    const auto lines = all_non_vertical_lines(f);
    EXPECT_EQ(count_incidences(f, pts, lines, CountMethod::fast).count, std::uint64_t{q} * q * q);
  }
}

TEST(Geom, FastMatchesNaive) {
  for (std::uint32_t q : {2u, 3u, 4u, 7u, 8u, 9u}) {
    const Field f = make_field_of_order(q);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Sizes s;
      s.points2 = std::min<std::size_t>(q * q, 3 + seed * 5);
      s.lines = std::min<std::size_t>(q * q + q, 4 + seed * 6);
      s.points3 = std::min<std::size_t>(q * q * q, 10 + seed * 7);
      s.planes = std::min<std::size_t>(plane_count(f), 10 + seed * 4);
      const Configuration c = random_config(f, s, seed);
      const auto want2 = naive_count(f, c.points2, c.lines);
      EXPECT_EQ(count_incidences(f, c.points2, c.lines, CountMethod::oracle).count, want2);
      EXPECT_EQ(count_incidences(f, c.points2, c.lines, CountMethod::fast).count, want2);
      const auto want3 = naive_count(f, c.points3, c.planes);
      EXPECT_EQ(count_incidences(f, c.points3, c.planes, CountMethod::oracle).count, want3);
      EXPECT_EQ(count_incidences(f, c.points3, c.planes, CountMethod::fast).count, want3);
    }
  }
}

TEST(Geom, DuplicatesCountWithMultiplicity) {
  const Field f = make_field(5, 1);
  const std::vector<Point2> pts{{Elem{1}, Elem{2}}, {Elem{1}, Elem{2}}};
  const std::vector<Line2> lines{Line2::vertical(Elem{1}), Line2::vertical(Elem{1})};
  EXPECT_EQ(count_incidences(f, pts, lines, CountMethod::fast).count, 4u);
}

TEST(Geom, PlaneEqualityIsOnPointSets) {
  const Field f = make_field(7, 1);
  const Point3 n{Elem{1}, Elem{2}, Elem{3}};
  const Plane3 a = Plane3::make(f, n, Elem{1});
  const Plane3 b = Plane3::make(f, vscale(f, Elem{3}, n), Elem{3});
  EXPECT_EQ(a, b);
  EXPECT_EQ(Plane3::dual(f, n), a);
  EXPECT_TRUE(Plane3::dual(f, n).affine_one());
  EXPECT_FQ_ERROR(Plane3::make(f, Point3{}, Elem{1}), ErrorCode::InvalidArgument);
}

TEST(Geom, LinesAreCanonical) {
  const Field f = make_field(5, 1);
  const Point3 p{Elem{1}, Elem{2}, Elem{3}};
  const Point3 d{Elem{0}, Elem{2}, Elem{4}};
  const Line3 l = make_line3(f, p, d);
  EXPECT_EQ(l, make_line3(f, vadd(f, p, d), vscale(f, Elem{3}, d)));
  const auto on = points_on(f, l);
  EXPECT_EQ(on.size(), 5u);
  for (const auto& x : on) EXPECT_TRUE(on_line(f, x, l));
  EXPECT_EQ(l.direction[1], Elem{1});
}

TEST(Geom, MaxCollinearMatchesNaive) {
  std::mt19937_64 rng(11);
  for (std::uint32_t q : {3u, 4u, 5u, 7u}) {
    const Field f = make_field_of_order(q);
    std::uniform_int_distribution<std::uint32_t> pick(0, q - 1);
    for (int t = 0; t < 10; ++t) {
      std::vector<Point3> pts(2 + t * 2);
      for (auto& p : pts) p = {Elem{pick(rng)}, Elem{pick(rng)}, Elem{pick(rng)}};
      const auto r = max_collinear(f, pts);
      EXPECT_EQ(r.k, naive_max_collinear(f, pts));
      if (r.witness) {
        std::size_t on = 0;
        std::set<Point3> uniq(pts.begin(), pts.end());
        for (const auto& p : uniq) on += on_line(f, p, *r.witness) ? 1 : 0;
        EXPECT_EQ(on, r.k);
      }
    }
  }
}

TEST(Geom, SharedPointsOnPlanePairs) {
  const Field f = make_field(5, 1);
  // z = 0 and y = 0 meet in the x axis, which holds three of the points.
  const std::vector<Point3> pts{{Elem{0}, Elem{0}, Elem{0}}, {Elem{1}, Elem{0}, Elem{0}},
                                {Elem{2}, Elem{0}, Elem{0}}, {Elem{1}, Elem{1}, Elem{1}}};
  const std::vector<Plane3> planes{Plane3::make(f, {Elem{0}, Elem{0}, Elem{1}}, Elem{0}),
                                   Plane3::make(f, {Elem{0}, Elem{1}, Elem{0}}, Elem{0})};
  EXPECT_EQ(max_shared_points(f, pts, planes), 3u);
  const auto cut = plane_intersection(f, planes[0], planes[1]);
  ASSERT_EQ(cut.kind, PlaneIntersection::Kind::Line);
  EXPECT_TRUE(on_line(f, pts[2], *cut.line));
  const auto par = plane_intersection(f, planes[0], Plane3::make(f, {Elem{0}, Elem{0}, Elem{1}}, Elem{1}));
  EXPECT_EQ(par.kind, PlaneIntersection::Kind::Empty);
}

TEST(Geom, PointCodesAreBijective) {
  const Field f = make_field(3, 1);
  for (std::uint64_t c = 0; c < 27; ++c) EXPECT_EQ(point_code(f, point_from_code(f, c)), c);
}
