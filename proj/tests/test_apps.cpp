#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "fqinc/apps.hpp"
#include "fqinc/harness.hpp"
#include "support.hpp"

using namespace fqinc;

namespace {

Point3 pt(std::uint32_t a, std::uint32_t b, std::uint32_t c) { return {Elem{a}, Elem{b}, Elem{c}}; }

// A line s + t d lies on ||x|| = r for all t iff ||s|| = r, s . d = 0 and ||d|| = 0.
std::set<Line3> sphere_lines_oracle(const Field& f, Elem r) {
  std::set<Line3> out;
  for (const auto& s : all_points3(f))
    for (const auto& d : all_points3(f)) {
      if (is_zero(d)) continue;
      if (dot(f, s, s) == r && dot(f, s, d) == Elem{0} && dot(f, d, d) == Elem{0}) out.insert(make_line3(f, s, d));
    }
  return out;
}

std::vector<Point3> random_points(const Field& f, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_points3(f, n, rng);
}

}  // namespace

TEST(Apps, NormAndDistance) {
  const Field f = make_field(5, 1);
  EXPECT_EQ(norm3(f, pt(1, 2, 3)), Elem{4});  // 1 + 4 + 9 = 14
  EXPECT_EQ(dist(f, pt(1, 1, 1), pt(0, 0, 0)), Elem{3});
  EXPECT_FQ_ERROR(norm3(make_field(2, 2), pt(1, 0, 0)), ErrorCode::EvenCharacteristic);
}

TEST(Apps, SphereScanMatchesOracle) {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const Field f = make_field_of_order(q);
    for (auto r : f.elements()) {
      if (r.index == 0) continue;
      const auto got = sphere_line_scan(f, r);
      const auto want = sphere_lines_oracle(f, r);
      EXPECT_EQ(std::set<Line3>(got.begin(), got.end()), want) << "q=" << q << " r=" << r.index;
    }
  }
}

TEST(Apps, SphereLinesAtFiveRadiusOne) {
  const Field f = make_field(5, 1);
  const auto lines = sphere_line_scan(f, Elem{1});
  EXPECT_EQ(lines.size(), 12u);
  const Line3 w = make_line3(f, pt(0, 0, 1), pt(1, 2, 0));
  EXPECT_NE(std::find(lines.begin(), lines.end(), w), lines.end());
}

TEST(Apps, BisectorPlaneIsEquidistant) {
  const Field f = make_field(7, 1);
  const Point3 x = pt(1, 2, 3), y = pt(4, 0, 6);
  const Plane3 b = bisector_plane(f, x, y);
  for (const auto& u : all_points3(f)) EXPECT_EQ(incident(f, u, b), dist(f, x, u) == dist(f, y, u));
  EXPECT_FQ_ERROR(bisector_plane(f, x, x), ErrorCode::EqualPoints);
}

TEST(Apps, BisectorInjectivityAtThree) {
  const Field f = make_field(3, 1);
  const std::vector<Point3> centre{pt(0, 0, 0)};
  const auto r = bisector_injectivity(f, centre);
  EXPECT_FALSE(r.injective);
  // The oracle: group every y != 0 by its bisector with the origin.
  std::map<std::pair<Point3, Elem>, int> groups;
  for (const auto& y : all_points3(f))
    if (!is_zero(y)) ++groups[bisector_plane(f, centre[0], y).key()];
  std::uint64_t colliding = 0;
  for (const auto& [k, n] : groups) colliding += static_cast<std::uint64_t>(n) * (n - 1);
  EXPECT_GT(colliding, 0u);
}

TEST(Apps, TripleCountMatchesBruteForce) {
  for (std::uint32_t q : {3u, 5u, 7u, 9u}) {
    const Field f = make_field_of_order(q);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto e = random_points(f, 6 + seed * 4, seed);
      const auto fs = random_points(f, 10 + seed * 7, seed + 100);
      const auto r = triple_count(f, e, fs);
      EXPECT_EQ(r.triples, triple_count_bruteforce(f, e, fs));
      EXPECT_TRUE(r.chain_ok);
      if (r.hypothesis_ok) EXPECT_TRUE(r.derived_ok);
    }
  }
}

TEST(Apps, DistanceSetCounts) {
  const Field f = make_field(7, 1);
  const auto e = random_points(f, 12, 1);
  const auto fs = random_points(f, 20, 2);
  const auto d = distance_set(f, e, fs);
  std::uint64_t sum = 0;
  for (auto c : d.pairs_at) sum += c;
  EXPECT_EQ(sum, 240u);
  EXPECT_EQ(d.total_pairs, 240u);
  EXPECT_EQ(d.zero_pairs, d.pairs_at[0]);
  std::set<Elem> want;
  for (const auto& a : e)
    for (const auto& b : fs) want.insert(dist(f, a, b));
  EXPECT_EQ(std::vector<Elem>(want.begin(), want.end()), d.distance_set);
}

TEST(Apps, DotProducts) {
  const Field f = make_field(5, 1);
  const auto e = random_points(f, 10, 3);
  const auto fs = random_points(f, 15, 4);
  const auto d = dot_product_set(f, e, fs);
  std::uint64_t sum = 0;
  for (auto c : d.lambda_counts) sum += c;
  EXPECT_EQ(sum, 150u);
  EXPECT_TRUE(d.averaging_ok);
}

TEST(Apps, Coplanarity) {
  const Field f = make_field(5, 1);
  const std::vector<Point3> flat{pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(3, 2, 0)};
  EXPECT_TRUE(is_coplanar(f, flat));
  const std::vector<Point3> solid{pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)};
  EXPECT_FALSE(is_coplanar(f, solid));
}

TEST(Apps, DotLineCheck) {
  const Field f = make_field(7, 1);
  const std::vector<Point3> e{pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(2, 3, 4)};
  for (std::size_t k = 2; k <= 7; ++k) {
    std::vector<Point3> marked;
    for (std::uint32_t t = 0; t < k; ++t) marked.push_back(pt(1, t, 2 * t % 7));
    const auto r = dot_k_line_check(f, e, marked);
    EXPECT_TRUE(r.ok) << k;
    EXPECT_GE(r.products_on_marked, k);
  }
  const std::vector<Point3> one{pt(1, 1, 1)};
  EXPECT_FQ_ERROR(dot_k_line_check(f, e, one), ErrorCode::KTooSmall);
  const std::vector<Point3> flat{pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0)};
  const std::vector<Point3> two{pt(1, 0, 0), pt(2, 0, 0)};
  EXPECT_FQ_ERROR(dot_k_line_check(f, flat, two), ErrorCode::ECoplanar);
  const std::vector<Point3> bent{pt(1, 0, 0), pt(2, 0, 0), pt(0, 5, 1)};
  EXPECT_FQ_ERROR(dot_k_line_check(f, e, bent), ErrorCode::InvalidArgument);
}

TEST(Apps, RegularSubsetOfWholeSpace) {
  const Field f = make_field(3, 2);
  std::vector<Point3> u;
  for (const auto& p : all_points3(f))
    if (!is_zero(p)) u.push_back(p);
  const auto r = regular_subset(f, u);
  EXPECT_TRUE(r.size_hypothesis);
  EXPECT_EQ(r.regular.size(), u.size());
  for (auto d : r.degree) EXPECT_EQ(d, 81u);  // q^2 points on each plane u . x = 1
  // Too small for the size hypothesis, but still partitioned.
  const Field f5 = make_field(5, 1);
  const auto small = regular_subset(f5, random_points(f5, 100, 9));
  EXPECT_FALSE(small.size_hypothesis);
}

TEST(Apps, TracePairsAtThree) {
  const Field f = make_field(3, 1);
  std::vector<Point3> u;
  for (const auto& p : all_points3(f))
    if (!is_zero(p)) u.push_back(p);
  const std::vector<Point3> up{pt(1, 0, 0)};
  const auto r = trace_pairs(f, u, up);
  // u_1 = 1 for 9 points, otherwise 17: 9^2 + 17^2 = 370.
  EXPECT_EQ(r.pair_count, 370u);
  EXPECT_EQ(r.classes, 2u);
  EXPECT_EQ(r.family_size, 26u);
  EXPECT_TRUE(r.cauchy_schwarz_ok);
}
