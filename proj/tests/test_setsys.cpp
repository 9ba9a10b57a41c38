#include <gtest/gtest.h>

#include <set>

#include "fqinc/geom.hpp"
#include "fqinc/setsys.hpp"
#include "support.hpp"

using namespace fqinc;

namespace {

SetSystem from_lists(std::size_t ground, const std::vector<std::vector<std::size_t>>& lists) {
  SetSystem s;
  s.ground_size = ground;
  for (std::size_t i = 0; i < lists.size(); ++i) s.add(lists[i], i);
  return s;
}

// Binomial sum by Pascal's triangle.
std::uint64_t pascal_sum(std::uint64_t z, std::uint64_t d) {
  std::vector<std::vector<std::uint64_t>> c(z + 1, std::vector<std::uint64_t>(z + 1, 0));
  for (std::uint64_t n = 0; n <= z; ++n) {
    c[n][0] = 1;
    for (std::uint64_t k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
  }
  std::uint64_t s = 0;
  for (std::uint64_t i = 0; i <= std::min(z, d); ++i) s += c[z][i];
  return s;
}

}  // namespace

TEST(SetSys, IntervalsHaveDimensionTwo) {
  std::vector<std::vector<std::size_t>> lists{{}};
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a; b < 6; ++b) {
      std::vector<std::size_t> m;
      for (std::size_t i = a; i <= b; ++i) m.push_back(i);
      lists.push_back(m);
    }
  const auto s = from_lists(6, lists);
  const auto vc = vc_dimension(s, 4);
  EXPECT_EQ(vc.dimension, 2);
  EXPECT_FALSE(vc.saturated);
  EXPECT_TRUE(is_shattered(s, vc.witness));
  const std::vector<std::size_t> gap{0, 2, 4};
  EXPECT_FALSE(is_shattered(s, gap));
}

TEST(SetSys, PowerSetSaturates) {
  std::vector<std::vector<std::size_t>> lists;
  for (std::size_t mask = 0; mask < 32; ++mask) {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < 5; ++i)
      if (mask >> i & 1) m.push_back(i);
    lists.push_back(m);
  }
  const auto vc = vc_dimension(from_lists(5, lists), 3);
  EXPECT_EQ(vc.dimension, 3);
  EXPECT_TRUE(vc.saturated);
}

TEST(SetSys, EmptyFamily) {
  SetSystem s;
  s.ground_size = 4;
  EXPECT_EQ(vc_dimension(s, 3).dimension, 0);
}

TEST(SetSys, SauerShelahIncludesEmptyTerm) {
  for (std::uint64_t z = 0; z <= 20; ++z)
    for (std::uint64_t d = 0; d <= 6; ++d) EXPECT_EQ(sauer_shelah(z, d), pascal_sum(z, d)) << z << " " << d;
  EXPECT_EQ(sauer_shelah(5, 0), 1u);
}

TEST(SetSys, ShatterFunction) {
  // Singletons plus the empty set: pi(z) = z + 1.
  const auto s = from_lists(6, {{}, {0}, {1}, {2}, {3}, {4}, {5}});
  for (std::size_t z = 1; z <= 4; ++z) {
    const auto r = shatter_function(s, z);
    EXPECT_EQ(r.value, z + 1);
    EXPECT_TRUE(r.exact);
  }
}

TEST(SetSys, ErrorsAndCaps) {
  const auto s = from_lists(30, {{1, 2}});
  std::vector<std::size_t> big(21);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = i;
  EXPECT_FQ_ERROR(is_shattered(s, big), ErrorCode::SubsetTooLarge);
  SetSystem bad;
  bad.ground_size = 3;
  const std::vector<std::size_t> out{5};
  EXPECT_FQ_ERROR(bad.add(out, 0), ErrorCode::InvalidArgument);
  SetSystem huge;
  huge.ground_size = 5000;
  EXPECT_FQ_ERROR(vc_dimension(huge, 4), ErrorCode::BudgetExceeded);
}

TEST(SetSys, PlaneNeighborhoodsAtThree) {
  const Field f = make_field(3, 1);
  std::vector<Point3> pts;
  for (const auto& p : all_points3(f))
    if (!is_zero(p)) pts.push_back(p);
  const auto planes = all_dual_planes(f);
  const auto by_plane = neighborhood_system(f, pts, planes, Side::by_plane);
  ASSERT_EQ(by_plane.size(), 26u);
  ASSERT_EQ(by_plane.ground_size, 26u);
  for (const auto& m : by_plane.family) EXPECT_EQ(m.count(), 9u);
  EXPECT_EQ(vc_dimension(by_plane, 4).dimension, 3);
  const auto by_point = neighborhood_system(f, pts, planes, Side::by_point);
  EXPECT_EQ(vc_dimension(by_point, 4).dimension, 3);
}

TEST(SetSys, SeparationAndPacking) {
  const auto s = from_lists(6, {{0, 1}, {2, 3}, {4, 5}});
  EXPECT_TRUE(separation_check(s, 2, 4).separated);
  const auto close = from_lists(6, {{0, 1}, {0, 2}});
  const auto r = separation_check(close, 2, 3);
  EXPECT_FALSE(r.separated);
  ASSERT_TRUE(r.witness.has_value());
  const auto pk = packing_bound_check(s, 2, 4, 1, 10.0);
  EXPECT_DOUBLE_EQ(pk.ratio, 3.0 / (6.0 / 4.0));
  EXPECT_TRUE(pk.holds);
}

TEST(SetSys, RichAndSubsystem) {
  const auto s = from_lists(5, {{0}, {0, 1, 2}, {3, 4}});
  EXPECT_EQ(rich_elements(s, 2.0), (std::vector<std::size_t>{1, 2}));
  const std::vector<std::size_t> idx{2};
  EXPECT_EQ(subsystem(s, idx).size(), 1u);
  const auto d = from_lists(3, {{0}, {0}, {1}}).deduplicated();
  EXPECT_EQ(d.size(), 2u);
}

TEST(SetSys, FileRoundTrip) {
  const auto s = from_lists(7, {{0, 3, 6}, {}, {1, 2}});
  const auto back = parse_set_system(format_set_system(s));
  EXPECT_EQ(back.ground_size, 7u);
  EXPECT_EQ(back.family, s.family);
  EXPECT_FQ_ERROR(parse_set_system("nonsense"), ErrorCode::Parse);
}
