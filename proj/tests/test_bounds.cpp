#include <gtest/gtest.h>

#include <cmath>

#include "fqinc/bounds.hpp"

using namespace fqinc;

namespace {

bool flag(const std::vector<NamedFlag>& flags, const std::string& name) {
  for (const auto& f : flags)
    if (f.name == name) return f.value;
  ADD_FAILURE() << "no flag " << name;
  return false;
}

}  // namespace

TEST(Bounds, VinhLine) {
  const auto r = eval_vinh_line(9, 81, 90, 1.0);
  EXPECT_DOUBLE_EQ(r.term("main"), 81.0 * 90 / 9);
  EXPECT_DOUBLE_EQ(r.term("deviation"), std::sqrt(9.0 * 81 * 90));
  EXPECT_DOUBLE_EQ(r.value, 810 + std::sqrt(65610.0));
  EXPECT_TRUE(vinh_line_deviation_ok(810, 9, 81, 90, 1.0));
  EXPECT_FALSE(vinh_line_deviation_ok(2000, 9, 81, 90, 1.0));
}

TEST(Bounds, CsLineBalanced) {
  for (double n : {1.0, 16.0, 100.0, 1e4}) {
    const auto r = eval_cs_line(n, n);
    EXPECT_NEAR(r.value, std::pow(n, 1.5) + n, 1e-9 * r.value);
  }
  // Unbalanced sizes pick the smaller branch.
  const auto r = eval_cs_line(4, 100);
  EXPECT_DOUBLE_EQ(r.value, std::min(2.0 * 100 + 4, 4 * 10.0 + 100));
}

TEST(Bounds, HoldsAndRatio) {
  auto r = eval_cs_line(16, 16);
  r.with_actual(80);
  ASSERT_TRUE(r.ratio.has_value());
  EXPECT_DOUBLE_EQ(*r.ratio, 1.0);
  EXPECT_TRUE(r.holds(1.0));
  r.with_actual(81);
  EXPECT_FALSE(r.holds(1.0));
  EXPECT_TRUE(r.holds(2.0));
}

TEST(Bounds, ThmLine) {
  RegimeParams p;
  p.q = 16;
  p.alpha = 0.5;
  p.lines = 32;
  p.a_size = 8;
  p.b_size = 4;
  p.slopes = 4;
  const auto r = eval_rich_line(p, false);
  EXPECT_DOUBLE_EQ(r.term("rich"), 32.0 * 8 * 2 / 2);
  EXPECT_DOUBLE_EQ(r.term("light"), 4 * std::sqrt(32.0 * 8 * 4));
  EXPECT_TRUE(flag(r.hypotheses, "LA_gt_qa_max_A_Lx"));  // 256 > 4 * 8
  EXPECT_TRUE(r.hypotheses_ok);
  const auto axis = eval_rich_line(p, true);
  EXPECT_DOUBLE_EQ(axis.term("axis"), 2.0 * 8 * 4);
  p.lines = 1;
  EXPECT_FALSE(eval_rich_line(p, false).hypotheses_ok);  // 8 > 4 * 8 fails
}

TEST(Bounds, PlaneBounds) {
  RegimeParams p;
  p.q = 8;
  p.alpha = 1.0 / 3;
  p.points = 100;
  p.planes = 64;
  p.k = 3;
  const double q_a = 2.0;  // 8^(1/3)
  const auto vinh = eval_plane_bounds(p, PlaneBound::vinh);
  EXPECT_DOUBLE_EQ(vinh.value, 100.0 * 64 / 8 + 2 * 8 * std::sqrt(6400.0));
  const auto cs = eval_plane_bounds(p, PlaneBound::cs);
  EXPECT_NEAR(cs.value,
              std::min(std::sqrt(8.0) * 10 * 64 + 100, std::sqrt(8.0) * 100 * 8 + 64), 1e-9);
  const auto t13 = eval_plane_bounds(p, PlaneBound::rich_plane_by_planes);
  EXPECT_NEAR(t13.term("rich"), 6400 / q_a, 1e-9);
  EXPECT_NEAR(t13.term("light"), 64 * q_a * q_a, 1e-9);
  EXPECT_TRUE(flag(t13.hypotheses, "Pi_ge_2q1pa"));  // 64 >= 2 * 16 = 32
  const auto t13p = eval_plane_bounds(p, PlaneBound::rich_plane_by_points);
  EXPECT_TRUE(flag(t13p.hypotheses, "P_ge_2q1pa"));
  const auto t14 = eval_plane_bounds(p, PlaneBound::light_plane);
  EXPECT_NEAR(t14.term("light"), 100 * q_a * q_a, 1e-9);
  EXPECT_TRUE(flag(t14.hypotheses, "P_ge_2kqa"));  // 100 >= 12
  p.light_lines_ok = false;
  EXPECT_FALSE(eval_plane_bounds(p, PlaneBound::light_plane).hypotheses_ok);
  EXPECT_EQ(to_string(PlaneBound::light_plane), "light_plane");
}

TEST(Bounds, RegimeReportPicksMinimum) {
  RegimeParams p;
  p.q = 27;
  p.alpha = 1.0 / 3;
  p.points = 2000;
  p.planes = 3000;
  p.k = 2;
  const auto rep = regime_report(p, RegimeKind::plane);
  ASSERT_FALSE(rep.bounds.empty());
  double best = rep.bounds.front().value;
  std::string name = rep.bounds.front().bound_name;
  for (const auto& b : rep.bounds)
    if (b.value < best) {
      best = b.value;
      name = b.bound_name;
    }
  EXPECT_EQ(rep.winner, name);
  EXPECT_FALSE(rep.range_flags.empty());
}

TEST(Bounds, KohSunIsMonotoneInF) {
  const auto a = eval_koh_sun_distances(11, 20, 50);
  const auto b = eval_koh_sun_distances(11, 20, 500);
  EXPECT_LE(a.value, b.value);
  EXPECT_LE(b.value, 11.0);
}
