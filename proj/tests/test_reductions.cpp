#include <gtest/gtest.h>

#include "fqinc/harness.hpp"
#include "fqinc/reductions.hpp"
#include "support.hpp"

using namespace fqinc;

namespace {

// Quadruple loop over (l, x, l', x').
std::uint64_t naive_solutions(const Field& f, const std::vector<Line2>& lines, const std::vector<Elem>& a_set) {
  std::uint64_t n = 0;
  for (const auto& l : lines)
    for (auto x : a_set)
      for (const auto& l2 : lines)
        for (auto x2 : a_set) {
          const auto& u = l.non_vertical_form();
          const auto& v = l2.non_vertical_form();
          n += f.add(f.mul(u.slope, x), u.intercept) == f.add(f.mul(v.slope, x2), v.intercept);
        }
  return n;
}

}  // namespace

TEST(Reductions, FullConfigurationGivesQToTheFifth) {
  for (std::uint32_t q : {3u, 4u, 5u}) {
    const Field f = make_field_of_order(q);
    const auto lines = all_non_vertical_lines(f);
    const auto a = f.elements();
    const std::uint64_t q5 = std::uint64_t{q} * q * q * q * q;
    EXPECT_EQ(count_solutions(f, lines, a, CountMethod::fast), q5);
    EXPECT_EQ(count_solutions(f, lines, a, CountMethod::oracle), q5);
    const auto out = build_point_plane_sets(f, lines, a);
    EXPECT_EQ(out.solution_count, q5);
    EXPECT_EQ(out.points3.size(), std::size_t{q} * q * q);
    EXPECT_EQ(out.planes3.size(), std::size_t{q} * q * q);
    EXPECT_EQ(count_incidences(f, out.points3, out.planes3, CountMethod::fast).count, q5);
  }
}

TEST(Reductions, RandomMatchesQuadrupleLoop) {
  for (std::uint32_t q : {3u, 7u, 8u, 9u}) {
    const Field f = make_field_of_order(q);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      Sizes s;
      s.nonvertical = std::min<std::size_t>(q * q, 3 + seed * 3);
      s.a = std::min<std::size_t>(q, 2 + seed);
      const auto c = random_config(f, s, seed);
      const auto want = naive_solutions(f, c.lines, c.a_set);
      EXPECT_EQ(count_solutions(f, c.lines, c.a_set, CountMethod::fast), want);
      const auto out = build_point_plane_sets(f, c.lines, c.a_set);
      EXPECT_EQ(out.solution_count, want);
      EXPECT_EQ(count_incidences(f, out.points3, out.planes3, CountMethod::oracle).count, want);
      if (out.collinearity_checked) EXPECT_LE(out.k_measured, out.k_bound);
    }
  }
}

TEST(Reductions, SignConventionReproducesRelation) {
  for (std::uint32_t q : {3u, 5u, 9u, 11u}) {
    const Field f = make_field_of_order(q);
    const auto c = derive_sign_convention(f);
    EXPECT_EQ(c.y_sign, -1);
    EXPECT_EQ(c.z_sign, -1);
  }
}

TEST(Reductions, VerticalLinesRejected) {
  const Field f = make_field(5, 1);
  const std::vector<Line2> lines{Line2::vertical(Elem{1})};
  const std::vector<Elem> a{Elem{1}};
  EXPECT_FQ_ERROR(count_solutions(f, lines, a, CountMethod::fast), ErrorCode::VerticalLinePresent);
  EXPECT_FQ_ERROR(build_point_plane_sets(f, lines, a), ErrorCode::VerticalLinePresent);
}

TEST(Reductions, CsUpper) {
  const Field f = make_field(7, 1);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Sizes s;
    s.nonvertical = 10;
    s.a = 4;
    s.b = 5;
    const auto c = random_config(f, s, seed);
    const auto r = cs_upper(f, c.lines, c.a_set, c.b_set);
    const auto pts = cartesian(c.a_set, c.b_set);
    EXPECT_EQ(pts.size(), 20u);
    EXPECT_EQ(r.actual, count_incidences(f, pts, c.lines, CountMethod::oracle).count);
    EXPECT_TRUE(r.holds);
    EXPECT_LE(static_cast<double>(r.actual), r.value * (1 + 1e-12));
  }
}

TEST(Reductions, DistinctSlopes) {
  const std::vector<Line2> lines{Line2::non_vertical(Elem{1}, Elem{0}), Line2::non_vertical(Elem{1}, Elem{2}),
                                 Line2::non_vertical(Elem{3}, Elem{0})};
  EXPECT_EQ(distinct_slopes(lines), 2u);
}
