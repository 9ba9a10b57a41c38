#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "fqinc/harness.hpp"
#include "fqinc/io.hpp"
#include "support.hpp"

using namespace fqinc;

namespace {

std::size_t size_of(const PresetConfig& c, const std::string& what) {
  if (what == "L") return c.lines.size();
  if (what == "A") return c.a_set.size();
  if (what == "B") return c.b_set.size();
  if (what == "slopes") return c.slopes;
  if (what == "P") return c.points3.size();
  if (what == "Pi") return c.planes.size();
  return 0;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Drops the trailing elapsed_ms field of every line.
std::string without_elapsed(const std::string& csv) {
  std::string out;
  for (const auto& line : split_lines(csv)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

}  // namespace

TEST(Harness, PresetSizes) {
  const auto l2 = preset("line-2", 16, 1);
  EXPECT_EQ(size_of(l2, "slopes"), 9u);
  EXPECT_EQ(size_of(l2, "L"), 16u);
  EXPECT_EQ(size_of(l2, "A"), 2u);
  EXPECT_EQ(size_of(l2, "B"), 8u);
  std::set<std::uint32_t> slopes;
  for (const auto& l : l2.lines) slopes.insert(l.non_vertical_form().slope.index);
  EXPECT_EQ(slopes.size(), 9u);

  const auto p3 = preset("plane-3", 9, 1);
  EXPECT_EQ(size_of(p3, "Pi"), 27u);
  EXPECT_EQ(size_of(p3, "P"), 11u);
  EXPECT_EQ(p3.alpha, Exponent(1, 3));
}

TEST(Harness, PresetsAreSeeded) {
  const auto a = preset("plane-1", 9, 5);
  const auto b = preset("plane-1", 9, 5);
  EXPECT_EQ(a.points3, b.points3);
  EXPECT_EQ(a.planes, b.planes);
}

TEST(Harness, PresetUnrealizable) {
  for (const auto& name : preset_names()) EXPECT_FQ_ERROR(preset(name, 2), ErrorCode::Unrealizable);
  EXPECT_FQ_ERROR(preset("no-such-preset", 5), ErrorCode::InvalidArgument);
  EXPECT_EQ(smallest_realizable_q("line-2"), 8u);
  EXPECT_EQ(smallest_realizable_q("plane-1"), 3u);
}

TEST(Harness, NominalAuditFlagsLineOne) {
  const Field f = make_field(3, 1);
  const auto c = preset("line-1", 3);
  const auto audit = nominal_hypotheses(f, c);
  EXPECT_FALSE(audit.ok);
  bool found = false;
  for (const auto& fl : audit.flags)
    if (fl.name == "LA_gt_qa_max_A_Lx") {
      found = true;
      EXPECT_FALSE(fl.value);
    }
  EXPECT_TRUE(found);
}

TEST(Harness, RandomConfigDeterministic) {
  const Field f = make_field(7, 1);
  Sizes s;
  s.points2 = 20;
  s.lines = 15;
  s.points3 = 50;
  s.planes = 30;
  s.a = 3;
  const auto a = random_config(f, s, 42);
  const auto b = random_config(f, s, 42);
  EXPECT_EQ(a.points2, b.points2);
  EXPECT_EQ(a.lines, b.lines);
  EXPECT_EQ(a.points3, b.points3);
  EXPECT_EQ(a.planes, b.planes);
  EXPECT_EQ(a.a_set, b.a_set);
  EXPECT_EQ(std::set<Point3>(a.points3.begin(), a.points3.end()).size(), 50u);
  EXPECT_EQ(std::set<Plane3>(a.planes.begin(), a.planes.end()).size(), 30u);
  const auto c = random_config(f, s, 43);
  EXPECT_NE(a.points3, c.points3);
}

TEST(Harness, RandomConfigTooBig) {
  const Field f = make_field(3, 1);
  Sizes s;
  s.points2 = 10;
  EXPECT_FQ_ERROR(random_config(f, s, 0), ErrorCode::Unrealizable);
  Sizes t;
  t.dual_planes = 27;
  EXPECT_FQ_ERROR(random_config(f, t, 0), ErrorCode::Unrealizable);
}

TEST(Harness, Enumerations) {
  const Field f = make_field(3, 1);
  std::set<Plane3> planes;
  for (std::uint64_t i = 0; i < plane_count(f); ++i) planes.insert(plane_at(f, i));
  EXPECT_EQ(planes.size(), 39u);
  EXPECT_TRUE(line_at(f, 9).is_vertical());
  EXPECT_FQ_ERROR(line_at(f, 12), ErrorCode::InvalidArgument);
}

TEST(Harness, OracleEquivalenceSuite) {
  ExperimentConfig c;
  c.suite = "oracle-equivalence";
  c.q = 5;
  c.trials = 10;
  c.seed = 3;
  const auto r = run_suite(c);
  ASSERT_EQ(r.rows.size(), 10u);
  for (const auto& row : r.rows) {
    ASSERT_NE(row.get("equal"), nullptr);
    EXPECT_EQ(*row.get("equal"), "true");
    EXPECT_TRUE(row.pass);
  }
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Harness, VinhPlaneFullIsExact) {
  ExperimentConfig c;
  c.suite = "vinh-plane";
  c.q = 3;
  c.trials = 1;
  const auto r = run_suite(c);
  ASSERT_FALSE(r.rows.empty());
  EXPECT_EQ(*r.rows[0].get("mode"), "full");
  EXPECT_EQ(*r.rows[0].get("actual"), "234");
  EXPECT_EQ(*r.rows[0].get("main_over_actual"), "1");
}

TEST(Harness, UnknownSuite) {
  ExperimentConfig c;
  c.suite = "nope";
  EXPECT_FQ_ERROR(run_suite(c), ErrorCode::InvalidArgument);
}

TEST(Harness, EmitHeaderOnly) {
  SuiteResult empty;
  empty.suite = "x";
  empty.columns = {"a", "b", "elapsed_ms"};
  const auto path = std::filesystem::temp_directory_path() / "fqinc_empty.csv";
  emit(empty, path);
  EXPECT_EQ(read_text(path), "a,b,elapsed_ms\n");
  std::filesystem::remove(path);
}

TEST(Harness, CsvIsReproducible) {
  ExperimentConfig c;
  c.suite = "unconditional";
  c.q = 7;
  c.trials = 6;
  c.seed = 99;
  const auto a = to_csv(run_suite(c));
  const auto b = to_csv(run_suite(c));
  EXPECT_EQ(without_elapsed(a), without_elapsed(b));
  const auto header = split_lines(a).front();
  EXPECT_EQ(header.substr(header.rfind(',') + 1), "elapsed_ms");
}

TEST(Harness, ThousandRows) {
  ExperimentConfig c;
  c.suite = "oracle-equivalence";
  c.q = 3;
  c.trials = 1000;
  const auto r = run_suite(c);
  const auto path = std::filesystem::temp_directory_path() / "fqinc_rows.csv";
  emit(r, path);
  EXPECT_EQ(split_lines(read_text(path)).size(), 1001u);
  std::filesystem::remove(path);
}

TEST(Harness, FormatNumber) {
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.25), "0.25");
  EXPECT_EQ(format_number(1e21), "1e+21");
}
