#include <gtest/gtest.h>

#include <filesystem>

#include "fqinc/io.hpp"
#include "support.hpp"

using namespace fqinc;

TEST(Io, HeaderRequired) {
  EXPECT_EQ(parse_header("# field 3 2\n1,2\n"), (std::pair<std::uint32_t, std::uint32_t>{3, 2}));
  EXPECT_FQ_ERROR(parse_header("1,2\n"), ErrorCode::Parse);
}

TEST(Io, RoundTrip) {
  const Field f = make_field(3, 2);
  const std::vector<Point2> p2{{Elem{1}, Elem{8}}, {Elem{0}, Elem{0}}};
  const std::vector<Point3> p3{{Elem{1}, Elem{2}, Elem{3}}};
  const std::vector<Line2> lines{Line2::non_vertical(Elem{4}, Elem{5}), Line2::vertical(Elem{7})};
  const std::vector<Plane3> planes{Plane3::dual(f, {Elem{1}, Elem{0}, Elem{2}}),
                                   Plane3::make(f, {Elem{0}, Elem{3}, Elem{0}}, Elem{0})};
  const std::vector<Elem> xs{Elem{6}, Elem{0}};
  const std::string text = format_header(f) + format_points(f, p2) + format_points(f, p3) +
                           format_lines(f, lines) + format_planes(f, planes) + format_scalars(f, xs);
  const auto o = parse_objects(f, text);
  EXPECT_EQ(o.p, 3u);
  EXPECT_EQ(o.n, 2u);
  EXPECT_EQ(o.points2, p2);
  EXPECT_EQ(o.points3, p3);
  EXPECT_EQ(o.lines, lines);
  EXPECT_EQ(o.planes, planes);
  EXPECT_TRUE(o.planes[0].affine_one());
  EXPECT_EQ(o.scalars, xs);
}

TEST(Io, Errors) {
  const Field f = make_field(5, 1);
  EXPECT_FQ_ERROR(parse_objects(f, "# field 7 1\n1,2\n"), ErrorCode::FieldMismatch);
  EXPECT_FQ_ERROR(parse_objects(f, "# field 5 1\n1,9\n"), ErrorCode::FieldMismatch);
  EXPECT_FQ_ERROR(parse_objects(f, "# field 5 1\nfoo bar\n"), ErrorCode::Parse);
  EXPECT_FQ_ERROR(read_text("/nonexistent/fqinc/file.txt"), ErrorCode::Io);
}

TEST(Io, Files) {
  const Field f = make_field(5, 1);
  const auto path = std::filesystem::temp_directory_path() / "fqinc_io_test.txt";
  const std::vector<Elem> xs{Elem{1}, Elem{4}};
  write_text(path, format_header(f) + format_scalars(f, xs));
  EXPECT_EQ(read_objects(path, f).scalars, xs);
  std::filesystem::remove(path);
}
