#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fqinc/ffield.hpp"
#include "fqinc/geom.hpp"

namespace fqinc {

/// Contents of one object file. A file may mix kinds; callers pick the
/// vector they need and reject the rest.
struct ObjectFile {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::vector<Point2> points2;
  std::vector<Point3> points3;
  std::vector<Line2> lines;
  std::vector<Plane3> planes;
  std::vector<Elem> scalars;
};

/// (p, n) from the "# field p n" header. Throws Parse when it is missing.
[[nodiscard]] std::pair<std::uint32_t, std::uint32_t> parse_header(std::string_view text);

/// Parses "x,y", "x,y,z", "N a b", "V c", "P n1 n2 n3 rhs" and bare
/// scalars, one per line. Blank lines and other '#' comments are skipped.
/// Throws FieldMismatch if the header disagrees with f or an index is >= q,
/// Parse on malformed lines. A plane written with rhs 1 is read as a . x = 1.
[[nodiscard]] ObjectFile parse_objects(const Field& f, std::string_view text);

[[nodiscard]] std::string format_header(const Field& f);
[[nodiscard]] std::string format_points(const Field& f, std::span<const Point2> pts);
[[nodiscard]] std::string format_points(const Field& f, std::span<const Point3> pts);
[[nodiscard]] std::string format_lines(const Field& f, std::span<const Line2> lines);
[[nodiscard]] std::string format_planes(const Field& f, std::span<const Plane3> planes);
[[nodiscard]] std::string format_scalars(const Field& f, std::span<const Elem> xs);

/// Whole-file helpers; throw Io.
[[nodiscard]] std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// read_text + parse_objects.
[[nodiscard]] ObjectFile read_objects(const std::filesystem::path& path, const Field& f);

}  // namespace fqinc
