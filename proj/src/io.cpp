#include "fqinc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fqinc/error.hpp"

namespace fqinc {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (sep == ' ') {
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
      if (j > i) out.push_back(s.substr(i, j - i));
      i = j;
    }
    return out;
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (tok.empty() || ec != std::errc{} || ptr != end)
    throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": bad integer '" + std::string(tok) + "'");
  return v;
}

Elem parse_elem(const Field& f, std::string_view tok, std::size_t line_no) {
  const auto v = parse_uint(tok, line_no);
  if (v >= f.q())
    throw Error(ErrorCode::FieldMismatch,
                "line " + std::to_string(line_no) + ": element " + std::to_string(v) + " not in GF(" +
                    std::to_string(f.q()) + ")");
  return Elem{static_cast<std::uint32_t>(v)};
}

bool is_header(std::string_view line) {
  const auto toks = split(line, ' ');
  return toks.size() == 4 && toks[0] == "#" && toks[1] == "field";
}

std::string idx(Elem e) { return std::to_string(e.index); }

}  // namespace

std::pair<std::uint32_t, std::uint32_t> parse_header(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    ++line_no;
    if (is_header(line)) {
      const auto toks = split(line, ' ');
      return {static_cast<std::uint32_t>(parse_uint(toks[2], line_no)),
              static_cast<std::uint32_t>(parse_uint(toks[3], line_no))};
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  throw Error(ErrorCode::Parse, "missing '# field p n' header");
}

ObjectFile parse_objects(const Field& f, std::string_view text) {
  ObjectFile out;
  std::tie(out.p, out.n) = parse_header(text);
  if (out.p != f.p() || out.n != f.n())
    throw Error(ErrorCode::FieldMismatch, "file is over GF(" + std::to_string(out.p) + "^" + std::to_string(out.n) +
                                              "), expected GF(" + std::to_string(f.p()) + "^" +
                                              std::to_string(f.n()) + ")");
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto bad = [&] {
      return Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": cannot parse '" + std::string(line) + "'");
    };
    if (line.find(',') != std::string_view::npos) {
      const auto toks = split(line, ',');
      if (toks.size() == 2) {
        out.points2.push_back({parse_elem(f, toks[0], line_no), parse_elem(f, toks[1], line_no)});
      } else if (toks.size() == 3) {
        out.points3.push_back(
            {parse_elem(f, toks[0], line_no), parse_elem(f, toks[1], line_no), parse_elem(f, toks[2], line_no)});
      } else {
        throw bad();
      }
      continue;
    }
    const auto toks = split(line, ' ');
    if (toks[0] == "N" && toks.size() == 3) {
      out.lines.push_back(Line2::non_vertical(parse_elem(f, toks[1], line_no), parse_elem(f, toks[2], line_no)));
    } else if (toks[0] == "V" && toks.size() == 2) {
      out.lines.push_back(Line2::vertical(parse_elem(f, toks[1], line_no)));
    } else if (toks[0] == "P" && toks.size() == 5) {
      const Point3 normal{parse_elem(f, toks[1], line_no), parse_elem(f, toks[2], line_no),
                          parse_elem(f, toks[3], line_no)};
      const Elem rhs = parse_elem(f, toks[4], line_no);
      if (is_zero(normal)) throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": zero plane normal");
      out.planes.push_back(rhs == Elem{1} ? Plane3::dual(f, normal) : Plane3::make(f, normal, rhs));
    } else if (toks.size() == 1) {
      out.scalars.push_back(parse_elem(f, toks[0], line_no));
    } else {
      throw bad();
    }
  }
  return out;
}

std::string format_header(const Field& f) {
  return "# field " + std::to_string(f.p()) + " " + std::to_string(f.n()) + "\n";
}

std::string format_points(const Field& f, std::span<const Point2> pts) {
  std::string s = format_header(f);
  for (const auto& p : pts) s += idx(p.x) + "," + idx(p.y) + "\n";
  return s;
}

std::string format_points(const Field& f, std::span<const Point3> pts) {
  std::string s = format_header(f);
  for (const auto& p : pts) s += idx(p[0]) + "," + idx(p[1]) + "," + idx(p[2]) + "\n";
  return s;
}

std::string format_lines(const Field& f, std::span<const Line2> lines) {
  std::string s = format_header(f);
  for (const auto& l : lines) {
    if (l.is_vertical())
      s += "V " + idx(l.vertical_form().c) + "\n";
    else
      s += "N " + idx(l.non_vertical_form().slope) + " " + idx(l.non_vertical_form().intercept) + "\n";
  }
  return s;
}

std::string format_planes(const Field& f, std::span<const Plane3> planes) {
  std::string s = format_header(f);
  for (const auto& pl : planes) {
    const auto& n = pl.normal();
    s += "P " + idx(n[0]) + " " + idx(n[1]) + " " + idx(n[2]) + " " + idx(pl.rhs()) + "\n";
  }
  return s;
}

std::string format_scalars(const Field& f, std::span<const Elem> xs) {
  std::string s = format_header(f);
  for (auto x : xs) s += idx(x) + "\n";
  return s;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

ObjectFile read_objects(const std::filesystem::path& path, const Field& f) { return parse_objects(f, read_text(path)); }

}  // namespace fqinc
