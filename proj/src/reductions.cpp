#include "fqinc/reductions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "fqinc/error.hpp"
#include "fqinc/parallel.hpp"
#include "fqinc/rng.hpp"

namespace fqinc {

namespace {

void require_non_vertical(std::span<const Line2> lines) {
  for (const auto& l : lines)
    if (l.is_vertical()) throw Error(ErrorCode::VerticalLinePresent, "energy count needs lines y = ax + b");
}

Elem signed_elem(const Field& f, int sign, Elem e) { return sign < 0 ? f.neg(e) : e; }

Plane3 relation_plane(const Field& f, const PlaneSignConvention& c, Elem a, Elem b, Elem x_prime) {
  return Plane3::make(f, {a, signed_elem(f, c.y_sign, x_prime), signed_elem(f, c.z_sign, Elem{1})}, f.neg(b));
}

bool variant_matches(const Field& f, const PlaneSignConvention& c, Elem a, Elem b, Elem xp, Elem x, Elem ap,
                     Elem bp) {
  const bool relation = f.add(f.mul(a, x), b) == f.add(f.mul(ap, xp), bp);
  const Point3 n{a, signed_elem(f, c.y_sign, xp), signed_elem(f, c.z_sign, Elem{1})};
  const bool on_plane = dot(f, n, {x, ap, bp}) == f.neg(b);
  return relation == on_plane;
}

}  // namespace

std::uint64_t count_solutions(const Field& f, std::span<const Line2> lines, std::span<const Elem> a_set,
                              CountMethod method) {
  require_non_vertical(lines);
  for (auto x : a_set)
    if (!f.contains(x)) throw Error(ErrorCode::FieldMismatch, "A contains an element outside the field");

  if (method == CountMethod::oracle) {
    // Literal enumeration of the 6-tuples.
    return parallel_sum(
        lines.size(),
        [&](std::size_t i) {
          const auto& l = lines[i].non_vertical_form();
          std::uint64_t c = 0;
          for (auto x : a_set) {
            const Elem lhs = f.add(f.mul(l.slope, x), l.intercept);
            for (const auto& other : lines) {
              const auto& o = other.non_vertical_form();
              for (auto xp : a_set) c += lhs == f.add(f.mul(o.slope, xp), o.intercept) ? 1 : 0;
            }
          }
          return c;
        },
        1);
  }

  // r(v) = #{(l, x) : a x + b = v}.
  std::vector<std::uint64_t> r(f.q(), 0);
  for (const auto& l : lines) {
    const auto& nv = l.non_vertical_form();
    for (auto x : a_set) ++r[f.add(f.mul(nv.slope, x), nv.intercept).index];
  }
  std::uint64_t total = 0;
  for (auto c : r) total += c * c;
  return total;
}

PlaneSignConvention derive_sign_convention(const Field& f) {
  // The printed form first, then the remaining variants.
  const std::array<PlaneSignConvention, 4> variants{{{-1, +1}, {+1, +1}, {+1, -1}, {-1, -1}}};
  const auto elems = f.elements();
  for (const auto& c : variants) {
    bool ok = true;
    if (f.q() <= 9) {
      for (auto a : elems)
        for (auto b : elems)
          for (auto xp : elems)
            for (auto x : elems)
              for (auto ap : elems)
                for (auto bp : elems)
                  if (ok && !variant_matches(f, c, a, b, xp, x, ap, bp)) ok = false;
    } else {
      Rng rng(derive_seed(0x5eed, f.q()));
      auto draw = [&] { return Elem{static_cast<std::uint32_t>(uniform_between(rng, 0, f.q() - 1))}; };
      for (int probe = 0; probe < 20000 && ok; ++probe) {
        const Elem a = draw(), b = draw(), xp = draw(), x = draw(), ap = draw();
        // Half the probes satisfy the relation by construction.
        const Elem bp = probe % 2 == 0 ? f.sub(f.add(f.mul(a, x), b), f.mul(ap, xp)) : draw();
        ok = variant_matches(f, c, a, b, xp, x, ap, bp);
      }
    }
    if (ok) return c;
  }
  throw Error(ErrorCode::InvariantFailure, "no sign variant reproduces a x + b = a' x' + b'");
}

ReductionOutput build_point_plane_sets(const Field& f, std::span<const Line2> lines, std::span<const Elem> a_set) {
  require_non_vertical(lines);
  ReductionOutput out;
  out.convention = derive_sign_convention(f);

  for (auto x : a_set)
    for (const auto& l : lines) {
      const auto& nv = l.non_vertical_form();
      out.points3.push_back({x, nv.slope, nv.intercept});
    }
  for (const auto& l : lines) {
    const auto& nv = l.non_vertical_form();
    for (auto xp : a_set) out.planes3.push_back(relation_plane(f, out.convention, nv.slope, nv.intercept, xp));
  }

  const std::set<Elem> distinct_a(a_set.begin(), a_set.end());
  const std::set<Line2> distinct_l(lines.begin(), lines.end());
  out.has_duplicates = distinct_a.size() != a_set.size() || distinct_l.size() != lines.size();
  out.k_bound = std::max(a_set.size(), distinct_slopes(lines));

  out.solution_count = count_solutions(f, lines, a_set, CountMethod::fast);
  const auto incidences = count_incidences(f, out.points3, out.planes3, CountMethod::fast).count;
  if (incidences != out.solution_count)
    throw Error(ErrorCode::InvariantFailure, "point-plane incidences " + std::to_string(incidences) +
                                                 " != solution count " + std::to_string(out.solution_count));

  if (out.points3.size() <= kCollinearityCheckCap) {
    const auto non_vertical = [](const Line3& line) {
      return line.direction[0].index != 0 || line.direction[1].index != 0;
    };
    out.k_measured = max_collinear(f, out.points3, non_vertical).k;
    out.collinearity_checked = true;
    if (out.k_measured > out.k_bound)
      throw Error(ErrorCode::InvariantFailure, "non-vertical line holds " + std::to_string(out.k_measured) +
                                                   " points, above k = " + std::to_string(out.k_bound));
  }
  return out;
}

CsUpperReport cs_upper(const Field& f, std::span<const Line2> lines, std::span<const Elem> a_set,
                       std::span<const Elem> b_set) {
  CsUpperReport r;
  r.solution_count = count_solutions(f, lines, a_set, CountMethod::fast);
  const auto grid = cartesian(a_set, b_set);
  r.actual = count_incidences(f, grid, lines, CountMethod::fast).count;
  r.value = std::sqrt(static_cast<double>(b_set.size())) * std::sqrt(static_cast<double>(r.solution_count));
  const auto lhs = static_cast<unsigned __int128>(r.actual) * r.actual;
  const auto rhs = static_cast<unsigned __int128>(b_set.size()) * r.solution_count;
  r.holds = lhs <= rhs;
  return r;
}

std::vector<Point2> cartesian(std::span<const Elem> a_set, std::span<const Elem> b_set) {
  std::vector<Point2> out;
  out.reserve(a_set.size() * b_set.size());
  for (auto x : a_set)
    for (auto y : b_set) out.push_back({x, y});
  return out;
}

std::size_t distinct_slopes(std::span<const Line2> lines) {
  std::set<Elem> slopes;
  for (const auto& l : lines)
    if (!l.is_vertical()) slopes.insert(l.non_vertical_form().slope);
  return slopes.size();
}

}  // namespace fqinc
