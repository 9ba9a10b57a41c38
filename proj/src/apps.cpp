#include "fqinc/apps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "fqinc/error.hpp"
#include "fqinc/parallel.hpp"

namespace fqinc {

namespace {

void require_odd(const Field& f) {
  if (!f.odd()) throw Error(ErrorCode::EvenCharacteristic, "norms need odd characteristic");
}

std::vector<Elem> present(const std::vector<std::uint64_t>& counts) {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] > 0) out.push_back(Elem{static_cast<std::uint32_t>(i)});
  return out;
}

using u128 = unsigned __int128;

}  // namespace

Elem norm3(const Field& f, const Point3& x) {
  require_odd(f);
  return dot(f, x, x);
}

Elem dist(const Field& f, const Point3& x, const Point3& y) { return norm3(f, vsub(f, x, y)); }

std::size_t DistanceReport::nonzero_distances() const noexcept {
  std::size_t n = 0;
  for (auto g : distance_set) n += g.index != 0 ? 1 : 0;
  return n;
}

DistanceReport distance_set(const Field& f, std::span<const Point3> e, std::span<const Point3> fset) {
  require_odd(f);
  DistanceReport r;
  r.pairs_at.assign(f.q(), 0);
  for (const auto& x : e)
    for (const auto& y : fset) ++r.pairs_at[dist(f, x, y).index];
  r.zero_pairs = r.pairs_at[0];
  r.total_pairs = std::uint64_t{e.size()} * fset.size();
  r.distance_set = present(r.pairs_at);
  return r;
}

Plane3 bisector_plane(const Field& f, const Point3& x, const Point3& y) {
  require_odd(f);
  if (x == y) throw Error(ErrorCode::EqualPoints, "bisector of a point with itself");
  const Elem two = f.from_int(2);
  return Plane3::make(f, vscale(f, two, vsub(f, y, x)), f.sub(norm3(f, y), norm3(f, x)));
}

TripleReport triple_count(const Field& f, std::span<const Point3> e, std::span<const Point3> fset) {
  require_odd(f);
  TripleReport r;
  std::vector<std::uint64_t> pairs_at(f.q(), 0);
  r.triples = parallel_sum(
      fset.size(),
      [&](std::size_t j) {
        std::vector<std::uint64_t> at(f.q(), 0);
        for (const auto& u : e) ++at[dist(f, fset[j], u).index];
        std::uint64_t s = 0;
        for (std::size_t g = 1; g < at.size(); ++g) s += at[g] * at[g];
        return s;
      },
      16);
  for (const auto& u : e)
    for (const auto& x : fset) ++pairs_at[dist(f, x, u).index];
  for (std::size_t g = 1; g < pairs_at.size(); ++g) {
    r.nonzero_pairs += pairs_at[g];
    r.nonzero_distances += pairs_at[g] > 0 ? 1 : 0;
  }
  const std::uint64_t total = std::uint64_t{e.size()} * fset.size();
  const std::uint64_t zero = total - r.nonzero_pairs;

  const u128 lhs = static_cast<u128>(r.nonzero_distances) * fset.size() * r.triples;
  const u128 rhs = static_cast<u128>(r.nonzero_pairs) * r.nonzero_pairs;
  r.chain_ok = lhs >= rhs;
  r.chain_lhs = static_cast<double>(lhs);
  r.chain_rhs = static_cast<double>(rhs);
  r.hypothesis_ok = 2 * zero <= total;

  if (r.hypothesis_ok && total > 0) {
    // |Delta| >= |E|^2 |F| / (4T)  <=>  4 T |Delta| >= |E|^2 |F|
    const std::size_t delta_size = r.nonzero_distances + (zero > 0 ? 1 : 0);
    const u128 left = static_cast<u128>(4) * r.triples * delta_size;
    const u128 right = static_cast<u128>(e.size()) * e.size() * fset.size();
    r.derived_ok = left >= right;
  }
  return r;
}

std::uint64_t triple_count_bruteforce(const Field& f, std::span<const Point3> e, std::span<const Point3> fset) {
  require_odd(f);
  const double work = static_cast<double>(e.size()) * static_cast<double>(e.size()) * static_cast<double>(fset.size());
  if (work > kTripleBudget) throw Error(ErrorCode::BudgetExceeded, "triple loop exceeds 2e9 steps");
  std::uint64_t t = 0;
  for (const auto& u : e)
    for (const auto& v : e)
      for (const auto& x : fset) {
        const Elem du = dist(f, x, u);
        if (du.index != 0 && du == dist(f, x, v)) ++t;
      }
  return t;
}

BisectorK bisector_collinear_k(const Field& f, std::span<const Point3> e, std::span<const Point3> fset) {
  require_odd(f);
  const double work = static_cast<double>(e.size()) * static_cast<double>(e.size()) / 2 *
                      static_cast<double>(std::max<std::size_t>(1, fset.size()));
  if (work > kBisectorBudget) throw Error(ErrorCode::BudgetExceeded, "bisector scan exceeds 1e9 steps");
  BisectorK best;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (e[i] == e[j]) continue;
      const Plane3 plane = bisector_plane(f, e[i], e[j]);
      std::vector<Point3> on;
      for (const auto& u : fset)
        if (incident(f, u, plane) && dist(f, e[i], u).index != 0) on.push_back(u);
      if (on.size() <= best.k) continue;
      const auto c = max_collinear(f, on);
      if (c.k > best.k) {
        best.k = c.k;
        best.pair = {e[i], e[j]};
        best.line = c.witness;
      }
    }
  }
  return best;
}

std::vector<Line3> sphere_line_scan(const Field& f, Elem r) {
  require_odd(f);
  if (f.q() > kSphereScanMaxQ)
    throw Error(ErrorCode::BudgetExceeded, "sphere scan limited to q <= 13");
  if (r.index == 0 || !f.contains(r)) throw Error(ErrorCode::InvalidArgument, "radius must be a nonzero element");

  std::vector<Point3> directions;
  for (const auto& d : all_points3(f))
    if (!is_zero(d) && normalize_direction(f, d) == d) directions.push_back(d);

  std::set<Line3> lines;
  const auto ts = f.elements();
  for (const auto& s : all_points3(f)) {
    if (norm3(f, s) != r) continue;
    for (const auto& d : directions) {
      const bool on_sphere = std::all_of(ts.begin(), ts.end(), [&](Elem t) {
        return norm3(f, vadd(f, s, vscale(f, t, d))) == r;
      });
      if (on_sphere) lines.insert(make_line3(f, s, d));
    }
  }
  return {lines.begin(), lines.end()};
}

BisectorInjectivity bisector_injectivity(const Field& f, std::span<const Point3> centres) {
  require_odd(f);
  BisectorInjectivity out;
  const auto space = all_points3(f);
  for (const auto& x : centres) {
    std::map<std::pair<Point3, Elem>, Point3> seen;
    for (const auto& y : space) {
      if (y == x) continue;
      const auto key = bisector_plane(f, x, y).key();
      const auto [it, fresh] = seen.emplace(key, y);
      if (fresh) continue;
      ++out.collisions;
      out.injective = false;
      if (!out.witness) out.witness = std::array<Point3, 3>{x, it->second, y};
    }
  }
  return out;
}

DistanceBoundCheck distance_bound_check(const Field& f, std::size_t n_e, std::size_t n_f, const DistanceReport& d,
                                            std::size_t k, double alpha) {
  DistanceBoundCheck c;
  const double q = f.q();
  c.alpha = alpha;
  c.k = k;
  c.q_is_3_mod_4 = f.spec().q_mod4 == 3;
  c.zero_pairs_ok = d.zero_pair_hypothesis();
  c.size_ok = static_cast<double>(n_f) > 2.0 * static_cast<double>(k) * std::pow(q, alpha);
  c.k_is_zero = k == 0;
  const double ne = static_cast<double>(n_e);
  const double second = ne >= std::pow(q, 3 * alpha) ? std::pow(q, alpha) : ne / std::pow(q, 2 * alpha);
  c.predicted = std::max(static_cast<double>(k), second);
  c.measured_ratio = c.predicted > 0 ? static_cast<double>(d.distance_set.size()) / c.predicted : 0.0;
  return c;
}

DotReport dot_product_set(const Field& f, std::span<const Point3> e, std::span<const Point3> fset) {
  DotReport r;
  r.lambda_counts.assign(f.q(), 0);
  for (const auto& x : e)
    for (const auto& y : fset) ++r.lambda_counts[dot(f, x, y).index];
  r.orthogonal_pairs = r.lambda_counts[0];
  r.total_pairs = std::uint64_t{e.size()} * fset.size();
  r.dot_set = present(r.lambda_counts);

  std::uint64_t best = 0;
  std::size_t nonzero_values = 0;
  for (std::size_t l = 1; l < r.lambda_counts.size(); ++l) {
    if (r.lambda_counts[l] == 0) continue;
    ++nonzero_values;
    if (r.lambda_counts[l] > best) {
      best = r.lambda_counts[l];
      r.best_lambda = Elem{static_cast<std::uint32_t>(l)};
    }
  }
  r.averaging_ok = static_cast<u128>(best) * nonzero_values >= r.total_pairs - r.orthogonal_pairs;
  return r;
}

DotCommonK dot_common_collinear_k(const Field& f, std::span<const Point3> e, std::span<const Point3> fset) {
  const double work = static_cast<double>(e.size()) * static_cast<double>(e.size()) / 2 *
                      static_cast<double>(std::max<std::size_t>(1, fset.size()));
  if (work > kBisectorBudget) throw Error(ErrorCode::BudgetExceeded, "plane-pair scan exceeds 1e9 steps");
  DotCommonK out;
  out.per_lambda.assign(f.q(), 0);
  std::vector<std::size_t> count(f.q(), 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (e[i] == e[j]) continue;
      touched.clear();
      for (const auto& u : fset) {
        const Elem a = dot(f, e[i], u);
        if (a.index == 0 || a != dot(f, e[j], u)) continue;
        if (count[a.index]++ == 0) touched.push_back(a.index);
      }
      for (auto l : touched) {
        out.per_lambda[l] = std::max(out.per_lambda[l], count[l]);
        out.k = std::max(out.k, count[l]);
        count[l] = 0;
      }
    }
  }
  return out;
}

bool is_coplanar(const Field& f, std::span<const Point3> pts) {
  if (pts.size() < 4) return true;
  // Row-reduce the differences p - p0; rank 3 means not coplanar.
  std::vector<Point3> basis;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 1; i < pts.size() && basis.size() < 3; ++i) {
    Point3 v = vsub(f, pts[i], pts[0]);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Elem c = v[pivots[b]];
      if (c.index != 0) v = vsub(f, v, vscale(f, c, basis[b]));
    }
    if (is_zero(v)) continue;
    const Point3 n = normalize_direction(f, v);
    std::size_t piv = 0;
    while (n[piv].index == 0) ++piv;
    // Keep earlier basis vectors reduced at the new pivot.
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Elem c = basis[b][piv];
      if (c.index != 0) basis[b] = vsub(f, basis[b], vscale(f, c, n));
    }
    basis.push_back(n);
    pivots.push_back(piv);
  }
  return basis.size() < 3;
}

DotLineCheck dot_k_line_check(const Field& f, std::span<const Point3> e, std::span<const Point3> marked) {
  if (marked.size() < 2) throw Error(ErrorCode::KTooSmall, "need at least two marked points");
  const Point3 d = vsub(f, marked[1], marked[0]);
  if (is_zero(d)) throw Error(ErrorCode::InvalidArgument, "marked points must be distinct");
  const Line3 l0 = make_line3(f, marked[0], d);
  std::set<Point3> distinct(marked.begin(), marked.end());
  if (distinct.size() != marked.size()) throw Error(ErrorCode::InvalidArgument, "marked points must be distinct");
  for (const auto& u : marked)
    if (!on_line(f, u, l0)) throw Error(ErrorCode::InvalidArgument, "marked points must be collinear");
  if (is_coplanar(f, e)) throw Error(ErrorCode::ECoplanar, "E lies in a plane");

  DotLineCheck out;
  out.k = marked.size();

  std::set<Elem> lambdas;
  for (const auto& w : e) {
    const Elem first = dot(f, marked[0], w);
    if (first.index == 0) continue;
    bool same = true;
    for (const auto& u : marked) same = same && dot(f, u, w) == first;
    if (same) lambdas.insert(first);
  }
  out.lambdas.assign(lambdas.begin(), lambdas.end());

  if (out.lambdas.size() >= out.k) {
    out.path = DotLineCheck::Path::distinct_lambdas;
  } else {
    // Some w' is off the plane w . d = 0 because E is not coplanar; its
    // products w' . (u_1 + t d) are then pairwise distinct.
    out.path = DotLineCheck::Path::transversal_witness;
    for (const auto& w : e) {
      if (dot(f, w, d).index != 0) {
        out.witness = w;
        break;
      }
    }
    if (!out.witness) throw Error(ErrorCode::InvariantFailure, "no transversal point in a non-coplanar E");
    std::set<Elem> products;
    for (const auto& u : marked) products.insert(dot(f, *out.witness, u));
    if (products.size() != out.k) throw Error(ErrorCode::InvariantFailure, "transversal products collide");
  }

  std::set<Elem> all;
  for (const auto& w : e)
    for (const auto& u : marked) all.insert(dot(f, w, u));
  out.products_on_marked = all.size();
  out.ok = out.products_on_marked >= out.k;
  return out;
}

RegularSubsetReport regular_subset(const Field& f, std::span<const Point3> u) {
  RegularSubsetReport r;
  const std::uint64_t n = u.size();
  const std::uint64_t q = f.q();
  r.size_hypothesis = n >= 8 * q * q;
  r.heavy_threshold = 2.0 * static_cast<double>(n) / static_cast<double>(q);
  r.light_threshold = static_cast<double>(n) / (2.0 * static_cast<double>(q));
  r.degree.assign(u.size(), 0);
  parallel_chunks(
      u.size(),
      [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t i = begin; i < end; ++i) {
          std::uint64_t c = 0;
          for (const auto& v : u) c += dot(f, u[i], v) == Elem{1} ? 1 : 0;
          r.degree[i] = c;
        }
      },
      16);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const std::uint64_t deg = r.degree[i];
    if (deg * q >= 2 * n)
      r.heavy.push_back(i);
    else if (2 * q * deg <= n)
      r.light.push_back(i);
    else
      r.regular.push_back(i);
  }
  return r;
}

TracePairReport trace_pairs(const Field& f, std::span<const Point3> u, std::span<const Point3> u_prime) {
  std::map<std::vector<std::uint32_t>, std::uint64_t> classes;
  for (const auto& x : u) {
    std::vector<std::uint32_t> trace;
    for (std::size_t j = 0; j < u_prime.size(); ++j)
      if (dot(f, x, u_prime[j]) == Elem{1}) trace.push_back(static_cast<std::uint32_t>(j));
    ++classes[trace];
  }
  TracePairReport r;
  for (const auto& [trace, m] : classes) {
    r.class_sizes.push_back(m);
    r.pair_count += m * m;
    r.family_size += m;
  }
  std::sort(r.class_sizes.rbegin(), r.class_sizes.rend());
  r.classes = classes.size();
  const double nu = static_cast<double>(u.size());
  const double np = static_cast<double>(u_prime.size());
  r.bound_value = np > 0 ? nu * nu / (np * np * np) : std::numeric_limits<double>::infinity();
  r.ratio = std::isinf(r.bound_value) ? 0.0 : static_cast<double>(r.pair_count) / r.bound_value;
  r.cauchy_schwarz_ok = static_cast<u128>(r.pair_count) * r.classes >= static_cast<u128>(u.size()) * u.size();
  return r;
}

}  // namespace fqinc
