#include "fqinc/setsys.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

#include "fqinc/error.hpp"
#include "fqinc/parallel.hpp"
#include "fqinc/rng.hpp"

namespace fqinc {

namespace {

// Sorted element indices of a candidate set, padded with kPad.
using Combo = std::array<std::uint32_t, kMaxVcSearch>;
constexpr std::uint32_t kPad = std::numeric_limits<std::uint32_t>::max();

struct ComboHash {
  std::size_t operator()(const Combo& c) const noexcept { return boost::hash_range(c.begin(), c.end()); }
};

using ComboSet = std::unordered_set<Combo, ComboHash>;

Combo make_combo(std::span<const std::uint32_t> elems) {
  Combo c;
  c.fill(kPad);
  std::copy(elems.begin(), elems.end(), c.begin());
  return c;
}

std::uint64_t full_mask(std::size_t d) {
  const std::size_t patterns = std::size_t{1} << d;
  return patterns >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << patterns) - 1;
}

// Shattering test for |S| <= 6 using a 64-bit set of realized patterns.
bool shatters_small(const SetSystem& sys, const Combo& s, std::size_t d) {
  const std::uint64_t full = full_mask(d);
  std::uint64_t seen = 0;
  for (const auto& member : sys.family) {
    std::uint32_t pattern = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (member.test(s[i])) pattern |= 1U << i;
    seen |= std::uint64_t{1} << pattern;
    if (seen == full) return true;
  }
  return false;
}

// Advances `idx` to the next k-combination of [0, n); false when exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

std::vector<std::uint32_t> elements_of(const Members& m) {
  std::vector<std::uint32_t> out;
  for (auto i = m.find_first(); i != Members::npos; i = m.find_next(i))
    out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

bool all_faces_shattered(const Combo& cand, std::size_t d, const ComboSet& previous) {
  std::array<std::uint32_t, kMaxVcSearch> face{};
  for (std::size_t skip = 0; skip < d; ++skip) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (i != skip) face[w++] = cand[i];
    if (!previous.contains(make_combo(std::span(face.data(), d - 1)))) return false;
  }
  return true;
}

// Number of distinct traces of the family on `subset` (|subset| <= 64).
std::size_t count_traces(const SetSystem& sys, std::span<const std::size_t> subset) {
  std::vector<std::uint64_t> traces;
  traces.reserve(sys.family.size());
  for (const auto& member : sys.family) {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < subset.size(); ++i)
      if (member.test(subset[i])) t |= std::uint64_t{1} << i;
    traces.push_back(t);
  }
  std::sort(traces.begin(), traces.end());
  return static_cast<std::size_t>(std::unique(traces.begin(), traces.end()) - traces.begin());
}

std::size_t count_traces_wide(const SetSystem& sys, std::span<const std::size_t> subset) {
  std::set<Members> traces;
  for (const auto& member : sys.family) {
    Members t(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i)
      if (member.test(subset[i])) t.set(i);
    traces.insert(std::move(t));
  }
  return traces.size();
}

std::size_t traces_on(const SetSystem& sys, std::span<const std::size_t> subset) {
  return subset.size() <= 64 ? count_traces(sys, subset) : count_traces_wide(sys, subset);
}

std::size_t separation_size(const SetSystem& sys, std::span<const std::size_t> tuple) {
  Members uni = sys.family[tuple[0]];
  Members inter = sys.family[tuple[0]];
  for (std::size_t i = 1; i < tuple.size(); ++i) {
    uni |= sys.family[tuple[i]];
    inter &= sys.family[tuple[i]];
  }
  return (uni - inter).count();
}

std::vector<std::size_t> random_subset(Rng& rng, std::size_t population, std::size_t k) {
  const auto drawn = sample_without_replacement(rng, population, k);
  return {drawn.begin(), drawn.end()};
}

}  // namespace

void SetSystem::add(std::span<const std::size_t> elements, std::size_t label) {
  Members m(ground_size);
  for (auto e : elements) {
    if (e >= ground_size)
      throw Error(ErrorCode::InvalidArgument,
                  "element " + std::to_string(e) + " outside ground set of size " + std::to_string(ground_size));
    m.set(e);
  }
  family.push_back(std::move(m));
  labels.push_back(label);
}

SetSystem SetSystem::deduplicated() const {
  SetSystem out;
  out.ground_size = ground_size;
  std::set<Members> seen;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!seen.insert(family[i]).second) continue;
    out.family.push_back(family[i]);
    out.labels.push_back(i < labels.size() ? labels[i] : i);
  }
  return out;
}

SetSystem neighborhood_system(const Field& f, std::span<const Point3> points, std::span<const Plane3> planes,
                              Side side) {
  SetSystem sys;
  const bool by_point = side == Side::by_point;
  sys.ground_size = by_point ? planes.size() : points.size();
  const std::size_t members = by_point ? points.size() : planes.size();
  sys.family.assign(members, Members(sys.ground_size));
  sys.labels.resize(members);
  for (std::size_t i = 0; i < members; ++i) sys.labels[i] = i;
  for (std::size_t u = 0; u < points.size(); ++u) {
    for (std::size_t v = 0; v < planes.size(); ++v) {
      if (!incident(f, points[u], planes[v])) continue;
      if (by_point)
        sys.family[u].set(v);
      else
        sys.family[v].set(u);
    }
  }
  return sys;
}

bool is_shattered(const SetSystem& sys, std::span<const std::size_t> subset) {
  if (subset.size() > kMaxShatterSubset)
    throw Error(ErrorCode::SubsetTooLarge, "subset of size " + std::to_string(subset.size()) + " > 20");
  for (auto e : subset)
    if (e >= sys.ground_size) throw Error(ErrorCode::InvalidArgument, "subset element outside ground set");
  const std::size_t patterns = std::size_t{1} << subset.size();
  std::vector<bool> seen(patterns, false);
  std::size_t realized = 0;
  for (const auto& member : sys.family) {
    std::size_t pattern = 0;
    for (std::size_t i = 0; i < subset.size(); ++i)
      if (member.test(subset[i])) pattern |= std::size_t{1} << i;
    if (!seen[pattern]) {
      seen[pattern] = true;
      if (++realized == patterns) return true;
    }
  }
  return false;
}

double binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

std::uint64_t sauer_shelah(std::uint64_t z, std::uint64_t d) noexcept {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t term = 1;  // C(z, 0)
  for (std::uint64_t i = 0; i <= std::min(d, z); ++i) {
    if (i > 0) {
      // C(z, i) = C(z, i-1) * (z - i + 1) / i, exact in 128-bit.
      const unsigned __int128 next = static_cast<unsigned __int128>(term) * (z - i + 1) / i;
      if (next > kMax) return kMax;
      term = static_cast<std::uint64_t>(next);
    }
    if (total > kMax - term) return kMax;
    total += term;
  }
  return total;
}

VcResult vc_dimension(const SetSystem& sys, int d_max) {
  if (d_max < 0 || d_max > kMaxVcSearch)
    throw Error(ErrorCode::InvalidArgument, "d_max must lie in [0, 6]");
  double budget = 0;
  for (int i = 0; i <= d_max; ++i) budget += binomial(sys.ground_size, static_cast<std::uint64_t>(i));
  if (budget > kVcBudget)
    throw Error(ErrorCode::BudgetExceeded, "sum of C(" + std::to_string(sys.ground_size) + ", i) for i <= " +
                                               std::to_string(d_max) + " exceeds 10^7");
  VcResult result;
  if (sys.family.empty()) return result;
  result.saturated = d_max == 0;

  std::vector<std::vector<std::uint32_t>> member_elems;
  member_elems.reserve(sys.family.size());
  for (const auto& m : sys.family) member_elems.push_back(elements_of(m));

  ComboSet previous{make_combo({})};
  std::vector<Combo> previous_list{make_combo({})};

  for (int level = 1; level <= d_max; ++level) {
    const auto d = static_cast<std::size_t>(level);
    // A shattered set must lie inside some member (it is its own trace), so
    // candidates come either from extending shattered (d-1)-sets or from
    // d-subsets of members, whichever is cheaper.
    const double extend_cost = static_cast<double>(previous_list.size()) * static_cast<double>(sys.ground_size);
    double member_cost = 0;
    for (const auto& e : member_elems) member_cost += binomial(e.size(), d);

    std::vector<Combo> candidates;
    if (extend_cost <= member_cost) {
      for (const auto& base : previous_list) {
        const std::uint32_t start = d == 1 ? 0 : base[d - 2] + 1;
        for (std::uint32_t e = start; e < sys.ground_size; ++e) {
          Combo cand = base;
          cand[d - 1] = e;
          if (d == 1 || all_faces_shattered(cand, d, previous)) candidates.push_back(cand);
        }
      }
    } else {
      ComboSet unique;
      for (const auto& elems : member_elems) {
        if (elems.size() < d) continue;
        auto idx = first_combination(d);
        do {
          std::array<std::uint32_t, kMaxVcSearch> pick{};
          for (std::size_t i = 0; i < d; ++i) pick[i] = elems[idx[i]];
          const Combo cand = make_combo(std::span(pick.data(), d));
          if (unique.contains(cand)) continue;
          if (d == 1 || all_faces_shattered(cand, d, previous)) unique.insert(cand);
        } while (next_combination(idx, elems.size()));
      }
      candidates.assign(unique.begin(), unique.end());
    }
    std::sort(candidates.begin(), candidates.end());

    std::vector<std::vector<Combo>> found(worker_count(candidates.size(), 256));
    parallel_chunks(
        candidates.size(),
        [&](std::size_t begin, std::size_t end, unsigned w) {
          for (std::size_t i = begin; i < end; ++i)
            if (shatters_small(sys, candidates[i], d)) found[w].push_back(candidates[i]);
        },
        256);
    std::vector<Combo> shattered;
    for (auto& part : found) shattered.insert(shattered.end(), part.begin(), part.end());
    if (shattered.empty()) break;

    result.dimension = level;
    result.saturated = level == d_max;
    previous = ComboSet(shattered.begin(), shattered.end());
    previous_list = std::move(shattered);
  }

  const auto& w = previous_list.front();
  for (int i = 0; i < result.dimension; ++i) result.witness.push_back(w[static_cast<std::size_t>(i)]);
  return result;
}

ShatterResult shatter_function(const SetSystem& sys, std::size_t z, std::optional<ShatterSampling> sampling) {
  if (z > sys.ground_size)
    throw Error(ErrorCode::InvalidArgument, "z exceeds the ground set size");
  if (z == 0) return {sys.family.empty() ? 0U : 1U, true};
  const std::uint64_t ceiling =
      std::min<std::uint64_t>(sys.family.size(), z >= 64 ? std::numeric_limits<std::uint64_t>::max()
                                                          : std::uint64_t{1} << z);

  if (sampling) {
    Rng rng(sampling->seed);
    std::size_t best = 0;
    for (std::size_t t = 0; t < sampling->trials && best < ceiling; ++t)
      best = std::max(best, traces_on(sys, random_subset(rng, sys.ground_size, z)));
    return {best, false};
  }

  if (binomial(sys.ground_size, z) > kShatterExactBudget)
    throw Error(ErrorCode::BudgetExceeded, "C(" + std::to_string(sys.ground_size) + ", " + std::to_string(z) +
                                               ") exceeds 10^6");
  std::size_t best = 0;
  auto idx = first_combination(z);
  do {
    best = std::max(best, traces_on(sys, idx));
    if (best >= ceiling) break;
  } while (next_combination(idx, sys.ground_size));
  return {best, true};
}

SeparationReport separation_check(const SetSystem& sys, std::size_t k, std::size_t delta,
                                  std::optional<ShatterSampling> sampling) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "separation needs k >= 2");
  SeparationReport report{k, delta, true, true, std::nullopt};
  const std::size_t n = sys.family.size();
  if (n < k) return report;

  if (binomial(n, k) <= kSeparationBudget) {
    auto idx = first_combination(k);
    do {
      if (separation_size(sys, idx) < delta) {
        report.separated = false;
        report.witness = idx;
        return report;
      }
    } while (next_combination(idx, n));
    return report;
  }
  if (!sampling)
    throw Error(ErrorCode::BudgetExceeded, "C(" + std::to_string(n) + ", " + std::to_string(k) + ") exceeds 10^7");
  report.exhaustive = false;
  Rng rng(sampling->seed);
  for (std::size_t t = 0; t < sampling->trials; ++t) {
    const auto tuple = random_subset(rng, n, k);
    if (separation_size(sys, tuple) < delta) {
      report.separated = false;
      report.witness = tuple;
      return report;
    }
  }
  return report;
}

std::vector<std::size_t> rich_elements(const SetSystem& sys, double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sys.family.size(); ++i)
    if (static_cast<double>(sys.family[i].count()) >= threshold) out.push_back(i);
  return out;
}

SetSystem subsystem(const SetSystem& sys, std::span<const std::size_t> indices) {
  SetSystem out;
  out.ground_size = sys.ground_size;
  for (auto i : indices) {
    out.family.push_back(sys.family.at(i));
    out.labels.push_back(i < sys.labels.size() ? sys.labels[i] : i);
  }
  return out;
}

PackingReport packing_bound_check(const SetSystem& sys, std::size_t k, std::size_t delta, int d,
                                  double c_prime) {
  if (delta == 0) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  PackingReport r;
  r.family_size = sys.family.size();
  r.ground_size = sys.ground_size;
  r.delta = delta;
  r.d = d;
  r.c_prime = c_prime;
  r.separation = separation_check(sys, k, delta, ShatterSampling{100000, 0});
  const double scale = std::pow(static_cast<double>(sys.ground_size) / static_cast<double>(delta), d);
  r.ratio = scale > 0 ? static_cast<double>(r.family_size) / scale
                      : (r.family_size == 0 ? 0.0 : std::numeric_limits<double>::infinity());
  r.holds = r.ratio <= c_prime;
  return r;
}

std::string format_set_system(const SetSystem& sys) {
  std::ostringstream out;
  out << "ground " << sys.ground_size << '\n';
  for (const auto& m : sys.family) {
    bool first = true;
    for (auto i = m.find_first(); i != Members::npos; i = m.find_next(i)) {
      if (!first) out << ' ';
      out << i;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

SetSystem parse_set_system(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  if (lines.empty()) throw Error(ErrorCode::Parse, "missing 'ground N' header");

  SetSystem sys;
  {
    std::istringstream header(lines[0]);
    std::string word;
    long long n = -1;
    if (!(header >> word >> n) || word != "ground" || n < 0)
      throw Error(ErrorCode::Parse, "bad set-system header: " + lines[0]);
    sys.ground_size = static_cast<std::size_t>(n);
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::vector<std::size_t> elems;
    long long v = 0;
    while (row >> v) {
      if (v < 0) throw Error(ErrorCode::Parse, "negative index on line " + std::to_string(i + 1));
      elems.push_back(static_cast<std::size_t>(v));
    }
    if (!row.eof()) throw Error(ErrorCode::Parse, "bad token on line " + std::to_string(i + 1));
    sys.add(elems, i - 1);
  }
  return sys;
}

}  // namespace fqinc
