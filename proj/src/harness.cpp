#include "fqinc/harness.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <charconv>
#include <chrono>
#include <cmath>
#include <set>

#include "fqinc/error.hpp"
#include "fqinc/io.hpp"
#include "fqinc/parallel.hpp"
#include "suites.hpp"

namespace fqinc {

// --- sampling -------------------------------------------------------------------

std::uint64_t plane_count(const Field& f) noexcept {
  const std::uint64_t q = f.q();
  return q * (q * q + q + 1);
}

Line2 line_at(const Field& f, std::uint64_t index) {
  const std::uint64_t q = f.q();
  if (index < q * q)
    return Line2::non_vertical(Elem{static_cast<std::uint32_t>(index / q)}, Elem{static_cast<std::uint32_t>(index % q)});
  if (index < q * q + q) return Line2::vertical(Elem{static_cast<std::uint32_t>(index - q * q)});
  throw Error(ErrorCode::InvalidArgument, "line index out of range");
}

Plane3 plane_at(const Field& f, std::uint64_t index) {
  const std::uint64_t q = f.q();
  if (index >= plane_count(f)) throw Error(ErrorCode::InvalidArgument, "plane index out of range");
  const auto rhs = Elem{static_cast<std::uint32_t>(index % q)};
  std::uint64_t n = index / q;
  // Normals with first nonzero coordinate 1: (1,a,b), then (0,1,b), then (0,0,1).
  Point3 normal{};
  if (n < q * q) {
    normal = {Elem{1}, Elem{static_cast<std::uint32_t>(n / q)}, Elem{static_cast<std::uint32_t>(n % q)}};
  } else if ((n -= q * q) < q) {
    normal = {Elem{0}, Elem{1}, Elem{static_cast<std::uint32_t>(n)}};
  } else {
    normal = {Elem{0}, Elem{0}, Elem{1}};
  }
  return Plane3::make(f, normal, rhs);
}

std::vector<Point3> sample_points3(const Field& f, std::size_t n, Rng& rng) {
  const std::uint64_t q = f.q();
  std::vector<Point3> out;
  for (auto c : sample_without_replacement(rng, q * q * q, n)) out.push_back(point_from_code(f, c));
  return out;
}

std::vector<Plane3> sample_dual_planes(const Field& f, std::size_t n, Rng& rng) {
  const std::uint64_t q = f.q();
  std::vector<Plane3> out;
  for (auto c : sample_without_replacement(rng, q * q * q - 1, n)) out.push_back(Plane3::dual(f, point_from_code(f, c + 1)));
  return out;
}

std::vector<Elem> sample_scalars(const Field& f, std::size_t n, Rng& rng) {
  std::vector<Elem> out;
  for (auto c : sample_without_replacement(rng, f.q(), n)) out.push_back(Elem{static_cast<std::uint32_t>(c)});
  return out;
}

Configuration random_config(const Field& f, const Sizes& s, std::uint64_t seed) {
  const std::uint64_t q = f.q();
  Configuration c;
  auto stream = [&](std::uint64_t k) { return Rng(derive_seed(seed, k)); };
  {
    auto rng = stream(1);
    for (auto code : sample_without_replacement(rng, q * q, s.points2))
      c.points2.push_back({Elem{static_cast<std::uint32_t>(code % q)}, Elem{static_cast<std::uint32_t>(code / q)}});
  }
  {
    auto rng = stream(2);
    for (auto i : sample_without_replacement(rng, q * q + q, s.lines)) c.lines.push_back(line_at(f, i));
  }
  if (s.nonvertical > 0) {
    if (s.lines > 0) throw Error(ErrorCode::InvalidArgument, "request either lines or nonvertical lines");
    auto rng = stream(3);
    for (auto i : sample_without_replacement(rng, q * q, s.nonvertical)) c.lines.push_back(line_at(f, i));
  }
  {
    auto rng = stream(4);
    c.points3 = sample_points3(f, s.points3, rng);
  }
  {
    auto rng = stream(5);
    for (auto i : sample_without_replacement(rng, plane_count(f), s.planes)) c.planes.push_back(plane_at(f, i));
  }
  if (s.dual_planes > 0) {
    if (s.planes > 0) throw Error(ErrorCode::InvalidArgument, "request either planes or dual planes");
    auto rng = stream(6);
    c.planes = sample_dual_planes(f, s.dual_planes, rng);
  }
  {
    auto rng = stream(7);
    c.a_set = sample_scalars(f, s.a, rng);
  }
  {
    auto rng = stream(8);
    c.b_set = sample_scalars(f, s.b, rng);
  }
  return c;
}

// --- presets ----------------------------------------------------------------------

namespace {

struct PresetDef {
  std::string name;
  RegimeKind kind;
  Exponent alpha;
  std::vector<std::pair<std::string, Nominal>> sizes;
};

Nominal nom(long long num, long long den, long long coef = 1) { return Nominal{coef, Exponent(num, den)}; }

const std::vector<PresetDef>& preset_defs() {
  static const std::vector<PresetDef> defs{
      {"line-1", RegimeKind::line, Exponent(1, 4),
       {{"slopes", nom(1, 2)}, {"per_slope", nom(1, 8)}, {"L", nom(5, 8)}, {"A", nom(1, 12)}, {"B", nom(2, 3)}}},
      {"line-2", RegimeKind::line, Exponent(2, 5),
       {{"slopes", nom(4, 5)}, {"per_slope", nom(1, 5)}, {"L", nom(1, 1)}, {"A", nom(4, 15)}, {"B", nom(3, 4)}}},
      {"plane-1", RegimeKind::plane, Exponent(1, 5), {{"Pi", nom(5, 4)}, {"P", nom(1, 1)}}},
      {"plane-2", RegimeKind::plane, Exponent(1, 5), {{"Pi", nom(5, 4)}, {"P", nom(4, 3)}}},
      {"plane-3", RegimeKind::plane, Exponent(1, 3), {{"Pi", nom(3, 2)}, {"P", nom(11, 10)}}},
      {"light-1", RegimeKind::light, Exponent(1, 3), {{"Pi", nom(8, 9)}, {"P", nom(1, 2)}, {"k", nom(1, 8)}}},
      {"light-2", RegimeKind::light, Exponent(1, 3), {{"Pi", nom(5, 4)}, {"P", nom(4, 3, 2)}, {"k", nom(1, 1)}}},
  };
  return defs;
}

const PresetDef& find_preset(const std::string& name) {
  for (const auto& d : preset_defs())
    if (d.name == name) return d;
  throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "'");
}

double to_double(Exponent e) { return static_cast<double>(e.numerator()) / static_cast<double>(e.denominator()); }

std::size_t realize(const Nominal& n, std::uint32_t q) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(n.coef) * std::pow(q, to_double(n.exp)) + 0.5));
}

const Nominal& nominal_of(const std::vector<std::pair<std::string, Nominal>>& sizes, const std::string& key) {
  for (const auto& [k, v] : sizes)
    if (k == key) return v;
  throw Error(ErrorCode::InvalidArgument, "preset has no size " + key);
}

Nominal times(const Nominal& a, const Nominal& b) { return {a.coef * b.coef, a.exp + b.exp}; }
bool geq(const Nominal& a, const Nominal& b) { return a.exp > b.exp || (a.exp == b.exp && a.coef >= b.coef); }
bool gt(const Nominal& a, const Nominal& b) { return a.exp > b.exp || (a.exp == b.exp && a.coef > b.coef); }
const Nominal& nmax(const Nominal& a, const Nominal& b) { return geq(a, b) ? a : b; }

[[noreturn]] void unrealizable(const std::string& preset, std::uint32_t q, const std::string& what) {
  throw Error(ErrorCode::Unrealizable, preset + " at q=" + std::to_string(q) + ": " + what);
}

void check_size(const std::string& preset, std::uint32_t q, const std::string& key, std::size_t value,
                std::uint64_t capacity) {
  if (value < 1) unrealizable(preset, q, key + " rounds to 0");
  if (value > capacity)
    unrealizable(preset, q, key + " = " + std::to_string(value) + " exceeds " + std::to_string(capacity));
}

/// Adds dual planes one at a time, rejecting any that would share more
/// than k points of P with a plane already chosen.
std::vector<Plane3> planes_with_shared_cap(const Field& f, std::span<const Point3> points, std::size_t count,
                                           std::size_t k, Rng& rng, const std::string& name) {
  const std::uint64_t q = f.q();
  const std::uint64_t space = q * q * q - 1;
  std::vector<Plane3> chosen;
  std::vector<boost::dynamic_bitset<>> on;
  std::set<std::uint64_t> tried;
  const std::uint64_t max_attempts = std::min<std::uint64_t>(space, 64 * count + 1024);
  while (chosen.size() < count && tried.size() < max_attempts) {
    const std::uint64_t code = uniform_between(rng, 1, space);
    if (!tried.insert(code).second) continue;
    const Plane3 pl = Plane3::dual(f, point_from_code(f, code));
    boost::dynamic_bitset<> bits(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) bits[i] = incident(f, points[i], pl);
    const bool fits = std::all_of(on.begin(), on.end(), [&](const auto& o) { return (o & bits).count() <= k; });
    if (!fits) continue;
    chosen.push_back(pl);
    on.push_back(std::move(bits));
  }
  if (chosen.size() < count)
    unrealizable(name, f.q(), "only " + std::to_string(chosen.size()) + " of " + std::to_string(count) +
                                  " planes fit the shared-point cap k=" + std::to_string(k));
  return chosen;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& d : preset_defs()) n.push_back(d.name);
    return n;
  }();
  return names;
}

PresetConfig preset(const std::string& name, std::uint32_t q, std::uint64_t seed) {
  const PresetDef& def = find_preset(name);
  if (q < 3) unrealizable(name, q, "presets need q >= 3");
  const auto [p, n] = prime_power_split(q);
  if (p == 0) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  const Field f = make_field(p, n);
  const std::uint64_t q64 = q;

  PresetConfig c;
  c.name = name;
  c.kind = def.kind;
  c.q = q;
  c.alpha = def.alpha;
  c.nominal = def.sizes;
  auto size = [&](const std::string& key) { return realize(nominal_of(def.sizes, key), q); };

  if (def.kind == RegimeKind::line) {
    const std::size_t slopes = size("slopes");
    const std::size_t per_slope = size("per_slope");
    const std::size_t total = size("L");
    check_size(name, q, "slopes", slopes, q64 - 1);
    check_size(name, q, "per_slope", per_slope, q64);
    check_size(name, q, "L", total, slopes * per_slope);
    if (total < slopes) unrealizable(name, q, "L = " + std::to_string(total) + " is below the slope count");
    check_size(name, q, "A", size("A"), q64);
    check_size(name, q, "B", size("B"), q64);
    c.slopes = slopes;
    c.per_slope = per_slope;

    Rng slope_rng(derive_seed(seed, 1));
    std::vector<Elem> slope_set;
    for (auto s : sample_without_replacement(slope_rng, q64 - 1, slopes))
      slope_set.push_back(Elem{static_cast<std::uint32_t>(s + 1)});
    // Round-robin: the first total % slopes slopes carry one extra line.
    for (std::size_t i = 0; i < slopes; ++i) {
      const std::size_t m = total / slopes + (i < total % slopes ? 1 : 0);
      Rng rng(derive_seed(seed, 100 + i));
      for (auto b : sample_without_replacement(rng, q64, m))
        c.lines.push_back(Line2::non_vertical(slope_set[i], Elem{static_cast<std::uint32_t>(b)}));
    }
    Rng a_rng(derive_seed(seed, 2));
    Rng b_rng(derive_seed(seed, 3));
    c.a_set = sample_scalars(f, size("A"), a_rng);
    c.b_set = sample_scalars(f, size("B"), b_rng);
    return c;
  }

  const std::size_t n_planes = size("Pi");
  const std::size_t n_points = size("P");
  check_size(name, q, "Pi", n_planes, q64 * q64 * q64 - 1);
  check_size(name, q, "P", n_points, q64 * q64 * q64);
  Rng point_rng(derive_seed(seed, 4));
  Rng plane_rng(derive_seed(seed, 5));
  c.points3 = sample_points3(f, n_points, point_rng);
  if (def.kind == RegimeKind::light) {
    c.k = size("k");
    check_size(name, q, "k", c.k, q64);
    c.planes = name == "light-1" ? planes_with_shared_cap(f, c.points3, n_planes, c.k, plane_rng, name)
                                 : sample_dual_planes(f, n_planes, plane_rng);
  } else {
    c.planes = sample_dual_planes(f, n_planes, plane_rng);
  }
  return c;
}

std::uint32_t smallest_realizable_q(const std::string& name, std::uint32_t q_min, std::uint64_t seed) {
  for (std::uint32_t q = std::max<std::uint32_t>(q_min, 3); q <= 4096; ++q) {
    if (prime_power_split(q).first == 0) continue;
    try {
      (void)preset(name, q, seed);
      return q;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Unrealizable) throw;
    }
  }
  throw Error(ErrorCode::Unrealizable, name + " is not realizable for q <= 4096");
}

RegimeParams realized_params(const Field& f, const PresetConfig& c) {
  RegimeParams p;
  p.q = f.q();
  p.alpha = to_double(c.alpha);
  if (c.kind == RegimeKind::line) {
    p.lines = static_cast<double>(c.lines.size());
    p.a_size = static_cast<double>(c.a_set.size());
    p.b_size = static_cast<double>(c.b_set.size());
    std::set<Elem> slopes;
    for (const auto& l : c.lines) slopes.insert(l.non_vertical_form().slope);
    p.slopes = static_cast<double>(slopes.size());
    return p;
  }
  p.points = static_cast<double>(c.points3.size());
  p.planes = static_cast<double>(c.planes.size());
  p.k = static_cast<double>(c.k);
  if (c.kind == RegimeKind::light) p.light_lines_ok = max_shared_points(f, c.points3, c.planes) <= c.k;
  return p;
}

NominalAudit nominal_hypotheses(const Field& f, const PresetConfig& c) {
  NominalAudit out;
  auto flag = [&](std::string name, bool v) { out.flags.push_back({std::move(name), v}); };
  const auto& s = c.nominal;
  const Nominal qa{1, c.alpha};
  const bool alpha_ok = c.alpha > 0 && c.alpha < 1;
  flag("alpha_in_0_1", alpha_ok);
  if (c.kind == RegimeKind::line) {
    const Nominal la = times(nominal_of(s, "L"), nominal_of(s, "A"));
    const bool h = gt(la, times(qa, nmax(nominal_of(s, "A"), nominal_of(s, "slopes"))));
    flag("LA_gt_qa_max_A_Lx", h);
    out.ok = alpha_ok && h;
  } else if (c.kind == RegimeKind::plane) {
    const Nominal threshold{2, 1 + c.alpha};
    const bool by_planes = geq(nominal_of(s, "Pi"), threshold);
    const bool by_points = geq(nominal_of(s, "P"), threshold);
    flag("Pi_ge_2q1pa", by_planes);
    flag("P_ge_2q1pa", by_points);
    out.ok = alpha_ok && (by_planes || by_points);
  } else {
    const bool size_ok = geq(nominal_of(s, "P"), times(Nominal{2, 0}, times(nominal_of(s, "k"), qa)));
    const bool lines_ok = max_shared_points(f, c.points3, c.planes) <= c.k;
    flag("P_ge_2kqa", size_ok);
    flag("no_shared_k_rich_line", lines_ok);
    out.ok = alpha_ok && size_ok && lines_ok;
  }
  return out;
}

// --- CSV ------------------------------------------------------------------------

void CsvRow::set(const std::string& column, const std::string& value) {
  for (auto& [k, v] : cells) {
    if (k == column) {
      v = value;
      return;
    }
  }
  cells.emplace_back(column, value);
}

void CsvRow::set(const std::string& column, bool value) { set(column, std::string(value ? "true" : "false")); }
void CsvRow::set(const std::string& column, double value) { set(column, format_number(value)); }
void CsvRow::set(const std::string& column, std::uint64_t value) { set(column, std::to_string(value)); }

const std::string* CsvRow::get(const std::string& column) const {
  for (const auto& [k, v] : cells)
    if (k == column) return &v;
  return nullptr;
}

std::size_t SuiteResult::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CsvRow& r) { return !r.pass; }));
}

std::size_t SuiteResult::hypothesis_flags() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const CsvRow& r) { return !r.hypotheses_ok; }));
}

int SuiteResult::exit_code() const {
  if (failures() > 0) return 1;
  return hypothesis_flags() > 0 ? 2 : 0;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error(ErrorCode::InvariantFailure, "number formatting failed");
  return std::string(buf, ptr);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const std::vector<std::string> kLeading{"suite", "q", "alpha", "trial", "seed"};
const std::vector<std::string> kTrailing{"detail", "status", "hypotheses_ok", "pass", "elapsed_ms"};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& d : detail::suite_defs()) n.push_back(d.name);
    return n;
  }();
  return names;
}

SuiteResult run_suite(const ExperimentConfig& config) {
  const auto& defs = detail::suite_defs();
  const auto def = std::find_if(defs.begin(), defs.end(), [&](const auto& d) { return d.name == config.suite; });
  if (def == defs.end()) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + config.suite + "'");
  const Field f = make_field_of_order(config.q);

  SuiteResult result;
  result.suite = config.suite;
  result.columns = kLeading;
  result.columns.insert(result.columns.end(), def->columns.begin(), def->columns.end());
  result.columns.insert(result.columns.end(), kTrailing.begin(), kTrailing.end());

  const std::size_t trials = def->fixed_trials.value_or(config.trials);
  std::vector<std::vector<CsvRow>> per_trial(trials);
  parallel_chunks(
      trials,
      [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t t = begin; t < end; ++t) {
          const std::uint64_t seed = derive_seed(config.seed, t);
          const auto start = std::chrono::steady_clock::now();
          std::vector<CsvRow> rows;
          try {
            rows = def->run(f, config, t, seed);
          } catch (const Error& e) {
            CsvRow r;
            r.status = to_string(e.code());
            // Running out of budget is reported, not counted as a failure.
            r.pass = e.code() == ErrorCode::BudgetExceeded;
            r.set("detail", std::string(e.what()));
            rows = {r};
          }
          const double ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
          for (auto& r : rows) {
            r.set("suite", config.suite);
            r.set("q", std::uint64_t{config.q});
            r.set("alpha", config.alpha);
            r.set("trial", std::uint64_t{t});
            r.set("seed", seed);
            r.set("status", r.status);
            r.set("hypotheses_ok", r.hypotheses_ok);
            r.set("pass", r.pass);
            r.set("elapsed_ms", std::round(ms * 1000) / 1000);
          }
          per_trial[t] = std::move(rows);
        }
      },
      1);
  for (auto& rows : per_trial)
    for (auto& r : rows) result.rows.push_back(std::move(r));
  return result;
}

std::string to_csv(const SuiteResult& result) {
  std::string out;
  for (std::size_t i = 0; i < result.columns.size(); ++i) out += (i ? "," : "") + result.columns[i];
  out += "\n";
  for (const auto& r : result.rows) {
    for (std::size_t i = 0; i < result.columns.size(); ++i) {
      const std::string* v = r.get(result.columns[i]);
      out += (i ? "," : "") + (v ? csv_escape(*v) : std::string());
    }
    out += "\n";
  }
  return out;
}

void emit(const SuiteResult& result, const std::filesystem::path& path) { write_text(path, to_csv(result)); }

}  // namespace fqinc
