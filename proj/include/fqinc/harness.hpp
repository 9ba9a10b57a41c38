#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fqinc/bounds.hpp"
#include "fqinc/ffield.hpp"
#include "fqinc/geom.hpp"
#include "fqinc/rng.hpp"

namespace fqinc {

// --- configuration ------------------------------------------------------------

struct ExperimentConfig {
  std::string suite;
  std::uint32_t q = 3;
  double alpha = 0.25;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::string out;  // empty: no file
};

/// Names accepted by run_suite, in a fixed order.
[[nodiscard]] const std::vector<std::string>& suite_names();

// --- random configurations ----------------------------------------------------

/// Counts of each object kind to draw; zero means none.
struct Sizes {
  std::size_t points2 = 0;
  std::size_t lines = 0;           // any line of F_q^2, vertical included
  std::size_t nonvertical = 0;     // y = ax + b, a arbitrary
  std::size_t points3 = 0;
  std::size_t planes = 0;          // any affine plane of F_q^3
  std::size_t dual_planes = 0;     // a . x = 1
  std::size_t a = 0;
  std::size_t b = 0;
};

struct Configuration {
  std::vector<Point2> points2;
  std::vector<Line2> lines;
  std::vector<Point3> points3;
  std::vector<Plane3> planes;
  std::vector<Elem> a_set;
  std::vector<Elem> b_set;
};

/// Uniform sampling without replacement of every requested kind, each from
/// its own sub-stream of `seed`. Vertical/nonvertical lines share `lines`
/// when both are requested. Throws Unrealizable when a size exceeds the
/// number of available objects.
[[nodiscard]] Configuration random_config(const Field& f, const Sizes& sizes, std::uint64_t seed);

/// Enumerations by index, used by the samplers.
[[nodiscard]] Line2 line_at(const Field& f, std::uint64_t index);        // q^2 nonvertical, then q vertical
[[nodiscard]] Plane3 plane_at(const Field& f, std::uint64_t index);      // q (q^2 + q + 1) planes
[[nodiscard]] std::uint64_t plane_count(const Field& f) noexcept;

[[nodiscard]] std::vector<Point3> sample_points3(const Field& f, std::size_t n, Rng& rng);
[[nodiscard]] std::vector<Plane3> sample_dual_planes(const Field& f, std::size_t n, Rng& rng);
[[nodiscard]] std::vector<Elem> sample_scalars(const Field& f, std::size_t n, Rng& rng);

// --- presets ------------------------------------------------------------------

using Exponent = boost::rational<long long>;

/// c * q^e, compared asymptotically in q.
struct Nominal {
  long long coef = 1;
  Exponent exp{0};
};

struct PresetConfig {
  std::string name;
  RegimeKind kind = RegimeKind::line;
  std::uint32_t q = 0;
  Exponent alpha{0};
  // Line presets.
  std::vector<Line2> lines;
  std::vector<Elem> a_set;
  std::vector<Elem> b_set;
  std::size_t slopes = 0;
  std::size_t per_slope = 0;
  // Plane presets.
  std::vector<Point3> points3;
  std::vector<Plane3> planes;
  std::size_t k = 0;
  /// Nominal sizes keyed by the names used in the hypotheses.
  std::vector<std::pair<std::string, Nominal>> nominal;
};

[[nodiscard]] const std::vector<std::string>& preset_names();

/// Seeded construction of a named example regime with sizes
/// round(c * q^e), halves rounded up. Throws Unrealizable naming the first
/// size that does not fit, and for q < 3.
[[nodiscard]] PresetConfig preset(const std::string& name, std::uint32_t q, std::uint64_t seed = 0);

/// Smallest prime power q >= q_min at which the preset is realizable.
[[nodiscard]] std::uint32_t smallest_realizable_q(const std::string& name, std::uint32_t q_min = 3,
                                                  std::uint64_t seed = 0);

/// Regime parameters for the realized sizes.
[[nodiscard]] RegimeParams realized_params(const Field& f, const PresetConfig& c);

struct NominalAudit {
  std::vector<NamedFlag> flags;
  bool ok = true;
};

/// Each hypothesis of the regime's bound evaluated on the nominal sizes
/// c * q^e, comparing exponents exactly (coefficients break ties). The
/// shared-line condition of the light regimes has no nominal form and is
/// taken from the realized configuration.
[[nodiscard]] NominalAudit nominal_hypotheses(const Field& f, const PresetConfig& c);

// --- suites and CSV -------------------------------------------------------------

/// One output row; cells are (column, value) and may omit columns.
struct CsvRow {
  std::vector<std::pair<std::string, std::string>> cells;
  bool pass = true;           // every asserted inequality held
  bool hypotheses_ok = true;  // the bound's preconditions held
  std::string status = "ok";  // ok | BudgetExceeded | error code name

  void set(const std::string& column, const std::string& value);
  void set(const std::string& column, const char* value) { set(column, std::string(value)); }
  void set(const std::string& column, bool value);
  void set(const std::string& column, double value);
  void set(const std::string& column, std::uint64_t value);
  void set(const std::string& column, std::int64_t value) { set(column, std::to_string(value)); }
  void set(const std::string& column, int value) { set(column, std::to_string(value)); }
  void set(const std::string& column, unsigned value) { set(column, std::uint64_t{value}); }
  void set(const std::string& column, unsigned long long value) { set(column, std::uint64_t{value}); }
  [[nodiscard]] const std::string* get(const std::string& column) const;
};

struct SuiteResult {
  std::string suite;
  std::vector<std::string> columns;
  std::vector<CsvRow> rows;

  [[nodiscard]] std::size_t failures() const;
  [[nodiscard]] std::size_t hypothesis_flags() const;
  /// 1 if any assertion failed, 2 if only hypotheses were flagged, else 0.
  [[nodiscard]] int exit_code() const;
};

/// Locale-independent shortest round-trip decimal.
[[nodiscard]] std::string format_number(double v);

/// Runs the named suite, one or more rows per trial in trial order. Trials
/// may run concurrently; each draws from derive_seed(seed, trial). Throws
/// InvalidArgument for an unknown suite name.
[[nodiscard]] SuiteResult run_suite(const ExperimentConfig& config);

/// CSV with a header line. elapsed_ms is the last column so it can be
/// dropped when comparing runs.
[[nodiscard]] std::string to_csv(const SuiteResult& result);
void emit(const SuiteResult& result, const std::filesystem::path& path);

}  // namespace fqinc
