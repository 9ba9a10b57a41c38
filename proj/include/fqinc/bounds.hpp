#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fqinc {

/// Relative slack allowed on the real-valued side of every bound comparison.
inline constexpr double kBoundTolerance = 1e-9;

/// Default constant standing in for an unspecified "<<".
inline constexpr double kDefaultConstant = 2.0;

struct NamedTerm {
  std::string name;
  double value = 0.0;
};

struct NamedFlag {
  std::string name;
  bool value = true;
};

/// Evaluated right-hand side of one bound, with its addends and hypotheses.
struct BoundReport {
  std::string bound_name;
  double value = 0.0;  // sum of terms
  std::vector<NamedTerm> terms;
  std::vector<NamedFlag> hypotheses;
  bool hypotheses_ok = true;
  std::optional<std::uint64_t> actual;
  std::optional<double> ratio;  // actual / value

  /// Records the measured count and the ratio against the bound.
  BoundReport& with_actual(std::uint64_t count);
  /// actual <= constant * value, with kBoundTolerance slack on the right.
  [[nodiscard]] bool holds(double constant = 1.0) const;
  [[nodiscard]] double term(const std::string& name) const;
};

/// Sizes and exponent for one regime. Unused sizes stay zero.
struct RegimeParams {
  double q = 0;
  double alpha = 0.5;
  double lines = 0;    // |L|
  double a_size = 0;   // |A|
  double b_size = 0;   // |B|
  double slopes = 0;   // |L_x|
  double points = 0;   // |P|
  double planes = 0;   // |Pi|
  double k = 0;        // collinearity parameter of the light-line bound
  /// Outcome of the shared-line check (no two planes of Pi share more than
  /// k points of P); only consulted by the light-line bound.
  bool light_lines_ok = true;
};

/// |P||L|/q + C*sqrt(q|P||L|); the second addend is the deviation allowance.
[[nodiscard]] BoundReport eval_vinh_line(double q, double n_points, double n_lines, double constant);
/// |I - |P||L|/q| <= C*sqrt(q|P||L|).
[[nodiscard]] bool vinh_line_deviation_ok(std::uint64_t actual, double q, double n_points, double n_lines,
                                          double constant);

/// min{ |P|^{1/2}|L| + |P|, |P||L|^{1/2} + |L| }.
[[nodiscard]] BoundReport eval_cs_line(double n_points, double n_lines);

/// |L||A||B|^{1/2} q^{-alpha/2} + q^alpha (|L||A||B|)^{1/2} (+ 2|A||B|).
/// The precondition |L||A| > q^alpha max{|A|, |L_x|} is flagged, not enforced.
[[nodiscard]] BoundReport eval_rich_line(const RegimeParams& p, bool with_axis_lines);

enum class PlaneBound { vinh, cs, rich_plane_by_planes, rich_plane_by_points, light_plane };

[[nodiscard]] std::string to_string(PlaneBound which);

/// vinh:                 |P||Pi|/q + 2q sqrt(|P||Pi|)
/// cs:                   min{ q^{1/2}|P|^{1/2}|Pi| + |P|, q^{1/2}|P||Pi|^{1/2} + |Pi| }
/// rich_plane_by_planes: |P||Pi|/q^alpha + |Pi| q^{2 alpha}, needs |Pi| >= 2q^{1+alpha}
/// rich_plane_by_points: |P||Pi|/q^alpha + |P| q^{2 alpha},  needs |P| >= 2q^{1+alpha}
/// light_plane:          |P||Pi|/q^alpha + |P| q^{2 alpha},  needs |P| >= 2k q^alpha
///                       and the shared-line condition
[[nodiscard]] BoundReport eval_plane_bounds(const RegimeParams& p, PlaneBound which);

/// Koh-Sun distance lower bound in F_q^3, comparison only.
[[nodiscard]] BoundReport eval_koh_sun_distances(double q, double n_e, double n_f);

struct RegimeReport {
  std::vector<BoundReport> bounds;
  std::vector<NamedFlag> range_flags;
  std::string winner;  // bound with the smallest value
  bool hypotheses_ok = true;
};

enum class RegimeKind { line, plane, light };

/// Evaluates every bound that applies to the regime, the range conditions
/// under which the new bound beats the classical ones, and the minimum.
/// Line regimes compare the Vinh line bound at constant 1.
[[nodiscard]] RegimeReport regime_report(const RegimeParams& p, RegimeKind kind);

}  // namespace fqinc
