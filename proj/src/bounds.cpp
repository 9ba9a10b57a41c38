#include "fqinc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fqinc/error.hpp"

namespace fqinc {

namespace {

BoundReport make_report(std::string name, std::vector<NamedTerm> terms) {
  BoundReport r;
  r.bound_name = std::move(name);
  r.terms = std::move(terms);
  for (const auto& t : r.terms) r.value += t.value;
  return r;
}

void add_hypothesis(BoundReport& r, std::string name, bool ok) {
  r.hypotheses.push_back({std::move(name), ok});
  r.hypotheses_ok = r.hypotheses_ok && ok;
}

double qa(const RegimeParams& p, double exponent) { return std::pow(p.q, exponent); }

}  // namespace

BoundReport& BoundReport::with_actual(std::uint64_t count) {
  actual = count;
  if (value > 0)
    ratio = static_cast<double>(count) / value;
  else
    ratio = count == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return *this;
}

bool BoundReport::holds(double constant) const {
  if (!actual) return true;
  return static_cast<double>(*actual) <= constant * value * (1.0 + kBoundTolerance);
}

double BoundReport::term(const std::string& name) const {
  for (const auto& t : terms)
    if (t.name == name) return t.value;
  throw Error(ErrorCode::InvalidArgument, "bound " + bound_name + " has no term " + name);
}

BoundReport eval_vinh_line(double q, double n_points, double n_lines, double constant) {
  if (constant <= 0) throw Error(ErrorCode::InvalidArgument, "Vinh constant must be positive");
  return make_report("vinh_line", {{"main", n_points * n_lines / q},
                                   {"deviation", constant * std::sqrt(q * n_points * n_lines)}});
}

bool vinh_line_deviation_ok(std::uint64_t actual, double q, double n_points, double n_lines, double constant) {
  const double main = n_points * n_lines / q;
  const double allowance = constant * std::sqrt(q * n_points * n_lines);
  return std::abs(static_cast<double>(actual) - main) <= allowance * (1.0 + kBoundTolerance) + 1e-12;
}

BoundReport eval_cs_line(double n_points, double n_lines) {
  const double by_points = std::sqrt(n_points) * n_lines + n_points;
  const double by_lines = n_points * std::sqrt(n_lines) + n_lines;
  if (by_points <= by_lines)
    return make_report("cs_line", {{"sqrtP_L", std::sqrt(n_points) * n_lines}, {"P", n_points}});
  return make_report("cs_line", {{"P_sqrtL", n_points * std::sqrt(n_lines)}, {"L", n_lines}});
}

BoundReport eval_rich_line(const RegimeParams& p, bool with_axis_lines) {
  const double lab = p.lines * p.a_size * p.b_size;
  std::vector<NamedTerm> terms{{"rich", p.lines * p.a_size * std::sqrt(p.b_size) * qa(p, -p.alpha / 2)},
                               {"light", qa(p, p.alpha) * std::sqrt(lab)}};
  if (with_axis_lines) terms.push_back({"axis", 2 * p.a_size * p.b_size});
  auto r = make_report(with_axis_lines ? "rich_line_axis" : "rich_line", std::move(terms));
  add_hypothesis(r, "alpha_in_0_1", p.alpha > 0 && p.alpha < 1);
  add_hypothesis(r, "LA_gt_qa_max_A_Lx", p.lines * p.a_size > qa(p, p.alpha) * std::max(p.a_size, p.slopes));
  return r;
}

std::string to_string(PlaneBound which) {
  switch (which) {
    case PlaneBound::vinh: return "vinh_plane";
    case PlaneBound::cs: return "cs_plane";
    case PlaneBound::rich_plane_by_planes: return "rich_plane_by_planes";
    case PlaneBound::rich_plane_by_points: return "rich_plane_by_points";
    case PlaneBound::light_plane: return "light_plane";
  }
  return "unknown";
}

BoundReport eval_plane_bounds(const RegimeParams& p, PlaneBound which) {
  const double np = p.points;
  const double npi = p.planes;
  const double rich = np * npi * qa(p, -p.alpha);
  switch (which) {
    case PlaneBound::vinh:
      return make_report(to_string(which), {{"main", np * npi / p.q}, {"deviation", 2 * p.q * std::sqrt(np * npi)}});
    case PlaneBound::cs: {
      const double sq = std::sqrt(p.q);
      const double first = sq * std::sqrt(np) * npi + np;
      const double second = sq * np * std::sqrt(npi) + npi;
      if (first <= second)
        return make_report(to_string(which), {{"sqrtqP_Pi", sq * std::sqrt(np) * npi}, {"P", np}});
      return make_report(to_string(which), {{"sqrtqPPi", sq * np * std::sqrt(npi)}, {"Pi", npi}});
    }
    case PlaneBound::rich_plane_by_planes: {
      auto r = make_report(to_string(which), {{"rich", rich}, {"light", npi * qa(p, 2 * p.alpha)}});
      add_hypothesis(r, "alpha_in_0_1", p.alpha > 0 && p.alpha < 1);
      add_hypothesis(r, "Pi_ge_2q1pa", npi >= 2 * qa(p, 1 + p.alpha));
      return r;
    }
    case PlaneBound::rich_plane_by_points: {
      auto r = make_report(to_string(which), {{"rich", rich}, {"light", np * qa(p, 2 * p.alpha)}});
      add_hypothesis(r, "alpha_in_0_1", p.alpha > 0 && p.alpha < 1);
      add_hypothesis(r, "P_ge_2q1pa", np >= 2 * qa(p, 1 + p.alpha));
      return r;
    }
    case PlaneBound::light_plane: {
      auto r = make_report(to_string(which), {{"rich", rich}, {"light", np * qa(p, 2 * p.alpha)}});
      add_hypothesis(r, "alpha_in_0_1", p.alpha > 0 && p.alpha < 1);
      add_hypothesis(r, "P_ge_2kqa", np >= 2 * p.k * qa(p, p.alpha));
      add_hypothesis(r, "no_shared_k_rich_line", p.light_lines_ok);
      return r;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown plane bound");
}

BoundReport eval_koh_sun_distances(double q, double n_e, double n_f) {
  double v = 0;
  if (n_e < q)
    v = std::min(q, n_e * n_f / (q * q));
  else if (n_e <= q * q)
    v = std::min(q, n_f / q);
  else
    v = std::min(q, n_e * n_f / (q * q * q));
  return make_report("koh_sun", {{"lower", v}});
}

RegimeReport regime_report(const RegimeParams& p, RegimeKind kind) {
  RegimeReport out;
  auto flag = [&](std::string name, bool v) { out.range_flags.push_back({std::move(name), v}); };
  const double a = p.alpha;

  if (kind == RegimeKind::line) {
    out.bounds.push_back(eval_vinh_line(p.q, p.a_size * p.b_size, p.lines, 1.0));
    out.bounds.push_back(eval_cs_line(p.a_size * p.b_size, p.lines));
    out.bounds.push_back(eval_rich_line(p, false));
    out.hypotheses_ok = out.bounds.back().hypotheses_ok;

    const double la = p.lines * p.a_size;
    const bool hyp_a = qa(p, a) * p.a_size < la;
    const bool hyp_lx = qa(p, a) * p.slopes < la;
    const bool c1[] = {a < 0.5, hyp_a, hyp_lx, la < qa(p, 3 * a), p.lines > qa(p, 2 * a),
                       p.a_size * p.b_size > p.lines * qa(p, 2 * a)};
    flag("case1.alpha_lt_half", c1[0]);
    flag("case1.LA_gt_qa_A", c1[1]);
    flag("case1.LA_gt_qa_Lx", c1[2]);
    flag("case1.LA_lt_q3a", c1[3]);
    flag("case1.L_gt_q2a", c1[4]);
    flag("case1.AB_gt_Lq2a", c1[5]);
    flag("case1.all", std::all_of(std::begin(c1), std::end(c1), [](bool b) { return b; }));
    const bool c2[] = {hyp_a, hyp_lx, la < qa(p, 1 + a), la > qa(p, 3 * a), p.a_size < qa(p, a),
                       p.lines < qa(p, a) * p.b_size};
    flag("case2.LA_gt_qa_A", c2[0]);
    flag("case2.LA_gt_qa_Lx", c2[1]);
    flag("case2.LA_lt_q1pa", c2[2]);
    flag("case2.LA_gt_q3a", c2[3]);
    flag("case2.A_lt_qa", c2[4]);
    flag("case2.L_lt_qaB", c2[5]);
    flag("case2.all", std::all_of(std::begin(c2), std::end(c2), [](bool b) { return b; }));
  } else if (kind == RegimeKind::plane) {
    out.bounds.push_back(eval_plane_bounds(p, PlaneBound::vinh));
    out.bounds.push_back(eval_plane_bounds(p, PlaneBound::cs));
    out.bounds.push_back(eval_plane_bounds(p, PlaneBound::rich_plane_by_planes));
    out.bounds.push_back(eval_plane_bounds(p, PlaneBound::rich_plane_by_points));
    out.hypotheses_ok = out.bounds[2].hypotheses_ok || out.bounds[3].hypotheses_ok;

    const double np = p.points;
    const double npi = p.planes;
    const bool c1[] = {np > qa(p, 3 * a),       np < qa(p, 1 + 2 * a),    npi > qa(p, 1 + a),
                       npi < qa(p, 1 + 2 * a),  np * npi < qa(p, 2 + 2 * a), np * npi < qa(p, 4),
                       a > 0 && a < 0.5};
    flag("case1.P_gt_q3a", c1[0]);
    flag("case1.P_lt_q1p2a", c1[1]);
    flag("case1.Pi_gt_q1pa", c1[2]);
    flag("case1.Pi_lt_q1p2a", c1[3]);
    flag("case1.PPi_lt_q2p2a", c1[4]);
    flag("case1.PPi_lt_q4", c1[5]);
    flag("case1.alpha_lt_half", c1[6]);
    flag("case1.all", std::all_of(std::begin(c1), std::end(c1), [](bool b) { return b; }));
    const double upper = std::min(np * np * qa(p, 1 - 4 * a), np * qa(p, 2 - 4 * a));
    const bool c2[] = {np > qa(p, 4 * a - 1), np < qa(p, 3 * a), npi > qa(p, 1 + a), npi < upper,
                       np * npi < qa(p, 4)};
    flag("case2.P_gt_q4am1", c2[0]);
    flag("case2.P_lt_q3a", c2[1]);
    flag("case2.Pi_gt_q1pa", c2[2]);
    flag("case2.Pi_lt_min", c2[3]);
    flag("case2.PPi_lt_q4", c2[4]);
    flag("case2.all", std::all_of(std::begin(c2), std::end(c2), [](bool b) { return b; }));
  } else {
    out.bounds.push_back(eval_plane_bounds(p, PlaneBound::vinh));
    out.bounds.push_back(eval_plane_bounds(p, PlaneBound::cs));
    out.bounds.push_back(eval_plane_bounds(p, PlaneBound::light_plane));
    out.hypotheses_ok = out.bounds.back().hypotheses_ok;
    flag("Pi_lt_q3a", p.planes < qa(p, 3 * a));
    flag("P_ge_2kqa", p.points >= 2 * p.k * qa(p, a));
  }

  const auto best = std::min_element(out.bounds.begin(), out.bounds.end(),
                                     [](const BoundReport& x, const BoundReport& y) { return x.value < y.value; });
  out.winner = best->bound_name;
  return out;
}

}  // namespace fqinc
