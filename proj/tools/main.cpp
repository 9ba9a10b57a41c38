// fqinc command line: incidence counts, VC dimension, reductions, the
// distance/dot-product/trace applications, suites and presets.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fqinc/apps.hpp"
#include "fqinc/error.hpp"
#include "fqinc/harness.hpp"
#include "fqinc/io.hpp"
#include "fqinc/reductions.hpp"
#include "fqinc/setsys.hpp"

namespace fs = std::filesystem;
using namespace fqinc;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kHypothesis = 2;

Field field_of(const std::string& path) {
  const auto [p, n] = parse_header(read_text(path));
  return make_field(p, n);
}

std::string elems(const std::vector<Elem>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i].index);
  return s;
}

const char* yes(bool b) { return b ? "true" : "false"; }

/// Appends "--key value" for each key=value line of the config file unless
/// the flag is already on the command line. Inserted after the subcommand.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  const auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (it + 1 == args.end()) throw Error(ErrorCode::InvalidArgument, "--config needs a file");
  const std::string path = *(it + 1);
  args.erase(it, it + 2);
  std::vector<std::string> extra;
  std::istringstream in(read_text(path));
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    extra.push_back(flag);
    extra.push_back(value);
  }
  // args[0] is the program, args[1] the subcommand.
  const auto pos = args.size() >= 2 ? args.begin() + 2 : args.end();
  args.insert(pos, extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incidence counting and bound checks over finite fields"};
  app.require_subcommand(1);
  std::string config_unused;
  app.add_option("--config", config_unused, "flat key=value file mirroring the flags");

  int exit_code = kOk;

  // field-info
  auto* cmd_field = app.add_subcommand("field-info", "describe GF(p^n)");
  std::uint32_t fp = 0, fn = 1;
  cmd_field->add_option("--p", fp)->required();
  cmd_field->add_option("--n", fn)->default_val(1);
  cmd_field->callback([&] {
    const Field f = make_field(fp, fn);
    std::cout << "p " << f.p() << "\nn " << f.n() << "\nq " << f.q() << "\nq_mod4 " << f.spec().q_mod4
              << "\nmodulus";
    for (auto c : f.spec().modulus) std::cout << ' ' << c;
    std::cout << "\ngenerator " << f.generator().index << "\n";
  });

  // count
  auto* cmd_count = app.add_subcommand("count", "incidence count");
  std::string points_file, lines_file, planes_file, method = "fast";
  cmd_count->add_option("--points", points_file)->required();
  auto* opt_lines = cmd_count->add_option("--lines", lines_file);
  auto* opt_planes = cmd_count->add_option("--planes", planes_file);
  opt_lines->excludes(opt_planes);
  cmd_count->add_option("--method", method)->check(CLI::IsMember({"oracle", "fast"}));
  cmd_count->callback([&] {
    const Field f = field_of(points_file);
    const auto pts = read_objects(points_file, f);
    const CountMethod m = method == "oracle" ? CountMethod::oracle : CountMethod::fast;
    std::uint64_t n = 0;
    if (!lines_file.empty()) {
      n = count_incidences(f, pts.points2, read_objects(lines_file, f).lines, m).count;
    } else if (!planes_file.empty()) {
      n = count_incidences(f, pts.points3, read_objects(planes_file, f).planes, m).count;
    } else {
      throw Error(ErrorCode::InvalidArgument, "count needs --lines or --planes");
    }
    std::cout << "incidences " << n << "\n";
  });

  // vcdim
  auto* cmd_vc = app.add_subcommand("vcdim", "VC dimension of a point-plane neighborhood system");
  std::string side = "by_point";
  int max_d = 4;
  cmd_vc->add_option("--points", points_file)->required();
  cmd_vc->add_option("--planes", planes_file)->required();
  cmd_vc->add_option("--side", side)->check(CLI::IsMember({"by_point", "by_plane"}));
  cmd_vc->add_option("--max-d", max_d)->check(CLI::Range(1, kMaxVcSearch));
  cmd_vc->callback([&] {
    const Field f = field_of(points_file);
    const auto pts = read_objects(points_file, f).points3;
    const auto pls = read_objects(planes_file, f).planes;
    const auto sys = neighborhood_system(f, pts, pls, side == "by_point" ? Side::by_point : Side::by_plane);
    const auto vc = vc_dimension(sys, max_d);
    std::cout << "ground " << sys.ground_size << "\nmembers " << sys.size() << "\nvc " << vc.dimension
              << "\nsaturated " << yes(vc.saturated) << "\nwitness";
    for (auto i : vc.witness) std::cout << ' ' << i;
    std::cout << "\n";
  });

  // reduce
  auto* cmd_reduce = app.add_subcommand("reduce", "energy count and its point-plane form");
  std::string a_file, b_file;
  cmd_reduce->add_option("--lines", lines_file)->required();
  cmd_reduce->add_option("--a", a_file)->required();
  cmd_reduce->add_option("--b", b_file);
  cmd_reduce->callback([&] {
    const Field f = field_of(lines_file);
    const auto lines = read_objects(lines_file, f).lines;
    const auto a = read_objects(a_file, f).scalars;
    const auto out = build_point_plane_sets(f, lines, a);
    std::cout << "solution_count " << out.solution_count << "\npoints " << out.points3.size() << "\nplanes "
              << out.planes3.size() << "\nk_bound " << out.k_bound << "\nduplicates " << yes(out.has_duplicates)
              << "\nplane aX " << (out.convention.y_sign < 0 ? "-" : "+") << " x'Y "
              << (out.convention.z_sign < 0 ? "-" : "+") << " Z = -b\n";
    if (!b_file.empty()) {
      const auto b = read_objects(b_file, f).scalars;
      const auto cs = cs_upper(f, lines, a, b);
      std::cout << "incidences " << cs.actual << "\ncs_upper " << format_number(cs.value) << "\ncs_upper_holds "
                << yes(cs.holds) << "\n";
    }
  });

  // distance
  auto* cmd_dist = app.add_subcommand("distance", "distance set and the triple-count chain");
  std::string e_file, f_file;
  double alpha = -1;
  cmd_dist->add_option("--e", e_file)->required();
  cmd_dist->add_option("--f", f_file)->required();
  auto* opt_alpha = cmd_dist->add_option("--alpha", alpha);
  cmd_dist->callback([&] {
    const Field f = field_of(e_file);
    const auto e = read_objects(e_file, f).points3;
    const auto fs = read_objects(f_file, f).points3;
    const auto d = distance_set(f, e, fs);
    const auto t = triple_count(f, e, fs);
    std::cout << "distances " << d.distance_set.size() << "\ndistance_set " << elems(d.distance_set)
              << "\nzero_pairs " << d.zero_pairs << "\ntriples " << t.triples << "\nchain_ok " << yes(t.chain_ok)
              << "\n";
    if (opt_alpha->count() > 0) {
      const auto k = bisector_collinear_k(f, e, fs);
      const auto th = distance_bound_check(f, e.size(), fs.size(), d, k.k, alpha);
      std::cout << "k " << k.k << "\npredicted " << format_number(th.predicted) << "\nratio "
                << format_number(th.measured_ratio) << "\nq_3_mod_4 " << yes(th.q_is_3_mod_4) << "\nzero_pairs_ok "
                << yes(th.zero_pairs_ok) << "\nsize_ok " << yes(th.size_ok) << "\nk_is_zero " << yes(th.k_is_zero)
                << "\n";
      if (!th.hypotheses_ok()) exit_code = kHypothesis;
    }
    if (!t.chain_ok) exit_code = kError;
  });

  // dotprod
  auto* cmd_dot = app.add_subcommand("dotprod", "dot-product set");
  cmd_dot->add_option("--e", e_file)->required();
  cmd_dot->add_option("--f", f_file)->required();
  cmd_dot->callback([&] {
    const Field f = field_of(e_file);
    const auto e = read_objects(e_file, f).points3;
    const auto fs = read_objects(f_file, f).points3;
    const auto d = dot_product_set(f, e, fs);
    const auto k = dot_common_collinear_k(f, e, fs);
    std::cout << "products " << d.dot_set.size() << "\ndot_set " << elems(d.dot_set) << "\northogonal_pairs "
              << d.orthogonal_pairs << "\nbest_lambda " << (d.best_lambda ? std::to_string(d.best_lambda->index) : "-")
              << "\naveraging_ok " << yes(d.averaging_ok) << "\nk " << k.k << "\n";
    if (!d.orthogonal_hypothesis()) exit_code = kHypothesis;
  });

  // traces
  auto* cmd_traces = app.add_subcommand("traces", "trace pairs of U against U'");
  std::string u_file, up_file;
  cmd_traces->add_option("--u", u_file)->required();
  cmd_traces->add_option("--uprime", up_file)->required();
  cmd_traces->callback([&] {
    const Field f = field_of(u_file);
    const auto u = read_objects(u_file, f).points3;
    const auto up = read_objects(up_file, f).points3;
    const auto t = trace_pairs(f, u, up);
    std::cout << "classes " << t.classes << "\npair_count " << t.pair_count << "\nbound " << format_number(t.bound_value)
              << "\nratio " << format_number(t.ratio) << "\ncauchy_schwarz_ok " << yes(t.cauchy_schwarz_ok) << "\n";
  });

  // suite
  auto* cmd_suite = app.add_subcommand("suite", "run a verification suite");
  ExperimentConfig cfg;
  cmd_suite->add_option("--name", cfg.suite)->required()->check(CLI::IsMember(suite_names()));
  cmd_suite->add_option("--q", cfg.q)->default_val(3);
  cmd_suite->add_option("--alpha", cfg.alpha)->default_val(0.25);
  cmd_suite->add_option("--trials", cfg.trials)->default_val(10);
  cmd_suite->add_option("--seed", cfg.seed)->default_val(0);
  cmd_suite->add_option("--out", cfg.out);
  cmd_suite->callback([&] {
    const auto result = run_suite(cfg);
    if (!cfg.out.empty()) emit(result, cfg.out);
    std::cout << "suite " << cfg.suite << "\nrows " << result.rows.size() << "\nfailures " << result.failures()
              << "\nhypothesis_flags " << result.hypothesis_flags() << "\n";
    exit_code = result.exit_code();
  });

  // preset
  auto* cmd_preset = app.add_subcommand("preset", "build a named example configuration");
  std::string preset_name, out_dir;
  std::uint32_t preset_q = 0;
  std::uint64_t preset_seed = 0;
  cmd_preset->add_option("--name", preset_name)->required()->check(CLI::IsMember(preset_names()));
  cmd_preset->add_option("--q", preset_q)->required();
  cmd_preset->add_option("--seed", preset_seed)->default_val(0);
  cmd_preset->add_option("--out", out_dir);
  cmd_preset->callback([&] {
    const auto c = preset(preset_name, preset_q, preset_seed);
    const Field f = make_field_of_order(preset_q);
    const auto nominal = nominal_hypotheses(f, c);
    const auto regime = regime_report(realized_params(f, c), c.kind);
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      const fs::path dir(out_dir);
      if (c.kind == RegimeKind::line) {
        write_text(dir / "lines.txt", format_lines(f, c.lines));
        write_text(dir / "a.txt", format_scalars(f, c.a_set));
        write_text(dir / "b.txt", format_scalars(f, c.b_set));
      } else {
        write_text(dir / "points.txt", format_points(f, c.points3));
        write_text(dir / "planes.txt", format_planes(f, c.planes));
      }
    }
    std::cout << "preset " << c.name << "\nq " << c.q << "\n";
    if (c.kind == RegimeKind::line)
      std::cout << "L " << c.lines.size() << "\nA " << c.a_set.size() << "\nB " << c.b_set.size() << "\nLx "
                << c.slopes << "\n";
    else
      std::cout << "P " << c.points3.size() << "\nPi " << c.planes.size() << "\nk " << c.k << "\n";
    for (const auto& fl : nominal.flags) std::cout << "nominal." << fl.name << " " << yes(fl.value) << "\n";
    for (const auto& fl : regime.range_flags) std::cout << "range." << fl.name << " " << yes(fl.value) << "\n";
    std::cout << "winner " << regime.winner << "\n";
    if (!nominal.ok || !regime.hypotheses_ok) exit_code = kHypothesis;
  });

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(std::move(args));
    std::vector<char*> raw;
    for (auto& a : args) raw.push_back(a.data());
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return exit_code;
}
