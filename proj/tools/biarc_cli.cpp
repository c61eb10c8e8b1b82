// biarc: solve G1 Hermite problems with circular arc pairs, sample the
// resulting curves, sweep parameter grids, and export SVG or G-code.
//
// Exit codes: 0 all inputs processed cleanly, 1 domain error (unsolvable
// input, I/O failure), 2 usage or input parse error.
#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "biarc/biarc.hpp"
#include "biarc/gcode.hpp"
#include "biarc/records.hpp"
#include "biarc/svg.hpp"
#include "biarc/sweep.hpp"

namespace {

using namespace biarc;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  bool degrees = false;
  double tol = 1e-8;
  std::string output;  // empty or "-" writes to stdout
  std::string format = "records";
};

double to_radians(double v, bool degrees) {
  return degrees ? v * std::numbers::pi / 180.0 : v;
}

bool parse_pair(const std::string& text, double& x, double& y) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) return false;
  const auto xv = parse_double(std::string_view(text).substr(0, comma));
  const auto yv = parse_double(std::string_view(text).substr(comma + 1));
  if (!xv || !yv) return false;
  x = *xv;
  y = *yv;
  return true;
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "biarc: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

// Geometry input shared by solve/sample/render/gcode: either one problem
// given inline with four flags, or a stream of record lines.
struct GeomArgs {
  std::string p0_text, p1_text;
  double theta0 = 0, theta1 = 0;
  std::string input = "-";
  CLI::Option* flag[4] = {nullptr, nullptr, nullptr, nullptr};
};

void add_geom_options(CLI::App* cmd, GeomArgs& g) {
  g.flag[0] = cmd->add_option("--p0", g.p0_text, "start point as x,y");
  g.flag[1] = cmd->add_option("--theta0", g.theta0, "start tangent angle");
  g.flag[2] = cmd->add_option("--p1", g.p1_text, "end point as x,y");
  g.flag[3] = cmd->add_option("--theta1", g.theta1, "end tangent angle");
  cmd->add_option("--input", g.input,
                  "record stream path, or - for stdin (default)");
}

void add_format_options(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--output", c.output, "output path, or - for stdout");
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"records", "json"}));
}

void add_angle_unit_option(CLI::App* cmd, CommonOpts& c) {
  cmd->add_flag("--degrees", c.degrees,
                "interpret angle flags as degrees (records stay radians)");
}

std::optional<std::vector<BiarcRecord>> collect_records(const GeomArgs& g,
                                                        bool degrees,
                                                        int& exit_code) {
  int given = 0;
  for (const auto* opt : g.flag) given += opt->count() > 0;
  if (given > 0) {
    if (given != 4) {
      std::cerr << "biarc: --p0, --theta0, --p1, --theta1 must be given "
                   "together\n";
      exit_code = kExitUsage;
      return std::nullopt;
    }
    HermiteData<double> h;
    if (!parse_pair(g.p0_text, h.x0, h.y0) ||
        !parse_pair(g.p1_text, h.x1, h.y1)) {
      std::cerr << "biarc: points must be given as x,y\n";
      exit_code = kExitUsage;
      return std::nullopt;
    }
    h.theta0_world = to_radians(g.theta0, degrees);
    h.theta1_world = to_radians(g.theta1, degrees);
    return std::vector<BiarcRecord>{make_input_record(h)};
  }

  std::ifstream file;
  std::istream* in = &std::cin;
  if (g.input != "-") {
    file.open(g.input);
    if (!file) {
      std::cerr << "biarc: cannot read '" << g.input << "'\n";
      exit_code = kExitUsage;
      return std::nullopt;
    }
    in = &file;
  }
  const std::string where = g.input == "-" ? "stdin" : g.input;
  std::vector<BiarcRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(*in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto parsed = parse_record_line(line);
    if (!parsed.ok) {
      std::cerr << where << ":" << lineno << ": " << parsed.error << "\n";
      exit_code = kExitUsage;
      return std::nullopt;
    }
    records.push_back(parsed.record);
  }
  return records;
}

// Solved records are reused bit-for-bit; input records are solved here.
// Any failure aborts the command: partial curve exports are worthless.
std::optional<std::vector<Biarc<double>>> to_biarcs(
    const std::vector<BiarcRecord>& records, const SolveSettings<double>& cfg,
    int& exit_code) {
  std::vector<Biarc<double>> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    if (rec.record_kind == RecordKind::Solved) {
      out.push_back(*biarc_from_record(rec));
      continue;
    }
    if (rec.record_kind == RecordKind::Error) {
      std::cerr << "biarc: input record already failed with '"
                << outcome_name(rec.outcome) << "'\n";
      exit_code = kExitDomain;
      return std::nullopt;
    }
    const auto res = compute_biarc(rec.input, cfg);
    if (!res.ok()) {
      std::cerr << "biarc: " << to_line(make_record(rec.input, res)) << "\n";
      exit_code = kExitDomain;
      return std::nullopt;
    }
    out.push_back(res.value);
  }
  return out;
}

int run_solve(const GeomArgs& g, const CommonOpts& c) {
  int code = kExitOk;
  const auto records = collect_records(g, c.degrees, code);
  if (!records) return code;
  SolveSettings<double> cfg;
  cfg.tol_residual = c.tol;
  std::string text;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& rec : *records) {
    const auto res = compute_biarc(rec.input, cfg);
    const auto out = make_record(rec.input, res);
    if (!res.ok()) code = kExitDomain;
    if (c.format == "json")
      arr.push_back(to_json(out));
    else {
      text += to_line(out);
      text += '\n';
    }
  }
  if (c.format == "json") text = arr.dump(2) + "\n";
  if (!write_output(c.output, text)) return kExitDomain;
  return code;
}

int run_sample(const GeomArgs& g, const CommonOpts& c, int n) {
  int code = kExitOk;
  const auto records = collect_records(g, c.degrees, code);
  if (!records) return code;
  SolveSettings<double> cfg;
  cfg.tol_residual = c.tol;
  const auto biarcs = to_biarcs(*records, cfg, code);
  if (!biarcs) return code;
  std::string text;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& b : *biarcs) {
    for (int i = 0; i <= n; ++i) {
      // min() guards the rounding of L*i/n past L at i = n.
      const double ell = std::min(b.total_length * i / n, b.total_length);
      const auto p = biarc_eval(b, ell);
      if (c.format == "json") {
        nlohmann::ordered_json j;
        j["i"] = i;
        j["l"] = ell;
        j["x"] = p.x;
        j["y"] = p.y;
        j["theta"] = p.theta;
        j["kappa"] = p.kappa;
        arr.push_back(std::move(j));
      } else {
        text += sample_line(i, ell, p);
        text += '\n';
      }
    }
  }
  if (c.format == "json") text = arr.dump(2) + "\n";
  if (!write_output(c.output, text)) return kExitDomain;
  return kExitOk;
}

struct SweepArgs {
  std::string range0_text, range1_text;
  std::string p0_text = "0,0", p1_text = "1,0";
  int samples = 64;
  double perturbation = 0;
};

int run_sweep_cmd(const SweepArgs& a, const CommonOpts& c) {
  SweepSpec spec;
  double lo = 0, hi = 0;
  if (!parse_pair(a.range0_text, lo, hi)) {
    std::cerr << "biarc: --theta0-range must be given as lo,hi\n";
    return kExitUsage;
  }
  spec.theta0_range = {to_radians(lo, c.degrees), to_radians(hi, c.degrees)};
  if (!parse_pair(a.range1_text, lo, hi)) {
    std::cerr << "biarc: --theta1-range must be given as lo,hi\n";
    return kExitUsage;
  }
  spec.theta1_range = {to_radians(lo, c.degrees), to_radians(hi, c.degrees)};
  if (!parse_pair(a.p0_text, spec.x0, spec.y0) ||
      !parse_pair(a.p1_text, spec.x1, spec.y1)) {
    std::cerr << "biarc: points must be given as x,y\n";
    return kExitUsage;
  }
  spec.samples_per_axis = a.samples;
  spec.perturbation = to_radians(a.perturbation, c.degrees);

  const SweepReport rep = run_sweep(spec);
  std::string text;
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["theta0_range"] = spec.theta0_range;
    j["theta1_range"] = spec.theta1_range;
    j["samples"] = rep.samples;
    auto& pts = j["points"] = nlohmann::ordered_json::array();
    for (const auto& pt : rep.points) {
      nlohmann::ordered_json pj;
      pj["theta0"] = pt.theta0;
      pj["theta1"] = pt.theta1;
      pj["outcome"] = outcome_name(pt.outcome);
      if (pt.outcome == OutcomeKind::Ok) {
        pj["l0"] = pt.ell0;
        pj["k0"] = pt.kappa0;
        pj["l1"] = pt.ell1;
        pj["k1"] = pt.kappa1;
        pj["xj"] = pt.x_joint;
        pj["yj"] = pt.y_joint;
        pj["thetaj"] = pt.theta_joint;
      }
      pts.push_back(std::move(pj));
    }
    auto& st = j["stats"];
    st["ok"] = rep.stats.count_ok;
    st["no_solution"] = rep.stats.count_no_solution;
    st["non_positive_length"] = rep.stats.count_non_positive_length;
    st["degenerate_chord"] = rep.stats.count_degenerate_chord;
    st["jump_l0"] = rep.stats.max_jump_ell0;
    st["jump_k0"] = rep.stats.max_jump_kappa0;
    st["jump_l1"] = rep.stats.max_jump_ell1;
    st["jump_k1"] = rep.stats.max_jump_kappa1;
    st["jump_joint"] = rep.stats.max_jump_joint;
    st["jump_thetaj"] = rep.stats.max_jump_theta_joint;
    text = j.dump(2) + "\n";
  } else {
    for (const auto& pt : rep.points) {
      text += sweep_point_line(pt);
      text += '\n';
    }
    text += sweep_stats_line(rep.stats);
    text += '\n';
  }
  if (!write_output(c.output, text)) return kExitDomain;
  // Grid points that fail to solve are sweep data, not command failures.
  return kExitOk;
}

int run_render(const GeomArgs& g, const CommonOpts& c, bool tangents) {
  int code = kExitOk;
  const auto records = collect_records(g, c.degrees, code);
  if (!records) return code;
  if (records->empty()) {
    std::cerr << "biarc: render needs at least one record\n";
    return kExitUsage;
  }
  SolveSettings<double> cfg;
  cfg.tol_residual = c.tol;
  const auto biarcs = to_biarcs(*records, cfg, code);
  if (!biarcs) return code;
  RenderOptions opt;
  opt.tangent_arrows = tangents;
  if (!write_output(c.output, render_svg(*biarcs, opt))) return kExitDomain;
  return kExitOk;
}

int run_gcode(const GeomArgs& g, const CommonOpts& c, double feed) {
  int code = kExitOk;
  const auto records = collect_records(g, c.degrees, code);
  if (!records) return code;
  if (records->empty()) {
    std::cerr << "biarc: gcode needs at least one record\n";
    return kExitUsage;
  }
  SolveSettings<double> cfg;
  cfg.tol_residual = c.tol;
  const auto biarcs = to_biarcs(*records, cfg, code);
  if (!biarcs) return code;
  if (!write_output(c.output, gcode_program(*biarcs, feed)))
    return kExitDomain;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "biarc: G1 Hermite interpolation with pairs of circular arcs"};
  app.require_subcommand(1);

  CommonOpts common;

  GeomArgs solve_geom, sample_geom, render_geom, gcode_geom;
  SweepArgs sweep_args;
  int sample_n = 100;
  bool tangents = false;
  double feed = 100.0;

  CLI::App* solve = app.add_subcommand(
      "solve", "compute biarcs for Hermite data, one record per input");
  add_geom_options(solve, solve_geom);
  add_format_options(solve, common);
  add_angle_unit_option(solve, common);
  solve->add_option("--tol", common.tol,
                    "least-squares consistency bound on the residual");

  CLI::App* sample = app.add_subcommand(
      "sample", "evaluate n+1 equally spaced points along each biarc");
  add_geom_options(sample, sample_geom);
  add_format_options(sample, common);
  add_angle_unit_option(sample, common);
  sample->add_option("--tol", common.tol, "solver residual bound");
  sample->add_option("--n", sample_n, "number of arclength intervals")
      ->check(CLI::PositiveNumber);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "solve a grid of tangent-angle pairs and report jump stats");
  sweep->add_option("--theta0-range", sweep_args.range0_text,
                    "start angle range as lo,hi")
      ->required();
  sweep->add_option("--theta1-range", sweep_args.range1_text,
                    "end angle range as lo,hi")
      ->required();
  sweep->add_option("--samples", sweep_args.samples, "samples per axis")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--p0", sweep_args.p0_text, "start point as x,y");
  sweep->add_option("--p1", sweep_args.p1_text, "end point as x,y");
  sweep->add_option("--perturbation", sweep_args.perturbation,
                    "angle offset added to both tangents");
  add_format_options(sweep, common);
  add_angle_unit_option(sweep, common);

  CLI::App* render =
      app.add_subcommand("render", "draw the biarcs as an SVG document");
  add_geom_options(render, render_geom);
  render->add_option("--output", common.output, "output path, - for stdout");
  render->add_option("--tol", common.tol, "solver residual bound");
  render->add_flag("--tangents", tangents,
                   "draw tangent arrows at the curve endpoints");
  add_angle_unit_option(render, common);

  CLI::App* gcode = app.add_subcommand(
      "gcode", "emit an ISO-6983 arc program (G1/G2/G3 with I,J offsets)");
  add_geom_options(gcode, gcode_geom);
  gcode->add_option("--output", common.output, "output path, - for stdout");
  gcode->add_option("--tol", common.tol, "solver residual bound");
  gcode->add_option("--feed", feed, "feed rate, length units per minute")
      ->check(CLI::PositiveNumber);
  add_angle_unit_option(gcode, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (app.got_subcommand(solve)) return run_solve(solve_geom, common);
  if (app.got_subcommand(sample))
    return run_sample(sample_geom, common, sample_n);
  if (app.got_subcommand(sweep)) return run_sweep_cmd(sweep_args, common);
  if (app.got_subcommand(render))
    return run_render(render_geom, common, tangents);
  if (app.got_subcommand(gcode)) return run_gcode(gcode_geom, common, feed);
  return kExitUsage;
}
