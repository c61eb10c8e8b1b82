#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "biarc/gcode.hpp"
#include "biarc/svg.hpp"

using namespace biarc;

namespace {

constexpr double kPi = std::numbers::pi;

Biarc<double> solve_or_die(const HermiteData<double>& h) {
  const auto r = compute_biarc(h);
  REQUIRE(r.ok());
  return r.value;
}

// Parsed <path> data: a chain of line/arc pieces in model coordinates.
struct ParsedPiece {
  bool is_arc = false;
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  double radius = 0;
  int large_arc = 0, sweep = 0;
};

struct ParsedPath {
  std::string css_class;
  std::vector<ParsedPiece> pieces;
};

std::vector<ParsedPath> parse_paths(const std::string& svg) {
  std::vector<ParsedPath> out;
  std::size_t pos = 0;
  while ((pos = svg.find("<path class=\"", pos)) != std::string::npos) {
    const std::size_t cls_begin = pos + 13;
    const std::size_t cls_end = svg.find('"', cls_begin);
    REQUIRE(cls_end != std::string::npos);
    ParsedPath path;
    path.css_class = svg.substr(cls_begin, cls_end - cls_begin);
    const std::size_t d_begin = svg.find(" d=\"", cls_end);
    REQUIRE(d_begin != std::string::npos);
    const std::size_t d_end = svg.find('"', d_begin + 4);
    REQUIRE(d_end != std::string::npos);
    pos = d_end;
    if (path.css_class != "arc0" && path.css_class != "arc1") continue;
    std::istringstream d(svg.substr(d_begin + 4, d_end - d_begin - 4));
    std::string cmd;
    double cur_x = 0, cur_y = 0;
    REQUIRE((d >> cmd >> cur_x >> cur_y));
    REQUIRE(cmd == "M");
    while (d >> cmd) {
      ParsedPiece piece;
      piece.x1 = cur_x;
      piece.y1 = cur_y;
      if (cmd == "L") {
        REQUIRE((d >> piece.x2 >> piece.y2));
      } else {
        REQUIRE(cmd == "A");
        piece.is_arc = true;
        double ry = 0, rot = 0;
        REQUIRE((d >> piece.radius >> ry >> rot >> piece.large_arc >>
                 piece.sweep >> piece.x2 >> piece.y2));
        REQUIRE(piece.radius == ry);
        REQUIRE(rot == 0);
      }
      cur_x = piece.x2;
      cur_y = piece.y2;
      path.pieces.push_back(piece);
    }
    REQUIRE(!path.pieces.empty());
    out.push_back(path);
  }
  return out;
}

// Point at fraction u of the parsed piece, via the standard
// endpoint-to-center conversion for rx == ry, zero rotation. Extended
// precision throughout, so reconstruction rounding is not charged against
// the renderer.
void piece_point(const ParsedPiece& seg, double u, double& x, double& y) {
  if (!seg.is_arc) {
    x = seg.x1 + u * (seg.x2 - seg.x1);
    y = seg.y1 + u * (seg.y2 - seg.y1);
    return;
  }
  const long double r = seg.radius;
  const long double x1p = (seg.x1 - (long double)seg.x2) / 2;
  const long double y1p = (seg.y1 - (long double)seg.y2) / 2;
  const long double rho2 = x1p * x1p + y1p * y1p;
  const long double co = std::sqrt(std::max(0.0L, (r * r - rho2) / rho2));
  const long double sigma = seg.large_arc != seg.sweep ? co : -co;
  const long double cx = sigma * y1p + (seg.x1 + (long double)seg.x2) / 2;
  const long double cy = -sigma * x1p + (seg.y1 + (long double)seg.y2) / 2;
  const long double a1 = std::atan2(seg.y1 - cy, seg.x1 - cx);
  const long double a2 = std::atan2(seg.y2 - cy, seg.x2 - cx);
  long double delta = a2 - a1;
  if (seg.sweep && delta < 0) delta += 2 * std::numbers::pi_v<long double>;
  if (!seg.sweep && delta > 0) delta -= 2 * std::numbers::pi_v<long double>;
  x = (double)(cx + r * std::cos(a1 + u * delta));
  y = (double)(cy + r * std::sin(a1 + u * delta));
}

void check_render_fidelity(const Biarc<double>& b) {
  const auto paths = parse_paths(render_svg({b}));
  REQUIRE(paths.size() == 2);
  REQUIRE(paths[0].css_class == "arc0");
  REQUIRE(paths[1].css_class == "arc1");
  for (int part = 0; part < 2; ++part) {
    const double base = part == 0 ? 0.0 : b.ell_star;
    const double len = part == 0 ? b.arc0.length : b.arc1.length;
    const auto& pieces = paths[part].pieces;
    const int n = static_cast<int>(pieces.size());
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < 100; ++i) {
        const double u = i / 99.0;
        double sx, sy;
        piece_point(pieces[k], u, sx, sy);
        const double ell =
            std::min(base + (k + u) * len / n, b.total_length);
        const auto p = biarc_eval(b, ell);
        CHECK(std::hypot(sx - p.x, sy - p.y) < 1e-9);
      }
  }
}

}  // namespace

TEST_CASE("two opposite semicircles render as two opposed arc paths") {
  const auto b = solve_or_die({0, 0, kPi / 2, 1, 0, kPi / 2});
  const auto paths = parse_paths(render_svg({b}));
  REQUIRE(paths.size() == 2);
  for (int part = 0; part < 2; ++part) {
    REQUIRE(paths[part].pieces.size() == 2);  // semicircle splits in two
    for (const auto& piece : paths[part].pieces) {
      CHECK(piece.is_arc);
      CHECK(std::abs(piece.radius - 0.25) < 1e-13);
      CHECK(piece.sweep == paths[part].pieces[0].sweep);
    }
  }
  CHECK(paths[0].pieces[0].sweep == 0);  // clockwise first arc: curvature < 0
  CHECK(paths[1].pieces[0].sweep == 1);
}

TEST_CASE("straight-line biarc renders as two collinear line segments") {
  const auto b = solve_or_die({0, 0, 0, 2, 0, 0});
  const auto paths = parse_paths(render_svg({b}));
  REQUIRE(paths.size() == 2);
  REQUIRE(paths[0].pieces.size() == 1);
  REQUIRE(paths[1].pieces.size() == 1);
  const auto &s0 = paths[0].pieces[0], &s1 = paths[1].pieces[0];
  CHECK(!s0.is_arc);
  CHECK(!s1.is_arc);
  const double cross = (s0.x2 - s0.x1) * (s1.y2 - s1.y1) -
                       (s0.y2 - s0.y1) * (s1.x2 - s1.x1);
  CHECK(std::abs(cross) < 1e-12);
  CHECK(s0.x2 == s1.x1);
  CHECK(s0.y2 == s1.y1);
}

TEST_CASE("parsed svg geometry matches the evaluator to 1e-9") {
  check_render_fidelity(solve_or_die({0, 0, kPi / 2, 1, 0, kPi / 2}));
  check_render_fidelity(solve_or_die({0, 0, kPi / 2, 1, 0, -kPi / 2}));
  check_render_fidelity(solve_or_die({0.3, -0.2, 1.1, 2.0, 1.5, -0.4}));
  check_render_fidelity(solve_or_die({0, 0, 0, 2, 0, 0}));
  check_render_fidelity(solve_or_die({-1, 2, 2.8, 0.5, -0.7, -2.9}));
  check_render_fidelity(solve_or_die({0, 0, 3.0, 1, 0, -3.0}));
  // Equal tangents near the angle boundary: long loops, turns close to 2*pi.
  check_render_fidelity(solve_or_die({0, 0, 3.1, 1, 0, 3.1}));
}

TEST_CASE("a bouquet shares its start point across all first arcs") {
  std::vector<Biarc<double>> biarcs;
  for (const double th1 : {-2.0, -1.0, 0.5, 1.5, 2.5})
    biarcs.push_back(solve_or_die({0, 0, kPi / 3, 1, 0, th1}));
  const std::string svg = render_svg(biarcs);
  const auto paths = parse_paths(svg);
  REQUIRE(paths.size() == 10);
  for (std::size_t i = 0; i < paths.size(); i += 2) {
    CHECK(paths[i].css_class == "arc0");
    CHECK(paths[i].pieces[0].x1 == 0.0);
    CHECK(paths[i].pieces[0].y1 == 0.0);
  }
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("viewBox=\"") != std::string::npos);
}

TEST_CASE("tangent arrows appear only on request") {
  const auto b = solve_or_die({0, 0, kPi / 2, 1, 0, kPi / 2});
  const std::string plain = render_svg({b});
  CHECK(plain.find("class=\"tangent\"") == std::string::npos);
  RenderOptions opt;
  opt.tangent_arrows = true;
  const std::string with_arrows = render_svg({b}, opt);
  std::size_t count = 0, pos = 0;
  while ((pos = with_arrows.find("class=\"tangent\"", pos)) !=
         std::string::npos) {
    ++count;
    pos += 1;
  }
  CHECK(count == 2);
  // Arrows must not disturb the parsed geometry.
  CHECK(parse_paths(with_arrows).size() == 2);
}

TEST_CASE("semicircle pair compiles to the pinned arc program") {
  const auto b = solve_or_die({0, 0, kPi / 2, 1, 0, kPi / 2});
  CHECK(gcode_program({b}, 500.0) ==
        "G21\n"
        "G90\n"
        "G0 X0.000000 Y0.000000\n"
        "G2 X0.500000 Y0.000000 I0.250000 J0.000000 F500\n"
        "G3 X1.000000 Y0.000000 I0.250000 J0.000000 F500\n"
        "M2\n");
}

TEST_CASE("C-shaped pair emits two clockwise arcs") {
  const auto b = solve_or_die({0, 0, kPi / 2, 1, 0, -kPi / 2});
  const std::string prog = gcode_program({b}, 300.0);
  std::istringstream in(prog);
  std::string line;
  std::vector<std::string> cutting;
  while (std::getline(in, line))
    if (line.rfind("G2 ", 0) == 0 || line.rfind("G3 ", 0) == 0 ||
        line.rfind("G1 ", 0) == 0)
      cutting.push_back(line);
  REQUIRE(cutting.size() == 2);
  CHECK(cutting[0].rfind("G2 ", 0) == 0);
  CHECK(cutting[1].rfind("G2 ", 0) == 0);
}

TEST_CASE("straight-line biarc emits two linear moves") {
  const auto b = solve_or_die({0, 0, 0, 2, 0, 0});
  CHECK(gcode_program({b}, 120.0) ==
        "G21\n"
        "G90\n"
        "G0 X0.000000 Y0.000000\n"
        "G1 X1.000000 Y0.000000 F120\n"
        "G1 X2.000000 Y0.000000 F120\n"
        "M2\n");
}

TEST_CASE("several biarcs share one program") {
  const auto a = solve_or_die({0, 0, kPi / 2, 1, 0, kPi / 2});
  const auto b = solve_or_die({1, 0, kPi / 2, 2, 0, -kPi / 2});
  const std::string prog = gcode_program({a, b}, 250.0);
  CHECK(prog.rfind("G21\nG90\n", 0) == 0);
  CHECK(prog.find("M2\n") == prog.size() - 3);
  std::istringstream in(prog);
  std::string line;
  int rapids = 0, cuts = 0;
  while (std::getline(in, line)) {
    rapids += line.rfind("G0 ", 0) == 0;
    cuts += line.rfind("G1 ", 0) == 0 || line.rfind("G2 ", 0) == 0 ||
            line.rfind("G3 ", 0) == 0;
  }
  CHECK(rapids == 2);
  CHECK(cuts == 4);
}

TEST_CASE("samples on each arc satisfy its circle equation") {
  for (const auto& h :
       {HermiteData<double>{0, 0, kPi / 2, 1, 0, kPi / 2},
        HermiteData<double>{0.3, -0.2, 1.1, 2.0, 1.5, -0.4},
        HermiteData<double>{-1, 2, 2.8, 0.5, -0.7, -2.9}}) {
    const auto b = solve_or_die(h);
    const ArcSegment<double>* segs[2] = {&b.arc0, &b.arc1};
    for (int part = 0; part < 2; ++part) {
      const ArcSegment<double>& seg = *segs[part];
      if (seg.curvature == 0) continue;
      const double r = 1.0 / std::abs(seg.curvature);
      const double cx =
          seg.x_start - std::sin(seg.theta_start) / seg.curvature;
      const double cy =
          seg.y_start + std::cos(seg.theta_start) / seg.curvature;
      const double base = part == 0 ? 0.0 : b.ell_star;
      for (int i = 0; i <= 100; ++i) {
        const double ell =
            std::min(base + seg.length * i / 100, b.total_length);
        const auto p = biarc_eval(b, ell);
        CHECK(std::abs(std::hypot(p.x - cx, p.y - cy) - r) < 1e-12);
      }
    }
  }
}
