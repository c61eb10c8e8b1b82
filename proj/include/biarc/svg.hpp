#pragma once
// SVG 1.1 rendering of biarcs with native elliptical-arc path segments.
// Coordinates in path data are model coordinates; a scale(1,-1) group plus
// a matching viewBox flips the y axis for display, so parsing the paths
// back recovers model geometry exactly.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "biarc/records.hpp"

namespace biarc {

struct RenderOptions {
  bool tangent_arrows = false;
  double stroke_scale = 0.005;  // stroke width as a fraction of the extent
};

namespace detail {

struct Bbox {
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  bool empty = true;
  void add(double x, double y) {
    if (empty) {
      min_x = max_x = x;
      min_y = max_y = y;
      empty = false;
    } else {
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }
};

// Emits one arc segment as a path element. Segments with negligible turn
// angle become straight lines; SVG arcs cannot represent them and a
// controller-scale sagitta is invisible anyway. Larger turns are chained
// from sub-arcs of at most 1.6 rad each: a chord near the full diameter
// pins the arc's center only to about radius times sqrt(ulp), so a
// semicircle emitted as one A command would be off by a few 1e-9 in any
// conforming renderer, while short pieces stay sharp at full precision.
inline void append_segment_path(std::string& out,
                                const ArcSegment<double>& seg,
                                const char* css_class, const char* color,
                                double stroke_width) {
  const double turn = seg.curvature * seg.length;
  out += "  <path class=\"";
  out += css_class;
  out += "\" fill=\"none\" stroke=\"";
  out += color;
  out += "\" stroke-width=\"";
  out += format_double(stroke_width);
  out += "\" d=\"M ";
  out += format_double(seg.x_start);
  out += ' ';
  out += format_double(seg.y_start);
  if (std::abs(turn) < 1e-12) {
    const auto end = arc_eval(seg, seg.length);
    out += " L ";
    out += format_double(end.x);
    out += ' ';
    out += format_double(end.y);
  } else {
    const int pieces = static_cast<int>(std::ceil(std::abs(turn) / 1.6));
    const double radius = 1.0 / std::abs(seg.curvature);
    for (int k = 1; k <= pieces; ++k) {
      const auto p = arc_eval(seg, seg.length * k / pieces);
      out += " A ";
      out += format_double(radius);
      out += ' ';
      out += format_double(radius);
      // Positive curvature sweeps counter-clockwise in model coordinates,
      // which is the positive-angle direction inside the flipped group.
      out += std::abs(turn) / pieces > std::numbers::pi ? " 0 1" : " 0 0";
      out += seg.curvature > 0 ? " 1 " : " 0 ";
      out += format_double(p.x);
      out += ' ';
      out += format_double(p.y);
    }
  }
  out += "\"/>\n";
}

inline void append_tangent_arrow(std::string& out, double x, double y,
                                 double theta, double len,
                                 double stroke_width) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double tip_x = x + len * c, tip_y = y + len * s;
  const double head = 0.3 * len;
  // Two barbs at +-150 degrees off the shaft direction.
  const double bx1 = tip_x + head * (c * -0.866 - s * 0.5);
  const double by1 = tip_y + head * (s * -0.866 + c * 0.5);
  const double bx2 = tip_x + head * (c * -0.866 + s * 0.5);
  const double by2 = tip_y + head * (s * -0.866 - c * 0.5);
  out += "  <path class=\"tangent\" fill=\"none\" stroke=\"#555555\" "
         "stroke-width=\"";
  out += format_double(stroke_width);
  out += "\" d=\"M ";
  out += format_double(x);
  out += ' ';
  out += format_double(y);
  out += " L ";
  out += format_double(tip_x);
  out += ' ';
  out += format_double(tip_y);
  out += " L ";
  out += format_double(bx1);
  out += ' ';
  out += format_double(by1);
  out += " M ";
  out += format_double(tip_x);
  out += ' ';
  out += format_double(tip_y);
  out += " L ";
  out += format_double(bx2);
  out += ' ';
  out += format_double(by2);
  out += "\"/>\n";
}

}  // namespace detail

inline std::string render_svg(const std::vector<Biarc<double>>& biarcs,
                              const RenderOptions& opt = {}) {
  detail::Bbox box;
  for (const auto& b : biarcs)
    for (int i = 0; i <= 64; ++i) {
      const auto p = biarc_eval(b, b.total_length * i / 64);
      box.add(p.x, p.y);
    }
  if (box.empty) box.add(0, 0);
  const double extent =
      std::max({box.max_x - box.min_x, box.max_y - box.min_y, 1e-9});
  const double margin = 0.08 * extent;
  const double stroke_width = opt.stroke_scale * extent;
  const double arrow_len = 0.06 * extent;

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "viewBox=\"";
  out += format_double(box.min_x - margin);
  out += ' ';
  out += format_double(-(box.max_y + margin));
  out += ' ';
  out += format_double(box.max_x - box.min_x + 2 * margin);
  out += ' ';
  out += format_double(box.max_y - box.min_y + 2 * margin);
  out += "\">\n<g transform=\"scale(1,-1)\">\n";
  for (const auto& b : biarcs) {
    detail::append_segment_path(out, b.arc0, "arc0", "#1f77b4",
                                stroke_width);
    detail::append_segment_path(out, b.arc1, "arc1", "#d62728",
                                stroke_width);
    if (opt.tangent_arrows) {
      detail::append_tangent_arrow(out, b.arc0.x_start, b.arc0.y_start,
                                   b.arc0.theta_start, arrow_len,
                                   stroke_width);
      const auto end = arc_eval(b.arc1, b.arc1.length);
      detail::append_tangent_arrow(out, end.x, end.y, end.theta, arrow_len,
                                   stroke_width);
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace biarc
