#pragma once
// ISO-6983-subset G-code export: one rapid to each biarc's start, then two
// cutting moves. Arcs use incremental I,J center offsets from the segment
// start; segments whose total turn is below controller resolution are
// emitted as straight G1 moves.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "biarc/records.hpp"

namespace biarc {

namespace detail {

// Fixed 6-decimal coordinate text; controllers do not parse exponents.
// A zero never carries a minus sign at this resolution.
inline std::string fixed6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  return s == "-0.000000" ? "0.000000" : s;
}

}  // namespace detail

inline std::string gcode_program(const std::vector<Biarc<double>>& biarcs,
                                 double feed) {
  std::string out = "G21\nG90\n";
  const std::string feed_text = " F" + format_double(feed);
  for (const auto& b : biarcs) {
    out += "G0 X" + detail::fixed6(b.arc0.x_start) + " Y" +
           detail::fixed6(b.arc0.y_start) + "\n";
    // arc0 cuts to the stored joint, arc1 from there to the far endpoint,
    // so consecutive moves share their 6-decimal waypoint exactly.
    const auto far_end = arc_eval(b.arc1, b.arc1.length);
    const double ends[2][2] = {{b.x_joint, b.y_joint}, {far_end.x, far_end.y}};
    const ArcSegment<double>* segs[2] = {&b.arc0, &b.arc1};
    for (int i = 0; i < 2; ++i) {
      const ArcSegment<double>& seg = *segs[i];
      const std::string xy =
          " X" + detail::fixed6(ends[i][0]) + " Y" + detail::fixed6(ends[i][1]);
      if (std::abs(seg.curvature * seg.length) < 1e-12) {
        out += "G1" + xy + feed_text + "\n";
      } else {
        const double ic = -std::sin(seg.theta_start) / seg.curvature;
        const double jc = std::cos(seg.theta_start) / seg.curvature;
        out += (seg.curvature < 0 ? "G2" : "G3") + xy + " I" +
               detail::fixed6(ic) + " J" + detail::fixed6(jc) + feed_text +
               "\n";
      }
    }
  }
  out += "M2\n";
  return out;
}

}  // namespace biarc
