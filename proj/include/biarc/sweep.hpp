#pragma once
// Grid experiments over tangent-angle pairs at fixed endpoints: bouquet
// grids, continuity sweeps, and perturbation probes. Failures are recorded
// per point as data, never thrown, so a sweep always covers its whole grid.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "biarc/biarc.hpp"

namespace biarc {

struct SweepSpec {
  std::array<double, 2> theta0_range{0.0, 0.0};
  std::array<double, 2> theta1_range{0.0, 0.0};
  int samples_per_axis = 2;  // clamped to >= 1; 1 pins the axis to range[0]
  double x0 = 0, y0 = 0;
  double x1 = 1, y1 = 0;
  double perturbation = 0;  // added to both tangent angles before solving
};

struct SweepPoint {
  double theta0 = 0, theta1 = 0;  // grid angles, before perturbation
  OutcomeKind outcome = OutcomeKind::Ok;
  double ell0 = 0, kappa0 = 0, ell1 = 0, kappa1 = 0;
  double x_joint = 0, y_joint = 0, theta_joint = 0;
};

struct SweepStats {
  // Max |adjacent-sample difference| / grid step over neighbor pairs where
  // both points solved, along both axes. Joint position uses Euclidean
  // distance, theta_joint the wrapped angle difference.
  double max_jump_ell0 = 0, max_jump_kappa0 = 0;
  double max_jump_ell1 = 0, max_jump_kappa1 = 0;
  double max_jump_joint = 0, max_jump_theta_joint = 0;
  std::size_t count_ok = 0, count_no_solution = 0;
  std::size_t count_non_positive_length = 0, count_degenerate_chord = 0;
};

struct SweepReport {
  SweepSpec spec;
  int samples = 0;                 // per axis, after clamping
  std::vector<SweepPoint> points;  // row-major: theta0 outer, theta1 inner
  SweepStats stats;
};

namespace detail {

inline double grid_coord(const std::array<double, 2>& range, int n, int i) {
  if (n == 1) return range[0];
  return range[0] + (range[1] - range[0]) * i / (n - 1);
}

}  // namespace detail

inline SweepReport run_sweep(const SweepSpec& spec) {
  SweepReport rep;
  rep.spec = spec;
  const int n = std::max(spec.samples_per_axis, 1);
  rep.samples = n;
  rep.points.resize(static_cast<std::size_t>(n) * n);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      SweepPoint pt;
      pt.theta0 = detail::grid_coord(spec.theta0_range, n, i);
      pt.theta1 = detail::grid_coord(spec.theta1_range, n, j);
      const auto r = compute_biarc<double>(
          {spec.x0, spec.y0, pt.theta0 + spec.perturbation, spec.x1,
           spec.y1, pt.theta1 + spec.perturbation});
      pt.outcome = r.kind;
      if (r.ok()) {
        const Biarc<double>& b = r.value;
        pt.ell0 = b.arc0.length;
        pt.kappa0 = b.arc0.curvature;
        pt.ell1 = b.arc1.length;
        pt.kappa1 = b.arc1.curvature;
        pt.x_joint = b.x_joint;
        pt.y_joint = b.y_joint;
        pt.theta_joint = b.theta_joint;
      }
      rep.points[static_cast<std::size_t>(i) * n + j] = pt;
    }

  SweepStats& st = rep.stats;
  for (const SweepPoint& pt : rep.points) switch (pt.outcome) {
      case OutcomeKind::Ok: ++st.count_ok; break;
      case OutcomeKind::NoSolution: ++st.count_no_solution; break;
      case OutcomeKind::NonPositiveLength:
        ++st.count_non_positive_length;
        break;
      case OutcomeKind::DegenerateChord: ++st.count_degenerate_chord; break;
    }

  const auto accumulate = [&st](const SweepPoint& a, const SweepPoint& b,
                                double step) {
    if (a.outcome != OutcomeKind::Ok || b.outcome != OutcomeKind::Ok ||
        !(step > 0))
      return;
    const auto bump = [step](double& slot, double diff) {
      slot = std::max(slot, std::abs(diff) / step);
    };
    bump(st.max_jump_ell0, b.ell0 - a.ell0);
    bump(st.max_jump_kappa0, b.kappa0 - a.kappa0);
    bump(st.max_jump_ell1, b.ell1 - a.ell1);
    bump(st.max_jump_kappa1, b.kappa1 - a.kappa1);
    bump(st.max_jump_joint,
         std::hypot(b.x_joint - a.x_joint, b.y_joint - a.y_joint));
    bump(st.max_jump_theta_joint,
         normalize_angle(b.theta_joint - a.theta_joint));
  };
  if (n > 1) {
    const double h0 =
        std::abs(spec.theta0_range[1] - spec.theta0_range[0]) / (n - 1);
    const double h1 =
        std::abs(spec.theta1_range[1] - spec.theta1_range[0]) / (n - 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j + 1 < n; ++j)
        accumulate(rep.points[static_cast<std::size_t>(i) * n + j],
                   rep.points[static_cast<std::size_t>(i) * n + j + 1], h1);
    for (int i = 0; i + 1 < n; ++i)
      for (int j = 0; j < n; ++j)
        accumulate(rep.points[static_cast<std::size_t>(i) * n + j],
                   rep.points[static_cast<std::size_t>(i + 1) * n + j], h0);
  }
  return rep;
}

}  // namespace biarc
