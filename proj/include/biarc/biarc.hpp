#pragma once
// Biarc G1 Hermite interpolation: reduce the endpoint data to a standard
// frame, assemble the 2x2 tangent system, solve it (least-squares fallback
// on the rank-deficient set where the tangents coincide), and map back to
// world coordinates. Evaluation is closed-form circular motion throughout;
// zero curvature degenerates to straight lines through the same kernels.

#include <cmath>
#include <concepts>
#include <stdexcept>

#include "biarc/kernels.hpp"
#include "biarc/linalg2.hpp"

namespace biarc {

enum class OutcomeKind { Ok, DegenerateChord, NoSolution, NonPositiveLength };

// Value-or-error carrier. `value` is meaningful only when ok().
template <typename V>
struct Result {
  V value{};
  OutcomeKind kind = OutcomeKind::Ok;
  bool ok() const { return kind == OutcomeKind::Ok; }
};

template <std::floating_point T>
struct HermiteData {
  T x0 = T(0), y0 = T(0);
  T theta0_world = T(0);
  T x1 = T(0), y1 = T(0);
  T theta1_world = T(0);
};

template <std::floating_point T>
struct Frame {
  T alpha = T(0);  // chord direction, in (-pi, pi]
  T d = T(0);      // chord length, > 0
};

// Angles with the chord direction subtracted; theta_star is the joint
// tangent selection -(theta0 + theta1)/2 and dtheta0/1 are the turning
// amounts theta_star - theta0/1 of the two arcs.
template <std::floating_point T>
struct StandardProblem {
  T theta0 = T(0), theta1 = T(0);
  T theta_star = T(0);
  T dtheta0 = T(0), dtheta1 = T(0);
};

template <std::floating_point T>
struct StandardSolution {
  T s = T(0), t = T(0);  // arc lengths as fractions of the chord
  T kappa0_std = T(0), kappa1_std = T(0);
  SolveKind solve_kind = SolveKind::Unique;
  T residual_norm = T(0);
};

template <std::floating_point T>
struct ArcSegment {
  T x_start = T(0), y_start = T(0);
  T theta_start = T(0);
  T curvature = T(0);  // exactly 0 for straight segments
  T length = T(0);     // > 0
};

template <std::floating_point T>
struct Biarc {
  ArcSegment<T> arc0, arc1;
  T x_joint = T(0), y_joint = T(0);
  T theta_joint = T(0);
  T total_length = T(0);
  T ell_star = T(0);  // arclength of the joint, = arc0.length
  SolveKind solve_kind = SolveKind::Unique;
  T residual_norm = T(0);
};

template <std::floating_point T>
struct PointPose {
  T x = T(0), y = T(0);
  T theta = T(0);
  T kappa = T(0);
};

template <std::floating_point T>
struct SolveSettings {
  T eps_rank = T(1e-12);            // rank cutoff, relative to max|A|
  T tol_residual = T(1e-8);         // consistency bound for the LS branch
  T min_length = T(1e-14);          // s, t must exceed this
  T degenerate_column = T(1e-12);   // both-columns-vanish cutoff (theta at +-pi)
};

template <std::floating_point T>
struct Standardized {
  StandardProblem<T> problem;
  Frame<T> frame;
};

// Rigid motion + scaling onto the unit chord: p0 -> (0,0), p1 -> (1,0).
template <std::floating_point T>
Result<Standardized<T>> to_standard(const HermiteData<T>& h) {
  const T dx = h.x1 - h.x0, dy = h.y1 - h.y0;
  const T d = std::hypot(dx, dy);
  if (!(d > T(1e-300))) return {{}, OutcomeKind::DegenerateChord};
  Standardized<T> out;
  out.frame.alpha = normalize_angle(std::atan2(dy, dx));
  out.frame.d = d;
  auto& sp = out.problem;
  sp.theta0 = normalize_angle(h.theta0_world - out.frame.alpha);
  sp.theta1 = normalize_angle(h.theta1_world - out.frame.alpha);
  sp.theta_star = -(sp.theta0 + sp.theta1) / T(2);
  sp.dtheta0 = sp.theta_star - sp.theta0;
  sp.dtheta1 = sp.theta_star - sp.theta1;
  return {out, OutcomeKind::Ok};
}

// Column j is the chord vector swept by a unit-fraction arc that starts at
// angle theta_j and turns by dtheta_j: R(theta_j) (sinc dtheta_j, cosc dtheta_j).
// Bitwise-equal tangents give bitwise-equal columns, which the solver's
// compensated determinant maps to an exact rank decision.
template <std::floating_point T>
Mat2<T> assemble_matrix(const StandardProblem<T>& sp) {
  const T c0 = std::cos(sp.theta0), s0 = std::sin(sp.theta0);
  const T c1 = std::cos(sp.theta1), s1 = std::sin(sp.theta1);
  const T u0 = sinc(sp.dtheta0), v0 = cosc(sp.dtheta0);
  const T u1 = sinc(sp.dtheta1), v1 = cosc(sp.dtheta1);
  // fma keeps each entry within ~1 ulp; entry rounding is the noise floor
  // of the near-singular determinant cancellation downstream.
  Mat2<T> A;
  A(0, 0) = std::fma(c0, u0, -s0 * v0);
  A(1, 0) = std::fma(s0, u0, c0 * v0);
  A(0, 1) = std::fma(c1, u1, -s1 * v1);
  A(1, 1) = std::fma(s1, u1, c1 * v1);
  return A;
}

// Solve A (s, t)^T = (1, 0)^T for the two arc fractions. The rank-deficient
// case (equal tangents) takes the minimal-norm least-squares solution, which
// satisfies s + t = 1/sinc(theta). NoSolution covers the inconsistent
// configuration theta0 = theta1 = +-pi, where both columns vanish and no
// biarc with this joint rule exists.
template <std::floating_point T>
Result<StandardSolution<T>> solve_standard(
    const StandardProblem<T>& sp, const SolveSettings<T>& cfg = {}) {
  const Mat2<T> A = assemble_matrix(sp);
  if (A.col(0).norm() < cfg.degenerate_column &&
      A.col(1).norm() < cfg.degenerate_column)
    return {{}, OutcomeKind::NoSolution};
  const auto out = solve2x2(A, Vec2<T>(T(1), T(0)), cfg.eps_rank,
                            cfg.tol_residual);
  if (out.kind == SolveKind::Inconsistent || out.kind == SolveKind::NullMatrix)
    return {{}, OutcomeKind::NoSolution};
  StandardSolution<T> sol;
  sol.s = out.solution(0);
  sol.t = out.solution(1);
  sol.solve_kind = out.kind;
  sol.residual_norm = out.residual_norm;
  if (!(sol.s > cfg.min_length) || !(sol.t > cfg.min_length))
    return {{}, OutcomeKind::NonPositiveLength};
  sol.kappa0_std = sp.dtheta0 / sol.s;
  sol.kappa1_std = -sp.dtheta1 / sol.t;
  return {sol, OutcomeKind::Ok};
}

// Full pipeline from endpoint data to the world-frame two-arc curve.
template <std::floating_point T>
Result<Biarc<T>> compute_biarc(const HermiteData<T>& h,
                               const SolveSettings<T>& cfg = {}) {
  const auto std_form = to_standard(h);
  if (!std_form.ok()) return {{}, std_form.kind};
  const auto& sp = std_form.value.problem;
  const auto& fr = std_form.value.frame;
  const auto sol = solve_standard(sp, cfg);
  if (!sol.ok()) return {{}, sol.kind};

  Biarc<T> b;
  b.solve_kind = sol.value.solve_kind;
  b.residual_norm = sol.value.residual_norm;
  const T ell0 = fr.d * sol.value.s;
  const T ell1 = fr.d * sol.value.t;
  b.ell_star = ell0;
  b.total_length = ell0 + ell1;

  const Mat2<T> A = assemble_matrix(sp);
  const T ca = std::cos(fr.alpha), sa = std::sin(fr.alpha);
  b.x_joint = h.x0 + ell0 * (ca * A(0, 0) - sa * A(1, 0));
  b.y_joint = h.y0 + ell0 * (sa * A(0, 0) + ca * A(1, 0));
  b.theta_joint = normalize_angle(sp.theta_star + fr.alpha);

  b.arc0.x_start = h.x0;
  b.arc0.y_start = h.y0;
  b.arc0.theta_start = normalize_angle(h.theta0_world);
  b.arc0.curvature = sp.dtheta0 / ell0;  // exact 0 when dtheta0 is 0
  b.arc0.length = ell0;

  b.arc1.x_start = b.x_joint;
  b.arc1.y_start = b.y_joint;
  b.arc1.theta_start = b.theta_joint;
  b.arc1.curvature = -sp.dtheta1 / ell1;
  b.arc1.length = ell1;
  return {b, OutcomeKind::Ok};
}

// Constant-curvature motion from the segment start. Total in ell and in
// curvature: kappa = 0 is ordinary straight travel via sinc(0)=1, cosc(0)=0.
template <std::floating_point T>
PointPose<T> arc_eval(const ArcSegment<T>& seg, T ell) {
  const T turn = seg.curvature * ell;
  const T u = sinc(turn), v = cosc(turn);
  const T c = std::cos(seg.theta_start), s = std::sin(seg.theta_start);
  PointPose<T> p;
  p.x = seg.x_start + ell * (c * u - s * v);
  p.y = seg.y_start + ell * (s * u + c * v);
  p.theta = seg.theta_start + turn;
  p.kappa = seg.curvature;
  return p;
}

// Piecewise evaluation over [0, total_length]; the curvature at exactly
// ell_star is arc1's (half-open first interval).
template <std::floating_point T>
PointPose<T> biarc_eval(const Biarc<T>& b, T ell) {
  if (!(ell >= T(0)) || !(ell <= b.total_length))
    throw std::out_of_range("biarc_eval: arclength outside [0, L]");
  if (ell < b.ell_star) return arc_eval(b.arc0, ell);
  return arc_eval(b.arc1, ell - b.ell_star);
}

}  // namespace biarc
