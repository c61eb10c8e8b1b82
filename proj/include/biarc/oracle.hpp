#pragma once
// Independent cross-checks for the solver: extended-precision kernel
// references, the closed-form Cramer solution of the tangent system, direct
// integration of the tangent ODE, and brute-force least squares. These paths
// deliberately avoid the production kernels and solver so that a
// disagreement localizes the bug.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "biarc/biarc.hpp"

namespace biarc::oracle {

// 80-bit kernel references, accurate to about 1e-19 on [-pi, pi].
inline long double sinc_ref(long double x) {
  return x == 0.0L ? 1.0L : std::sin(x) / x;
}

inline long double cosc_ref(long double x) {
  if (x == 0.0L) return 0.0L;
  const long double s = std::sin(x / 2.0L);
  return 2.0L * s * s / x;
}

// Difference-quotient forms of the determinant helpers; accurate where the
// denominators stay away from zero, which is where they are used.
inline long double fn_D_quotient(long double x, long double y) {
  return (std::sin(x - y) + std::sin(y) - std::sin(x)) / (x * y);
}

inline long double fn_K_quotient(long double x, long double y) {
  return (std::cos(x) - std::cos(y)) / (x - y);
}

// Closed-form solution of the 2x2 tangent system by Cramer's rule on the
// determinant helpers. Returns nullopt (singular determinant) within
// 1e-12 of the rank-deficient set; positivity of s, t is not enforced here.
inline std::optional<StandardSolution<double>> cramer_solution(
    const StandardProblem<double>& sp) {
  const double D = fn_D(sp.dtheta0, sp.dtheta1);
  if (std::abs(D) <= 1e-12) return std::nullopt;
  StandardSolution<double> sol;
  sol.s = -fn_K(sp.theta1, sp.theta_star) / D;
  sol.t = fn_K(sp.theta0, sp.theta_star) / D;
  sol.kappa0_std = sp.dtheta0 / sol.s;
  sol.kappa1_std = -sp.dtheta1 / sol.t;
  sol.solve_kind = SolveKind::Unique;
  sol.residual_norm = 0.0;
  return sol;
}

enum class Method { RK4 };

struct IntegrationConfig {
  int step_count = 1 << 16;  // per arc, clamped to >= 1024
  Method method = Method::RK4;
};

struct TerminalState {
  double x = 0, y = 0, theta = 0;
};

namespace detail {

// One constant-curvature leg of the tangent ODE x' = cos(theta),
// y' = sin(theta), theta' = kappa, advanced by classic RK4 in long double.
inline void rk4_arc(long double& x, long double& y, long double& theta,
                    long double kappa, long double length, int steps) {
  const long double h = length / steps;
  for (int i = 0; i < steps; ++i) {
    const long double t1 = theta;
    const long double t2 = theta + kappa * h / 2.0L;
    const long double t4 = theta + kappa * h;
    x += h / 6.0L *
         (std::cos(t1) + 4.0L * std::cos(t2) + std::cos(t4));
    y += h / 6.0L *
         (std::sin(t1) + 4.0L * std::sin(t2) + std::sin(t4));
    theta = t4;
  }
}

}  // namespace detail

// Integrates the tangent ODE over the biarc's piecewise-constant curvature
// field and returns the terminal pose, for comparison against the Hermite
// target. Stepping restarts at the joint so no step straddles the
// curvature jump.
inline TerminalState integrate_frenet(const Biarc<double>& b,
                                      IntegrationConfig cfg = {}) {
  const int steps = std::max(cfg.step_count, 1024);
  long double x = b.arc0.x_start, y = b.arc0.y_start;
  long double theta = b.arc0.theta_start;
  detail::rk4_arc(x, y, theta, b.arc0.curvature, b.arc0.length, steps);
  // Restart from the stored joint pose so arc1 is verified from its own
  // initial condition rather than inheriting arc0's integration error.
  long double x1 = b.arc1.x_start, y1 = b.arc1.y_start;
  long double theta1 = b.arc1.theta_start;
  detail::rk4_arc(x1, y1, theta1, b.arc1.curvature, b.arc1.length, steps);
  // Any mismatch between arc0's integrated end and arc1's start is real
  // geometry error; carry it into the terminal state.
  return {(double)(x1 + (x - b.arc1.x_start)),
          (double)(y1 + (y - b.arc1.y_start)),
          (double)(theta1 + (theta - b.arc1.theta_start))};
}

// Exhaustive minimizer of ||Ax - b|| over a square grid, the brute-force
// witness for the least-squares branch. Ties (within floating-point noise
// of the best residual) prefer the smallest ||x||, then row-major order.
inline Vec2<double> grid_least_squares(const Mat2<double>& A,
                                       const Vec2<double>& b,
                                       double grid_extent, int grid_n) {
  const int n = std::max(grid_n, 1000);
  const double amax = A.cwiseAbs().maxCoeff();
  const double bmax = b.cwiseAbs().maxCoeff();
  const double bound = 2.0 * amax * grid_extent + bmax;
  const double slack = 4096.0 * 2.23e-16 * bound * bound;
  auto coord = [&](int i) {
    return -grid_extent + 2.0 * grid_extent * i / (n - 1);
  };
  auto rr_at = [&](double x1, double x2) {
    const double r1 = A(0, 0) * x1 + A(0, 1) * x2 - b(0);
    const double r2 = A(1, 0) * x1 + A(1, 1) * x2 - b(1);
    return r1 * r1 + r2 * r2;
  };
  double best_rr = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      best_rr = std::min(best_rr, rr_at(coord(i), coord(j)));
  Vec2<double> best(0, 0);
  double best_n2 = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x1 = coord(i), x2 = coord(j);
      if (rr_at(x1, x2) > best_rr + slack) continue;
      const double n2 = x1 * x1 + x2 * x2;
      if (!found || n2 < best_n2) {
        found = true;
        best_n2 = n2;
        best << x1, x2;
      }
    }
  return best;
}

}  // namespace biarc::oracle
