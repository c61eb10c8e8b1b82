#pragma once
// 2x2 solve with full pivoting and a minimal-norm least-squares fallback,
// plus the matching Moore-Penrose pseudoinverse. The fallback is what keeps
// the equal-tangent geometry well defined instead of dividing by a vanishing
// determinant, so the branch condition and the compensated Schur complement
// here are load-bearing for the solver above.

#include <Eigen/Core>

#include <cmath>
#include <concepts>

namespace biarc {

template <std::floating_point T>
using Mat2 = Eigen::Matrix<T, 2, 2>;
template <std::floating_point T>
using Vec2 = Eigen::Matrix<T, 2, 1>;

enum class SolveKind { Unique, LeastSquares, Inconsistent, NullMatrix };

template <std::floating_point T>
struct SolveOutcome {
  Vec2<T> solution = Vec2<T>::Zero();
  SolveKind kind = SolveKind::NullMatrix;
  T residual_norm = T(0);
};

namespace detail {

// a*d - b*c with the product roundings compensated through fma. Exact zero
// when the columns are bitwise equal, which guarantees the least-squares
// branch fires for exactly repeated tangents.
template <std::floating_point T>
T det2(T a, T b, T c, T d) {
  const T w = b * c;
  const T e = std::fma(-b, c, w);
  const T f = std::fma(a, d, -w);
  return f + e;
}

// Largest-magnitude entry; ties go to the smallest (row, col) in row-major
// order so permuted inputs reduce to the same working matrix.
template <std::floating_point T>
void find_pivot(const Mat2<T>& A, int& pr, int& pc, T& amax) {
  pr = 0;
  pc = 0;
  amax = T(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(A(i, j)) > amax) {
        amax = std::abs(A(i, j));
        pr = i;
        pc = j;
      }
}

}  // namespace detail

// Solves A x = b. Full-rank systems get the pivoted LU solution; systems
// whose Schur complement falls below eps_rank * max|A| are treated as rank
// one and get the minimal-norm least-squares solution, flagged Inconsistent
// when its residual exceeds tol_residual. A zero matrix yields NullMatrix
// with x = 0 and residual ||b||.
template <std::floating_point T>
SolveOutcome<T> solve2x2(const Mat2<T>& A, const Vec2<T>& b,
                         T eps_rank = T(1e-12), T tol_residual = T(1e-8)) {
  SolveOutcome<T> out;
  int pr, pc;
  T amax;
  detail::find_pivot(A, pr, pc, amax);
  if (amax == T(0)) {
    out.kind = SolveKind::NullMatrix;
    out.residual_norm = b.norm();
    return out;
  }
  const int qr = 1 - pr, qc = 1 - pc;
  const T m11 = A(pr, pc), m12 = A(pr, qc);
  const T m21 = A(qr, pc), m22 = A(qr, qc);
  const T b1 = b(pr), b2 = b(qr);
  const T r = m21 / m11;
  const T w = detail::det2(m11, m12, m21, m22) / m11;
  Vec2<T> y;
  if (std::abs(w) < eps_rank * amax) {
    // Rank one: treat the rows as multiples (1, r) of (m11, m12); the
    // minimal-norm minimizer of ||Ax - b|| for that outer product is
    // x = t (m11, m12).
    const T t = (b1 + r * b2) / ((T(1) + r * r) * (m11 * m11 + m12 * m12));
    y(0) = t * m11;
    y(1) = t * m12;
    const T r1 = std::fma(m11, y(0), std::fma(m12, y(1), -b1));
    const T r2 = std::fma(m21, y(0), std::fma(m22, y(1), -b2));
    out.residual_norm = std::hypot(r1, r2);
    out.kind = out.residual_norm > tol_residual ? SolveKind::Inconsistent
                                                : SolveKind::LeastSquares;
  } else {
    const T y2 = (b2 - r * b1) / w;
    y(1) = y2;
    y(0) = (b1 - m12 * y2) / m11;
    out.kind = SolveKind::Unique;
    out.residual_norm = T(0);
  }
  out.solution(pc) = y(0);
  out.solution(qc) = y(1);
  return out;
}

// Moore-Penrose pseudoinverse via the same pivoted factorization: inverse
// through the LU factors at full rank, vu^T / (|u|^2 |v|^2) for the rank-one
// outer product u v^T, zero for the zero matrix.
template <std::floating_point T>
Mat2<T> pseudoinverse2x2(const Mat2<T>& A, T eps_rank = T(1e-12)) {
  int pr, pc;
  T amax;
  detail::find_pivot(A, pr, pc, amax);
  if (amax == T(0)) return Mat2<T>::Zero();
  const int qr = 1 - pr, qc = 1 - pc;
  const T m11 = A(pr, pc), m12 = A(pr, qc);
  const T m21 = A(qr, pc), m22 = A(qr, qc);
  const T r = m21 / m11;
  const T w = detail::det2(m11, m12, m21, m22) / m11;
  Mat2<T> mp;
  if (std::abs(w) < eps_rank * amax) {
    const T scale = (T(1) + r * r) * (m11 * m11 + m12 * m12);
    mp(0, 0) = m11 / scale;
    mp(0, 1) = r * m11 / scale;
    mp(1, 0) = m12 / scale;
    mp(1, 1) = r * m12 / scale;
  } else {
    // M = LU with unit lower factor [[1,0],[r,1]] and U = [[m11,m12],[0,w]].
    mp(0, 0) = (T(1) + m12 * r / w) / m11;
    mp(0, 1) = -m12 / (m11 * w);
    mp(1, 0) = -r / w;
    mp(1, 1) = T(1) / w;
  }
  // The pivot swaps factor as A = P M Q with P, Q involutions, so the
  // pseudoinverse is Q mp P: the column swap permutes rows of mp, the row
  // swap permutes its columns.
  const int ci[2] = {pc, qc};
  const int rj[2] = {pr, qr};
  Mat2<T> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = mp(ci[i], rj[j]);
  return out;
}

}  // namespace biarc
