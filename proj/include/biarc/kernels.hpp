#pragma once

// Stable scalar kernels underlying all arc geometry: sinc, cosc, the
// 2x2-system determinant helpers fn_D/fn_K, and angle normalization.
// Everything here is pure, stateless and safe for concurrent use.

#include <cmath>
#include <concepts>
#include <numbers>

namespace biarc {

// Series/direct crossover points. Below the threshold the truncated
// Maclaurin forms are used; their truncation error is bounded by
// sinc_series_bound / cosc_series_bound (next omitted term).
struct KernelConstants {
  double sinc_threshold = 0.002;
  double cosc_threshold = 0.002;
};

inline constexpr KernelConstants kernel_constants{};

// |x|^6/5040: truncation error bound of the three-term sinc series.
template <std::floating_point T>
constexpr T sinc_series_bound(T x) {
  const T a = x < T(0) ? -x : x;
  const T a2 = a * a;
  return a2 * a2 * a2 / T(5040);
}

// |x|^7/40320: truncation error bound of the three-term cosc series.
template <std::floating_point T>
constexpr T cosc_series_bound(T x) {
  const T a = x < T(0) ? -x : x;
  const T a2 = a * a;
  return a2 * a2 * a2 * a / T(40320);
}

namespace detail {

// Three-term Maclaurin form of sin(x)/x; even polynomial, valid as a
// sub-ulp approximation for |x| <= a few times the crossover threshold.
template <std::floating_point T>
constexpr T sinc_series(T x) {
  const T x2 = x * x;
  return T(1) - x2 / T(6) * (T(1) - x2 / T(20));
}

template <std::floating_point T>
T sinc_direct(T x) {
  return std::sin(x) / x;
}

// Three-term Maclaurin form of (1 - cos x)/x; odd polynomial.
template <std::floating_point T>
constexpr T cosc_series(T x) {
  const T x2 = x * x;
  return x / T(2) * (T(1) - x2 / T(12) * (T(1) - x2 / T(30)));
}

// (1 - cos x)/x computed as 2 sin^2(x/2)/x: the direct subtraction loses
// ~5 digits near the series crossover, this form is accurate to ~2 ulp
// everywhere, which the branch-seam continuity contract requires.
template <std::floating_point T>
T cosc_direct(T x) {
  const T s = std::sin(x / T(2));
  return T(2) * s * s / x;
}

// two_pi_tail<T> + 2*pi_v<T> reproduces 2*pi to roughly twice the
// precision of T; used for angle reduction against the true period.
template <std::floating_point T>
inline constexpr T two_pi_tail = T(0);
template <>
inline constexpr float two_pi_tail<float> = -1.7484555314695172e-07f;
template <>
inline constexpr double two_pi_tail<double> = 2.4492935982947064e-16;
template <>
inline constexpr long double two_pi_tail<long double> =
    -1.00331152253366640471e-19L;

}  // namespace detail

// sin(x)/x with the removable singularity filled. Evaluated on |x|, so
// evenness holds bitwise. Range [-0.21723..., 1] on the reals.
template <std::floating_point T>
T sinc(T x) {
  const T ax = std::abs(x);
  return ax < T(kernel_constants.sinc_threshold) ? detail::sinc_series(ax)
                                                 : detail::sinc_direct(ax);
}

// (1 - cos x)/x with the removable singularity filled; odd, and oddness
// holds bitwise (magnitude computed on |x|, sign restored).
template <std::floating_point T>
T cosc(T x) {
  const T ax = std::abs(x);
  const T m = ax < T(kernel_constants.cosc_threshold) ? detail::cosc_series(ax)
                                                      : detail::cosc_direct(ax);
  return std::copysign(m, x);
}

// D(x,y) = (sin(x-y) + sin y - sin x)/(x y), singularities filled.
// Antisymmetric bitwise; D(x,x) = 0 exactly. This is the determinant of
// the biarc system matrix expressed through the stable kernels.
template <std::floating_point T>
T fn_D(T x, T y) {
  return sinc(y) * cosc(x) - sinc(x) * cosc(y);
}

// K(x,y) = (cos x - cos y)/(x - y), singularity at x = y filled
// (K(x,x) = -sin x). Symmetric bitwise. Product form via the half-angle
// identity cos x - cos y = -2 sin((x+y)/2) sin((x-y)/2), which divided by
// (x - y) gives -sin((x+y)/2) sinc((x-y)/2).
template <std::floating_point T>
T fn_K(T x, T y) {
  return -std::sin((x + y) / T(2)) * sinc((x - y) / T(2));
}

// Reduces x to the equivalent angle in (-pi, pi]. The reduction runs
// against a two-term split of 2*pi, so results track the true
// mathematical reduction to ~1 ulp instead of drifting by k*2.4e-16 as
// reduction modulo fl(2*pi) would. Values reducing to the open boundary
// -pi map to +pi. Meaningful while |x|/(2*pi) stays well inside the
// integer range of T's mantissa.
template <std::floating_point T>
T normalize_angle(T x) {
  const T pi = std::numbers::pi_v<T>;
  const T two_pi_hi = T(2) * pi;  // exact
  const T two_pi_lo = detail::two_pi_tail<T>;
  if (x > -pi && x <= pi) return x;
  const T k = std::nearbyint(x / two_pi_hi);
  T y = std::fma(-k, two_pi_hi, x);
  y = std::fma(-k, two_pi_lo, y);
  if (y > pi) {
    y = (y - two_pi_hi) - two_pi_lo;
    if (y <= -pi) y = pi;
  } else if (y <= -pi) {
    y = (y + two_pi_hi) + two_pi_lo;
    if (y > pi) y = pi;
  }
  return y;
}

}  // namespace biarc
