#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "biarc/kernels.hpp"

using biarc::cosc;
using biarc::fn_D;
using biarc::fn_K;
using biarc::normalize_angle;
using biarc::sinc;

namespace {

constexpr double kPi = std::numbers::pi;

bool bits_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

// Reference evaluations at 80-bit precision.
long double sinc_ld(long double x) { return x == 0.0L ? 1.0L : std::sin(x) / x; }
long double cosc_ld(long double x) {
  if (x == 0.0L) return 0.0L;
  const long double s = std::sin(x / 2.0L);
  return 2.0L * s * s / x;
}

}  // namespace

TEST_CASE("sinc: pinned values") {
  CHECK(sinc(0.0) == 1.0);
  // 2/pi, both branches of the sign.
  CHECK(sinc(kPi / 2) == doctest::Approx(0.63661977236758134).epsilon(1e-15));
  CHECK(sinc(-kPi / 2) == sinc(kPi / 2));
  // Series branch: value computed with 60-digit arithmetic.
  CHECK(sinc(1e-3) == doctest::Approx(0.99999983333334167).epsilon(1e-15));
  CHECK(std::abs(sinc(1e-3) - 0.99999983333334167) < 3e-16);
}

TEST_CASE("cosc: pinned values") {
  CHECK(cosc(0.0) == 0.0);
  CHECK(cosc(-kPi) == doctest::Approx(-0.63661977236758134).epsilon(1e-15));
  CHECK(cosc(1e-3) == doctest::Approx(4.9999995833333472e-4).epsilon(1e-15));
  CHECK(std::abs(cosc(1e-3) - 4.9999995833333472e-4) < 2.2e-19);
}

TEST_CASE("sinc/cosc: parity is exact") {
  std::mt19937_64 rng(0xC0FFEE11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 100000; ++i) {
    const double x = u(rng);
    CHECK(bits_equal(sinc(-x), sinc(x)));
    CHECK(bits_equal(cosc(-x), -cosc(x)));
  }
  CHECK(bits_equal(cosc(-0.0), -0.0));
}

TEST_CASE("sinc/cosc: accuracy against 80-bit reference") {
  std::mt19937_64 rng(0xC0FFEE22);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  long double worst_s = 0.0L, worst_c = 0.0L;
  for (int i = 0; i < 200000; ++i) {
    const double x = u(rng);
    worst_s = std::max(worst_s, std::abs((long double)sinc(x) - sinc_ld(x)));
    const long double cref = cosc_ld((long double)x);
    worst_c = std::max(worst_c,
                       std::abs((long double)cosc(x) - cref) /
                           std::max(std::abs(cref), 1e-30L));
  }
  CHECK(worst_s < 5e-16L);   // absolute; |sinc| <= 1
  CHECK(worst_c < 1e-15L);   // relative; cosc spans many magnitudes
}

TEST_CASE("sinc/cosc: branch seam continuity") {
  // Both forms stay within 1e-14 of each other across the crossover band,
  // so the branch switch cannot introduce a visible jump.
  const double th = biarc::kernel_constants.sinc_threshold;
  for (int i = 0; i <= 4000; ++i) {
    const double x = th / 2 + (2.0 * th - th / 2) * i / 4000.0;
    const double rs = std::abs(biarc::detail::sinc_series(x) -
                               biarc::detail::sinc_direct(x)) /
                      std::abs(biarc::detail::sinc_direct(x));
    const double rc = std::abs(biarc::detail::cosc_series(x) -
                               biarc::detail::cosc_direct(x)) /
                      std::abs(biarc::detail::cosc_direct(x));
    CHECK(rs < 1e-14);
    CHECK(rc < 1e-14);
  }
}

TEST_CASE("sinc: range bound") {
  // Global minimum of sin(x)/x is about -0.21723 at |x| ~ 4.4934.
  std::mt19937_64 rng(0xC0FFEE33);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 100000; ++i) {
    const double v = sinc(u(rng));
    CHECK(v <= 1.0);
    CHECK(v >= -0.2172337);
  }
}

TEST_CASE("series truncation bounds are tiny at the crossover") {
  CHECK(biarc::sinc_series_bound(0.002) ==
        doctest::Approx(1.2698412698412698e-20).epsilon(1e-12));
  CHECK(biarc::cosc_series_bound(0.002) ==
        doctest::Approx(3.1746031746031746e-24).epsilon(1e-12));
  CHECK(biarc::kernel_constants.sinc_threshold == 0.002);
  CHECK(biarc::kernel_constants.cosc_threshold == 0.002);
}

TEST_CASE("fn_D: pinned values and exact antisymmetry") {
  CHECK(fn_D(0.7, 0.7) == 0.0);
  CHECK(fn_D(-2.4, -2.4) == 0.0);
  CHECK(fn_D(kPi / 2, -kPi / 2) ==
        doctest::Approx(0.81056946913870217).epsilon(1e-15));
  // Near-zero arguments: limit value (x - y)/2 reproduced exactly.
  CHECK(std::abs(fn_D(1e-9, 2e-9) - (-5e-10)) < 1e-15);

  std::mt19937_64 rng(0xC0FFEE44);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 100000; ++i) {
    const double x = u(rng), y = u(rng);
    CHECK(bits_equal(fn_D(x, y), -fn_D(y, x)));
  }
}

TEST_CASE("fn_K: pinned values and exact symmetry") {
  CHECK(fn_K(0.3, -0.3) == 0.0);
  CHECK(fn_K(1.1, 1.1) == -std::sin(1.1));
  CHECK(fn_K(kPi / 2, 0.0) ==
        doctest::Approx(-0.63661977236758134).epsilon(1e-15));

  std::mt19937_64 rng(0xC0FFEE55);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 100000; ++i) {
    const double x = u(rng), y = u(rng);
    CHECK(bits_equal(fn_K(x, y), fn_K(y, x)));
  }
}

TEST_CASE("fn_D/fn_K: product forms match difference quotients") {
  // Relative agreement with an absolute floor: near the zero sets
  // (x = y for D, x = -y for K) both forms lose all relative accuracy
  // while remaining absolutely accurate, so pure relative comparison is
  // ill-posed there.
  std::mt19937_64 rng(0xC0FFEE66);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  auto quot_D = [](long double x, long double y) {
    return (std::sin(x - y) + std::sin(y) - std::sin(x)) / (x * y);
  };
  auto quot_K = [](long double x, long double y) {
    return (std::cos(x) - std::cos(y)) / (x - y);
  };
  for (int i = 0; i < 100000; ++i) {
    const double x = u(rng), y = u(rng);
    if (std::abs(x * y) > 1e-3) {
      const double dp = fn_D(x, y);
      const double dq = (double)quot_D(x, y);
      CHECK(std::abs(dp - dq) <=
            1e-12 * std::max({std::abs(dp), std::abs(dq), 1e-3}));
    }
    if (std::abs(x - y) > 1e-3) {
      const double kp = fn_K(x, y);
      const double kq = (double)quot_K(x, y);
      CHECK(std::abs(kp - kq) <=
            1e-12 * std::max({std::abs(kp), std::abs(kq), 1e-3}));
    }
  }
}

TEST_CASE("normalize_angle: pinned values") {
  CHECK(normalize_angle(0.0) == 0.0);
  CHECK(normalize_angle(kPi) == kPi);
  CHECK(normalize_angle(-kPi) == kPi);  // open boundary maps to +pi
  CHECK(normalize_angle(1.0) == 1.0);

  // Expected values are the exact reductions of the double inputs,
  // computed with 60-digit arithmetic; allow 1 ulp of reduction noise.
  const double r3pi = normalize_angle(3 * kPi);
  CHECK(std::abs(r3pi - 3.141592653589792871069) < 4.5e-16);
  const double rm32 = normalize_angle(-1.5 * kPi);
  CHECK(std::abs(rm32 - 1.570796326794896802928) < 2.3e-16);
  const double rbig = normalize_angle(12345.5);
  CHECK(std::abs(rbig - (-0.9591286078874271581885)) < 5e-16);
}

TEST_CASE("normalize_angle: range and idempotence") {
  std::mt19937_64 rng(0xC0FFEE77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100000; ++i) {
    const double scale = std::exp2(2.0 + 20.0 * std::abs(u(rng)));
    const double x = u(rng) * scale;
    const double y = normalize_angle(x);
    CHECK(y > -kPi);
    CHECK(y <= kPi);
    CHECK(bits_equal(normalize_angle(y), y));
    // The reduction agrees with an 80-bit reference modulo 2*pi.
    const long double ref =
        std::remainder((long double)x, 2.0L * std::numbers::pi_v<long double>);
    long double diff = std::abs((long double)y - ref);
    diff = std::min(diff,
                    std::abs(diff - 2.0L * std::numbers::pi_v<long double>));
    CHECK(diff < 1e-12L);
  }
}

TEST_CASE("kernels are usable at other precisions") {
  CHECK(sinc(0.0f) == 1.0f);
  CHECK(sinc(0.0L) == 1.0L);
  CHECK(std::abs(sinc(1.5f) - 0.66499666f) < 1e-6f);
  CHECK(std::abs((double)(cosc(2.0L) - 0.70807341827357119350L)) < 1e-18);
  CHECK(normalize_angle(7.0f) > -std::numbers::pi_v<float>);
  CHECK(normalize_angle(7.0L) <= std::numbers::pi_v<long double>);
}
