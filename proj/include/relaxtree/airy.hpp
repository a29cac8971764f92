#pragma once

// Airy function Ai on [-6, 30]. Maclaurin series (two auxiliary series,
// long double with compensated summation) up to x = 1, the Bessel form
// Ai(x) = sqrt(x/3)/pi K_{1/3}(zeta) up to x = 10, asymptotic expansion
// beyond. airy_ai_scaled returns Ai(x) * exp(2/3 x^{3/2}) for x > 0 and
// has no upper limit.

#include <cmath>
#include <limits>
#include <string>

#include "relaxtree/error.hpp"

namespace relaxtree {

inline constexpr double kAiryMin = -6.0;
inline constexpr double kAiryMax = 30.0;
inline constexpr double kAirySeriesMax = 1.0;
inline constexpr double kAiryBesselMax = 10.0;

namespace detail {

inline constexpr long double kAiryC1 = 0.355028053887817239260063186004183L;  // Ai(0)
inline constexpr long double kAiryC2 = 0.258819403792806798405183560189204L;  // -Ai'(0)
inline constexpr long double kPiL = 3.141592653589793238462643383279503L;

struct Kahan {
  long double sum = 0, comp = 0;
  void add(long double v) {
    const long double y = v - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct AiryPair {
  long double ai, aip;
};

inline AiryPair airy_series(long double x) {
  const long double x3 = x * x * x;
  Kahan f, g, fp, gp;
  long double a = 1, b = x, ap = x * x / 2, bp = 1;
  f.add(a);
  g.add(b);
  gp.add(bp);
  fp.add(ap);
  for (int n = 1; n < 200; ++n) {
    a *= x3 / ((3.0L * n - 1) * (3.0L * n));
    b *= x3 / ((3.0L * n) * (3.0L * n + 1));
    bp *= x3 / ((3.0L * n) * (3.0L * n - 2));
    f.add(a);
    g.add(b);
    gp.add(bp);
    if (n >= 2) {
      ap *= x3 / ((3.0L * n - 1) * (3.0L * n - 3));
      fp.add(ap);
    }
    const long double tiny = std::numeric_limits<long double>::epsilon() * 1e-3L;
    if (std::fabs(a) + std::fabs(b) + std::fabs(ap) + std::fabs(bp) < tiny) break;
  }
  return {kAiryC1 * f.sum - kAiryC2 * g.sum, kAiryC1 * fp.sum - kAiryC2 * gp.sum};
}

// Asymptotic series without the exp(-zeta) factor.
inline AiryPair airy_asymptotic_scaled(long double x) {
  const long double zeta = 2.0L / 3.0L * x * std::sqrt(x);
  long double term = 1, s = 1, sp = 1;
  for (int k = 1; k < 60; ++k) {
    const long double next = term * (6.0L * k - 5) * (6.0L * k - 3) * (6.0L * k - 1) / (216.0L * k * (2.0L * k - 1) * zeta);
    if (std::fabs(next) >= std::fabs(term)) break;
    term = next;
    const long double sign = (k % 2) ? -1.0L : 1.0L;
    s += sign * term;
    sp += sign * (-(6.0L * k + 1) / (6.0L * k - 1)) * term;
    if (std::fabs(term) < 1e-22L) break;
  }
  const long double q = std::sqrt(std::sqrt(x));
  const long double pre = 1.0L / (2.0L * std::sqrt(kPiL));
  return {pre / q * s, -pre * q * sp};
}

// Ai and Ai' from K_{1/3}, K_{2/3}, each multiplied by exp(scale).
inline AiryPair airy_bessel(long double x, long double scale) {
  const long double zeta = 2.0L / 3.0L * x * std::sqrt(x);
  const long double e = std::exp(scale);
  return {std::sqrt(x / 3.0L) / kPiL * std::cyl_bessel_kl(1.0L / 3.0L, zeta) * e,
          -x / (kPiL * std::sqrt(3.0L)) * std::cyl_bessel_kl(2.0L / 3.0L, zeta) * e};
}

inline void check_airy_domain(double x, double hi) {
  if (!(x >= kAiryMin && x <= hi))
    throw Error("airy-domain", "Airy argument " + std::to_string(x) + " outside the supported domain");
}

}  // namespace detail

inline double airy_ai(double x) {
  detail::check_airy_domain(x, kAiryMax);
  if (x <= kAirySeriesMax) return static_cast<double>(detail::airy_series(x).ai);
  if (x <= kAiryBesselMax) return static_cast<double>(detail::airy_bessel(x, 0).ai);
  return static_cast<double>(detail::airy_asymptotic_scaled(x).ai * std::exp(-2.0L / 3.0L * x * std::sqrt(static_cast<long double>(x))));
}

inline double airy_ai_prime(double x) {
  detail::check_airy_domain(x, kAiryMax);
  if (x <= kAirySeriesMax) return static_cast<double>(detail::airy_series(x).aip);
  if (x <= kAiryBesselMax) return static_cast<double>(detail::airy_bessel(x, 0).aip);
  return static_cast<double>(detail::airy_asymptotic_scaled(x).aip * std::exp(-2.0L / 3.0L * x * std::sqrt(static_cast<long double>(x))));
}

// Ai(x) * exp(2/3 x^{3/2}) for x > 0, plain Ai(x) for x <= 0.
inline double airy_ai_scaled(double x) {
  detail::check_airy_domain(x, std::numeric_limits<double>::infinity());
  if (x <= 0) return static_cast<double>(detail::airy_series(x).ai);
  const long double zeta = 2.0L / 3.0L * x * std::sqrt(static_cast<long double>(x));
  if (x <= kAirySeriesMax) return static_cast<double>(detail::airy_series(x).ai * std::exp(zeta));
  if (x <= kAiryBesselMax) return static_cast<double>(detail::airy_bessel(x, zeta).ai);
  return static_cast<double>(detail::airy_asymptotic_scaled(x).ai);
}

// Exponent zeta(x) = 2/3 x^{3/2} for x > 0, else 0: Ai(x) = airy_ai_scaled(x) * exp(-zeta).
inline double airy_zeta(double x) { return x > 0 ? 2.0 / 3.0 * x * std::sqrt(x) : 0.0; }

// Largest zero a1 of Ai.
inline double airy_root_a1() {
  static const double root = [] {
    long double lo = -2.4L, hi = -2.3L;  // Ai(lo) < 0 < Ai(hi)
    while (hi - lo > 1e-13L) {
      const long double mid = (lo + hi) / 2;
      (detail::airy_series(mid).ai < 0 ? lo : hi) = mid;
    }
    long double x = (lo + hi) / 2;
    const auto p = detail::airy_series(x);
    x -= p.ai / p.aip;
    return static_cast<double>(x);
  }();
  return root;
}

}  // namespace relaxtree
