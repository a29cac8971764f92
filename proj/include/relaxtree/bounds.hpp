#pragma once

// Airy-type bound sequences for d_{i,j}:
//
//   X_{i,j} = P(i,j) * Ai(a1 + B (j+1) / i^{1/3}),   B = (2/(k-1))^{1/3},
//
// with the polynomial correction
//
//   P = 1 - 2^{2/3} a1 (k-2) / (6 (k-1)^{2/3}) * j/i^{2/3} - (k+2)/(6(k-1)) * j^2/i
//       + (7k-11)/(6(k-1)) * j/i + a1^2 (k-2)^2 B^4 / 72 * j^2/i^{4/3}
//       + a1 (k^2-4) B^5 / 72 * j^3/i^{5/3}   [+ eta * j^4/i^2 on the upper side]
//
// and the step factors s_i = k (1 + a1/(B i^{2/3}) + (7k-6)/(6i) -/+ i^{-7/6}).
// The lower sequence satisfies X_{i,j} s_i <= U(i,j) X_{i-1,j-1} + X_{i-1,j+k-1}
// for large i, the upper one the reverse inequality.

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "relaxtree/airy.hpp"
#include "relaxtree/asymptotics.hpp"
#include "relaxtree/error.hpp"

namespace relaxtree {

enum class BoundSide { lower, upper };

inline std::string_view to_string(BoundSide s) { return s == BoundSide::lower ? "lower" : "upper"; }

inline BoundSide parse_bound_side(std::string_view s) {
  if (s == "lower") return BoundSide::lower;
  if (s == "upper") return BoundSide::upper;
  throw Error("invalid-argument", "side must be lower or upper");
}

inline double eta_threshold(int k) {
  const double km1 = k - 1;
  return (k + 2.0) * (k + 2.0) / (72.0 * km1 * km1);
}

struct BoundParams {
  int k = 2;
  double B = 0;
  double a1 = 0;
  double eta = 0;
  double epsilon = 0.1;
  double c = 0;   // k (k-1)^{1/3} a1 / 2^{1/3}
  long long i0 = -1;  // set once verified

  BoundParams() = default;
  BoundParams(int k_, double eta_, double epsilon_) : k(k_), eta(eta_), epsilon(epsilon_) {
    if (k < 2) throw Error("invalid-argument", "need k >= 2");
    if (!(eta > eta_threshold(k)))
      throw Error("invalid-argument", "eta must exceed (k+2)^2/(72(k-1)^2) = " + std::to_string(eta_threshold(k)));
    if (!(epsilon > 0 && epsilon < 2.0 / 3.0)) throw Error("invalid-argument", "epsilon must lie in (0, 2/3)");
    B = std::cbrt(2.0 / (k - 1));
    a1 = airy_root_a1();
    c = k * std::cbrt(static_cast<double>(k - 1)) * a1 / std::cbrt(2.0);
  }

  static BoundParams standard(int k, double epsilon = 0.1) { return BoundParams(k, 1.05 * eta_threshold(k), epsilon); }
};

// Alternative readings of the bound formulas.
struct BoundForm {
  enum class Neighbours {
    recurrence,  // U X_{i-1,j-1} + X_{i-1,j+k-1}
    swapped      // U X_{i-1,j+1} + X_{i-1,j-1}
  };
  enum class Cubic {
    linear,  // a1 (k^2-4) B^5 / 72
    squared  // a1 (k^2-4)^2 B^5 / 72
  };
  enum class Quartic {
    ij,  // eta j^4 / i^2
    mn   // eta m^4 / n^2 with m = (i-j)/k, n = ((k-1)i+j)/k
  };
  Neighbours neighbours = Neighbours::recurrence;
  Cubic cubic = Cubic::linear;
  Quartic quartic = Quartic::ij;
};

inline double bound_polynomial(BoundSide side, const BoundParams& p, double i, double j, const BoundForm& form = {}) {
  const int k = p.k;
  const double km1 = k - 1;
  const double a1 = p.a1, B = p.B;
  const double i13 = std::cbrt(i), i23 = i13 * i13;
  const double cubic = form.cubic == BoundForm::Cubic::linear ? (k * k - 4.0) : (k * k - 4.0) * (k * k - 4.0);
  double poly = 1.0 - std::cbrt(4.0) * a1 * (k - 2) / (6.0 * std::cbrt(km1 * km1)) * j / i23 -
                (k + 2.0) / (6.0 * km1) * j * j / i + (7.0 * k - 11.0) / (6.0 * km1) * j / i +
                a1 * a1 * (k - 2.0) * (k - 2.0) * std::pow(B, 4) / 72.0 * j * j / (i * i13) +
                a1 * cubic * std::pow(B, 5) / 72.0 * j * j * j / (i * i23);
  if (side == BoundSide::upper) {
    if (form.quartic == BoundForm::Quartic::ij) {
      poly += p.eta * j * j * j * j / (i * i);
    } else {
      const double m = (i - j) / k, n = (km1 * i + j) / k;
      poly += p.eta * m * m * m * m / (n * n);
    }
  }
  return poly;
}

inline double bound_argument(const BoundParams& p, double i, double j) { return p.a1 + p.B * (j + 1.0) / std::cbrt(i); }

inline double bound_value(BoundSide side, const BoundParams& p, long long i, long long j, const BoundForm& form = {}) {
  if (i < 1 || j < -1) throw Error("invalid-argument", "need i >= 1 and j >= -1");
  const double x = bound_argument(p, static_cast<double>(i), static_cast<double>(j));
  return bound_polynomial(side, p, static_cast<double>(i), static_cast<double>(j), form) * airy_ai(x);
}

inline double step_factor(BoundSide side, int k, double a1, double B, long long i) {
  const double id = static_cast<double>(i);
  const double sgn = side == BoundSide::lower ? -1.0 : 1.0;
  return k * (1.0 + a1 / (B * std::cbrt(id * id)) + (7.0 * k - 6.0) / (6.0 * id) + sgn * std::pow(id, -7.0 / 6.0));
}

inline double step_factor(BoundSide side, const BoundParams& p, long long i) { return step_factor(side, p.k, p.a1, p.B, i); }

struct HProduct {
  int sign = 1;
  double log_abs = 0.0;  // ln |prod_{t=1..i} s_t|
};

// h(0) = 1; h(i) = s_i h(i-1).
inline HProduct h_product_log(BoundSide side, int k, long long i) {
  if (k < 2 || i < 1) throw Error("invalid-argument", "need k >= 2 and i >= 1");
  const double a1 = airy_root_a1(), B = std::cbrt(2.0 / (k - 1));
  HProduct h;
  for (long long t = 1; t <= i; ++t) {
    const double s = step_factor(side, k, a1, B, t);
    if (s == 0) return {0, -std::numeric_limits<double>::infinity()};
    if (s < 0) h.sign = -h.sign;
    h.log_abs += std::log(std::fabs(s));
  }
  return h;
}

struct BoundViolation {
  long long i;
  long long j;
  double lhs;
  double rhs;
};

struct BoundReport {
  BoundSide side = BoundSide::lower;
  int k = 2;
  double eta = 0;
  double epsilon = 0;
  long long i_min = 2;
  long long scanned_i_max = 0;
  long long i0 = 2;  // no violation in [i0, scanned_i_max]
  long long violation_count = 0;
  std::vector<BoundViolation> violations;  // first kMaxStored, ordered by (i, j)
  static constexpr std::size_t kMaxStored = 10000;
};

inline double j_limit(BoundSide side, double epsilon, long long i) {
  const double e = (side == BoundSide::lower ? 2.0 / 3.0 : 1.0) - epsilon;
  return std::pow(static_cast<double>(i), e);
}

namespace detail {

// Column i of the bound sequence on j = -1 .. j_hi as (P * Ai_scaled(x), zeta(x)),
// so that X_{i,j} = value * exp(-zeta). The lower side is clamped at 0.
struct BoundColumn {
  std::vector<double> value, zeta;
  double at_scaled(long long j, double z_ref) const {
    return value[static_cast<std::size_t>(j + 1)] * std::exp(z_ref - zeta[static_cast<std::size_t>(j + 1)]);
  }
};

inline BoundColumn bound_column(BoundSide side, const BoundParams& p, const BoundForm& form, long long i, long long j_hi) {
  BoundColumn c;
  c.value.resize(static_cast<std::size_t>(j_hi + 2));
  c.zeta.resize(c.value.size());
  for (long long j = -1; j <= j_hi; ++j) {
    const double x = bound_argument(p, static_cast<double>(i), static_cast<double>(j));
    double v = bound_polynomial(side, p, static_cast<double>(i), static_cast<double>(j), form) * airy_ai_scaled(x);
    if (side == BoundSide::lower) v = std::max(v, 0.0);
    c.value[static_cast<std::size_t>(j + 1)] = v;
    c.zeta[static_cast<std::size_t>(j + 1)] = airy_zeta(x);
  }
  return c;
}

// Largest j any scan at column i (as current or as previous column) touches.
inline long long bound_j_hi(BoundSide side, const BoundParams& p, long long i) {
  return static_cast<long long>(std::ceil(j_limit(side, p.epsilon, i + 1))) + p.k + 1;
}

}  // namespace detail

inline BoundReport verify_bounds(BoundSide side, const BoundParams& p, long long i_min, long long i_max, int threads = 1,
                                 const BoundForm& form = {}) {
  if (i_min < 2) i_min = 2;
  if (i_max < i_min) throw Error("invalid-argument", "empty scan range");
  threads = static_cast<int>(std::clamp<long long>(threads, 1, i_max - i_min + 1));
  BoundReport rep;
  rep.side = side;
  rep.k = p.k;
  rep.eta = p.eta;
  rep.epsilon = p.epsilon;
  rep.i_min = i_min;
  rep.scanned_i_max = i_max;

  struct Partial {
    std::vector<BoundViolation> found;
    long long count = 0;
    long long last = -1;
  };
  // Contiguous blocks; the work per column grows with i, so block edges are
  // placed at equal shares of sum_i j_limit(i).
  std::vector<long long> edges{i_min};
  {
    double total = 0;
    for (long long i = i_min; i <= i_max; ++i) total += j_limit(side, p.epsilon, i) + 1;
    double acc = 0;
    int next = 1;
    for (long long i = i_min; i <= i_max && next < threads; ++i) {
      acc += j_limit(side, p.epsilon, i) + 1;
      if (acc >= total * next / threads) {
        edges.push_back(i + 1);
        ++next;
      }
    }
    while (static_cast<int>(edges.size()) <= threads) edges.push_back(i_max + 1);
  }
  std::vector<Partial> parts(threads);
  const bool rec = form.neighbours == BoundForm::Neighbours::recurrence;
  auto work = [&](int tid) {
    Partial& out = parts[tid];
    const long long lo = edges[tid], hi = std::min(edges[tid + 1], i_max + 1);
    if (lo >= hi) return;
    detail::BoundColumn prev = detail::bound_column(side, p, form, lo - 1, detail::bound_j_hi(side, p, lo - 1));
    for (long long i = lo; i < hi; ++i) {
      detail::BoundColumn cur = detail::bound_column(side, p, form, i, detail::bound_j_hi(side, p, i));
      const double lim = j_limit(side, p.epsilon, i);
      const double s = step_factor(side, p, i);
      for (long long j = 0; static_cast<double>(j) < lim; ++j) {
        const double z0 = cur.zeta[static_cast<std::size_t>(j + 1)];
        const double lhs = cur.value[static_cast<std::size_t>(j + 1)] * s;
        const double rhs = weight_U(p.k, i, j) * prev.at_scaled(rec ? j - 1 : j + 1, z0) +
                           prev.at_scaled(rec ? j + p.k - 1 : j - 1, z0);
        const bool bad = side == BoundSide::lower ? lhs > rhs : lhs < rhs;
        if (!bad) continue;
        ++out.count;
        out.last = std::max(out.last, i);
        if (out.found.size() < BoundReport::kMaxStored) out.found.push_back({i, j, lhs, rhs});
      }
      prev = std::move(cur);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  long long last = -1;
  for (auto& part : parts) {
    rep.violation_count += part.count;
    last = std::max(last, part.last);
    rep.violations.insert(rep.violations.end(), part.found.begin(), part.found.end());
  }
  if (rep.violations.size() > BoundReport::kMaxStored) rep.violations.resize(BoundReport::kMaxStored);
  rep.i0 = last < 0 ? i_min : last + 1;
  return rep;
}

inline BoundReport verify_bounds(BoundSide side, int k, double eta, double epsilon, long long i_min, long long i_max,
                                 int threads = 1, const BoundForm& form = {}) {
  return verify_bounds(side, BoundParams(k, eta, epsilon), i_min, i_max, threads, form);
}

}  // namespace relaxtree
