#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace relaxtree;

TEST(BoundParams, Construction) {
  for (int k = 2; k <= 5; ++k) {
    const auto p = BoundParams::standard(k);
    EXPECT_NEAR(p.B, std::cbrt(2.0 / (k - 1)), 1e-15);
    EXPECT_GT(p.a1, -2.4);
    EXPECT_LT(p.a1, -2.3);
    EXPECT_NEAR(p.eta, 1.05 * (k + 2.0) * (k + 2.0) / (72.0 * (k - 1.0) * (k - 1.0)), 1e-15);
    EXPECT_NEAR(p.c, k * std::cbrt(k - 1.0) * p.a1 / std::cbrt(2.0), 1e-14);
    EXPECT_EQ(p.i0, -1);
  }
}

TEST(BoundParams, RejectsSmallEta) {
  for (int k = 2; k <= 5; ++k) {
    const double t = eta_threshold(k);
    EXPECT_THROW(BoundParams(k, t, 0.1), Error);
    EXPECT_THROW(BoundParams(k, 0.9 * t, 0.1), Error);
    EXPECT_NO_THROW(BoundParams(k, 1.001 * t, 0.1));
  }
  EXPECT_THROW(BoundParams(2, 1.0, 0.0), Error);
  EXPECT_THROW(BoundParams(2, 1.0, 2.0 / 3.0), Error);
  EXPECT_THROW(BoundParams(1, 1.0, 0.1), Error);
}

// For k = 2 the (k-2)-proportional terms vanish.
TEST(BoundValue, BinaryShape) {
  const auto p = BoundParams::standard(2);
  for (double i : {10.0, 300.0, 5000.0})
    for (double j : {0.0, 3.0, 17.0}) {
      const double want = 1.0 - 4.0 / 6.0 * j * j / i + 3.0 / 6.0 * j / i;
      EXPECT_NEAR(bound_polynomial(BoundSide::lower, p, i, j), want, 1e-14);
      EXPECT_NEAR(bound_polynomial(BoundSide::upper, p, i, j), want + p.eta * j * j * j * j / (i * i), 1e-12);
    }
}

TEST(BoundValue, DifferByEtaTerm) {
  for (int k = 2; k <= 5; ++k) {
    const auto p = BoundParams::standard(k);
    for (long long i : {50LL, 400LL, 3000LL})
      for (long long j = 0; j < 40; ++j) {
        const double x = bound_argument(p, static_cast<double>(i), static_cast<double>(j));
        const double diff = bound_value(BoundSide::upper, p, i, j) - bound_value(BoundSide::lower, p, i, j);
        const double eta_term = p.eta * std::pow(static_cast<double>(j), 4) / (static_cast<double>(i) * i) * airy_ai(x);
        EXPECT_NEAR(diff, eta_term, 1e-12 * std::max(1.0, std::fabs(eta_term)));
        if (x > p.a1) {
          EXPECT_GE(diff, 0.0);
        }
      }
  }
}

TEST(BoundValue, VanishesAtAiryRoot) {
  const auto p = BoundParams::standard(3);
  // j = -1 puts the Airy argument exactly at a1.
  EXPECT_NEAR(bound_value(BoundSide::lower, p, 1000, -1), 0.0, 1e-12);
  EXPECT_NEAR(bound_value(BoundSide::upper, p, 1000, -1), 0.0, 1e-12);
  EXPECT_THROW(bound_value(BoundSide::lower, p, 0, 1), Error);
  // Extreme arguments leave the Airy domain.
  EXPECT_THROW(bound_value(BoundSide::lower, p, 1, 100), Error);
}

TEST(BoundForm, Alternatives) {
  const auto p = BoundParams::standard(4);
  BoundForm squared;
  squared.cubic = BoundForm::Cubic::squared;
  const double i = 800, j = 9;
  const double diff = bound_polynomial(BoundSide::lower, p, i, j, squared) - bound_polynomial(BoundSide::lower, p, i, j);
  EXPECT_NEAR(diff, p.a1 * (12.0 * 12.0 - 12.0) * std::pow(p.B, 5) / 72.0 * j * j * j / std::pow(i, 5.0 / 3.0), 1e-14);
  BoundForm mn;
  mn.quartic = BoundForm::Quartic::mn;
  const double m = (i - j) / 4, n = (3 * i + j) / 4;
  EXPECT_NEAR(bound_polynomial(BoundSide::upper, p, i, j, mn) - bound_polynomial(BoundSide::lower, p, i, j),
              p.eta * m * m * m * m / (n * n), 1e-9);
  EXPECT_EQ(bound_polynomial(BoundSide::lower, p, i, j, mn), bound_polynomial(BoundSide::lower, p, i, j));
}

TEST(StepFactor, Sides) {
  for (int k = 2; k <= 5; ++k) {
    const auto p = BoundParams::standard(k);
    for (long long i : {1LL, 2LL, 10LL, 1000LL}) {
      const double id = static_cast<double>(i);
      const double base = k * (1 + p.a1 / (p.B * std::pow(id, 2.0 / 3.0)) + (7.0 * k - 6) / (6 * id));
      EXPECT_NEAR(step_factor(BoundSide::lower, p, i), base - k * std::pow(id, -7.0 / 6.0), 1e-12);
      EXPECT_NEAR(step_factor(BoundSide::upper, p, i), base + k * std::pow(id, -7.0 / 6.0), 1e-12);
    }
  }
}

TEST(HProduct, SingleFactor) {
  for (int k = 2; k <= 5; ++k)
    for (auto side : {BoundSide::lower, BoundSide::upper}) {
      const auto h = h_product_log(side, k, 1);
      const double s1 = step_factor(side, BoundParams::standard(k), 1);
      EXPECT_EQ(h.sign, s1 < 0 ? -1 : 1);
      EXPECT_NEAR(h.log_abs, std::log(std::fabs(s1)), 1e-15);
    }
  EXPECT_THROW(h_product_log(BoundSide::lower, 2, 0), Error);
}

TEST(HProductProperty, LowerBelowUpper) {
  for (int k = 2; k <= 5; ++k) {
    const auto p = BoundParams::standard(k);
    for (long long i = 1; i <= 3000; ++i) ASSERT_LE(step_factor(BoundSide::lower, p, i), step_factor(BoundSide::upper, p, i));
    for (long long i : {5LL, 50LL, 500LL, 3000LL}) {
      const auto lo = h_product_log(BoundSide::lower, k, i), hi = h_product_log(BoundSide::upper, k, i);
      if (lo.sign > 0 && hi.sign > 0) {
        EXPECT_LE(lo.log_abs, hi.log_abs) << k << " " << i;
      }
    }
  }
}

// g(i) = h_log(i) - i ln k - 3 a1 i^{1/3} / B - ((7k-6)/6) ln i converges:
// its doubling increments stay below the leading tail terms, which vanish.
TEST(HProductProperty, Converges) {
  for (int k = 2; k <= 5; ++k) {
    const auto p = BoundParams::standard(k);
    auto g = [&](long long i) {
      const double id = static_cast<double>(i);
      return h_product_log(BoundSide::upper, k, i).log_abs - id * std::log(k) - 3 * p.a1 * std::cbrt(id) / p.B -
             (7.0 * k - 6) / 6 * std::log(id);
    };
    auto tail = [&](double i) {
      return 6 * (1 - std::pow(2.0, -1.0 / 6)) * std::pow(i, -1.0 / 6) +
             3 * (1 - std::pow(2.0, -1.0 / 3)) * p.a1 * p.a1 / (2 * p.B * p.B) * std::pow(i, -1.0 / 3) +
             1.5 * (1 - std::pow(2.0, -2.0 / 3)) * std::fabs(p.a1) * (7.0 * k - 6) / (6 * p.B) * std::pow(i, -2.0 / 3);
    };
    for (long long i : {1000LL, 10000LL, 100000LL}) EXPECT_LE(std::fabs(g(2 * i) - g(i)), 1.25 * tail(i)) << k << " " << i;
  }
}

TEST(VerifyBounds, FrozenThresholds) {
  // Scan to 2000 with the standard parameters.
  const std::map<int, std::pair<long long, long long>> i0{{2, {2, 33}}, {3, {8, 36}}, {4, {189, 152}}, {5, {2001, 458}}};
  for (const auto& [k, want] : i0) {
    const auto lo = verify_bounds(BoundSide::lower, BoundParams::standard(k), 2, 2000);
    const auto hi = verify_bounds(BoundSide::upper, BoundParams::standard(k), 2, 2000);
    EXPECT_EQ(lo.i0, want.first) << k;
    EXPECT_EQ(hi.i0, want.second) << k;
    EXPECT_EQ(lo.scanned_i_max, 2000);
    for (const auto& v : hi.violations) EXPECT_LT(v.i, hi.i0);
    EXPECT_EQ(static_cast<long long>(hi.violations.size()), hi.violation_count);
  }
}

// Beyond i0, recompute every inequality directly from bound_value.
TEST(VerifyBoundsProperty, IndependentRecheck) {
  for (int k : {2, 3}) {
    const auto p = BoundParams::standard(k);
    for (auto side : {BoundSide::lower, BoundSide::upper}) {
      const auto rep = verify_bounds(side, p, 2, 400);
      auto X = [&](long long i, long long j) {
        if (j < 0) return 0.0;
        const double x = bound_argument(p, static_cast<double>(i), static_cast<double>(j));
        const double v = bound_polynomial(side, p, static_cast<double>(i), static_cast<double>(j)) * airy_ai_scaled(x) *
                         std::exp(-airy_zeta(x));
        return side == BoundSide::lower ? std::max(v, 0.0) : v;
      };
      long long checked = 0;
      for (long long i = std::max<long long>(rep.i0, 300); i <= 400; ++i)
        for (long long j = 0; j < j_limit(side, p.epsilon, i); ++j) {
          const double lhs = X(i, j) * step_factor(side, p, i);
          const double rhs = weight_U(k, i, j) * X(i - 1, j - 1) + X(i - 1, j + k - 1);
          const double tol = 1e-12 * std::max(std::fabs(lhs), std::fabs(rhs));
          if (side == BoundSide::lower) {
            ASSERT_LE(lhs, rhs + tol) << i << " " << j;
          } else {
            ASSERT_GE(lhs, rhs - tol) << i << " " << j;
          }
          ++checked;
        }
      EXPECT_GT(checked, 100);
    }
  }
}

TEST(VerifyBounds, ThreadCountDoesNotChangeResult) {
  const auto p = BoundParams::standard(4);
  const auto one = verify_bounds(BoundSide::lower, p, 2, 1500, 1);
  const auto four = verify_bounds(BoundSide::lower, p, 2, 1500, 4);
  EXPECT_EQ(one.i0, four.i0);
  EXPECT_EQ(one.violation_count, four.violation_count);
  ASSERT_EQ(one.violations.size(), four.violations.size());
  for (std::size_t t = 0; t < one.violations.size(); ++t) {
    EXPECT_EQ(one.violations[t].i, four.violations[t].i);
    EXPECT_EQ(one.violations[t].j, four.violations[t].j);
    EXPECT_EQ(one.violations[t].lhs, four.violations[t].lhs);
  }
}

TEST(VerifyBounds, SwappedNeighboursBreakTheUpperBound) {
  BoundForm swapped;
  swapped.neighbours = BoundForm::Neighbours::swapped;
  const auto rep = verify_bounds(BoundSide::upper, BoundParams::standard(3), 2, 1000, 1, swapped);
  EXPECT_GT(rep.i0, verify_bounds(BoundSide::upper, BoundParams::standard(3), 2, 1000).i0);
}

TEST(VerifyBounds, Parsing) {
  EXPECT_EQ(parse_bound_side("upper"), BoundSide::upper);
  EXPECT_THROW(parse_bound_side("middle"), Error);
  EXPECT_EQ(to_string(BoundSide::lower), "lower");
}
