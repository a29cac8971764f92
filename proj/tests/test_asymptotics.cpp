#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

using namespace relaxtree;

namespace {

// Values frozen by tests/oracles/predictor_values.py (mpmath, 40 digits).
struct PredictorOracle {
  std::vector<std::tuple<int, long long, double>> predictor;
  std::vector<std::tuple<int, int, double>> logrho;
  std::vector<std::pair<long long, double>> logfact;
};

const PredictorOracle& oracle() {
  static const PredictorOracle o = [] {
    PredictorOracle out;
    std::istringstream in(read_file(testing_support::fixture("../oracles/predictor_values.txt")));
    std::string tag;
    while (in >> tag) {
      if (tag == "predictor") {
        int k;
        long long n;
        double v;
        in >> k >> n >> v;
        out.predictor.emplace_back(k, n, v);
      } else if (tag == "logrho") {
        int k, n;
        double v;
        in >> k >> n >> v;
        out.logrho.emplace_back(k, n, v);
      } else if (tag == "logfact") {
        long long n;
        double v;
        in >> n >> v;
        out.logfact.emplace_back(n, v);
      }
    }
    return out;
  }();
  return o;
}

}  // namespace

TEST(Weights, UpWeight) {
  for (int k = 2; k <= 6; ++k) {
    EXPECT_DOUBLE_EQ(weight_U(k, 1, 1), (k - 1.0) * (k - 1.0));
    for (long long i : {5LL, 17LL, 1000LL}) EXPECT_DOUBLE_EQ(weight_U(k, i, k - 1), k - 1.0);
    EXPECT_EQ(weight_U_exact(k, 9, k - 1), mpq_class(k - 1));
  }
  for (long long i = 1; i <= 20; ++i)
    for (long long j = 0; j <= i; ++j) {
      EXPECT_NEAR(weight_U(2, i, j), static_cast<double>(i - j + 2) / static_cast<double>(i + j), 1e-15);
      mpq_class want(mpz_class(static_cast<long>(i - j + 2)), mpz_class(static_cast<long>(i + j)));
      want.canonicalize();
      EXPECT_EQ(weight_U_exact(2, i, j), want);
    }
}

TEST(Weights, Drift) {
  EXPECT_DOUBLE_EQ(drift(3, 10, 0), 1.0);
  for (int k = 2; k <= 6; ++k) EXPECT_DOUBLE_EQ(drift(k, 50, k - 2), 1.0);
  const long long i = 1000000;
  for (int k = 2; k <= 5; ++k)
    for (long long j : {static_cast<long long>(k - 1), 7LL, 20LL})
      EXPECT_NEAR(drift(k, i, j) * static_cast<double>(i), -static_cast<double>(k) * (j - k + 2), 1e-3 * k * (j + 1)) << k << " " << j;
}

TEST(LogFactorial, MatchesOracle) {
  for (const auto& [n, v] : oracle().logfact) EXPECT_NEAR(log_factorial(n) / v, 1.0, 1e-13) << n;
  EXPECT_EQ(log_factorial(0), 0.0);
  EXPECT_EQ(log_factorial(1), 0.0);
  EXPECT_NEAR(log_factorial(10), std::log(3628800.0), 1e-13);
  EXPECT_THROW(log_factorial(-1), Error);
}

TEST(ScaledTable, FirstStep) {
  for (int k = 2; k <= 5; ++k) {
    const auto t = build_scaled_table(k, 3, {0, 1});
    EXPECT_DOUBLE_EQ(std::exp(t.log_d(0, 0)), 1.0);
    EXPECT_NEAR(std::exp(t.log_d(1, 1)), (k - 1.0) * (k - 1.0), 1e-12);
    EXPECT_EQ(t.log_d0(0), 0.0);
    EXPECT_THROW(t.column(2), Error);
  }
}

TEST(ScaledTable, Invariants) {
  for (int k = 2; k <= 5; ++k) {
    std::set<int> keep;
    for (int i = 0; i <= 400; i += 7) keep.insert(i);
    const auto t = build_scaled_table(k, 400, keep);
    for (const auto& [i, col] : t.columns()) {
      double peak = 0;
      for (int j = 0; j < static_cast<int>(col.mantissa.size()); ++j) {
        const double v = col.mantissa[j];
        ASSERT_TRUE(std::isfinite(v));
        ASSERT_GE(v, 0.0);
        if (v > 0) {
          ASSERT_TRUE(ScaledTable::admissible(k, i, j)) << "k=" << k << " i=" << i << " j=" << j;
        }
        peak = std::max(peak, v);
      }
      if (i > 0) {
        EXPECT_GE(peak, 0.5);
        EXPECT_LT(peak, 2.0);
      }
    }
  }
}

TEST(ScaledTable, AgreesWithExactD0) {
  for (int k = 2; k <= 4; ++k) {
    const auto t = build_scaled_table(k, 240);
    const auto exact = exact_d0(k, 240);
    for (int i = 0; i <= 240; ++i) {
      if (sgn(exact[i]) == 0) {
        EXPECT_TRUE(std::isinf(t.log_d0(i)));
        continue;
      }
      const double log_exact = log_mpz(mpz_class(exact[i].get_num())) - log_mpz(mpz_class(exact[i].get_den()));
      EXPECT_NEAR(t.log_d0(i), log_exact, 1e-10 * std::max(1.0, std::fabs(log_exact))) << k << " " << i;
    }
  }
}

TEST(ScaledTable, Limits) {
  EXPECT_THROW(build_scaled_table(2, 20001), Error);
  EXPECT_THROW(build_scaled_table(1, 10), Error);
  EXPECT_NO_THROW(build_scaled_table(2, 30, {}, 30));
}

TEST(Transform, ExactIdentity) {
  for (int k = 2; k <= 4; ++k) {
    const auto rep = transform_identity_check(k, 30);
    EXPECT_TRUE(rep.ok) << "k=" << k << " first mismatch " << rep.first_mismatch_n;
    EXPECT_EQ(rep.checked, 30 / k + 1);
  }
}

TEST(Predictor, PlugIn) {
  EXPECT_NEAR(predictor_log(2, 1), 2 * std::log(2.0) + 3 * airy_root_a1(), 1e-14);
  EXPECT_EQ(std::exp(predictor_log(3, 77) - predictor_log(3, 77)), 1.0);
  EXPECT_THROW(predictor_log(2, 0), Error);
}

TEST(Predictor, MatchesOracle) {
  ASSERT_FALSE(oracle().predictor.empty());
  for (const auto& [k, n, v] : oracle().predictor)
    EXPECT_NEAR(predictor_log(k, n), v, 1e-9 * std::max(1.0, std::fabs(v))) << "k=" << k << " n=" << n;
}

TEST(Ratio, ExactRouteMatchesOracle) {
  std::map<int, std::vector<int>> grids;
  std::map<std::pair<int, int>, double> want;
  for (const auto& [k, n, v] : oracle().logrho) {
    grids[k].push_back(n);
    want[{k, n}] = v;
  }
  for (const auto& [k, grid] : grids) {
    const auto rows = ratio_diagnostic(k, grid, RatioRoute::exact);
    ASSERT_EQ(rows.size(), grid.size());
    for (const auto& r : rows) {
      EXPECT_EQ(r.route, "exact");
      EXPECT_NEAR(r.log_ratio, (want[{k, static_cast<int>(r.n)}]), 1e-9) << "k=" << k << " n=" << r.n;
    }
  }
}

TEST(Ratio, RoutesAgreeOnOverlap) {
  const std::vector<int> grid{50, 100, 200, 400, 600};
  for (int k = 2; k <= 3; ++k) {
    const auto exact = ratio_diagnostic(k, grid, RatioRoute::exact);
    const auto scaled = ratio_diagnostic(k, grid, RatioRoute::scaled);
    for (std::size_t t = 0; t < grid.size(); ++t) {
      EXPECT_EQ(scaled[t].route, "scaled");
      EXPECT_NEAR(exact[t].log_ratio, scaled[t].log_ratio, 1e-6) << "k=" << k << " n=" << grid[t];
    }
  }
}

TEST(Ratio, AutomaticRouteSwitches) {
  const auto rows = ratio_diagnostic(2, {600, 601, 10});
  EXPECT_EQ(rows[0].route, "exact");
  EXPECT_EQ(rows[1].route, "scaled");
  EXPECT_EQ(rows[2].route, "exact");
  EXPECT_EQ(rows[2].n, 10);
  EXPECT_THROW(ratio_diagnostic(2, {0}), Error);
  EXPECT_THROW(parse_ratio_route("fast"), Error);
  EXPECT_EQ(parse_ratio_route("auto"), RatioRoute::automatic);
}

// rho_n > 0 for every computed n, so log rho_n is finite.
TEST(RatioProperty, Positive) {
  std::vector<int> grid;
  for (int n = 1; n <= 120; ++n) grid.push_back(n);
  for (int k = 2; k <= 5; ++k)
    for (const auto& r : ratio_diagnostic(k, grid)) ASSERT_TRUE(std::isfinite(r.log_ratio)) << k << " " << r.n;
}

TEST(Profile, ShrinksWithColumn) {
  for (int k = 2; k <= 3; ++k) {
    // Columns must be populated at j = 0 and be large enough.
    const int i_small = 1000 - (1000 % k), i_big = 10000 - (10000 % k);
    const auto t = build_scaled_table(k, i_big, {i_small, i_big});
    const auto small = profile_check(t, i_small);
    const auto big = profile_check(t, i_big);
    EXPECT_GT(small.best_scale, 0.0);
    EXPECT_GT(big.best_scale, 0.0);
    EXPECT_LT(big.sup_deviation, small.sup_deviation) << "k=" << k;
    // Small-j residuals are bounded by the reported deviation.
    const double peak = [&] {
      double p = 0;
      for (const auto& r : big.rows) p = std::max(p, r.d_scaled);
      return p;
    }();
    EXPECT_LE(std::fabs(big.rows.front().d_scaled - big.rows.front().airy_fit), big.sup_deviation * peak + 1e-15);
  }
}

TEST(Profile, Errors) {
  EXPECT_THROW(profile_check(2, 99), Error);
  const auto t = build_scaled_table(3, 200, {150});
  EXPECT_THROW(profile_check(t, 160), Error);
}
