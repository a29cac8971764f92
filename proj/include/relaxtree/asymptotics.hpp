#pragma once

// Dyck-like transformed recurrence
//   d_{i,j} = U(i,j) d_{i-1,j-1} + d_{i-1,j+k-1},   d_{0,0} = 1,
// with r_{(k-1)n,n} = ((k-1)n)! / (k-1)^{2(k-1)n} * d_{kn,0}, the leading
// order predictor for log r_{(k-1)n,n}, and the Airy profile fit.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "relaxtree/airy.hpp"
#include "relaxtree/error.hpp"
#include "relaxtree/exact_count.hpp"

namespace relaxtree {

inline double weight_U(int k, long long i, long long j) {
  const double km1 = k - 1;
  return km1 * km1 * static_cast<double>(i - j + k) / (km1 * static_cast<double>(i) + static_cast<double>(j));
}

inline mpq_class weight_U_exact(int k, long long i, long long j) {
  mpq_class q(mpz_class(static_cast<long>((k - 1) * (k - 1) * (i - j + k))), mpz_class(static_cast<long>((k - 1) * i + j)));
  q.canonicalize();
  return q;
}

inline double drift(int k, long long i, long long j) {
  if (j >= 0 && j <= k - 2) return 1.0;
  return -static_cast<double>(k) * (k - 1) * static_cast<double>(j - k + 2) /
         (static_cast<double>(k) * static_cast<double>(i + 1) - static_cast<double>(i) + static_cast<double>(j));
}

inline constexpr long long kLogFactorialExactLimit = 10000;

inline double log_factorial(long long n) {
  if (n < 0) throw Error("invalid-argument", "factorial of a negative number");
  static const std::vector<long double> table = [] {
    std::vector<long double> t(kLogFactorialExactLimit, 0.0L);
    long double acc = 0.0L, comp = 0.0L;
    for (long long m = 2; m < kLogFactorialExactLimit; ++m) {
      const long double y = std::log(static_cast<long double>(m)) - comp;
      const long double s = acc + y;
      comp = (s - acc) - y;
      acc = s;
      t[m] = acc;
    }
    return t;
  }();
  if (n < kLogFactorialExactLimit) return static_cast<double>(table[n]);
  const long double x = static_cast<long double>(n);
  const long double pi = 3.141592653589793238462643383279503L;
  const long double x2 = x * x;
  return static_cast<double>(x * std::log(x) - x + 0.5L * std::log(2 * pi * x) + 1.0L / (12 * x) - 1.0L / (360 * x * x2) +
                             1.0L / (1260 * x * x2 * x2));
}

// ---------------------------------------------------------------------------

inline constexpr int kScaledTableCeiling = 20000;

// Columns of d stored as mantissa * 2^exponent. Every column's exponent is
// recorded; mantissas are kept only for retained columns, while d_{i,0} is
// kept for all i.
class ScaledTable {
 public:
  struct Column {
    long long exponent = 0;  // value = mantissa * 2^exponent
    std::vector<double> mantissa;
  };

  ScaledTable() = default;
  ScaledTable(int k, int i_max) : k_(k), i_max_(i_max) {}

  int arity() const noexcept { return k_; }
  int i_max() const noexcept { return i_max_; }

  static bool admissible(int k, long long i, long long j) {
    return i >= 0 && j >= 0 && j <= i && ((k - 1) * i + j) % k == 0;
  }
  bool populated(long long i, long long j) const { return admissible(k_, i, j); }

  bool retained(int i) const { return columns_.count(i) != 0; }
  const Column& column(int i) const {
    auto it = columns_.find(i);
    if (it == columns_.end()) throw Error("out-of-range", "column " + std::to_string(i) + " not retained");
    return it->second;
  }
  const std::map<int, Column>& columns() const noexcept { return columns_; }

  long long exponent(int i) const { return exponents_.at(i); }

  // ln d_{i,0}; -inf where unpopulated.
  double log_d0(int i) const {
    if (i < 0 || i > i_max_) throw Error("out-of-range", "column outside the table");
    return log_d0_[i];
  }

  double log_d(int i, int j) const {
    const Column& c = column(i);
    if (j < 0 || j >= static_cast<int>(c.mantissa.size()) || c.mantissa[j] <= 0)
      return -std::numeric_limits<double>::infinity();
    return std::log(c.mantissa[j]) + static_cast<double>(c.exponent) * std::log(2.0);
  }

  // ln dtilde_{i,j} = ln d_{i,j} - 2n ln(k-1), n = ((k-1)i + j)/k.
  double log_d_tilde(int i, int j) const {
    const double n = static_cast<double>((static_cast<long long>(k_ - 1) * i + j) / k_);
    return log_d(i, j) - 2.0 * n * std::log(static_cast<double>(k_ - 1));
  }

 private:
  friend ScaledTable build_scaled_table(int, int, const std::set<int>&, int);
  int k_ = 2;
  int i_max_ = 0;
  std::vector<long long> exponents_;
  std::vector<double> log_d0_;
  std::map<int, Column> columns_;
};

// retain: column indices whose full mantissa vector is kept.
inline ScaledTable build_scaled_table(int k, int i_max, const std::set<int>& retain = {}, int ceiling = kScaledTableCeiling) {
  if (k < 2 || i_max < 0) throw Error("invalid-argument", "need k >= 2 and i_max >= 0");
  if (i_max > ceiling) throw Error("too-large", "scaled table limited to i <= " + std::to_string(ceiling));
  ScaledTable t(k, i_max);
  t.exponents_.assign(i_max + 1, 0);
  t.log_d0_.assign(i_max + 1, -std::numeric_limits<double>::infinity());
  t.log_d0_[0] = 0.0;
  std::vector<double> prev{1.0}, cur;
  long long exp2 = 0;
  const double ln2 = std::log(2.0);
  if (retain.count(0)) t.columns_[0] = {0, prev};
  for (int i = 1; i <= i_max; ++i) {
    cur.assign(std::min<std::size_t>(prev.size() + 1, static_cast<std::size_t>(i) + 1), 0.0);
    double peak = 0.0;
    for (int j = 0; j < static_cast<int>(cur.size()); ++j) {
      double v = 0.0;
      if (j >= 1 && j - 1 < static_cast<int>(prev.size())) v += weight_U(k, i, j) * prev[j - 1];
      if (j + k - 1 < static_cast<int>(prev.size())) v += prev[j + k - 1];
      cur[j] = v;
      peak = std::max(peak, v);
    }
    if (!(peak > 0) || !std::isfinite(peak)) throw Error("scale-overflow", "column " + std::to_string(i) + " degenerate");
    int e = 0;
    std::frexp(peak, &e);  // peak in [2^{e-1}, 2^e)
    for (double& v : cur) v = std::ldexp(v, -e + 1);  // peak now in [1, 2)
    if (std::llabs(exp2) > (1LL << 60)) throw Error("scale-overflow", "scale exponent overflow");
    exp2 += e - 1;
    while (cur.size() > 1 && cur.back() == 0.0) cur.pop_back();
    t.exponents_[i] = exp2;
    if (cur[0] > 0) t.log_d0_[i] = std::log(cur[0]) + static_cast<double>(exp2) * ln2;
    if (retain.count(i)) t.columns_[i] = {exp2, cur};
    std::swap(prev, cur);
  }
  return t;
}

// Exact d_{i,0} for i = 0..i_max by rational recurrence.
inline std::vector<mpq_class> exact_d0(int k, int i_max) {
  if (k < 2 || i_max < 0) throw Error("invalid-argument", "need k >= 2 and i_max >= 0");
  std::vector<mpq_class> prev{mpq_class(1)}, cur, out{mpq_class(1)};
  for (int i = 1; i <= i_max; ++i) {
    cur.assign(static_cast<std::size_t>(i) + 1, mpq_class(0));
    for (int j = 0; j <= i; ++j) {
      if (j >= 1 && j - 1 < static_cast<int>(prev.size())) cur[j] += weight_U_exact(k, i, j) * prev[j - 1];
      if (j + k - 1 < static_cast<int>(prev.size())) cur[j] += prev[j + k - 1];
    }
    out.push_back(cur[0]);
    std::swap(prev, cur);
  }
  return out;
}

struct TransformReport {
  bool ok = true;
  int checked = 0;
  int first_mismatch_n = -1;
};

// Exact check of r_{(k-1)n,n} = ((k-1)n)! / (k-1)^{2(k-1)n} * d_{kn,0} for kn <= kn_max.
inline TransformReport transform_identity_check(int k, int kn_max) {
  TransformReport rep;
  const int n_max = kn_max / k;
  const auto diag = diagonal_sequence(CountKind::relaxed, k, n_max);
  const auto d0 = exact_d0(k, k * n_max);
  for (int n = 0; n <= n_max; ++n) {
    mpz_class fact, pw;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>((k - 1) * n));
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(k - 1), static_cast<unsigned long>(2 * (k - 1) * n));
    mpq_class rhs = mpq_class(fact) / mpq_class(pw) * d0[static_cast<std::size_t>(k) * n];
    rhs.canonicalize();
    ++rep.checked;
    if (rhs != mpq_class(diag[n])) {
      rep.ok = false;
      if (rep.first_mismatch_n < 0) rep.first_mismatch_n = n;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

inline double predictor_log(int k, long long n) {
  if (k < 2 || n < 1) throw Error("invalid-argument", "need k >= 2 and n >= 1");
  const double kd = k, nd = static_cast<double>(n);
  const double a1 = airy_root_a1();
  return (kd - 1) * log_factorial(n) + nd * (kd * std::log(kd) - (kd - 1) * std::log(kd - 1)) +
         3.0 * std::cbrt(kd * (kd - 1) / 2.0) * a1 * std::cbrt(nd) + (2.0 * kd - 1.0) / 3.0 * std::log(nd);
}

enum class RatioRoute { exact, scaled, automatic };

inline constexpr int kExactRouteLimit = 600;

inline std::string_view to_string(RatioRoute r) {
  switch (r) {
    case RatioRoute::exact: return "exact";
    case RatioRoute::scaled: return "scaled";
    case RatioRoute::automatic: return "auto";
  }
  return "?";
}

inline RatioRoute parse_ratio_route(std::string_view s) {
  if (s == "exact") return RatioRoute::exact;
  if (s == "scaled") return RatioRoute::scaled;
  if (s == "auto") return RatioRoute::automatic;
  throw Error("invalid-argument", "route must be exact, scaled or auto");
}

struct RatioRow {
  long long n;
  double log_ratio;
  std::string route;
};

// log rho_n = ln r_{(k-1)n,n} - predictor_log(k, n) on the given grid.
inline std::vector<RatioRow> ratio_diagnostic(int k, std::vector<int> n_grid, RatioRoute route = RatioRoute::automatic) {
  if (k < 2) throw Error("invalid-argument", "need k >= 2");
  for (int n : n_grid)
    if (n < 1) throw Error("invalid-argument", "grid entries must be >= 1");
  std::vector<RatioRow> rows;
  if (n_grid.empty()) return rows;
  auto use_exact = [&](int n) {
    return route == RatioRoute::exact || (route == RatioRoute::automatic && n <= kExactRouteLimit);
  };
  int exact_max = 0, scaled_max = 0;
  for (int n : n_grid) {
    int& top = use_exact(n) ? exact_max : scaled_max;
    top = std::max(top, n);
  }

  std::vector<mpz_class> diag;
  if (exact_max > 0) diag = diagonal_sequence(CountKind::relaxed, k, exact_max);
  ScaledTable table;
  if (scaled_max > 0) table = build_scaled_table(k, k * scaled_max);

  for (int n : n_grid) {
    double log_r;
    if (use_exact(n)) {
      log_r = log_mpz(diag[n]);
    } else {
      log_r = log_factorial(static_cast<long long>(k - 1) * n) -
              2.0 * (k - 1) * n * std::log(static_cast<double>(k - 1)) + table.log_d0(k * n);
    }
    rows.push_back({n, log_r - predictor_log(k, n), std::string(to_string(use_exact(n) ? RatioRoute::exact : RatioRoute::scaled))});
  }
  return rows;
}

// ---------------------------------------------------------------------------

struct ProfileRow {
  int j;
  double d_scaled;  // d_{i,j} / 2^{exponent(i)}
  double airy_fit;  // alpha * Ai(a1 + B(j+1)/i^{1/3})
};

struct ProfileReport {
  int i = 0;
  double best_scale = 0.0;     // alpha, in units of 2^{exponent(i)}
  double sup_deviation = 0.0;  // max |d - fit| / max d over the fitted range
  double j_limit = 0.0;
  std::vector<ProfileRow> rows;
};

inline constexpr int kProfileMinColumn = 100;

inline ProfileReport profile_check(const ScaledTable& t, int i) {
  if (i < kProfileMinColumn) throw Error("invalid-argument", "profile check needs i >= 100");
  const int k = t.arity();
  const auto& col = t.column(i);
  const double a1 = airy_root_a1();
  const double B = std::cbrt(2.0 / (k - 1));
  ProfileReport rep;
  rep.i = i;
  rep.j_limit = std::pow(static_cast<double>(i), 2.0 / 3.0 - 0.1);
  double num = 0, den = 0, peak = 0;
  std::vector<double> prof;
  for (int j = 0; j < rep.j_limit && j < static_cast<int>(col.mantissa.size()); ++j) {
    if (!t.populated(i, j)) continue;
    const double f = airy_ai(a1 + B * (j + 1) / std::cbrt(static_cast<double>(i)));
    const double d = col.mantissa[j];
    num += d * f;
    den += f * f;
    peak = std::max(peak, d);
    rep.rows.push_back({j, d, f});
  }
  if (rep.rows.empty() || !(den > 0) || !(peak > 0)) throw Error("empty-column", "no populated cells in the fitted range");
  rep.best_scale = num / den;
  for (auto& r : rep.rows) {
    r.airy_fit *= rep.best_scale;
    rep.sup_deviation = std::max(rep.sup_deviation, std::fabs(r.d_scaled - r.airy_fit) / peak);
  }
  return rep;
}

inline ProfileReport profile_check(int k, int i) {
  return profile_check(build_scaled_table(k, i, {i}), i);
}

}  // namespace relaxtree
