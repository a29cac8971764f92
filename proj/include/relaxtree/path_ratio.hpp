#pragma once

// Weighted path counts p_{r,s,kn}: paths in the d recurrence from (r,s) to
// (kn,0) never going below y = 0. Computed backwards in exact rationals:
//
//   p_{r,s} = U(r+1,s+1) p_{r+1,s+1} + p_{r+1,s-k+1},
//   p_{kn,s} = [s = 0],  p_{r,s} = 0 for s < 0.
//
// p_ratio_check tests
//   p_{r,s1}/(s1+1) >= p_{r,s2}/(s2+1)   for 0 <= s1 < s2 <= r <= kn, k | s2-s1,
//   p_{kx,ky} <= (ky+1) p_{kx,0}         for 0 <= y <= x <= n.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "relaxtree/asymptotics.hpp"
#include "relaxtree/error.hpp"

namespace relaxtree {

inline constexpr int kPathRatioLimit = 60;  // kn

class PathWeights {
 public:
  PathWeights(int k, int n) : k_(k), len_(k * n), p_(static_cast<std::size_t>(len_ + 1) * (len_ + 1)) {
    for (int r = len_; r >= 0; --r) {
      for (int s = 0; s <= len_; ++s) {
        mpq_class& cell = p_[index(r, s)];
        if (r == len_) {
          cell = s == 0 ? 1 : 0;
          continue;
        }
        cell = 0;
        if (s + 1 <= len_) cell += weight_U_exact(k, r + 1, s + 1) * p_[index(r + 1, s + 1)];
        if (s - k + 1 >= 0) cell += p_[index(r + 1, s - k + 1)];
      }
    }
  }

  int arity() const noexcept { return k_; }
  int length() const noexcept { return len_; }
  const mpq_class& at(int r, int s) const {
    if (r < 0 || r > len_ || s < 0 || s > len_) throw Error("out-of-range", "p index outside the table");
    return p_[index(r, s)];
  }

 private:
  std::size_t index(int r, int s) const { return static_cast<std::size_t>(r) * (len_ + 1) + s; }
  int k_, len_;
  std::vector<mpq_class> p_;
};

struct PRatioViolation {
  std::string inequality;  // "ratio" or "origin"
  int r = -1, s1 = -1, s2 = -1;
};

struct PRatioReport {
  bool ok = true;
  int k = 2, n = 0;
  long long ratio_checks = 0;
  long long origin_checks = 0;
  long long violations = 0;
  PRatioViolation first_violation;
};

inline PRatioReport p_ratio_check(int k, int n) {
  if (k < 2 || n < 0) throw Error("invalid-argument", "need k >= 2 and n >= 0");
  if (k * n > kPathRatioLimit) throw Error("too-large", "exact p table limited to kn <= 60");
  const PathWeights p(k, n);
  PRatioReport rep;
  rep.k = k;
  rep.n = n;
  auto fail = [&](PRatioViolation v) {
    ++rep.violations;
    if (rep.ok) rep.first_violation = std::move(v);
    rep.ok = false;
  };
  const int len = k * n;
  for (int r = 0; r <= len; ++r)
    for (int s1 = 0; s1 <= r; ++s1)
      for (int s2 = s1 + k; s2 <= r; s2 += k) {
        ++rep.ratio_checks;
        if (p.at(r, s1) * (s2 + 1) < p.at(r, s2) * (s1 + 1)) fail({"ratio", r, s1, s2});
      }
  for (int x = 0; x <= n; ++x)
    for (int y = 0; y <= x; ++y) {
      ++rep.origin_checks;
      if (p.at(k * x, k * y) > (k * y + 1) * p.at(k * x, 0)) fail({"origin", k * x, 0, k * y});
    }
  return rep;
}

}  // namespace relaxtree
