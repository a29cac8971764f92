// log rho_n = ln r_{(k-1)n,n} - ln(predictor) over a doubling grid, with the
// Airy-profile fit of one column of the transformed table.

#include <cstdio>
#include <cstdlib>

#include "relaxtree/relaxtree.hpp"

int main(int argc, char** argv) {
  using namespace relaxtree;
  const int k = argc > 1 ? std::atoi(argv[1]) : 2;
  std::printf("k=%d\n     n   log rho_n   route\n", k);
  for (const auto& r : ratio_diagnostic(k, {16, 32, 64, 128, 256, 512, 1024}))
    std::printf("%6lld  %10.6f   %s\n", r.n, r.log_ratio, r.route.c_str());
  const int i = 2000 - 2000 % k;
  const auto prof = profile_check(k, i);
  std::printf("profile column i=%d: scale %.6g, sup deviation %.4g over %zu cells\n", i, prof.best_scale,
              prof.sup_deviation, prof.rows.size());
}
