#pragma once

// CSV emitters: comma separated, header row, LF line endings. Reals are
// printed with 17 significant digits so output is reproducible bit for bit.

#include <cstdio>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "relaxtree/asymptotics.hpp"
#include "relaxtree/bounds.hpp"

namespace relaxtree {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string count_csv(const std::vector<mpz_class>& diag) {
  std::string out = "n,count\n";
  for (std::size_t n = 0; n < diag.size(); ++n) out += std::to_string(n) + "," + diag[n].get_str() + "\n";
  return out;
}

inline std::string ratio_csv(const std::vector<RatioRow>& rows) {
  std::string out = "n,log_ratio,route\n";
  for (const auto& r : rows) out += std::to_string(r.n) + "," + format_real(r.log_ratio) + "," + r.route + "\n";
  return out;
}

inline std::string bounds_csv_header() { return "side,k,eta,epsilon,i0,scanned_i_max,violations\n"; }

inline std::string bounds_csv_row(const BoundReport& r) {
  return std::string(to_string(r.side)) + "," + std::to_string(r.k) + "," + format_real(r.eta) + "," + format_real(r.epsilon) +
         "," + std::to_string(r.i0) + "," + std::to_string(r.scanned_i_max) + "," + std::to_string(r.violation_count) + "\n";
}

inline std::string profile_csv(const ProfileReport& rep) {
  std::string out = "i,j,d_scaled,airy_fit\n";
  for (const auto& row : rep.rows)
    out += std::to_string(rep.i) + "," + std::to_string(row.j) + "," + format_real(row.d_scaled) + "," + format_real(row.airy_fit) + "\n";
  return out;
}

}  // namespace relaxtree
