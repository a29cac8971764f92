#pragma once

// Exact dynamic programming over the wedge 0 <= m <= n/(k-1):
//
//   relaxed    r(n,m) =   r(n,m-1) + (m+1) r(n-1,m)
//   compacted  c(n,m) =   c(n,m-1) + (m+1) c(n-1,m) - (m-1) c(n-k,m-1)
//   dfa        b(n,m) = 2 b(n,m-1) + (m+1) b(n-1,m) -   m   b(n-k,m-1)
//
// Row m = 0 is identically 1, also at negative n; every other cell outside
// the wedge is 0. The diagonal value at ((k-1)n, n) counts relaxed trees,
// compacted trees (n internal nodes) and minimal DFAs with n+1 states.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "relaxtree/error.hpp"

namespace relaxtree {

enum class CountKind { relaxed, compacted, dfa };

inline std::string_view to_string(CountKind kind) {
  switch (kind) {
    case CountKind::relaxed: return "relaxed";
    case CountKind::compacted: return "compacted";
    case CountKind::dfa: return "dfa";
  }
  return "relaxed";
}

inline CountKind parse_count_kind(std::string_view s) {
  if (s == "relaxed") return CountKind::relaxed;
  if (s == "compacted") return CountKind::compacted;
  if (s == "dfa") return CountKind::dfa;
  throw Error("invalid-argument", "unknown kind \"" + std::string(s) + "\"");
}

inline constexpr std::size_t kDefaultTableBudget = std::size_t{2} << 30;  // bytes

class CountTable {
 public:
  CountTable() = default;
  CountTable(CountKind kind, int k) : kind_(kind), k_(k) {
    if (k < 2) throw Error("invalid-argument", "k must be at least 2");
  }

  CountKind kind() const noexcept { return kind_; }
  int arity() const noexcept { return k_; }
  // Largest computed column, -1 for an empty table.
  int n_max() const noexcept { return static_cast<int>(columns_.size()) - 1; }

  int height(int n) const noexcept { return n < 0 ? 0 : n / (k_ - 1); }

  const mpz_class& at(int n, int m) const {
    if (m == 0) return one();
    if (n < 0 || m < 0 || m > height(n)) return zero();
    if (n > n_max()) throw Error("out-of-range", "column " + std::to_string(n) + " not computed");
    return columns_[n][m];
  }

  static const mpz_class& zero() {
    static const mpz_class z = 0;
    return z;
  }
  static const mpz_class& one() {
    static const mpz_class o = 1;
    return o;
  }

  const std::vector<mpz_class>& column(int n) const { return columns_.at(n); }

  void push_column(std::vector<mpz_class> col) { columns_.push_back(std::move(col)); }

  friend bool operator==(const CountTable& a, const CountTable& b) {
    return a.kind_ == b.kind_ && a.k_ == b.k_ && a.columns_ == b.columns_;
  }

 private:
  CountKind kind_ = CountKind::relaxed;
  int k_ = 2;
  std::vector<std::vector<mpz_class>> columns_;
};

namespace detail {

// Column n from the columns n-1 and n-k (passed as lookups so that both the
// full table and the rolling window share this code).
template <class Lookup>
std::vector<mpz_class> next_column(CountKind kind, int k, int n, Lookup&& prev) {
  const int height = n / (k - 1);
  std::vector<mpz_class> col(height + 1);
  col[0] = 1;
  for (int m = 1; m <= height; ++m) {
    mpz_class& v = col[m];
    switch (kind) {
      case CountKind::relaxed:
        v = col[m - 1];
        v += prev(n - 1, m) * (m + 1);
        break;
      case CountKind::compacted:
        v = col[m - 1];
        v += prev(n - 1, m) * (m + 1);
        if (m > 1) v -= prev(n - k, m - 1) * (m - 1);
        break;
      case CountKind::dfa:
        v = col[m - 1] * 2;
        v += prev(n - 1, m) * (m + 1);
        v -= prev(n - k, m - 1) * m;
        break;
    }
    if (sgn(v) < 0) throw Error("negative-entry", "entry (" + std::to_string(n) + "," + std::to_string(m) + ")");
  }
  return col;
}

inline double log2_factorial_estimate(double n) { return n <= 1 ? 0.0 : std::lgamma(n + 1.0) / std::log(2.0); }

}  // namespace detail

// Projected storage of the wedge up to column n_max, in bytes. Entries are
// bounded by the largest diagonal value, itself below (n!)^2 4^n.
inline double projected_table_bytes(int k, int n_max) {
  double cells = 0;
  for (int n = 0; n <= n_max; ++n) cells += n / (k - 1) + 1;
  const double bits = 2 * detail::log2_factorial_estimate(n_max) + 2.0 * n_max + 64;
  return cells * (bits / 8 + sizeof(mpz_class));
}

inline void extend_table(CountTable& t, CountKind kind, int k, int n_max, std::size_t budget = kDefaultTableBudget) {
  if (t.kind() != kind || t.arity() != k) throw Error("cache-mismatch", "table kind or arity differs from request");
  if (n_max < 0) throw Error("invalid-argument", "n_max must be nonnegative");
  if (projected_table_bytes(k, n_max) > static_cast<double>(budget))
    throw Error("memory-budget", "table up to column " + std::to_string(n_max) + " exceeds the byte budget");
  auto lookup = [&t](int n, int m) -> const mpz_class& { return t.at(n, m); };
  for (int n = t.n_max() + 1; n <= n_max; ++n) t.push_column(detail::next_column(kind, k, n, lookup));
}

inline CountTable build_table(CountKind kind, int k, int n_max, std::size_t budget = kDefaultTableBudget) {
  CountTable t(kind, k);
  extend_table(t, kind, k, n_max, budget);
  return t;
}

// Diagonal [entry((k-1)n, n)] for n = 0..n_max_nodes. Keeps only the last k
// columns resident.
inline std::vector<mpz_class> diagonal_sequence(CountKind kind, int k, int n_max_nodes) {
  if (k < 2 || n_max_nodes < 0) throw Error("invalid-argument", "need k >= 2 and n_max >= 0");
  const int x_max = (k - 1) * n_max_nodes;
  std::deque<std::vector<mpz_class>> window;  // columns x-k .. x-1
  int first = 0;                               // column index of window.front()
  auto lookup = [&](int n, int m) -> const mpz_class& {
    if (m == 0) return CountTable::one();
    if (n < 0 || m < 0 || m > n / (k - 1)) return CountTable::zero();
    return window[n - first][m];
  };
  std::vector<mpz_class> diag;
  diag.reserve(n_max_nodes + 1);
  for (int x = 0; x <= x_max; ++x) {
    auto col = detail::next_column(kind, k, x, lookup);
    if (x % (k - 1) == 0) diag.push_back(col[x / (k - 1)]);
    window.push_back(std::move(col));
    if (static_cast<int>(window.size()) > k) {
      window.pop_front();
      ++first;
    }
  }
  return diag;
}

inline std::vector<mpz_class> diagonal_sequence(const CountTable& t, int n_max_nodes) {
  std::vector<mpz_class> diag;
  for (int n = 0; n <= n_max_nodes; ++n) diag.push_back(t.at((t.arity() - 1) * n, n));
  return diag;
}

// Natural logarithm of a positive big integer.
inline double log_mpz(const mpz_class& v) {
  if (sgn(v) <= 0) throw Error("invalid-argument", "log of a nonpositive integer");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

// ---------------------------------------------------------------------------
// Cache files (".ctab"):
//
//   relaxtree-ctab
//   format-version 1
//   kind relaxed
//   k 3
//   n_max 50
//   checksum fnv1a64:<16 hex digits>
//   <one decimal entry per line, for n = 0..n_max, m = 0..n/(k-1)>
//
// The checksum covers the entry lines including their newlines.

inline constexpr int kCtabVersion = 1;

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string table_body(const CountTable& t) {
  std::string body;
  for (int n = 0; n <= t.n_max(); ++n)
    for (const auto& v : t.column(n)) {
      body += v.get_str();
      body += '\n';
    }
  return body;
}

inline void save_table(const CountTable& t, const std::filesystem::path& path) {
  const std::string body = table_body(t);
  std::ostringstream head;
  head << "relaxtree-ctab\n"
       << "format-version " << kCtabVersion << "\n"
       << "kind " << to_string(t.kind()) << "\n"
       << "k " << t.arity() << "\n"
       << "n_max " << t.n_max() << "\n"
       << "checksum fnv1a64:" << hex64(fnv1a64(body)) << "\n";
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io-error", "cannot write " + tmp.string());
    out << head.str() << body;
    if (!out.flush()) throw Error("io-error", "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline CountTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io-error", "cannot open " + path.string());
  auto corrupt = [&](const std::string& why) { return Error("cache-corrupt", path.string() + ": " + why); };

  auto header = [&](const std::string& key) {
    std::string line;
    if (!std::getline(in, line)) throw corrupt("truncated header");
    if (key.empty()) return line;
    if (line.rfind(key + " ", 0) != 0) throw corrupt("expected header field " + key);
    return line.substr(key.size() + 1);
  };
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw corrupt("bad integer " + s);
      return v;
    } catch (const std::logic_error&) {
      throw corrupt("bad integer " + s);
    }
  };

  if (header("") != "relaxtree-ctab") throw corrupt("missing magic line");
  if (to_int(header("format-version")) != kCtabVersion) throw corrupt("unsupported format version");
  CountKind kind;
  try {
    kind = parse_count_kind(header("kind"));
  } catch (const Error&) {
    throw corrupt("unknown kind");
  }
  const int k = to_int(header("k"));
  const int n_max = to_int(header("n_max"));
  const std::string checksum = header("checksum");
  if (k < 2 || n_max < -1) throw corrupt("bad dimensions");

  std::ostringstream rest;
  rest << in.rdbuf();
  const std::string body = rest.str();
  if ("fnv1a64:" + hex64(fnv1a64(body)) != checksum) throw corrupt("checksum mismatch");

  CountTable t(kind, k);
  std::istringstream lines(body);
  std::string line;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<mpz_class> col(n / (k - 1) + 1);
    for (auto& v : col) {
      if (!std::getline(lines, line) || line.empty()) throw corrupt("truncated body");
      if (v.set_str(line, 10) != 0) throw corrupt("bad entry " + line);
    }
    if (col[0] != 1) throw corrupt("row m = 0 must be 1");
    for (std::size_t m = 1; m < col.size(); ++m) {
      if (sgn(col[m]) < 0) throw corrupt("negative entry");
      if (kind == CountKind::relaxed && sgn(col[m]) == 0) throw corrupt("relaxed entries must be positive in the wedge");
    }
    t.push_column(std::move(col));
  }
  if (std::getline(lines, line)) throw corrupt("trailing data");
  return t;
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, CountKind kind, int k) {
  return dir / (std::string(to_string(kind)) + "-k" + std::to_string(k) + ".ctab");
}

// Loads the cached table when present, extends it to n_max if needed and
// writes it back. The returned table always covers at least n_max.
inline CountTable load_or_build(const std::filesystem::path& dir, CountKind kind, int k, int n_max,
                                std::size_t budget = kDefaultTableBudget) {
  const auto file = cache_file(dir, kind, k);
  CountTable t(kind, k);
  bool dirty = true;
  if (std::filesystem::exists(file)) {
    t = load_table(file);
    if (t.kind() != kind || t.arity() != k) throw Error("cache-mismatch", file.string() + " holds a different table");
    dirty = t.n_max() < n_max;
  }
  if (dirty) {
    extend_table(t, kind, k, n_max, budget);
    std::filesystem::create_directories(dir);
    save_table(t, file);
  }
  return t;
}

}  // namespace relaxtree
