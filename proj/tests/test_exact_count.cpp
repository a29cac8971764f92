#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "test_support.hpp"

using namespace relaxtree;
namespace fs = std::filesystem;

namespace {

std::vector<mpz_class> z(std::initializer_list<const char*> xs) {
  std::vector<mpz_class> out;
  for (const char* x : xs) out.emplace_back(x);
  return out;
}

// Checks that seq[offset + i] == row[i] for every listed entry.
void expect_window(const std::vector<mpz_class>& seq, std::size_t offset, const std::vector<mpz_class>& row) {
  ASSERT_GE(seq.size(), offset + row.size());
  for (std::size_t i = 0; i < row.size(); ++i) EXPECT_EQ(seq[offset + i], row[i]) << "index " << offset + i;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("relaxtree-test-" + std::to_string(::getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST(ExactCount, HandEntries) {
  EXPECT_EQ(build_table(CountKind::relaxed, 2, 2).at(2, 2), 3);
  EXPECT_EQ(build_table(CountKind::relaxed, 3, 4).at(4, 2), 7);
  EXPECT_EQ(build_table(CountKind::compacted, 2, 3).at(3, 3), 15);
}

TEST(ExactCount, TableInvariants) {
  for (auto kind : {CountKind::relaxed, CountKind::compacted, CountKind::dfa})
    for (int k = 2; k <= 5; ++k) {
      const auto t = build_table(kind, k, 40);
      for (int n = 0; n <= 40; ++n) {
        EXPECT_EQ(t.at(n, 0), 1);
        EXPECT_EQ(t.at(n, n / (k - 1) + 1), 0);
        for (int m = 1; m <= n / (k - 1); ++m) {
          EXPECT_GE(sgn(t.at(n, m)), 0);
          if (kind == CountKind::relaxed) {
            EXPECT_GT(sgn(t.at(n, m)), 0);
          }
        }
      }
    }
}

TEST(ExactCount, RelaxedRows) {
  expect_window(diagonal_sequence(CountKind::relaxed, 2, 8), 1,
                z({"1", "3", "16", "127", "1363", "18628", "311250", "6173791"}));
  expect_window(diagonal_sequence(CountKind::relaxed, 3, 7), 0,
                z({"1", "1", "7", "139", "5711", "408354", "45605881", "7390305396"}));
  expect_window(diagonal_sequence(CountKind::relaxed, 4, 7), 0,
                z({"1", "1", "15", "1000", "189035", "79278446", "63263422646", "86493299281972"}));
  expect_window(diagonal_sequence(CountKind::relaxed, 5, 6), 0,
                z({"1", "1", "31", "6631", "5470431", "12703473581", "68149976969707"}));
}

TEST(ExactCount, CompactedRows) {
  expect_window(diagonal_sequence(CountKind::compacted, 2, 8), 0,
                z({"1", "1", "3", "15", "111", "1119", "14487", "230943", "4395855"}));
  expect_window(diagonal_sequence(CountKind::compacted, 3, 7), 0,
                z({"1", "1", "7", "133", "5299", "371329", "40898599", "6561293893"}));
  expect_window(diagonal_sequence(CountKind::compacted, 4, 7), 0,
                z({"1", "1", "15", "975", "182175", "75961695", "60422966655", "82450320955455"}));
  expect_window(diagonal_sequence(CountKind::compacted, 5, 6), 0,
                z({"1", "1", "31", "6541", "5373571", "12458850121", "66790559866471"}));
}

// Entry j corresponds to automata with j + 1 states.
TEST(ExactCount, DfaRows) {
  expect_window(diagonal_sequence(CountKind::dfa, 2, 6), 0, z({"1", "1", "6", "60", "900", "18480", "487560"}));
  expect_window(diagonal_sequence(CountKind::dfa, 3, 6), 0,
                z({"1", "1", "14", "532", "42644", "6011320", "1330452032"}));
  expect_window(diagonal_sequence(CountKind::dfa, 4, 5), 0, z({"1", "1", "30", "3900", "1460700", "1220162880"}));
  expect_window(diagonal_sequence(CountKind::dfa, 5, 5), 0,
                z({"1", "1", "62", "26164", "43023908", "199596500056"}));
}

TEST(ExactCount, DiagonalFromTable) {
  const auto t = build_table(CountKind::relaxed, 3, 12);
  EXPECT_EQ(diagonal_sequence(t, 6), diagonal_sequence(CountKind::relaxed, 3, 6));
  EXPECT_THROW(diagonal_sequence(t, 7), Error);
}

TEST(ExactCount, MemoryGuard) {
  try {
    build_table(CountKind::relaxed, 2, 100, 1024);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "memory-budget");
  }
  EXPECT_THROW(build_table(CountKind::relaxed, 1, 3), Error);
  EXPECT_THROW(diagonal_sequence(CountKind::relaxed, 2, -1), Error);
}

TEST(ExactCountProperty, RelaxedDominatesCompacted) {
  for (int k = 2; k <= 5; ++k) {
    const auto r = build_table(CountKind::relaxed, k, 60);
    const auto c = build_table(CountKind::compacted, k, 60);
    for (int n = 0; n <= 60; ++n)
      for (int m = 0; m <= n / (k - 1); ++m) ASSERT_GE(r.at(n, m), c.at(n, m)) << k << " " << n << " " << m;
  }
}

TEST(ExactCountCache, RoundTrip) {
  TempDir dir;
  const auto t = build_table(CountKind::relaxed, 3, 50);
  const auto file = dir.path / "t.ctab";
  save_table(t, file);
  EXPECT_EQ(load_table(file), t);
}

TEST(ExactCountCache, TruncatedFileIsCorrupt) {
  TempDir dir;
  const auto file = dir.path / "t.ctab";
  save_table(build_table(CountKind::compacted, 2, 30), file);
  const auto size = fs::file_size(file);
  fs::resize_file(file, size - 7);
  try {
    load_table(file);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "cache-corrupt");
  }
}

TEST(ExactCountCache, FlippedDigitIsCorrupt) {
  TempDir dir;
  const auto file = dir.path / "t.ctab";
  save_table(build_table(CountKind::relaxed, 2, 10), file);
  std::string text = read_file(file.string());
  const auto pos = text.rfind("311250");
  ASSERT_NE(pos, std::string::npos);
  text[pos] = '4';
  std::ofstream(file, std::ios::binary | std::ios::trunc) << text;
  EXPECT_THROW(load_table(file), Error);
}

TEST(ExactCountCache, ExtensionMatchesColdBuild) {
  TempDir dir;
  const auto small = load_or_build(dir.path, CountKind::dfa, 3, 20);
  EXPECT_EQ(small.n_max(), 20);
  const auto big = load_or_build(dir.path, CountKind::dfa, 3, 45);
  EXPECT_EQ(big, build_table(CountKind::dfa, 3, 45));
  for (int n = 0; n <= 20; ++n) EXPECT_EQ(big.column(n), small.column(n));
  EXPECT_EQ(load_table(cache_file(dir.path, CountKind::dfa, 3)).n_max(), 45);
  // A request below the cached size reuses the file.
  EXPECT_EQ(load_or_build(dir.path, CountKind::dfa, 3, 10).n_max(), 45);
}

TEST(ExactCountCache, KindMismatch) {
  TempDir dir;
  save_table(build_table(CountKind::compacted, 2, 10), cache_file(dir.path, CountKind::relaxed, 2));
  try {
    load_or_build(dir.path, CountKind::relaxed, 2, 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "cache-mismatch");
  }
  auto t = build_table(CountKind::relaxed, 4, 8);
  EXPECT_THROW(extend_table(t, CountKind::relaxed, 3, 12), Error);
}
