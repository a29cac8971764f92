#pragma once

// Horizontally k-decorated paths. A path starts at (0,-1) with an up step;
// from the origin on it stays weakly below y = x/(k-1). Every horizontal
// step carries a cross: the postorder label of a completed node, so at
// height m the cross lies in 1..m+1. Paths produced by the bijection also
// carry the closing up step, which puts the endpoint at ((k-1)n, n).

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "relaxtree/error.hpp"

namespace relaxtree {

struct Step {
  enum class Kind { up, horizontal };
  Kind kind = Kind::up;
  int cross = 0;  // meaningful for horizontal steps only

  static Step up() { return {Kind::up, 0}; }
  static Step horizontal(int cross) { return {Kind::horizontal, cross}; }
  bool is_up() const noexcept { return kind == Kind::up; }

  friend bool operator==(const Step&, const Step&) = default;
};

struct Point {
  long long x = 0;
  long long y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

class DecoratedPath {
 public:
  DecoratedPath() = default;
  DecoratedPath(int k, std::vector<Step> steps) : k_(k), steps_(std::move(steps)) {}

  int arity() const noexcept { return k_; }
  const std::vector<Step>& steps() const noexcept { return steps_; }

  Point endpoint() const {
    Point p{0, -1};
    for (const auto& s : steps_) (s.is_up() ? p.y : p.x) += 1;
    return p;
  }

  // Up steps after the initial one.
  std::size_t up_count() const {
    std::size_t u = 0;
    for (const auto& s : steps_) u += s.is_up();
    return u == 0 ? 0 : u - 1;
  }
  std::size_t horizontal_count() const { return steps_.size() - (steps_.empty() ? 0 : up_count() + 1); }

  std::string to_string() const {
    std::string out;
    for (const auto& s : steps_) {
      if (!out.empty()) out += ' ';
      out += s.is_up() ? std::string("U") : "H(" + std::to_string(s.cross) + ")";
    }
    return out;
  }

  friend bool operator==(const DecoratedPath&, const DecoratedPath&) = default;

 private:
  int k_ = 2;
  std::vector<Step> steps_;
};

// Reports the first violating step only.
inline ValidationReport validate_path(const DecoratedPath& p) {
  ValidationReport report;
  const int k = p.arity();
  if (k < 2) {
    report.add("arity", "arity must be at least 2");
    return report;
  }
  const auto& steps = p.steps();
  if (steps.empty()) {
    report.add("empty", "path has no steps");
    return report;
  }
  if (!steps.front().is_up()) {
    report.add("first-step", "the first step must be U", {0});
    return report;
  }
  long long x = 0, y = 0;
  for (std::size_t i = 1; i < steps.size(); ++i) {
    const auto& s = steps[i];
    if (s.is_up()) {
      ++y;
    } else {
      if (s.cross < 1 || s.cross > y + 1) {
        report.add("cross-range", "cross must lie between 1 and height+1", {static_cast<int>(i)});
        return report;
      }
      ++x;
    }
    if ((k - 1) * y > x) {
      report.add("diagonal", "path crosses above y = x/(k-1)", {static_cast<int>(i)});
      return report;
    }
  }
  return report;
}

inline constexpr int kDefaultPathLimit = 8;

// Streams every valid path ending at ((k-1)n, n) in lexicographic order
// (U before H, crosses ascending). Returns the number of paths emitted.
template <class Visitor>
std::uint64_t generate_paths(int k, int n, Visitor&& visit, int limit = kDefaultPathLimit) {
  if (k < 2 || n < 0) throw Error("invalid-argument", "need k >= 2 and n >= 0");
  if (n > limit) throw Error("too-large", "exhaustive path generation limited to n <= " + std::to_string(limit));
  const long long x_end = static_cast<long long>(k - 1) * n;
  std::vector<Step> steps{Step::up()};
  steps.reserve(static_cast<std::size_t>(x_end + n + 1));
  std::uint64_t emitted = 0;

  std::function<void(long long, long long)> rec = [&](long long x, long long y) {
    if (x == x_end && y == n) {
      visit(DecoratedPath(k, steps));
      ++emitted;
      return;
    }
    if (y < n && (k - 1) * (y + 1) <= x) {
      steps.push_back(Step::up());
      rec(x, y + 1);
      steps.pop_back();
    }
    if (x < x_end) {
      for (int c = 1; c <= y + 1; ++c) {
        steps.push_back(Step::horizontal(c));
        rec(x + 1, y);
        steps.pop_back();
      }
    }
  };
  rec(0, 0);
  return emitted;
}

inline std::vector<DecoratedPath> collect_paths(int k, int n, int limit = kDefaultPathLimit) {
  std::vector<DecoratedPath> out;
  generate_paths(k, n, [&](const DecoratedPath& p) { out.push_back(p); }, limit);
  return out;
}

}  // namespace relaxtree
