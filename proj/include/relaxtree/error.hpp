#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relaxtree {

// Every failure carries a short machine-readable code ("too-large",
// "invalid-tree", "cache-corrupt", ...) plus free-form detail.
class Error : public std::runtime_error {
 public:
  explicit Error(std::string code, const std::string& detail = {})
      : std::runtime_error(detail.empty() ? code : code + ": " + detail),
        code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

struct Violation {
  std::string code;
  std::string message;
  // Node labels for trees, step indices for paths.
  std::vector<int> where;
};

// Result of the validators. Violations are data, never exceptions.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }

  bool has(const std::string& code) const {
    for (const auto& v : violations)
      if (v.code == code) return true;
    return false;
  }

  void add(std::string code, std::string message, std::vector<int> where = {}) {
    violations.push_back({std::move(code), std::move(message), std::move(where)});
  }

  std::string summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
      const auto& v = violations[i];
      if (i) os << "; ";
      os << v.code << ": " << v.message;
      if (!v.where.empty()) {
        os << " [";
        for (std::size_t j = 0; j < v.where.size(); ++j) os << (j ? "," : "") << v.where[j];
        os << "]";
      }
    }
    return os.str();
  }
};

}  // namespace relaxtree
