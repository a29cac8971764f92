// Prints the first diagonal entries of the three counting tables for k = 2..5.

#include <iostream>

#include "relaxtree/relaxtree.hpp"

int main() {
  using namespace relaxtree;
  for (auto kind : {CountKind::relaxed, CountKind::compacted, CountKind::dfa}) {
    std::cout << to_string(kind) << "\n";
    for (int k = 2; k <= 5; ++k) {
      std::cout << "  k=" << k << ":";
      for (const auto& v : diagonal_sequence(kind, k, 7)) std::cout << " " << v;
      std::cout << "\n";
    }
  }
}
