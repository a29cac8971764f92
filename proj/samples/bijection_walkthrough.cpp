// Enumerates the seven ternary relaxed trees with two internal nodes and
// shows the decorated path of each, then decodes it again.

#include <iostream>

#include "relaxtree/relaxtree.hpp"

int main() {
  using namespace relaxtree;
  int index = 0;
  enumerate_relaxed(3, 2, [&](const RelaxedTree& t) {
    const auto p = tree_to_path(t);
    std::cout << ++index << ". " << p.to_string() << (path_to_tree(p) == t ? "  (round trip ok)" : "  (MISMATCH)")
              << (is_compacted(t) ? "" : "  [not compacted]") << "\n";
  });
}
