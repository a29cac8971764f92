#pragma once

// Tree <-> path bijection. The spine is traversed depth first; a spine edge
// traversed the second time (a node finishing) yields U, a pointer met
// during the traversal yields H whose cross is the pointer's target label.
// The sink finishes first, giving the initial U; the root finishes last,
// giving the closing U.

#include <algorithm>
#include <vector>

#include "relaxtree/error.hpp"
#include "relaxtree/path.hpp"
#include "relaxtree/tree.hpp"

namespace relaxtree {

inline DecoratedPath tree_to_path(const RelaxedTree& t) {
  if (auto r = validate_tree(t); !r.ok()) throw Error("invalid-tree", r.summary());
  std::vector<Step> steps;
  steps.reserve(t.internal_count() * t.arity() + 1);
  if (t.internal_count() == 0) return DecoratedPath(t.arity(), {Step::up()});

  struct Frame {
    const InternalNode* node;
    std::size_t next;
  };
  std::vector<Frame> stack{{t.find(t.root_label()), 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.node->children.size()) {
      steps.push_back(Step::up());
      stack.pop_back();
      continue;
    }
    const ChildRef c = f.node->children[f.next++];
    if (c.kind == EdgeKind::pointer) {
      steps.push_back(Step::horizontal(c.target));
    } else if (c.target == kSinkLabel) {
      steps.push_back(Step::up());
    } else {
      stack.push_back({t.find(c.target), 0});
    }
  }
  return DecoratedPath(t.arity(), std::move(steps));
}

// Inverse map. The path is parsed from its last step backwards: every U
// except the first opens a node (the i-th U overall is node i in postorder)
// whose k child slots are filled right to left; H fills a pointer slot.
inline RelaxedTree path_to_tree(const DecoratedPath& p) {
  if (auto r = validate_path(p); !r.ok()) throw Error("invalid-path", r.summary());
  const int k = p.arity();
  const auto& steps = p.steps();
  const Point end = p.endpoint();
  if (end.x != static_cast<long long>(k - 1) * end.y)
    throw Error("invalid-path", "endpoint is not of the form ((k-1)n, n)");
  const int n = static_cast<int>(end.y);
  if (n == 0) return RelaxedTree(k, {});

  std::vector<int> up_label(steps.size(), 0);
  for (int i = 0, u = 0; i < static_cast<int>(steps.size()); ++i)
    if (steps[i].is_up()) up_label[i] = ++u;

  std::vector<InternalNode> done;
  done.reserve(n);
  std::vector<InternalNode> stack;
  auto close_full = [&] {
    while (!stack.empty() && static_cast<int>(stack.back().children.size()) == k) {
      InternalNode node = std::move(stack.back());
      stack.pop_back();
      std::reverse(node.children.begin(), node.children.end());
      done.push_back(std::move(node));
    }
  };

  int pos = static_cast<int>(steps.size()) - 1;
  if (!steps[pos].is_up()) throw Error("invalid-path", "last step must be U");
  stack.push_back({up_label[pos], {}});
  for (--pos; pos >= 0; --pos) {
    if (stack.empty()) throw Error("invalid-path", "steps left after the root closed");
    const Step& s = steps[pos];
    if (!s.is_up()) {
      stack.back().children.push_back(ChildRef::pointer(s.cross));
    } else if (pos == 0) {
      stack.back().children.push_back(ChildRef::spine(kSinkLabel));
    } else {
      stack.back().children.push_back(ChildRef::spine(up_label[pos]));
      stack.push_back({up_label[pos], {}});
      continue;
    }
    close_full();
  }
  if (!stack.empty()) throw Error("invalid-path", "path ends with unfilled child slots");

  RelaxedTree t(k, std::move(done));
  if (auto r = validate_tree(t); !r.ok()) throw Error("invalid-path", "reconstruction failed: " + r.summary());
  return t;
}

}  // namespace relaxtree
