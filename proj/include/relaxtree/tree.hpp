#pragma once

// Relaxed k-ary trees: ordered DAGs with a unique source (the root) and a
// unique sink, every non-sink node having exactly k ordered children.
// Nodes are identified by their postorder label; the sink is always 1 and
// the root carries the largest label.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "relaxtree/error.hpp"

namespace relaxtree {

using Label = int;

inline constexpr Label kSinkLabel = 1;

enum class EdgeKind { spine, pointer };

struct ChildRef {
  EdgeKind kind = EdgeKind::spine;
  Label target = kSinkLabel;

  static ChildRef spine(Label t) { return {EdgeKind::spine, t}; }
  static ChildRef pointer(Label t) { return {EdgeKind::pointer, t}; }

  friend bool operator==(const ChildRef&, const ChildRef&) = default;
};

struct InternalNode {
  Label label = 0;
  std::vector<ChildRef> children;

  bool is_cherry() const {
    return std::all_of(children.begin(), children.end(),
                       [](const ChildRef& c) { return c.kind == EdgeKind::pointer; });
  }

  friend bool operator==(const InternalNode&, const InternalNode&) = default;
};

// Holds an arbitrary candidate structure; validate_tree() decides whether it
// is a relaxed tree. Nodes are kept sorted by label.
class RelaxedTree {
 public:
  RelaxedTree() = default;

  RelaxedTree(int k, std::vector<InternalNode> nodes) : k_(k), nodes_(std::move(nodes)) {
    std::stable_sort(nodes_.begin(), nodes_.end(),
                     [](const InternalNode& a, const InternalNode& b) { return a.label < b.label; });
  }

  int arity() const noexcept { return k_; }
  const std::vector<InternalNode>& nodes() const noexcept { return nodes_; }
  std::size_t internal_count() const noexcept { return nodes_.size(); }

  Label root_label() const noexcept { return nodes_.empty() ? kSinkLabel : nodes_.back().label; }

  const InternalNode* find(Label label) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), label,
                               [](const InternalNode& n, Label l) { return n.label < l; });
    if (it == nodes_.end() || it->label != label) return nullptr;
    return &*it;
  }

  bool contains(Label label) const { return label == kSinkLabel || find(label) != nullptr; }

  friend bool operator==(const RelaxedTree&, const RelaxedTree&) = default;

 private:
  int k_ = 2;
  std::vector<InternalNode> nodes_;
};

inline ValidationReport validate_tree(const RelaxedTree& t) {
  ValidationReport report;
  const int k = t.arity();
  if (k < 2) {
    report.add("arity", "arity must be at least 2");
    return report;
  }

  const auto& nodes = t.nodes();
  const int n = static_cast<int>(nodes.size());
  bool structural = true;

  for (int idx = 0; idx < n; ++idx) {
    const auto& node = nodes[idx];
    if (idx > 0 && nodes[idx - 1].label == node.label) {
      report.add("duplicate-label", "label used by more than one node", {node.label});
      structural = false;
    }
    if (node.label != idx + 2) {
      report.add("label-range", "internal labels must be exactly 2..n+1", {node.label});
      structural = false;
    }
    if (static_cast<int>(node.children.size()) != k) {
      report.add("out-degree", "internal node must have exactly k children", {node.label});
      structural = false;
    }
  }
  for (const auto& node : nodes)
    for (const auto& c : node.children)
      if (!t.contains(c.target)) {
        report.add("bad-target", "child references an unknown node", {node.label, c.target});
        structural = false;
      }
  if (!structural || n == 0) return report;

  // In-degrees: every node except the root must be referenced.
  std::vector<int> indeg(n + 2, 0);
  for (const auto& node : nodes)
    for (const auto& c : node.children) ++indeg[c.target];
  const Label root = t.root_label();
  for (Label l = 1; l <= n + 1; ++l)
    if (l != root && indeg[l] == 0) report.add("multiple-sources", "node other than the root has in-degree 0", {l});

  // Depth-first search from the root; this defines the spine and the labels.
  enum class State { unvisited, open, done };
  std::vector<State> state(n + 2, State::unvisited);
  std::vector<int> postorder(n + 2, 0);
  int counter = 0;
  int spine_edges = 0, pointer_edges = 0;

  struct Frame {
    Label label;
    std::size_t next;
  };
  std::vector<Frame> stack{{root, 0}};
  state[root] = State::open;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const InternalNode* node = t.find(f.label);
    if (f.next == node->children.size()) {
      state[f.label] = State::done;
      postorder[f.label] = ++counter;
      stack.pop_back();
      continue;
    }
    const ChildRef c = node->children[f.next++];
    (c.kind == EdgeKind::spine ? spine_edges : pointer_edges)++;
    switch (state[c.target]) {
      case State::open:
        report.add("cycle", "edge targets a node still open in the traversal", {f.label, c.target});
        if (c.kind == EdgeKind::pointer)
          report.add("pointer-order", "pointer targets a node not yet completed in postorder", {f.label, c.target});
        break;
      case State::done:
        if (c.kind == EdgeKind::spine)
          report.add("spine-mismatch", "spine edge targets an already completed node", {f.label, c.target});
        break;
      case State::unvisited:
        if (c.kind == EdgeKind::pointer)
          report.add("pointer-order", "pointer targets a node not yet completed in postorder", {f.label, c.target});
        if (c.target == kSinkLabel) {
          state[kSinkLabel] = State::done;
          postorder[kSinkLabel] = ++counter;
        } else {
          state[c.target] = State::open;
          stack.push_back({c.target, 0});
        }
        break;
    }
  }

  for (Label l = 1; l <= n + 1; ++l) {
    if (state[l] != State::done) {
      report.add("unreachable", "node not reachable from the root", {l});
    } else if (postorder[l] != l) {
      report.add("postorder-label", "label differs from depth-first postorder number", {l, postorder[l]});
    }
  }
  if (report.ok() && (spine_edges != n || pointer_edges != (k - 1) * n))
    report.add("edge-count", "expected n spine edges and (k-1)n pointers");
  return report;
}

// Canonical serialization of the fully unfolded ordered k-ary tree T(u):
// the sink is "L", an internal node is "(" + children keys + ")".
struct FringeKey {
  std::string text;
  friend bool operator==(const FringeKey&, const FringeKey&) = default;
  friend auto operator<=>(const FringeKey&, const FringeKey&) = default;
};

namespace detail {

inline const std::string& fringe_text(const RelaxedTree& t, Label label,
                                      std::unordered_map<Label, std::string>& memo,
                                      std::unordered_set<Label>& open) {
  if (auto it = memo.find(label); it != memo.end()) return it->second;
  if (label == kSinkLabel) return memo.emplace(label, "L").first->second;
  const InternalNode* node = t.find(label);
  if (!node) throw Error("no-such-node", "label " + std::to_string(label));
  if (!open.insert(label).second) throw Error("invalid-tree", "cycle through node " + std::to_string(label));
  std::string text = "(";
  for (const auto& c : node->children) text += fringe_text(t, c.target, memo, open);
  text += ')';
  open.erase(label);
  return memo.emplace(label, std::move(text)).first->second;
}

}  // namespace detail

inline FringeKey fringe_key(const RelaxedTree& t, Label label) {
  if (!t.contains(label)) throw Error("no-such-node", "label " + std::to_string(label));
  std::unordered_map<Label, std::string> memo;
  std::unordered_set<Label> open;
  return {detail::fringe_text(t, label, memo, open)};
}

// Keys of all internal nodes, indexed by label (sharing one memo table).
inline std::map<Label, FringeKey> fringe_keys(const RelaxedTree& t) {
  std::unordered_map<Label, std::string> memo;
  std::unordered_set<Label> open;
  std::map<Label, FringeKey> keys;
  for (const auto& node : t.nodes()) keys.emplace(node.label, FringeKey{detail::fringe_text(t, node.label, memo, open)});
  return keys;
}

struct CompactionReport {
  bool distinct_fringes = true;  // all T(u) pairwise distinct
  bool distinct_children = true; // no two nodes share the ordered child tuple
  bool no_cherry_duplicate = true; // no (u, v) with equal children and v a cherry
};

inline CompactionReport compaction_report(const RelaxedTree& t) {
  if (auto r = validate_tree(t); !r.ok()) throw Error("invalid-tree", r.summary());
  CompactionReport out;

  std::unordered_set<std::string> seen;
  for (auto& [label, key] : fringe_keys(t))
    if (!seen.insert(key.text).second) out.distinct_fringes = false;

  // Child tuples compare targets only: spine and pointer tags are irrelevant.
  std::map<std::vector<Label>, std::vector<const InternalNode*>> by_children;
  for (const auto& node : t.nodes()) {
    std::vector<Label> targets;
    for (const auto& c : node.children) targets.push_back(c.target);
    by_children[targets].push_back(&node);
  }
  for (const auto& [targets, group] : by_children) {
    if (group.size() < 2) continue;
    out.distinct_children = false;
    if (std::any_of(group.begin(), group.end(), [](const InternalNode* v) { return v->is_cherry(); }))
      out.no_cherry_duplicate = false;
  }
  return out;
}

// Decides compaction by fringe distinctness and by the cherry criterion;
// the two must agree.
inline bool is_compacted(const RelaxedTree& t) {
  const auto r = compaction_report(t);
  if (r.distinct_fringes != r.no_cherry_duplicate || r.distinct_fringes != r.distinct_children)
    throw Error("criteria-disagree", "fringe and cherry criteria differ");
  return r.distinct_fringes;
}

// The relaxed tree with one internal node: spine to the sink, then k-1 pointers.
inline RelaxedTree smallest_tree(int k) {
  InternalNode root{2, {ChildRef::spine(kSinkLabel)}};
  for (int c = 1; c < k; ++c) root.children.push_back(ChildRef::pointer(kSinkLabel));
  return RelaxedTree(k, {root});
}

}  // namespace relaxtree
