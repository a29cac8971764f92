#pragma once

// Brute-force ground truth. Relaxed trees are built directly as ordered DAGs
// (simulating the depth-first search that defines the spine), independently
// of the path bijection. Minimal DFAs are enumerated in breadth-first
// canonical form and filtered by partition refinement.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "relaxtree/bijection.hpp"
#include "relaxtree/error.hpp"
#include "relaxtree/path.hpp"
#include "relaxtree/tree.hpp"

namespace relaxtree {

inline int default_enumeration_limit(int k) {
  switch (k) {
    case 2: return 6;
    case 3: return 4;
    case 4: return 3;
    default: return 2;
  }
}

namespace detail {

class TreeBuilder {
 public:
  TreeBuilder(int k, int n) : k_(k), n_(n) {}

  template <class Visitor>
  std::uint64_t run(Visitor& visit) {
    if (n_ == 0) {
      visit(RelaxedTree(k_, {}));
      return 1;
    }
    nodes_.assign(1, {});
    stack_.assign(1, 0);
    finish_order_.clear();
    sink_done_ = false;
    emitted_ = 0;
    step(visit);
    return emitted_;
  }

 private:
  // Node ids are creation indices; the sink is id -1. Labels are assigned
  // from the finishing order once a tree is complete.
  static constexpr int kSink = -1;

  template <class Visitor>
  void step(Visitor& visit) {
    if (stack_.empty()) {
      if (static_cast<int>(nodes_.size()) == n_ && sink_done_) emit(visit);
      return;
    }
    const int v = stack_.back();
    if (static_cast<int>(nodes_[v].size()) == k_) {
      stack_.pop_back();
      finish_order_.push_back(v);
      step(visit);
      finish_order_.pop_back();
      stack_.push_back(v);
      return;
    }
    if (!sink_done_) {
      nodes_[v].push_back(ChildRef::spine(kSink));
      sink_done_ = true;
      step(visit);
      sink_done_ = false;
      nodes_[v].pop_back();
    }
    if (static_cast<int>(nodes_.size()) < n_) {
      const int child = static_cast<int>(nodes_.size());
      nodes_.emplace_back();
      nodes_[v].push_back(ChildRef::spine(child));
      stack_.push_back(child);
      step(visit);
      stack_.pop_back();
      nodes_[v].pop_back();
      nodes_.pop_back();
    }
    // Pointers may target the sink and any finished node.
    if (sink_done_) {
      nodes_[v].push_back(ChildRef::pointer(kSink));
      step(visit);
      nodes_[v].pop_back();
    }
    for (std::size_t f = 0; f < finish_order_.size(); ++f) {
      nodes_[v].push_back(ChildRef::pointer(finish_order_[f]));
      step(visit);
      nodes_[v].pop_back();
    }
  }

  template <class Visitor>
  void emit(Visitor& visit) {
    std::vector<Label> label(nodes_.size());
    for (std::size_t f = 0; f < finish_order_.size(); ++f) label[finish_order_[f]] = static_cast<Label>(f) + 2;
    std::vector<InternalNode> out;
    out.reserve(nodes_.size());
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      InternalNode node{label[id], {}};
      for (const auto& c : nodes_[id])
        node.children.push_back({c.kind, c.target == kSink ? kSinkLabel : label[c.target]});
      out.push_back(std::move(node));
    }
    visit(RelaxedTree(k_, std::move(out)));
    ++emitted_;
  }

  int k_, n_;
  std::vector<std::vector<ChildRef>> nodes_;
  std::vector<int> stack_;
  std::vector<int> finish_order_;
  bool sink_done_ = false;
  std::uint64_t emitted_ = 0;
};

inline void check_enumeration_limit(int k, int n, int limit) {
  if (k < 2 || n < 0) throw Error("invalid-argument", "need k >= 2 and n >= 0");
  if (n > limit)
    throw Error("too-large", "exhaustive enumeration for k=" + std::to_string(k) + " limited to n <= " + std::to_string(limit));
}

}  // namespace detail

// Streams every relaxed tree with n internal nodes exactly once.
template <class Visitor>
std::uint64_t enumerate_relaxed(int k, int n, Visitor&& visit, int limit = -1) {
  detail::check_enumeration_limit(k, n, limit < 0 ? default_enumeration_limit(k) : limit);
  detail::TreeBuilder builder(k, n);
  return builder.run(visit);
}

// Second route: all decorated paths mapped through the inverse bijection.
template <class Visitor>
std::uint64_t enumerate_relaxed_via_paths(int k, int n, Visitor&& visit, int limit = -1) {
  const int lim = limit < 0 ? default_enumeration_limit(k) : limit;
  detail::check_enumeration_limit(k, n, lim);
  return generate_paths(k, n, [&](const DecoratedPath& p) { visit(path_to_tree(p)); }, lim);
}

inline std::vector<RelaxedTree> collect_relaxed(int k, int n, int limit = -1) {
  std::vector<RelaxedTree> out;
  enumerate_relaxed(k, n, [&](const RelaxedTree& t) { out.push_back(t); }, limit);
  return out;
}

inline mpz_class count_relaxed_oracle(int k, int n, int limit = -1) {
  return mpz_class(static_cast<unsigned long>(enumerate_relaxed(k, n, [](const RelaxedTree&) {}, limit)));
}

inline mpz_class count_compacted_oracle(int k, int n, int limit = -1) {
  unsigned long count = 0;
  enumerate_relaxed(k, n, [&](const RelaxedTree& t) { count += is_compacted(t); }, limit);
  return mpz_class(count);
}

// ---------------------------------------------------------------------------
// Minimal DFAs over a k-letter alphabet recognizing a finite language.
//
// Model: complete automata with one dead state (all letters loop on it) and
// t = states - 1 transient states forming an acyclic graph. Transient states
// are numbered in breadth-first order from the initial state 0, reading the
// transitions state by state and letter by letter; every initially connected
// automaton has exactly one such numbering, so each isomorphism class is
// generated once.

inline constexpr int kDfaStateLimit = 5;

struct DfaCount {
  mpz_class minimal;
  mpz_class all;  // acyclic, initially connected, any accepting set
};

namespace detail {

class DfaEnumerator {
 public:
  DfaEnumerator(int k, int transient) : k_(k), t_(transient), trans_(static_cast<std::size_t>(k) * transient, kDead) {}

  DfaCount run() {
    rec(0, 1);
    return {mpz_class(static_cast<unsigned long>(minimal_)), mpz_class(static_cast<unsigned long>(all_))};
  }

 private:
  static constexpr int kDead = -1;

  int target(int q, int a) const { return trans_[static_cast<std::size_t>(q) * k_ + a]; }

  bool reaches(int from, int goal, int assigned) const {
    // Follows only transitions already assigned (slots < assigned).
    std::vector<int> todo{from};
    std::vector<char> seen(t_, 0);
    while (!todo.empty()) {
      int q = todo.back();
      todo.pop_back();
      if (q == goal) return true;
      if (seen[q]) continue;
      seen[q] = 1;
      for (int a = 0; a < k_; ++a) {
        const int slot = q * k_ + a;
        if (slot >= assigned) break;
        if (trans_[slot] != kDead) todo.push_back(trans_[slot]);
      }
    }
    return false;
  }

  bool acyclic() const {
    std::vector<int> indeg(t_, 0);
    for (int q = 0; q < t_; ++q)
      for (int a = 0; a < k_; ++a)
        if (target(q, a) != kDead) ++indeg[target(q, a)];
    std::vector<int> ready;
    for (int q = 0; q < t_; ++q)
      if (!indeg[q]) ready.push_back(q);
    int seen = 0;
    while (!ready.empty()) {
      int q = ready.back();
      ready.pop_back();
      ++seen;
      for (int a = 0; a < k_; ++a) {
        int p = target(q, a);
        if (p != kDead && --indeg[p] == 0) ready.push_back(p);
      }
    }
    return seen == t_;
  }

  // Number of Myhill-Nerode classes among the t transient states plus the
  // dead state (index t), by Moore refinement.
  int class_count(unsigned accepting) const {
    std::vector<int> cls(t_ + 1);
    for (int q = 0; q < t_; ++q) cls[q] = (accepting >> q) & 1u;
    cls[t_] = 0;
    int classes = -1;
    while (true) {
      std::vector<std::vector<int>> sigs;
      std::vector<int> next(t_ + 1);
      for (int q = 0; q <= t_; ++q) {
        std::vector<int> sig{cls[q]};
        for (int a = 0; a < k_; ++a) {
          const int p = (q == t_ || target(q, a) == kDead) ? t_ : target(q, a);
          sig.push_back(cls[p]);
        }
        std::size_t id = 0;
        while (id < sigs.size() && sigs[id] != sig) ++id;
        if (id == sigs.size()) sigs.push_back(std::move(sig));
        next[q] = static_cast<int>(id);
      }
      const int now = static_cast<int>(sigs.size());
      if (now == classes) return now;
      classes = now;
      cls = std::move(next);
    }
  }

  void rec(int slot, int discovered) {
    if (slot == k_ * t_) {
      if (discovered < t_ || !acyclic()) return;
      for (unsigned acc = 0; acc < (1u << t_); ++acc) {
        ++all_;
        if (class_count(acc) == t_ + 1) ++minimal_;
      }
      return;
    }
    const int q = slot / k_;
    if (q >= discovered) return;  // state q must already be reachable
    auto try_target = [&](int p, int disc) {
      trans_[slot] = p;
      if (p == kDead || !reaches(p, q, slot)) rec(slot + 1, disc);
      trans_[slot] = kDead;
    };
    try_target(kDead, discovered);
    for (int p = 0; p < discovered; ++p)
      if (p != q) try_target(p, discovered);
    if (discovered < t_) try_target(discovered, discovered + 1);
  }

  int k_, t_;
  std::vector<int> trans_;
  std::uint64_t minimal_ = 0, all_ = 0;
};

}  // namespace detail

inline DfaCount count_dfa_oracle(int k, int states) {
  if (k < 2 || states < 1) throw Error("invalid-argument", "need k >= 2 and at least one state");
  if (states > kDfaStateLimit) throw Error("too-large", "DFA enumeration limited to 5 states");
  // Crude search-size guard: (states)^(k * transient) transition tables.
  const double search = std::pow(static_cast<double>(states), static_cast<double>(k) * (states - 1));
  if (search > 1e12) throw Error("too-large", "DFA search space too large for k=" + std::to_string(k));
  if (states == 1) return {1, 1};
  return detail::DfaEnumerator(k, states - 1).run();
}

inline mpz_class count_min_dfa_oracle(int k, int states) { return count_dfa_oracle(k, states).minimal; }

}  // namespace relaxtree
