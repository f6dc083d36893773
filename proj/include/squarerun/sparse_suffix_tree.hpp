#pragma once

// Sparse suffix tree over sampled suffixes T[i..y] of a window, built with
// equality comparisons only.  Insertion descends heavy paths (one LCE against
// the path's representative leaf plus a predecessor query per path) and
// probes light children largest-subtree first.  Heavy paths are rebuilt
// Gabow-style when a path root has seen L/6 insertions since its last build.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "squarerun/oracle.hpp"

namespace squarerun {

namespace detail {
class SparseBuilder;
}

struct SparseBuildOptions {
  /// Suffixes are T[i..window_end] followed by a terminator.  Default: n.
  std::optional<Index> window_end;
  /// Abort once a node has sigma_cap + 1 children on real symbols.
  std::optional<Index> sigma_cap;
  /// Abort once more than this many negative comparisons were spent.
  std::optional<std::uint64_t> negative_budget;
  /// Check 3 L(e) >= 2 L(r) on every touched heavy path after each insertion.
  bool check_invariants = false;
};

struct CapExceeded {
  enum class Reason { Degree, Budget };
  Reason reason = Reason::Degree;
  Index inserted = 0;  // samples inserted before the abort
  ComparisonStats spent;
};

struct SparseStats {
  ComparisonStats spent;
  Index leaves = 0;
  Index nodes = 0;
  Index max_real_degree = 0;
  Index max_paths_crossed = 0;
  std::uint64_t total_paths_crossed = 0;
  std::uint64_t rebuilds = 0;
  std::uint64_t invariant_checks = 0;
  std::uint64_t invariant_violations = 0;
};

struct SrcLen {
  Index sample = 0;
  Index src = 0;  // 0 for the first sample
  Index len = 0;
};

class SparseSuffixTree {
 public:
  [[nodiscard]] Index window_end() const { return y_; }
  [[nodiscard]] const std::vector<Index>& samples() const { return samples_; }
  [[nodiscard]] const SparseStats& stats() const { return stats_; }

  /// lce(i, j) inside T[..window_end], read off the lowest common ancestor.
  [[nodiscard]] Index lce(Index i, Index j) const {
    int a = leaf_node(i);
    int b = leaf_node(j);
    if (a == b) return y_ - i + 1;
    while (a != b) {
      if (nodes_[node_index(a)].depth >= nodes_[node_index(b)].depth) {
        a = nodes_[node_index(a)].parent;
      } else {
        b = nodes_[node_index(b)].parent;
      }
    }
    return nodes_[node_index(a)].depth;
  }

  /// For every sample after the first: the earlier sample sharing the longest
  /// prefix with it, and that length.  Root-to-leaf label propagation.
  [[nodiscard]] std::vector<SrcLen> src_len() const {
    std::vector<SrcLen> out;
    out.reserve(samples_.size());
    std::vector<int> label(nodes_.size(), -1);
    for (std::size_t k = 0; k < samples_.size(); ++k) {
      int v = leaves_[k];
      while (v != -1 && label[node_index(v)] == -1) {
        label[node_index(v)] = static_cast<int>(k);
        v = nodes_[node_index(v)].parent;
      }
      if (k == 0) {
        out.push_back({samples_[k], 0, 0});
      } else {
        const auto h = static_cast<std::size_t>(label[node_index(v)]);
        out.push_back({samples_[k], samples_[h], nodes_[node_index(v)].depth});
      }
    }
    return out;
  }

  /// Structural audit through the oracle: internal nodes branch, sibling
  /// edges start with distinct symbols, leaves spell their suffix.
  /// Comparisons spent here are counted on `s` like any other.
  [[nodiscard]] bool verify(EqString& s, std::string* why = nullptr) const {
    auto fail = [&](const std::string& msg) {
      if (why) *why = msg;
      return false;
    };
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      const Node& nd = nodes_[v];
      if (nd.leaf == 0 && v != 0 && nd.children.size() < 2) return fail("unary internal node");
      for (std::size_t a = 0; a < nd.children.size(); ++a) {
        const Node& ca = nodes_[node_index(nd.children[a])];
        if (ca.depth <= nd.depth) return fail("child not deeper than parent");
        if (!prefix_agrees(s, ca.witness, nd.witness, nd.depth)) return fail("edge label mismatch");
        for (std::size_t b = a + 1; b < nd.children.size(); ++b) {
          const Node& cb = nodes_[node_index(nd.children[b])];
          const Index pa = ca.witness + nd.depth;
          const Index pb = cb.witness + nd.depth;
          if (pa <= y_ && pb <= y_ && s.eq(pa, pb)) return fail("siblings share a first symbol");
          if (pa > y_ && pb > y_) return fail("two terminator edges");
        }
      }
      if (nd.leaf != 0 && nd.depth != y_ - nd.leaf + 2) return fail("leaf depth");
    }
    return true;
  }

  /// Largest number of real-symbol children seen at any node.
  [[nodiscard]] Index max_real_degree() const { return stats_.max_real_degree; }

 private:
  friend class detail::SparseBuilder;
  friend std::variant<SparseSuffixTree, CapExceeded> build_sparse(EqString&, std::span<const Index>,
                                                                  const SparseBuildOptions&);

  struct Node {
    Index depth = 0;    // string depth; leaves count the terminator
    Index witness = 0;  // some sample whose leaf lies below
    Index leaf = 0;     // sample position of a leaf, 0 for internal nodes
    int parent = -1;
    std::vector<int> children;
    Index count = 0;  // leaves below (L)
    int path = -1;
  };

  struct Path {
    int root = -1;
    int end = -1;
    std::map<Index, int> by_depth;
    Index inserts = 0;  // I(root) since the last rebuild
  };

  static std::size_t node_index(int v) { return static_cast<std::size_t>(v); }

  [[nodiscard]] int leaf_node(Index i) const {
    auto it = std::lower_bound(samples_.begin(), samples_.end(), i);
    if (it == samples_.end() || *it != i) {
      throw InputError("tree lce: " + std::to_string(i) + " is not a sample");
    }
    return leaves_[static_cast<std::size_t>(it - samples_.begin())];
  }

  [[nodiscard]] bool prefix_agrees(EqString& s, Index a, Index b, Index len) const {
    for (Index d = 0; d < len; ++d) {
      const Index pa = a + d;
      const Index pb = b + d;
      if (pa > y_ || pb > y_) return pa == pb;
      if (!s.eq(pa, pb)) return false;
    }
    return true;
  }

  Index y_ = 0;
  std::vector<Index> samples_;  // sorted
  std::vector<int> leaves_;     // parallel to samples_
  std::vector<Node> nodes_;
  std::vector<Path> paths_;
  SparseStats stats_;
};

namespace detail {

class SparseBuilder {
 public:
  using Node = SparseSuffixTree::Node;
  using Path = SparseSuffixTree::Path;

  SparseBuilder(EqString& s, SparseSuffixTree& t, const SparseBuildOptions& opt)
      : s_(s), t_(t), opt_(opt), start_(s.stats()) {}

  /// Inserts T[i..y]; false when a cap or the budget was hit.
  bool insert(Index i, int& leaf_out) {
    const Index y = t_.y_;
    int v = 0;
    int current_path = -1;
    Index crossed = 0;
    while (true) {
      Node& nv = node(v);
      if (nv.path != current_path) {
        current_path = nv.path;
        ++crossed;
      }
      Path& path = t_.paths_[static_cast<std::size_t>(nv.path)];
      int heavy = -1;
      if (v != path.end) {
        const Node& ne = node(path.end);
        const Index l = extend(i, ne.witness, nv.depth, ne.depth);
        if (over_budget()) return false;
        auto it = std::prev(path.by_depth.upper_bound(l));
        const int u = it->second;
        if (node(u).depth < l) {
          const int w = std::next(it)->second;
          const int m = split(u, w, l);
          leaf_out = attach(m, i);
          return finish(leaf_out, crossed, m);
        }
        if (u != v) {
          v = u;
          continue;
        }
        heavy = std::next(it)->second;
      }

      const Index d = node(v).depth;
      if (i + d == y + 1) {
        leaf_out = attach(v, i);
        return finish(leaf_out, crossed, v);
      }
      std::vector<int> order;
      for (int c : node(v).children) {
        if (c != heavy && node(c).witness + d <= y) order.push_back(c);
      }
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (node(a).count != node(b).count) return node(a).count > node(b).count;
        return node(a).witness < node(b).witness;  // same depth: edge start order
      });
      int next = -1;
      for (int c : order) {
        const Index l = extend(i, node(c).witness, d, node(c).depth);
        if (over_budget()) return false;
        if (l == d) continue;
        if (l == node(c).depth) {
          next = c;
          break;
        }
        const int m = split(v, c, l);
        leaf_out = attach(m, i);
        return finish(leaf_out, crossed, m);
      }
      if (next == -1) {
        leaf_out = attach(v, i);
        return finish(leaf_out, crossed, v);
      }
      v = next;
    }
  }

  [[nodiscard]] bool hit_degree_cap() const { return degree_hit_; }
  [[nodiscard]] ComparisonStats spent() const { return s_.stats() - start_; }

  void init_root() {
    t_.nodes_.push_back(Node{});
    Path p;
    p.root = 0;
    p.end = 0;
    p.by_depth.emplace(0, 0);
    t_.paths_.push_back(std::move(p));
    node(0).path = 0;
  }

 private:
  Node& node(int v) { return t_.nodes_[static_cast<std::size_t>(v)]; }
  Path& path_of(int v) { return t_.paths_[static_cast<std::size_t>(node(v).path)]; }

  // Matches T[i+d] against T[w+d] for d in [from, cap); the terminator at
  // y + 1 matches nothing.  At most one negative comparison.
  Index extend(Index i, Index w, Index from, Index cap) {
    const Index y = t_.y_;
    Index l = from;
    while (l < cap && i + l <= y && w + l <= y && s_.eq(i + l, w + l)) ++l;
    return l;
  }

  bool over_budget() {
    if (!opt_.negative_budget) return false;
    return s_.stats().negative - start_.negative > *opt_.negative_budget;
  }

  // Makes the implicit point at depth l on edge (u, w) explicit.
  int split(int u, int w, Index l) {
    const int m = static_cast<int>(t_.nodes_.size());
    Node nm;
    nm.depth = l;
    nm.witness = node(w).witness;
    nm.parent = u;
    nm.children = {w};
    nm.count = node(w).count;
    nm.path = node(w).path;
    t_.nodes_.push_back(std::move(nm));
    auto& siblings = node(u).children;
    std::replace(siblings.begin(), siblings.end(), w, m);
    node(w).parent = m;
    Path& p = path_of(m);
    if (p.root == w) p.root = m;  // w headed its own (light) path
    p.by_depth.emplace(l, m);
    return m;
  }

  int attach(int parent, Index i) {
    const int leaf = static_cast<int>(t_.nodes_.size());
    Node nl;
    nl.depth = t_.y_ - i + 2;
    nl.witness = i;
    nl.leaf = i;
    nl.parent = parent;
    nl.path = static_cast<int>(t_.paths_.size());
    t_.nodes_.push_back(std::move(nl));
    node(parent).children.push_back(leaf);
    Path p;
    p.root = leaf;
    p.end = leaf;
    p.by_depth.emplace(node(leaf).depth, leaf);
    t_.paths_.push_back(std::move(p));
    return leaf;
  }

  Index real_degree(int v) {
    Index deg = 0;
    for (int c : node(v).children) {
      if (node(c).witness + node(v).depth <= t_.y_) ++deg;
    }
    return deg;
  }

  bool finish(int leaf, Index crossed, int attach_point) {
    // Degrees only change where the leaf was attached.
    const Index deg = real_degree(attach_point);
    t_.stats_.max_real_degree = std::max(t_.stats_.max_real_degree, deg);
    if (opt_.sigma_cap && deg > *opt_.sigma_cap) degree_hit_ = true;
    t_.stats_.max_paths_crossed = std::max(t_.stats_.max_paths_crossed, crossed);
    t_.stats_.total_paths_crossed += static_cast<std::uint64_t>(crossed);

    // Update leaf counts and insertion counters on the way up; remember the
    // topmost path root that is due for a rebuild.
    int due = -1;
    for (int v = node(leaf).parent; v != -1; v = node(v).parent) {
      ++node(v).count;
      Path& p = path_of(v);
      if (p.root == v) {
        ++p.inserts;
        if (6 * p.inserts >= node(v).count) due = v;
      }
    }
    node(leaf).count = 1;
    if (due != -1) rebuild(due);
    if (opt_.check_invariants) check_paths(leaf);
    return !degree_hit_;
  }

  void rebuild(int top) {
    ++t_.stats_.rebuilds;
    std::vector<int> roots{top};
    while (!roots.empty()) {
      const int r = roots.back();
      roots.pop_back();
      Path p;
      p.root = r;
      int e = r;
      while (true) {
        int heavy = -1;
        for (int c : node(e).children) {
          if (6 * node(c).count >= 5 * node(r).count) heavy = c;
        }
        if (heavy == -1) break;
        e = heavy;
      }
      p.end = e;
      const int id = static_cast<int>(t_.paths_.size());
      for (int v = e;; v = node(v).parent) {
        p.by_depth.emplace(node(v).depth, v);
        node(v).path = id;
        if (v == r) break;
      }
      t_.paths_.push_back(std::move(p));
      for (int v = e;; v = node(v).parent) {
        for (int c : node(v).children) {
          if (node(c).path != id) roots.push_back(c);
        }
        if (v == r) break;
      }
    }
  }

  void check_paths(int leaf) {
    for (int v = leaf; v != -1; v = node(v).parent) {
      const Path& p = path_of(v);
      if (p.root != v) continue;
      ++t_.stats_.invariant_checks;
      if (3 * node(p.end).count < 2 * node(p.root).count) ++t_.stats_.invariant_violations;
    }
  }

  EqString& s_;
  SparseSuffixTree& t_;
  const SparseBuildOptions& opt_;
  ComparisonStats start_;
  bool degree_hit_ = false;
};

}  // namespace detail

/// Inserts the samples (strictly increasing, inside [1, window_end]) one by
/// one.  Returns CapExceeded if the degree cap or the comparison budget is
/// exceeded along the way.
inline std::variant<SparseSuffixTree, CapExceeded> build_sparse(EqString& s, std::span<const Index> samples,
                                                                const SparseBuildOptions& opt = {}) {
  if (samples.empty()) throw InputError("build_sparse: no samples");
  SparseSuffixTree t;
  t.y_ = opt.window_end.value_or(s.size());
  if (t.y_ < 1 || t.y_ > s.size()) throw InputError("build_sparse: window end outside the string");
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (samples[k] < 1 || samples[k] > t.y_) throw InputError("build_sparse: sample outside the window");
    if (k > 0 && samples[k] <= samples[k - 1]) {
      throw InputError(samples[k] == samples[k - 1] ? "build_sparse: duplicate sample"
                                                    : "build_sparse: samples must be increasing");
    }
  }
  t.samples_.assign(samples.begin(), samples.end());
  t.leaves_.reserve(samples.size());

  detail::SparseBuilder b(s, t, opt);
  b.init_root();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    int leaf = -1;
    if (!b.insert(samples[k], leaf)) {
      CapExceeded why;
      why.reason = b.hit_degree_cap() ? CapExceeded::Reason::Degree : CapExceeded::Reason::Budget;
      why.inserted = static_cast<Index>(k);
      why.spent = b.spent();
      return why;
    }
    t.leaves_.push_back(leaf);
  }
  t.stats_.spent = b.spent();
  t.stats_.leaves = static_cast<Index>(samples.size());
  t.stats_.nodes = static_cast<Index>(t.nodes_.size());
  return t;
}

/// Free-function spelling of SparseSuffixTree::lce.
inline Index tree_lce(const SparseSuffixTree& t, Index i, Index j) { return t.lce(i, j); }

inline std::vector<SrcLen> src_len_labels(const SparseSuffixTree& t) { return t.src_len(); }

}  // namespace squarerun
