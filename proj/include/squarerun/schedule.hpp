#pragma once

// Phase schedule shared by the square detector and the runs engine.
// Phase t uses sigma_t = 2^(2^(K - t)) with K = ceil(log2 log2 n), blocks of
// length sigma_t^2 and overlapping block pairs
//   pair j = [B (j - 1) + 1, min(n, B (j + 1))],  j = 1 .. max(1, ceil(n/B) - 1).
// Pairs can be deactivated explicitly; a pair whose enclosing pair of the
// previous phase is deactivated is deactivated implicitly on first lookup.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "squarerun/oracle.hpp"

namespace squarerun {

class PhaseSchedule {
 public:
  static constexpr Index kHuge = std::numeric_limits<Index>::max();

  explicit PhaseSchedule(Index n) : n_(n) {
    if (n < 1) throw InputError("PhaseSchedule: n must be positive");
    while (pow2pow2(top_) < n_) ++top_;
    marks_.resize(static_cast<std::size_t>(top_ + 1));
    for (int t = 0; t <= top_; ++t) {
      if (sigma(t) <= n_) marks_[static_cast<std::size_t>(t)].assign(static_cast<std::size_t>(pairs(t)), 0);
    }
  }

  [[nodiscard]] Index n() const { return n_; }
  /// ceil(log2 log2 n); the last phase index.
  [[nodiscard]] int top() const { return top_; }

  /// sigma_t, saturated to kHuge.
  [[nodiscard]] Index sigma(int t) const { return pow2pow2(top_ - t); }
  /// sigma_t^2, saturated to kHuge.
  [[nodiscard]] Index block(int t) const { return t == 0 ? sat_square(sigma(0)) : sigma(t - 1); }

  [[nodiscard]] Index pairs(int t) const {
    const Index b = block(t);
    if (b >= n_) return 1;
    return std::max<Index>(1, (n_ + b - 1) / b - 1);
  }

  [[nodiscard]] Range pair_range(int t, Index j) const {
    const Index b = block(t);
    if (b >= n_) return {1, n_};
    return {b * (j - 1) + 1, std::min(n_, b * (j + 1))};
  }

  /// Whether phase t takes part at all (sigma_t <= n).
  [[nodiscard]] bool valid(int t) const { return t >= 0 && t <= top_ && sigma(t) <= n_; }

  [[nodiscard]] bool marked(int t, Index j) const {
    if (!valid(t)) return false;
    return marks_[static_cast<std::size_t>(t)][static_cast<std::size_t>(j - 1)] != 0;
  }

  void mark(int t, Index j) {
    if (valid(t)) marks_[static_cast<std::size_t>(t)][static_cast<std::size_t>(j - 1)] = 1;
  }

  /// Active unless marked here or enclosed by a marked pair of phase t - 1;
  /// the implicit case is recorded so it propagates further.
  bool active(int t, Index j) {
    if (marked(t, j)) return false;
    if (valid(t - 1)) {
      const Range r = pair_range(t, j);
      const Index bp = block(t - 1);
      const Index k = (r.first - 1) / bp + 1;
      for (Index jp = k - 1; jp <= k; ++jp) {
        if (jp < 1 || jp > pairs(t - 1) || !marked(t - 1, jp)) continue;
        const Range outer = pair_range(t - 1, jp);
        if (outer.first <= r.first && r.last <= outer.last) {
          mark(t, j);
          return false;
        }
      }
    }
    return true;
  }

  /// Marks every pair of phase t lying inside r; returns how many were new.
  Index deactivate_within(int t, Range r) {
    if (!valid(t) || r.empty()) return 0;
    const Index b = block(t);
    if (b >= n_) {
      if (r.first > 1 || r.last < n_ || marked(t, 1)) return 0;
      mark(t, 1);
      return 1;
    }
    Index fresh = 0;
    for (Index j = (r.first - 1 + b - 1) / b + 1; j <= pairs(t); ++j) {
      const Range p = pair_range(t, j);
      if (p.first < r.first) continue;
      if (p.last > r.last) break;
      if (!marked(t, j)) {
        mark(t, j);
        ++fresh;
      }
    }
    return fresh;
  }

 private:
  // 2^(2^k), saturated.
  static Index pow2pow2(int k) {
    if (k < 0) return 1;
    if (k >= 6) return kHuge;
    const int e = 1 << k;
    if (e >= 63) return kHuge;
    return Index{1} << e;
  }

  static Index sat_square(Index v) {
    if (v >= (Index{1} << 31)) return kHuge;
    return v * v;
  }

  Index n_;
  int top_ = 0;
  std::vector<std::vector<std::uint8_t>> marks_;
};

}  // namespace squarerun
