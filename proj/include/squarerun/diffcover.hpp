#pragma once

// t-cover D(t) of {1..n}: i is a member iff i mod r = 0 or i mod r^2 < r,
// with r = floor(sqrt(t)).  For i, j <= n - t + 1 the offset h(i, j) < t
// puts both i + h and j + h into the cover.

#include <cmath>
#include <vector>

#include "squarerun/oracle.hpp"

namespace squarerun {

class Cover {
 public:
  Cover(Index n, Index t) : n_(n), t_(t) {
    if (t < 4) throw ParameterError("Cover: t must be at least 4");
    if (n < 1 || t > n) throw ParameterError("Cover: need 1 <= t <= n");
    r_ = static_cast<Index>(std::sqrt(static_cast<double>(t)));
    while (r_ * r_ > t) --r_;
    while ((r_ + 1) * (r_ + 1) <= t) ++r_;
    // Walk residues mod r^2 directly so the cost is proportional to the size.
    const Index rr = r_ * r_;
    for (Index base = 0; base <= n; base += rr) {
      for (Index k = 0; k < r_; ++k) {
        if (base + k >= 1 && base + k <= n) members_.push_back(base + k);
      }
      for (Index k = r_; k < rr; k += r_) {
        if (base + k >= 1 && base + k <= n) members_.push_back(base + k);
      }
    }
  }

  [[nodiscard]] Index n() const { return n_; }
  [[nodiscard]] Index t() const { return t_; }
  [[nodiscard]] Index r() const { return r_; }
  [[nodiscard]] const std::vector<Index>& members() const { return members_; }
  [[nodiscard]] Index size() const { return static_cast<Index>(members_.size()); }

  [[nodiscard]] bool contains(Index i) const {
    return i >= 1 && i <= n_ && (i % r_ == 0 || i % (r_ * r_) < r_);
  }

  [[nodiscard]] Index size_bound() const { return n_ / r_ + (n_ / (r_ * r_)) * r_; }

  [[nodiscard]] Index h(Index i, Index j) const {
    const Index limit = n_ - t_ + 1;
    if (i < 1 || j < 1 || i > limit || j > limit) {
      throw InputError("Cover::h: arguments must lie in [1, n - t + 1]");
    }
    const Index a = mod(r_ - i, r_);
    const Index b = mod(r_ - (j + a) / r_, r_);
    return a + b * r_;
  }

 private:
  static Index mod(Index v, Index m) { return ((v % m) + m) % m; }

  Index n_;
  Index t_;
  Index r_ = 1;
  std::vector<Index> members_;
};

inline Cover build_cover(Index n, Index t) { return Cover(n, t); }

}  // namespace squarerun
