#pragma once

// Equality-only access to a string.  Every algorithm in this library sees its
// input exclusively through EqString::eq, so the counters kept here are the
// complete record of symbol comparisons performed.

#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace squarerun {

/// 1-based string position.  Signed so that window arithmetic such as
/// `a - 8 * k` can go below 1 before trimming.
using Index = std::int64_t;
using Token = std::int64_t;

/// Malformed caller input (out-of-range positions, empty sequences, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter outside the domain an algorithm is defined for.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inclusive 1-based interval [first, last]; empty when last < first.
struct Range {
  Index first = 1;
  Index last = 0;

  [[nodiscard]] constexpr Index length() const { return last >= first ? last - first + 1 : 0; }
  [[nodiscard]] constexpr bool empty() const { return last < first; }
  [[nodiscard]] constexpr bool contains(Index i) const { return first <= i && i <= last; }
  friend constexpr bool operator==(const Range&, const Range&) = default;
};

struct ComparisonStats {
  std::uint64_t total = 0;
  std::uint64_t negative = 0;
  std::uint64_t positive_merging = 0;
  std::uint64_t positive_repeat = 0;

  /// Oracle calls that the lower and upper bounds talk about: every
  /// negative answer plus every positive answer that merged two classes.
  [[nodiscard]] std::uint64_t counted() const { return negative + positive_merging; }

  friend ComparisonStats operator-(const ComparisonStats& a, const ComparisonStats& b) {
    return {a.total - b.total, a.negative - b.negative, a.positive_merging - b.positive_merging,
            a.positive_repeat - b.positive_repeat};
  }
  friend bool operator==(const ComparisonStats&, const ComparisonStats&) = default;
};

/// Backing store of an EqString: answers "is T[i] = T[j]?" for i != j.
class SymbolOracle {
 public:
  virtual ~SymbolOracle() = default;
  [[nodiscard]] virtual Index size() const = 0;
  virtual bool same(Index i, Index j) = 0;
};

/// Concrete token sequence.
class TokenOracle final : public SymbolOracle {
 public:
  explicit TokenOracle(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  [[nodiscard]] Index size() const override { return static_cast<Index>(tokens_.size()); }
  bool same(Index i, Index j) override {
    return tokens_[static_cast<std::size_t>(i - 1)] == tokens_[static_cast<std::size_t>(j - 1)];
  }

 private:
  std::vector<Token> tokens_;
};

namespace detail {

// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace detail

/// A string of length n >= 1 reachable only through counted equality tests.
///
/// Positive answers are memoised in a union-find over positions: two
/// positions already known to be equal are answered without consulting the
/// backing oracle, so over the lifetime of one EqString at most n - 1
/// positive answers ever reach the oracle.  Negative answers are not cached.
///
/// Single owner; move it between threads but never share it mutably.
class EqString {
 public:
  explicit EqString(std::shared_ptr<SymbolOracle> oracle, bool memo = true)
      : oracle_(std::move(oracle)), memo_enabled_(memo) {
    if (!oracle_) throw InputError("EqString: null oracle");
    n_ = oracle_->size();
    if (n_ < 1) throw InputError("EqString: string must be non-empty");
    memo_ = detail::DisjointSets(static_cast<std::size_t>(n_) + 1);
  }

  static EqString from_symbols(std::span<const Token> symbols, bool memo = true) {
    if (symbols.empty()) throw InputError("from_symbols: empty sequence");
    return EqString(std::make_shared<TokenOracle>(std::vector<Token>(symbols.begin(), symbols.end())),
                    memo);
  }
  static EqString from_symbols(std::initializer_list<Token> symbols, bool memo = true) {
    return from_symbols(std::span<const Token>(symbols.begin(), symbols.size()), memo);
  }

  EqString(EqString&&) noexcept = default;
  EqString& operator=(EqString&&) noexcept = default;
  EqString(const EqString&) = delete;
  EqString& operator=(const EqString&) = delete;

  [[nodiscard]] Index size() const { return n_; }
  [[nodiscard]] Range whole() const { return {1, n_}; }
  [[nodiscard]] bool memo_enabled() const { return memo_enabled_; }
  [[nodiscard]] const ComparisonStats& stats() const { return stats_; }
  [[nodiscard]] SymbolOracle& oracle() const { return *oracle_; }

  bool eq(Index i, Index j) {
    check(i);
    check(j);
    ++stats_.total;
    if (i == j) {
      ++stats_.positive_repeat;
      return true;
    }
    if (memo_enabled_) {
      auto ri = memo_.find(static_cast<std::size_t>(i));
      auto rj = memo_.find(static_cast<std::size_t>(j));
      if (ri == rj) {
        ++stats_.positive_repeat;
        return true;
      }
      if (oracle_->same(i, j)) {
        memo_.unite(ri, rj);
        ++stats_.positive_merging;
        return true;
      }
      ++stats_.negative;
      return false;
    }
    // Without the memo every positive answer is a fresh oracle call and is
    // booked as merging; the n - 1 cap no longer applies.
    if (oracle_->same(i, j)) {
      ++stats_.positive_merging;
      return true;
    }
    ++stats_.negative;
    return false;
  }

  void check(Index i) const {
    if (i < 1 || i > n_) {
      throw InputError("position " + std::to_string(i) + " outside [1, " + std::to_string(n_) + "]");
    }
  }
  void check(const Range& r) const {
    if (r.empty()) return;
    if (r.first < 1 || r.last > n_) {
      throw InputError("range [" + std::to_string(r.first) + ", " + std::to_string(r.last) +
                       "] outside [1, " + std::to_string(n_) + "]");
    }
  }

 private:
  std::shared_ptr<SymbolOracle> oracle_;
  Index n_ = 0;
  bool memo_enabled_ = true;
  detail::DisjointSets memo_{1};
  ComparisonStats stats_;
};

}  // namespace squarerun
