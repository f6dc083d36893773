#pragma once

// Conflict-graph adversaries usable as the backing oracle of an EqString.
//
// Alphabet mode keeps a string with at most sigma symbols and one with at
// least n/2 symbols consistent for as long as possible.  Square mode keeps a
// square-free completion available: block starts carry the ternary
// Thue-Morse word, and every other node is colored from {3..sigma-1} once its
// degree reaches sigma/4, avoiding neighbors and its block.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "squarerun/corpus.hpp"
#include "squarerun/oracle.hpp"
#include "squarerun/primitives.hpp"

namespace squarerun {

enum class AdversaryMode : std::uint8_t { Alphabet, Square };

/// Thrown from an oracle query once the configured number of answers is used up.
class QueryLimitReached : public std::runtime_error {
 public:
  explicit QueryLimitReached(Index limit)
      : std::runtime_error("adversary query limit reached"), limit_(limit) {}
  [[nodiscard]] Index limit() const { return limit_; }

 private:
  Index limit_;
};

struct QueryRecord {
  Index i = 0;
  Index j = 0;
  bool answer = false;
  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

struct Eliminability {
  Range range;
  double required = 0.0;      // sum over l of (m - 2l + 1) / l
  Index edges_in_range = 0;
  bool all_eliminated = true;
  std::optional<Square> square;  // an interval no edge eliminates
  std::vector<Token> completion; // consistent string containing *square
};

class ConflictGraph final : public SymbolOracle {
 public:
  static constexpr Token kUncolored = -1;

  ConflictGraph(AdversaryMode mode, Index n, Index sigma) : mode_(mode), n_(n), sigma_(sigma) {
    if (mode == AdversaryMode::Alphabet) {
      if (sigma < 2 || 2 * sigma >= n) throw InputError("alphabet adversary: need 2 <= sigma < n/2");
      threshold_ = sigma - 1;
    } else {
      if (sigma < 8 || sigma > n || sigma % 4 != 0) {
        throw InputError("square adversary: need 8 <= sigma <= n and sigma divisible by 4");
      }
      threshold_ = sigma / 4;
      block_ = sigma / 4;
    }
    color_.assign(static_cast<std::size_t>(n + 1), kUncolored);
    adj_.resize(static_cast<std::size_t>(n + 1));
    if (mode == AdversaryMode::Square) {
      const auto tm = ternary_thue_morse((n + block_ - 1) / block_);
      for (Index i = 1; i <= n; i += block_) color_[at(i)] = tm[static_cast<std::size_t>((i - 1) / block_)];
    }
  }

  [[nodiscard]] Index size() const override { return n_; }

  bool same(Index i, Index j) override {
    if (limit_ && static_cast<Index>(transcript_.size()) >= *limit_) throw QueryLimitReached(*limit_);
    const bool yes = answer(i, j);
    if (!yes && i != j) {
      add_edge(i, j);
      maybe_color(i);
      maybe_color(j);
    }
    transcript_.push_back({i, j, yes});
    if (observer_) observer_(transcript_.back());
    return yes;
  }

  [[nodiscard]] AdversaryMode mode() const { return mode_; }
  [[nodiscard]] Index sigma() const { return sigma_; }
  /// Block length sigma/4 (square mode), 0 otherwise.
  [[nodiscard]] Index block_length() const { return block_; }
  [[nodiscard]] Token color(Index i) const { return color_[at(i)]; }
  [[nodiscard]] bool colored(Index i) const { return color_[at(i)] != kUncolored; }
  [[nodiscard]] Index degree(Index i) const { return static_cast<Index>(adj_[at(i)].size()); }
  [[nodiscard]] const std::vector<Index>& neighbors(Index i) const { return adj_[at(i)]; }
  [[nodiscard]] bool has_edge(Index i, Index j) const { return edges_.contains(key(i, j)); }
  [[nodiscard]] Index edge_count() const { return static_cast<Index>(edges_.size()); }
  [[nodiscard]] Index answered() const { return static_cast<Index>(transcript_.size()); }
  [[nodiscard]] const std::vector<QueryRecord>& transcript() const { return transcript_; }
  /// Nodes in the order they were colored during queries.
  [[nodiscard]] const std::vector<Index>& coloring_order() const { return order_; }

  void set_query_limit(std::optional<Index> limit) { limit_ = limit; }
  /// Called after every answer, with the state already updated.
  void set_observer(std::function<void(const QueryRecord&)> f) { observer_ = std::move(f); }

  /// Distinct symbols of witness_large without building it.
  [[nodiscard]] Index large_distinct() const {
    std::vector<char> seen(static_cast<std::size_t>(std::max<Index>(sigma_, 3)), 0);
    Index out = 0;
    for (Index i = 1; i <= n_; ++i) {
      const Token c = color_[at(i)];
      if (c == kUncolored) {
        ++out;
      } else if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = 1;
        ++out;
      }
    }
    return out;
  }

  /// "yes" iff both colors are equal and set; the rule every answer follows.
  [[nodiscard]] bool answer(Index i, Index j) const {
    return i == j || (color_[at(i)] != kUncolored && color_[at(i)] == color_[at(j)]);
  }

  /// Re-answers the transcript from the current state.
  [[nodiscard]] bool replay() const {
    return std::all_of(transcript_.begin(), transcript_.end(),
                       [&](const QueryRecord& q) { return answer(q.i, q.j) == q.answer; });
  }

  /// Whether a concrete string is in the consistent set: it agrees with every
  /// assigned color and separates every edge, hence reproduces the transcript.
  [[nodiscard]] bool consistent(const std::vector<Token>& t) const {
    if (static_cast<Index>(t.size()) != n_) return false;
    for (Index i = 1; i <= n_; ++i) {
      if (colored(i) && t[at(i) - 1] != color_[at(i)]) return false;
    }
    for (Index i = 1; i <= n_; ++i) {
      for (Index j : adj_[at(i)]) {
        if (t[at(i) - 1] == t[at(j) - 1]) return false;
      }
    }
    return std::all_of(transcript_.begin(), transcript_.end(), [&](const QueryRecord& q) {
      return (t[at(q.i) - 1] == t[at(q.j) - 1]) == q.answer;
    });
  }

  /// Colors in 0..sigma-1 that no colored neighbor of u or v uses.
  [[nodiscard]] std::vector<Token> shared_colors(Index u, Index v) const {
    std::vector<char> used(static_cast<std::size_t>(sigma_), 0);
    for (Index w : {u, v}) {
      for (Index x : adj_[at(w)]) {
        const Token c = color_[at(x)];
        if (c >= 0 && c < sigma_) used[static_cast<std::size_t>(c)] = 1;
      }
    }
    std::vector<Token> out;
    for (Token c = 0; c < sigma_; ++c) {
      if (!used[static_cast<std::size_t>(c)]) out.push_back(c);
    }
    return out;
  }

  /// Completion with at most sigma symbols.  In square mode it is also
  /// square-free: every block gets pairwise distinct symbols.
  [[nodiscard]] std::vector<Token> witness_small() const {
    std::vector<Token> c(color_);
    for (Index i = 1; i <= n_; ++i) {
      if (c[at(i)] == kUncolored) c[at(i)] = pick(c, i, mode_ == AdversaryMode::Square ? 3 : 0, true);
    }
    return {c.begin() + 1, c.end()};
  }

  /// Completion with a fresh symbol per uncolored node; in alphabet mode it
  /// has at least n/2 symbols while at most floor(n sigma / 8) answers were given.
  [[nodiscard]] std::vector<Token> witness_large() const {
    if (mode_ == AdversaryMode::Alphabet && answered() > n_ * sigma_ / 8) {
      throw std::logic_error("witness_large: more than n*sigma/8 answers given");
    }
    std::vector<Token> t(color_.begin() + 1, color_.end());
    Token fresh = std::max<Token>(sigma_, 3);
    for (auto& x : t) {
      if (x == kUncolored) x = fresh++;
    }
    return t;
  }

  /// Maximal ranges of uncolored nodes.
  [[nodiscard]] std::vector<Range> colorless_ranges() const {
    std::vector<Range> out;
    for (Index i = 1; i <= n_;) {
      if (colored(i)) {
        ++i;
        continue;
      }
      Index j = i;
      while (j < n_ && !colored(j + 1)) ++j;
      out.push_back({i, j});
      i = j + 1;
    }
    return out;
  }

  /// Either every interval [x, x+2l-1] of a colorless range is eliminated by
  /// some edge (y, y+l), or a consistent completion with at most sigma
  /// symbols containing a square at the first surviving interval.
  [[nodiscard]] Eliminability eliminability_check(Range r) const {
    if (r.empty() || r.first < 1 || r.last > n_) throw InputError("eliminability_check: bad range");
    for (Index i = r.first; i <= r.last; ++i) {
      if (colored(i)) throw InputError("eliminability_check: range contains a colored node");
    }
    Eliminability out;
    out.range = r;
    const Index m = r.length();
    for (Index l = 1; 2 * l <= m; ++l) out.required += static_cast<double>(m - 2 * l + 1) / static_cast<double>(l);
    for (Index i = r.first; i <= r.last; ++i) {
      for (Index j : adj_[at(i)]) {
        if (j > i && j <= r.last) ++out.edges_in_range;
      }
    }
    std::vector<Index> cover;
    for (Index l = 1; 2 * l <= m && !out.square; ++l) {
      const Index xs = r.first;
      const Index xe = r.last - 2 * l + 1;
      cover.assign(static_cast<std::size_t>(xe - xs + 2), 0);
      for (Index y = r.first; y + l <= r.last; ++y) {
        if (!has_edge(y, y + l)) continue;
        const Index lo = std::max(xs, y - l + 1);
        const Index hi = std::min(xe, y);
        if (lo > hi) continue;
        ++cover[static_cast<std::size_t>(lo - xs)];
        --cover[static_cast<std::size_t>(hi - xs + 1)];
      }
      Index run = 0;
      for (Index x = xs; x <= xe; ++x) {
        run += cover[static_cast<std::size_t>(x - xs)];
        if (run == 0) {
          out.square = Square{x, l};
          break;
        }
      }
    }
    if (!out.square) return out;
    out.all_eliminated = false;

    const auto [x, l] = *out.square;
    std::vector<Token> c(color_);
    for (Index y = x; y < x + l; ++y) {
      std::vector<char> used(static_cast<std::size_t>(sigma_), 0);
      for (Index w : {y, y + l}) {
        for (Index v : adj_[at(w)]) {
          const Token cv = c[at(v)];
          if (cv >= 0 && cv < sigma_) used[static_cast<std::size_t>(cv)] = 1;
        }
      }
      const auto it = std::find(used.begin(), used.end(), 0);
      if (it == used.end()) throw std::logic_error("eliminability_check: no shared color");
      c[at(y)] = c[at(y + l)] = static_cast<Token>(it - used.begin());
    }
    for (Index i = 1; i <= n_; ++i) {
      if (c[at(i)] == kUncolored) c[at(i)] = pick(c, i, mode_ == AdversaryMode::Square ? 3 : 0, true);
    }
    out.completion.assign(c.begin() + 1, c.end());
    return out;
  }

  void write_transcript(std::ostream& os) const {
    for (const auto& q : transcript_) os << q.i << ' ' << q.j << ' ' << (q.answer ? 1 : 0) << '\n';
  }

 private:
  static std::size_t at(Index i) { return static_cast<std::size_t>(i); }
  static std::uint64_t key(Index i, Index j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
  }

  void add_edge(Index i, Index j) {
    if (!edges_.insert(key(i, j)).second) return;
    adj_[at(i)].push_back(j);
    adj_[at(j)].push_back(i);
  }

  void maybe_color(Index i) {
    if (colored(i) || degree(i) != threshold_) return;
    color_[at(i)] = pick(color_, i, mode_ == AdversaryMode::Square ? 3 : 0, mode_ == AdversaryMode::Square);
    order_.push_back(i);
  }

  // Smallest color in [low, sigma) unused by neighbors of i under c, and in
  // square mode also unused within i's block.
  [[nodiscard]] Token pick(const std::vector<Token>& c, Index i, Token low, bool avoid_block) const {
    std::vector<char> used(static_cast<std::size_t>(sigma_), 0);
    auto ban = [&](Token v) {
      if (v >= 0 && v < sigma_) used[static_cast<std::size_t>(v)] = 1;
    };
    for (Index v : adj_[at(i)]) ban(c[at(v)]);
    if (avoid_block && block_ > 0) {
      const Index first = (i - 1) / block_ * block_ + 1;
      const Index last = std::min(n_, first + block_ - 1);
      for (Index v = first; v <= last; ++v) {
        if (v != i) ban(c[at(v)]);
      }
    }
    for (Token v = low; v < sigma_; ++v) {
      if (!used[static_cast<std::size_t>(v)]) return v;
    }
    throw std::logic_error("adversary: no admissible color left");
  }

  AdversaryMode mode_;
  Index n_;
  Index sigma_;
  Index threshold_ = 0;
  Index block_ = 0;
  std::optional<Index> limit_;
  std::vector<Token> color_;  // 1-based; kUncolored for bottom
  std::vector<std::vector<Index>> adj_;
  std::unordered_set<std::uint64_t> edges_;
  std::vector<QueryRecord> transcript_;
  std::vector<Index> order_;
  std::function<void(const QueryRecord&)> observer_;
};

/// Distinct counting by representatives: each position is compared with one
/// representative per class seen so far.  Returns the number of classes.
inline Index strategy_scan(EqString& s) {
  std::vector<Index> reps;
  for (Index i = 1; i <= s.size(); ++i) {
    bool known = false;
    for (Index r : reps) {
      if (s.eq(r, i)) {
        known = true;
        break;
      }
    }
    if (!known) reps.push_back(i);
  }
  return static_cast<Index>(reps.size());
}

/// `queries` comparisons between uniformly random distinct positions.
inline void strategy_random_pairs(EqString& s, Index queries, std::uint64_t seed) {
  if (s.size() < 2) return;
  std::mt19937_64 rng(seed);
  const auto n = static_cast<std::uint64_t>(s.size());
  for (Index q = 0; q < queries; ++q) {
    const auto i = static_cast<Index>(rng() % n) + 1;
    auto j = static_cast<Index>(rng() % (n - 1)) + 1;
    if (j >= i) ++j;
    s.eq(i, j);
  }
}

/// T[1] T[1] T[2] T[2] ...
inline std::vector<Token> reduction_double(const std::vector<Token>& t) {
  std::vector<Token> out;
  out.reserve(2 * t.size());
  for (Token c : t) {
    out.push_back(c);
    out.push_back(c);
  }
  return out;
}

/// T[1] T[1] # T[2] T[2] # ... with # a fresh token.
inline std::vector<Token> reduction_separator(const std::vector<Token>& t) {
  const Token sep = t.empty() ? 0 : *std::max_element(t.begin(), t.end()) + 1;
  std::vector<Token> out;
  out.reserve(3 * t.size());
  for (Token c : t) {
    out.push_back(c);
    out.push_back(c);
    out.push_back(sep);
  }
  return out;
}

}  // namespace squarerun
