#pragma once

// Independent token-level reference implementations used as test oracles.
// They read tokens directly and never go through EqString, so they share no
// code with the library under test.  Positions are 1-based like the library.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace ref {

using Tok = std::int64_t;
using Idx = std::int64_t;

inline Tok at(const std::vector<Tok>& t, Idx i) { return t[static_cast<std::size_t>(i - 1)]; }

inline Idx lce(const std::vector<Tok>& t, Idx i, Idx j, Idx last) {
  Idx k = 0;
  while (i + k <= last && j + k <= last && at(t, i + k) == at(t, j + k)) ++k;
  return k;
}

inline bool is_square(const std::vector<Tok>& t, Idx s, Idx half) {
  for (Idx k = 0; k < half; ++k) {
    if (at(t, s + k) != at(t, s + half + k)) return false;
  }
  return true;
}

inline bool has_square(const std::vector<Tok>& t) {
  const auto n = static_cast<Idx>(t.size());
  for (Idx half = 1; 2 * half <= n; ++half) {
    Idx streak = 0;
    for (Idx i = 1; i + half <= n; ++i) {
      streak = at(t, i) == at(t, i + half) ? streak + 1 : 0;
      if (streak >= half) return true;
    }
  }
  return false;
}

inline std::vector<std::pair<Idx, Idx>> all_squares(const std::vector<Tok>& t) {
  std::vector<std::pair<Idx, Idx>> out;
  const auto n = static_cast<Idx>(t.size());
  for (Idx s = 1; s <= n; ++s) {
    for (Idx half = 1; s + 2 * half - 1 <= n; ++half) {
      if (is_square(t, s, half)) out.emplace_back(s, half);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Idx smallest_period(const std::vector<Tok>& t, Idx s, Idx e) {
  for (Idx p = 1; p <= e - s; ++p) {
    bool ok = true;
    for (Idx i = s; i + p <= e && ok; ++i) ok = at(t, i) == at(t, i + p);
    if (ok) return p;
  }
  return e - s + 1;
}

/// Runs as (s, e, p) by definition: every maximal fragment whose smallest
/// period p satisfies 2p <= length.  Cubic; use for n up to a few hundred.
inline std::vector<std::tuple<Idx, Idx, Idx>> runs_by_definition(const std::vector<Tok>& t) {
  std::vector<std::tuple<Idx, Idx, Idx>> out;
  const auto n = static_cast<Idx>(t.size());
  for (Idx s = 1; s <= n; ++s) {
    for (Idx e = s + 1; e <= n; ++e) {
      const Idx p = smallest_period(t, s, e);
      if (2 * p > e - s + 1) continue;
      const bool left = s == 1 || at(t, s - 1) != at(t, s - 1 + p);
      const bool right = e == n || at(t, e + 1) != at(t, e + 1 - p);
      if (left && right) out.emplace_back(s, e, p);
    }
  }
  return out;
}

/// Runs via maximal p-periodic streaks, quadratic.
inline std::vector<std::tuple<Idx, Idx, Idx>> runs(const std::vector<Tok>& t) {
  const auto n = static_cast<Idx>(t.size());
  std::map<std::pair<Idx, Idx>, Idx> best;
  for (Idx p = 1; 2 * p <= n; ++p) {
    Idx i = 1;
    while (i + p <= n) {
      if (at(t, i) != at(t, i + p)) {
        ++i;
        continue;
      }
      Idx j = i;
      while (j + p <= n && at(t, j) == at(t, j + p)) ++j;
      // T[i..j-1+p] has period p.
      const Idx s = i;
      const Idx e = j - 1 + p;
      if (e - s + 1 >= 2 * p) {
        auto [it, fresh] = best.emplace(std::make_pair(s, e), p);
        if (!fresh) it->second = std::min(it->second, p);
      }
      i = j;
    }
  }
  std::vector<std::tuple<Idx, Idx, Idx>> out;
  for (const auto& [k, p] : best) out.emplace_back(k.first, k.second, p);
  return out;
}

/// Longest L such that T[p..p+L-1] also starts at some q in [x, p), both
/// copies inside [x, y].
inline Idx longest_previous_factor(const std::vector<Tok>& t, Idx x, Idx y, Idx p) {
  Idx best = 0;
  for (Idx q = x; q < p; ++q) best = std::max(best, lce(t, q, p, y));
  return best;
}

inline std::vector<std::pair<Idx, Idx>> exact_lz(const std::vector<Tok>& t, Idx x, Idx y) {
  std::vector<std::pair<Idx, Idx>> out;
  for (Idx p = x; p <= y;) {
    const Idx e = std::min(p + longest_previous_factor(t, x, y, p), y);
    out.emplace_back(p, e);
    p = e + 1;
  }
  return out;
}

/// Whether the LZ phrase starting at p was cut short by the end of T, i.e.
/// all of T[p..n] already occurs earlier.
inline bool cut_at_end(const std::vector<Tok>& t, Idx p) {
  const auto n = static_cast<Idx>(t.size());
  return longest_previous_factor(t, 1, n, p) >= n - p + 1;
}

inline std::vector<std::pair<Idx, Idx>> f_factorization(const std::vector<Tok>& t) {
  const auto n = static_cast<Idx>(t.size());
  std::vector<std::pair<Idx, Idx>> out;
  for (Idx p = 1; p <= n;) {
    const Idx l = std::max<Idx>(1, longest_previous_factor(t, 1, n, p));
    out.emplace_back(p, p + l - 1);
    p += l;
  }
  return out;
}

inline Idx distinct(const std::vector<Tok>& t) { return static_cast<Idx>(std::set<Tok>(t.begin(), t.end()).size()); }

}  // namespace ref
