#pragma once

// Comparison-based building blocks: LCE, prefix tables, Main-Lorentz crossing
// tests for squares and runs, the divide-and-conquer drivers, and quadratic
// brute-force references.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <utility>
#include <vector>

#include "squarerun/oracle.hpp"

namespace squarerun {

/// Maximal repetition T[s..e] with smallest period p, 2p <= e - s + 1.
struct Run {
  Index s = 0;
  Index e = 0;
  Index p = 0;

  [[nodiscard]] Index length() const { return e - s + 1; }
  friend auto operator<=>(const Run&, const Run&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Run& r) {
    return os << r.s << ' ' << r.e << ' ' << r.p;
  }
};

/// T[s..s+half) = T[s+half..s+2*half).
struct Square {
  Index s = 0;
  Index half = 0;

  [[nodiscard]] Index last() const { return s + 2 * half - 1; }
  friend auto operator<=>(const Square&, const Square&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Square& q) {
    return os << "Square(" << q.s << ", " << q.half << ")";
  }
};

/// Longest common extension of T[i..] and T[j..], both cut at `last`.
inline Index lce(EqString& s, Index i, Index j, Index last) {
  s.check(i);
  s.check(j);
  if (last > s.size()) throw InputError("lce: bound beyond string end");
  Index l = 0;
  while (i + l <= last && j + l <= last && s.eq(i + l, j + l)) ++l;
  return l;
}

inline Index lce(EqString& s, Index i, Index j) { return lce(s, i, j, s.size()); }

namespace detail {

// Position 0 is the separator of a virtual string: it matches nothing.
inline constexpr Index kSeparator = 0;

inline void append_forward(std::vector<Index>& v, Range r) {
  for (Index i = r.first; i <= r.last; ++i) v.push_back(i);
}

inline void append_reversed(std::vector<Index>& v, Range r) {
  for (Index i = r.last; i >= r.first; --i) v.push_back(i);
}

/// Z-array of a virtual string given as string positions (0 = separator).
/// z[0] = |v|.  At most one negative comparison per position.
inline std::vector<Index> z_array(EqString& s, const std::vector<Index>& v) {
  const auto m = static_cast<Index>(v.size());
  std::vector<Index> z(v.size(), 0);
  if (m == 0) return z;
  z[0] = m;
  auto same = [&](Index a, Index b) {
    const Index pa = v[static_cast<std::size_t>(a)];
    const Index pb = v[static_cast<std::size_t>(b)];
    return pa != kSeparator && pb != kSeparator && s.eq(pa, pb);
  };
  Index l = 0;
  Index r = 0;  // rightmost Z-box is [l, r)
  for (Index i = 1; i < m; ++i) {
    Index k = 0;
    if (i < r) {
      const Index known = z[static_cast<std::size_t>(i - l)];
      if (known < r - i) {
        z[static_cast<std::size_t>(i)] = known;
        continue;
      }
      k = r - i;
    }
    while (i + k < m && same(k, i + k)) ++k;
    z[static_cast<std::size_t>(i)] = k;
    if (i + k > r) {
      l = i;
      r = i + k;
    }
  }
  return z;
}

inline std::size_t at(Index i) { return static_cast<std::size_t>(i); }

// Enumerates the maximal p-periodic fragments of T[a..c] of length >= 2p that
// contain x's last character or y's first character, with the pass in which
// Main and Lorentz would handle them.  visit(pass, p, first, last) returns
// true to stop early.  Pass 2 tables are only built if pass 1 did not stop.
template <class Visit>
void crossing_fragments(EqString& s, Range x, Range y, Visit&& visit) {
  const Index a = x.first;
  const Index b = x.last;
  const Index c = y.last;
  const Index lx = x.length();
  const Index ly = y.length();

  {
    std::vector<Index> v;
    v.reserve(at(2 * ly + lx + 1));
    append_forward(v, y);
    v.push_back(kSeparator);
    append_forward(v, x);
    append_forward(v, y);
    const auto zpref = z_array(s, v);
    v.clear();
    append_reversed(v, x);
    const auto zsuf = z_array(s, v);
    for (Index p = 1; p <= lx; ++p) {
      const Index pref = zpref[at(ly + 1 + lx - p)];
      const Index suf = p < lx ? zsuf[at(p)] : 0;
      if (pref + suf >= p && visit(1, p, b - p + 1 - suf, b + pref)) return;
    }
  }
  {
    std::vector<Index> v;
    append_forward(v, y);
    const auto zy = z_array(s, v);
    v.clear();
    v.reserve(at(2 * lx + ly + 1));
    append_reversed(v, x);
    v.push_back(kSeparator);
    append_reversed(v, Range{a, c});
    const auto zsuf = z_array(s, v);
    for (Index p = 1; p <= ly; ++p) {
      const Index pref = p < ly ? zy[at(p)] : 0;
      const Index suf = zsuf[at(lx + 1 + (c - b - p))];
      if (pref + suf >= p && visit(2, p, b + 1 - suf, b + p + pref)) return;
    }
  }
}

inline void check_adjacent(const EqString& s, Range x, Range y) {
  if (x.empty() || y.empty()) throw InputError("crossing test: empty side");
  if (x.last + 1 != y.first) throw InputError("crossing test: ranges are not adjacent");
  s.check(x);
  s.check(y);
}

}  // namespace detail

/// Prefix table of the fragment: entry k (0-based) is the length of the
/// longest prefix of T[first..last] starting at first + k.
inline std::vector<Index> prefix_table(EqString& s, Range range) {
  if (range.empty()) throw InputError("prefix_table: empty range");
  s.check(range);
  std::vector<Index> v;
  detail::append_forward(v, range);
  return detail::z_array(s, v);
}

/// Some square of xy containing both x's last and y's first character.
inline std::optional<Square> crossing_square(EqString& s, Range x, Range y) {
  detail::check_adjacent(s, x, y);
  const Index b = x.last;
  std::optional<Square> found;
  detail::crossing_fragments(s, x, y, [&](int, Index p, Index fs, Index fe) {
    if (fs > b || fe < b + 1) return false;
    found = Square{std::min(b, fe - 2 * p + 1), p};
    return true;
  });
  return found;
}

/// Classical divide-and-conquer square test, O(m log m) comparisons.
inline std::optional<Square> main_lorentz_square(EqString& s, Range range) {
  s.check(range);
  if (range.length() < 2) return std::nullopt;
  const Index mid = range.first + range.length() / 2 - 1;
  const Range x{range.first, mid};
  const Range y{mid + 1, range.last};
  if (auto q = main_lorentz_square(s, x)) return q;
  if (auto q = main_lorentz_square(s, y)) return q;
  return crossing_square(s, x, y);
}

/// All runs of T[x.first..y.last] (as a standalone string) that contain x's
/// last character or y's first character.  Sorted by (s, e).
inline std::vector<Run> boundary_runs(EqString& s, Range x, Range y) {
  if (x.empty() || y.empty()) return {};
  detail::check_adjacent(s, x, y);
  const Index b = x.last;
  // A fragment is found once per period that generates it; periods ascend
  // within a pass, so the first hit is the smallest period.
  std::map<std::pair<Index, Index>, Index> found;
  detail::crossing_fragments(s, x, y, [&](int pass, Index p, Index fs, Index fe) {
    const Index half = (fe - fs + 1) / 2;
    const bool first_pass = fs + half <= b + 1;
    if ((pass == 1) == first_pass) found.try_emplace({fs, fe}, p);
    return false;
  });
  std::vector<Run> out;
  out.reserve(found.size());
  for (const auto& [key, p] : found) out.push_back({key.first, key.second, p});
  return out;
}

/// All runs of the fragment as a standalone string, O(m log m) comparisons.
inline std::vector<Run> divide_conquer_runs(EqString& s, Range range) {
  s.check(range);
  if (range.length() < 2) return {};
  const Index mid = range.first + range.length() / 2 - 1;
  const Range x{range.first, mid};
  const Range y{mid + 1, range.last};
  std::vector<Run> out;
  for (const Run& r : divide_conquer_runs(s, x)) {
    if (r.e != mid) out.push_back(r);
  }
  for (const Run& r : divide_conquer_runs(s, y)) {
    if (r.s != mid + 1) out.push_back(r);
  }
  auto cross = boundary_runs(s, x, y);
  out.insert(out.end(), cross.begin(), cross.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Every square of the fragment, sorted by (s, half).  Quadratic.
inline std::vector<Square> brute_squares(EqString& s, Range range) {
  s.check(range);
  std::vector<Square> out;
  const Index m = range.length();
  for (Index half = 1; 2 * half <= m; ++half) {
    Index streak = 0;
    for (Index i = range.first; i + half <= range.last; ++i) {
      streak = s.eq(i, i + half) ? streak + 1 : 0;
      if (streak >= half) out.push_back({i - half + 1, half});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every run of the fragment as a standalone string, sorted by (s, e).
/// Quadratic: one streak scan per candidate period.
inline std::vector<Run> brute_runs(EqString& s, Range range) {
  s.check(range);
  std::map<std::pair<Index, Index>, Index> found;
  const Index m = range.length();
  for (Index p = 1; 2 * p <= m; ++p) {
    Index start = range.first;
    Index streak = 0;
    for (Index i = range.first; i + p <= range.last + 1; ++i) {
      const bool match = i + p <= range.last && s.eq(i, i + p);
      if (match) {
        if (streak == 0) start = i;
        ++streak;
        continue;
      }
      // A maximal streak i0..i1 of T[i] = T[i+p] is the p-periodic fragment
      // [i0, i1 + p]; if a smaller period produced it already, p is not minimal.
      if (streak >= p) found.try_emplace({start, start + streak + p - 1}, p);
      streak = 0;
    }
  }
  std::vector<Run> out;
  out.reserve(found.size());
  for (const auto& [key, p] : found) out.push_back({key.first, key.second, p});
  return out;
}

/// Smallest p >= 1 such that T[i] = T[i+p] throughout the fragment.
inline Index smallest_period(EqString& s, Range range) {
  if (range.empty()) throw InputError("smallest_period: empty range");
  s.check(range);
  for (Index p = 1; p < range.length(); ++p) {
    bool ok = true;
    for (Index i = range.first; ok && i + p <= range.last; ++i) ok = s.eq(i, i + p);
    if (ok) return p;
  }
  return range.length();
}

}  // namespace squarerun
