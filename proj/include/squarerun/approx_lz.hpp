#pragma once

// Delta-approximate LZ factorisations of a fragment T[x..y], plus exact LZ
// and f-factorisation references and a validator.
//
// A phrase T[s..e] is a head of length < delta followed by a tail that occurs
// earlier inside the fragment; e is at least e' - 1 where T[s..e'] is the
// exact LZ phrase at s.

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "squarerun/diffcover.hpp"
#include "squarerun/oracle.hpp"
#include "squarerun/primitives.hpp"
#include "squarerun/sparse_suffix_tree.hpp"

namespace squarerun {

struct Phrase {
  Index s = 0;
  Index e = 0;
  Index head_len = 0;
  Index tail_src = 0;  // 0 when the tail is empty

  [[nodiscard]] Index tail_start() const { return s + head_len; }
  [[nodiscard]] Index tail_len() const { return e - tail_start() + 1; }
  friend bool operator==(const Phrase&, const Phrase&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Phrase& p) {
    return os << p.s << ' ' << p.e << ' ' << p.head_len << ' ' << p.tail_src;
  }
};

/// Returned instead of a factorisation when the fragment has more distinct
/// symbols than the estimate allows.
struct SigmaExceeded {
  CapExceeded::Reason reason = CapExceeded::Reason::Degree;
  ComparisonStats spent;
};

struct FactorizeInfo {
  Index samples = 0;
  std::uint64_t budget = 0;  // 0 = unlimited
  SparseStats tree;
  ComparisonStats spent;
};

namespace detail {

// Length L of the longest prefix of T[p..y] that also starts at some q in
// [x, p), both occurrences inside T[x..y].  One Z-array, O(m) comparisons.
inline Index longest_previous_factor(EqString& s, Range range, Index p) {
  if (p == range.first) return 0;
  std::vector<Index> v;
  v.reserve(static_cast<std::size_t>(2 * range.length()));
  append_forward(v, {p, range.last});
  v.push_back(kSeparator);
  append_forward(v, {range.first, range.last});
  const auto z = z_array(s, v);
  const Index off = range.last - p + 2;
  Index best = 0;
  for (Index q = range.first; q < p; ++q) best = std::max(best, z[static_cast<std::size_t>(off + q - range.first)]);
  return best;
}

inline void check_delta(Range range, Index delta) {
  if (delta < 2) throw ParameterError("delta must be at least 2");
  if (delta > range.length()) throw ParameterError("delta must not exceed the fragment length");
}

inline std::vector<Index> lz_samples(Range range, Index delta) {
  std::vector<Index> out;
  if (delta < 4) {
    // A cover with r = 1 contains every position; h is always 0.
    for (Index i = range.first; i <= range.last; ++i) out.push_back(i);
    return out;
  }
  const Cover cover(range.length(), delta);
  out.reserve(cover.members().size());
  for (Index i : cover.members()) out.push_back(range.first + i - 1);
  return out;
}

inline std::variant<std::vector<Phrase>, SigmaExceeded> factorize_impl(EqString& s, Range range, Index delta,
                                                                       std::optional<Index> cap,
                                                                       std::optional<std::uint64_t> budget,
                                                                       FactorizeInfo* info) {
  s.check(range);
  check_delta(range, delta);
  const ComparisonStats start = s.stats();
  const auto samples = lz_samples(range, delta);

  SparseBuildOptions opt;
  opt.window_end = range.last;
  opt.sigma_cap = cap;
  opt.negative_budget = budget;
  auto built = build_sparse(s, samples, opt);
  if (info) {
    info->samples = static_cast<Index>(samples.size());
    info->budget = budget.value_or(0);
  }
  if (auto* why = std::get_if<CapExceeded>(&built)) {
    if (info) info->spent = s.stats() - start;
    return SigmaExceeded{why->reason, why->spent};
  }
  const auto& tree = std::get<SparseSuffixTree>(built);
  const auto labels = tree.src_len();

  std::vector<Phrase> out;
  std::size_t k = 0;  // first sample >= current phrase start
  for (Index p = range.first; p <= range.last;) {
    while (k < labels.size() && labels[k].sample < p) ++k;
    Index best = 0;
    Index best_end = 0;  // exclusive end of the best candidate tail
    for (std::size_t j = k; j < labels.size() && labels[j].sample < p + delta; ++j) {
      if (labels[j].len > 0 && labels[j].sample + labels[j].len > best_end) {
        best = static_cast<Index>(j);
        best_end = labels[j].sample + labels[j].len;
      }
    }
    if (best_end > p + delta - 1) {
      const auto& lab = labels[static_cast<std::size_t>(best)];
      out.push_back({p, best_end - 1, lab.sample - p, lab.src});
    } else {
      const Index e = std::min(p + delta - 2, range.last);
      out.push_back({p, e, e - p + 1, 0});
    }
    p = out.back().e + 1;
  }
  if (info) {
    info->tree = tree.stats();
    info->spent = s.stats() - start;
  }
  return out;
}

}  // namespace detail

/// Exact LZ factorisation of the fragment by definition: the phrase at p is
/// T[p..p+L] where L is the longest previous factor at p.
inline std::vector<Range> exact_lz(EqString& s, Range range) {
  s.check(range);
  std::vector<Range> out;
  for (Index p = range.first; p <= range.last;) {
    const Index e = std::min(p + detail::longest_previous_factor(s, range, p), range.last);
    out.push_back({p, e});
    p = e + 1;
  }
  return out;
}

/// f-factorisation: a fresh symbol, or the longest factor occurring earlier
/// (overlap allowed).
inline std::vector<Range> f_factorization(EqString& s, Range range) {
  s.check(range);
  std::vector<Range> out;
  for (Index p = range.first; p <= range.last;) {
    const Index l = std::max<Index>(1, detail::longest_previous_factor(s, range, p));
    out.push_back({p, p + l - 1});
    p += l;
  }
  return out;
}

/// Delta-approximate LZ factorisation via the sparse suffix tree of the
/// delta-cover samples and greedy tail selection.
inline std::vector<Phrase> factorize(EqString& s, Range range, Index delta, FactorizeInfo* info = nullptr) {
  auto r = detail::factorize_impl(s, range, delta, std::nullopt, std::nullopt, info);
  return std::get<std::vector<Phrase>>(std::move(r));
}

/// Negative-comparison budget ceil(C * m * sigma_est * log2(m + 1) / sqrt(delta)).
inline std::uint64_t factorize_budget(Index m, Index delta, Index sigma_est, double c) {
  const double v = c * static_cast<double>(m) * static_cast<double>(sigma_est) *
                   std::log2(static_cast<double>(m) + 1.0) / std::sqrt(static_cast<double>(delta));
  return static_cast<std::uint64_t>(std::ceil(v));
}

/// As factorize, but gives up with SigmaExceeded once a tree node has more
/// than sigma_est real children or the comparison budget runs out.
inline std::variant<std::vector<Phrase>, SigmaExceeded> factorize_budgeted(EqString& s, Range range, Index delta,
                                                                           Index sigma_est, double c,
                                                                           FactorizeInfo* info = nullptr) {
  if (sigma_est < 1) throw ParameterError("sigma_est must be at least 1");
  detail::check_delta(range, delta);
  return detail::factorize_impl(s, range, delta, sigma_est,
                                factorize_budget(range.length(), delta, sigma_est, c), info);
}

struct LzValidation {
  bool ok = true;
  std::size_t phrase = 0;
  std::string violation;  // "cover", "head", "tail" or "LZ-length"

  explicit operator bool() const { return ok; }
};

/// Checks the factorisation definition directly against the oracle.
inline LzValidation validate_delta_lz(EqString& s, Range range, const std::vector<Phrase>& phrases, Index delta) {
  auto bad = [](std::size_t i, const char* what) {
    LzValidation v;
    v.ok = false;
    v.phrase = i;
    v.violation = what;
    return v;
  };
  if (range.empty()) return phrases.empty() ? LzValidation{} : bad(0, "cover");
  s.check(range);
  if (phrases.empty()) return bad(0, "cover");
  Index expect = range.first;
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    const Phrase& ph = phrases[i];
    if (ph.s != expect || ph.e < ph.s || ph.e > range.last) return bad(i, "cover");
    expect = ph.e + 1;
    if (ph.head_len < 0 || ph.head_len >= delta || ph.head_len > ph.e - ph.s + 1) return bad(i, "head");
    const Index k = ph.tail_len();
    if (k == 0) {
      if (ph.tail_src != 0) return bad(i, "tail");
    } else {
      if (ph.tail_src < range.first || ph.tail_src >= ph.tail_start() || ph.tail_src + k - 1 > ph.e) {
        return bad(i, "tail");
      }
      for (Index d = 0; d < k; ++d) {
        if (!s.eq(ph.tail_src + d, ph.tail_start() + d)) return bad(i, "tail");
      }
    }
    const Index exact_end = std::min(ph.s + detail::longest_previous_factor(s, range, ph.s), range.last);
    if (exact_end - 1 > ph.e) return bad(i, "LZ-length");
  }
  if (expect != range.last + 1) return bad(phrases.size() - 1, "cover");
  return {};
}

inline void write_phrases(std::ostream& os, const std::vector<Phrase>& phrases) {
  for (const auto& p : phrases) os << p << '\n';
}

}  // namespace squarerun
