#pragma once

// All runs via the phased factorisation scheme: long runs around tails,
// Main-Lorentz style divide and conquer for the short ones, radix sort and
// deduplication, then copying runs that lie strictly inside a tail from the
// tail's previous occurrence.

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "squarerun/approx_lz.hpp"
#include "squarerun/detector.hpp"
#include "squarerun/oracle.hpp"
#include "squarerun/primitives.hpp"
#include "squarerun/schedule.hpp"

namespace squarerun {

/// Tail T[s..e] equal to T[s-d..e-d].
struct TailRecord {
  Index s = 0;
  Index e = 0;
  Index d = 0;
  friend bool operator==(const TailRecord&, const TailRecord&) = default;
};

struct LongRuns {
  std::vector<Run> runs;  // may hold duplicates
  std::vector<TailRecord> tails;
};

namespace detail {

inline void append_region_runs(EqString& s, Range x, Range y, Index lo, Index hi, std::vector<Run>& out) {
  const Index n = s.size();
  for (const Run& r : boundary_runs(s, x, y)) {
    if (lo > 1 && r.s == lo) continue;
    if (hi < n && r.e == hi) continue;
    out.push_back(r);
  }
}

}  // namespace detail

/// For each tail [a2, a3] of length k >= delta, the runs of
/// T[a2-8k .. a3+4k] crossing a2 or a3, minus those that touch a trimmed
/// border of that region.  Every reported run is a run of T.
inline LongRuns long_runs_from_factorization(EqString& s, const std::vector<Phrase>& phrases, Index delta,
                                             Range /*window*/) {
  const Index n = s.size();
  LongRuns out;
  for (const Phrase& ph : phrases) {
    const Index k = ph.tail_len();
    if (k < delta || k <= 0) continue;
    const Index a2 = ph.tail_start();
    const Index a3 = ph.e;
    const Index lo = std::max<Index>(1, a2 - 8 * k);
    const Index hi = std::min(n, a3 + 4 * k);
    if (lo <= a2 - 1) detail::append_region_runs(s, {lo, a2 - 1}, {a2, hi}, lo, hi, out.runs);
    if (lo <= a3 - 1) detail::append_region_runs(s, {lo, a3 - 1}, {a3, hi}, lo, hi, out.runs);
    out.tails.push_back({a2, a3, a2 - ph.tail_src});
  }
  return out;
}

struct RunsConfig {
  double budget_c = kDefaultBudgetC;
  Index terminal_sigma = 256;
  std::optional<Index> sigma_est;
  /// Called once per position after its run list is final (debug checks).
  std::function<void(Index, std::span<const Run>)> on_position_complete;
};

struct RunsReport {
  Index n = 0;
  Index phases_run = 0;
  ComparisonStats stats;
  bool fallback_used = false;
  Index collected = 0;  // multiset size before deduplication
  Index tails = 0;
  Index copied = 0;
  Index runs = 0;

  static std::string csv_header() {
    return "n,runs,phases_run,comparisons_negative,comparisons_merging,fallback_used,collected,tails,copied";
  }
  [[nodiscard]] std::string csv_row() const {
    std::ostringstream os;
    os << n << ',' << runs << ',' << phases_run << ',' << stats.negative << ',' << stats.positive_merging << ','
       << (fallback_used ? 1 : 0) << ',' << collected << ',' << tails << ',' << copied;
    return os.str();
  }
};

struct RunsResult {
  std::vector<Run> runs;
  RunsReport report;
};

namespace detail {

// Two stable counting passes: by e, then by s.
inline void radix_sort_runs(std::vector<Run>& v, Index n) {
  std::vector<Run> tmp(v.size());
  std::vector<std::size_t> count(static_cast<std::size_t>(n + 2));
  auto pass = [&](auto key) {
    std::fill(count.begin(), count.end(), 0);
    for (const Run& r : v) ++count[static_cast<std::size_t>(key(r)) + 1];
    for (std::size_t i = 1; i < count.size(); ++i) count[i] += count[i - 1];
    for (const Run& r : v) tmp[count[static_cast<std::size_t>(key(r))]++] = r;
    v.swap(tmp);
  };
  pass([](const Run& r) { return r.e; });
  pass([](const Run& r) { return r.s; });
}

inline void dedup_sorted_runs(std::vector<Run>& v) {
  std::size_t w = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w > 0 && v[w - 1].s == v[i].s && v[w - 1].e == v[i].e) {
      if (v[w - 1].p != v[i].p) throw std::logic_error("compute_runs: one fragment reported with two periods");
      continue;
    }
    v[w++] = v[i];
  }
  v.resize(w);
}

}  // namespace detail

/// Every run of T, sorted by (s, e).
inline RunsResult compute_runs(EqString& s, const RunsConfig& cfg = {}) {
  if (cfg.terminal_sigma < 16) throw ParameterError("compute_runs: terminal_sigma must be at least 16");
  const Index n = s.size();
  const ComparisonStats start = s.stats();
  RunsResult out;
  out.report.n = n;
  std::vector<Run> bag;
  std::vector<TailRecord> tails;

  auto keep_inside = [&](const std::vector<Run>& runs, Range pair) {
    for (const Run& r : runs) {
      if (pair.first > 1 && r.s == pair.first) continue;
      if (pair.last < n && r.e == pair.last) continue;
      bag.push_back(r);
    }
  };

  if (n >= 2) {
    PhaseSchedule sch(n);
    for (int t = 0; t <= sch.top(); ++t) {
      if (!sch.valid(t)) continue;
      ++out.report.phases_run;
      const Index sigma_t = sch.sigma(t);
      bool sweep = sigma_t <= cfg.terminal_sigma;
      if (!sweep) {
        const Index delta = sigma_t / 8;
        const Index est = cfg.sigma_est.value_or(detail::default_sigma_est(sigma_t));
        for (Index j = 1; j <= sch.pairs(t); ++j) {
          if (!sch.active(t, j)) continue;
          const Range window = sch.pair_range(t, j);
          auto fz = factorize_budgeted(s, window, delta, est, cfg.budget_c);
          if (std::holds_alternative<SigmaExceeded>(fz)) {
            out.report.fallback_used = true;
            sweep = true;
            break;
          }
          auto lr = long_runs_from_factorization(s, std::get<std::vector<Phrase>>(fz), delta, window);
          bag.insert(bag.end(), lr.runs.begin(), lr.runs.end());
          for (const TailRecord& tr : lr.tails) {
            sch.deactivate_within(t + 3, {tr.s + 1, tr.e - 1});
            tails.push_back(tr);
          }
        }
      }
      if (sweep) {
        for (Index j = 1; j <= sch.pairs(t); ++j) {
          const Range pair = sch.pair_range(t, j);
          keep_inside(divide_conquer_runs(s, pair), pair);
        }
        break;
      }
    }
  }

  out.report.collected = static_cast<Index>(bag.size());
  out.report.tails = static_cast<Index>(tails.size());
  detail::radix_sort_runs(bag, n);
  detail::dedup_sorted_runs(bag);

  // Per-position lists, already ordered by end.
  std::vector<std::vector<Run>> at(static_cast<std::size_t>(n + 1));
  for (const Run& r : bag) at[static_cast<std::size_t>(r.s)].push_back(r);

  // (e*, d*) for each position: the containing tail (s < i < e) with maximal e.
  std::vector<std::pair<Index, Index>> star(static_cast<std::size_t>(n + 1), {0, 0});
  std::sort(tails.begin(), tails.end(), [](const TailRecord& a, const TailRecord& b) { return a.s < b.s; });
  std::priority_queue<std::pair<Index, Index>> open;  // (e, d)
  std::size_t next = 0;
  for (Index i = 1; i <= n; ++i) {
    while (next < tails.size() && tails[next].s < i) {
      open.push({tails[next].e, tails[next].d});
      ++next;
    }
    while (!open.empty() && open.top().first <= i) open.pop();
    if (!open.empty()) star[static_cast<std::size_t>(i)] = open.top();
  }

  std::vector<Run> merged;
  for (Index i = 1; i <= n; ++i) {
    const auto [es, ds] = star[static_cast<std::size_t>(i)];
    auto& target = at[static_cast<std::size_t>(i)];
    if (es != 0) {
      const auto& source = at[static_cast<std::size_t>(i - ds)];
      merged.clear();
      auto it = target.begin();
      for (const Run& r : source) {
        const Index e = r.e + ds;
        if (e >= es) break;
        while (it != target.end() && it->e < e) merged.push_back(*it++);
        if (it != target.end() && it->e == e) continue;  // already known
        merged.push_back({i, e, r.p});
        ++out.report.copied;
      }
      merged.insert(merged.end(), it, target.end());
      target.swap(merged);
    }
    if (cfg.on_position_complete) cfg.on_position_complete(i, target);
  }

  for (Index i = 1; i <= n; ++i) {
    for (const Run& r : at[static_cast<std::size_t>(i)]) out.runs.push_back(r);
  }
  out.report.runs = static_cast<Index>(out.runs.size());
  out.report.stats = s.stats() - start;
  return out;
}

inline void write_runs(std::ostream& os, const std::vector<Run>& runs) {
  for (const Run& r : runs) os << r.s << ' ' << r.e << ' ' << r.p << '\n';
}

}  // namespace squarerun
