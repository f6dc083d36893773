#pragma once

// Square detection: the long-square scan over an approximate factorisation,
// the simple known-sigma algorithm, and the phased algorithm that guesses
// sigma, deactivates block pairs covered by long tails and falls back to
// Main-Lorentz.

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "squarerun/approx_lz.hpp"
#include "squarerun/oracle.hpp"
#include "squarerun/primitives.hpp"
#include "squarerun/schedule.hpp"

namespace squarerun {

/// Default constant of the factorisation comparison budget.  Chosen so that
/// no budget abort fires on inputs that respect the degree cap; see tests.
inline constexpr double kDefaultBudgetC = 4.0;

struct DetectConfig {
  double budget_c = kDefaultBudgetC;
  /// Phases with sigma_t <= terminal_sigma are swept with Main-Lorentz.
  Index terminal_sigma = 256;
  /// Overrides floor(sigma_t^(1/4) / log2 sigma_t) in every phase.
  std::optional<Index> sigma_est;
  /// Keep a per-pair state vector in every phase record.
  bool record_pairs = false;
};

enum class PairState : std::uint8_t { Untouched, Deactivated, Factorized, Swept };

struct PhaseRecord {
  int t = 0;
  Index sigma_t = 0;
  Index delta = 0;
  Index sigma_est = 0;
  Index block = 0;
  Index pairs = 0;
  Index factorized = 0;
  Index skipped = 0;
  Index swept = 0;
  Index long_tails = 0;
  Index pairs_deactivated = 0;  // marks placed in later phases
  bool terminal = false;
  bool sigma_exceeded = false;
  ComparisonStats spent;
  std::vector<PairState> pair_states;
};

struct DetectionReport {
  Index n = 0;
  Index sigma_distinct = 0;  // filled in by callers that know the tokens
  Index phases_run = 0;
  ComparisonStats stats;
  bool fallback_used = false;  // a sigma overflow triggered the Main-Lorentz sweep
  std::optional<Square> witness;
  Index max_position_deactivations = 0;
  std::vector<PhaseRecord> phases;

  static std::string csv_header() {
    return "n,sigma_distinct,phases_run,comparisons_negative,comparisons_merging,fallback_used,witness_s,"
           "witness_half";
  }
  [[nodiscard]] std::string csv_row() const {
    std::ostringstream os;
    os << n << ',' << sigma_distinct << ',' << phases_run << ',' << stats.negative << ',' << stats.positive_merging
       << ',' << (fallback_used ? 1 : 0) << ',' << (witness ? witness->s : 0) << ','
       << (witness ? witness->half : 0);
    return os.str();
  }
};

struct DetectResult {
  std::optional<Square> square;
  DetectionReport report;
};

/// For every phrase whose tail has length k >= delta, tests the two crossing
/// splits of T[a2-8k .. a3+4k-1] around the tail's start a2 and end a3.
inline std::optional<Square> detect_long(EqString& s, const std::vector<Phrase>& phrases, Index delta,
                                         Range /*window*/) {
  const Index n = s.size();
  for (const Phrase& ph : phrases) {
    const Index k = ph.tail_len();
    if (k < delta || k <= 0) continue;
    const Index a2 = ph.tail_start();
    const Index a3 = ph.e;
    const Index lo = std::max<Index>(1, a2 - 8 * k);
    const Index hi = std::min(n, a3 + 4 * k - 1);
    if (lo <= a2 - 1) {
      if (auto q = crossing_square(s, {lo, a2 - 1}, {a2, hi})) return q;
    }
    if (lo <= a3 - 1) {
      if (auto q = crossing_square(s, {lo, a3 - 1}, {a3, hi})) return q;
    }
  }
  return std::nullopt;
}

namespace detail {

inline Index default_sigma_est(Index sigma_t) {
  const double lg = std::log2(static_cast<double>(sigma_t));
  const double v = std::pow(static_cast<double>(sigma_t), 0.25) / lg;
  return std::max<Index>(1, static_cast<Index>(std::floor(v + 1e-9)));
}

inline Index ceil_log2(Index n) {
  Index k = 0;
  while ((Index{1} << k) < n) ++k;
  return k;
}

}  // namespace detail

/// Simple algorithm for known sigma: delta = (sigma * ceil(log2 n))^2,
/// Main-Lorentz on adjacent blocks of length 8 delta, and the long-square
/// scan over one delta-approximate factorisation of the whole string.
inline std::optional<Square> detect_simple(EqString& s, Index sigma) {
  if (sigma < 1) throw ParameterError("detect_simple: sigma must be positive");
  const Index n = s.size();
  const Index lg = std::max<Index>(1, detail::ceil_log2(n));
  const Index delta = std::max<Index>(2, (sigma * lg) * (sigma * lg));
  const Index blk = 8 * delta;
  const Index blocks = (n + blk - 1) / blk;
  const Index pairs = std::max<Index>(1, blocks - 1);
  for (Index j = 1; j <= pairs; ++j) {
    const Range r{blk * (j - 1) + 1, std::min(n, blk * (j + 1))};
    if (auto q = main_lorentz_square(s, r)) return q;
  }
  if (delta > n) return std::nullopt;  // no square longer than 8 delta fits
  const auto phrases = factorize(s, s.whole(), delta);
  return detect_long(s, phrases, delta, s.whole());
}

/// Phased detector for unknown sigma.
inline DetectResult detect(EqString& s, const DetectConfig& cfg = {}) {
  if (cfg.terminal_sigma < 16) throw ParameterError("detect: terminal_sigma must be at least 16");
  const Index n = s.size();
  const ComparisonStats start = s.stats();
  DetectResult out;
  out.report.n = n;
  std::vector<Index> deact_diff(static_cast<std::size_t>(n + 2), 0);

  auto finish = [&](std::optional<Square> q) {
    out.square = q;
    out.report.witness = q;
    out.report.stats = s.stats() - start;
    Index run = 0;
    for (Index i = 1; i <= n; ++i) {
      run += deact_diff[static_cast<std::size_t>(i)];
      out.report.max_position_deactivations = std::max(out.report.max_position_deactivations, run);
    }
    return out;
  };

  if (n < 2) return finish(std::nullopt);
  PhaseSchedule sch(n);

  for (int t = 0; t <= sch.top(); ++t) {
    if (!sch.valid(t)) continue;
    const ComparisonStats phase_start = s.stats();
    PhaseRecord rec;
    rec.t = t;
    rec.sigma_t = sch.sigma(t);
    rec.block = sch.block(t);
    rec.pairs = sch.pairs(t);
    if (cfg.record_pairs) rec.pair_states.assign(static_cast<std::size_t>(rec.pairs), PairState::Untouched);
    auto state = [&](Index j, PairState st) {
      if (cfg.record_pairs) rec.pair_states[static_cast<std::size_t>(j - 1)] = st;
    };
    auto close = [&] {
      rec.spent = s.stats() - phase_start;
      out.report.phases.push_back(std::move(rec));
      ++out.report.phases_run;
    };

    if (rec.sigma_t <= cfg.terminal_sigma) {
      rec.terminal = true;
      for (Index j = 1; j <= rec.pairs; ++j) {
        if (!sch.active(t, j)) {
          ++rec.skipped;
          state(j, PairState::Deactivated);
          continue;
        }
        ++rec.swept;
        state(j, PairState::Swept);
        if (auto q = main_lorentz_square(s, sch.pair_range(t, j))) {
          close();
          return finish(q);
        }
      }
      close();
      return finish(std::nullopt);
    }

    // sigma_t >= 512 is a power of two, so delta is exact.
    rec.delta = rec.sigma_t / 8;
    rec.sigma_est = cfg.sigma_est.value_or(detail::default_sigma_est(rec.sigma_t));
    const Index root = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(rec.sigma_t))));
    bool exceeded = false;
    for (Index j = 1; j <= rec.pairs && !exceeded; ++j) {
      if (!sch.active(t, j)) {
        ++rec.skipped;
        state(j, PairState::Deactivated);
        continue;
      }
      const Range window = sch.pair_range(t, j);
      auto fz = factorize_budgeted(s, window, rec.delta, rec.sigma_est, cfg.budget_c);
      if (std::holds_alternative<SigmaExceeded>(fz)) {
        exceeded = true;
        break;
      }
      ++rec.factorized;
      state(j, PairState::Factorized);
      const auto& phrases = std::get<std::vector<Phrase>>(fz);
      if (auto q = detect_long(s, phrases, rec.delta, window)) {
        close();
        return finish(q);
      }
      for (const Phrase& ph : phrases) {
        const Index k = ph.tail_len();
        if (k < rec.delta) continue;
        ++rec.long_tails;
        const Range tail{ph.tail_start(), ph.e};
        rec.pairs_deactivated += sch.deactivate_within(t + 2, tail);
        const Index lo = tail.first + 2 * root;
        const Index hi = tail.last - 2 * root;
        if (lo <= hi) {
          ++deact_diff[static_cast<std::size_t>(lo)];
          --deact_diff[static_cast<std::size_t>(hi + 1)];
        }
      }
    }
    if (exceeded) {
      rec.sigma_exceeded = true;
      out.report.fallback_used = true;
      for (Index j = 1; j <= rec.pairs; ++j) {
        ++rec.swept;
        state(j, PairState::Swept);
        if (auto q = main_lorentz_square(s, sch.pair_range(t, j))) {
          close();
          return finish(q);
        }
      }
      close();
      return finish(std::nullopt);
    }
    close();
  }
  return finish(std::nullopt);
}

}  // namespace squarerun
