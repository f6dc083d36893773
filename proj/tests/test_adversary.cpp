#include <gtest/gtest.h>

#include "squarerun/adversary.hpp"
#include "squarerun/approx_lz.hpp"
#include "squarerun/corpus.hpp"
#include "squarerun/detector.hpp"
#include "support/reference.hpp"

using namespace squarerun;

namespace {

// Drives the 20-node, sigma = 16 square-mode example so that the nodes are
// colored in the order 2, 6, 8, 7, 15, 16, 14.
std::shared_ptr<ConflictGraph> figure_state() {
  auto g = std::make_shared<ConflictGraph>(AdversaryMode::Square, 20, 16);
  const std::vector<std::pair<Index, Index>> queries{
      {2, 10}, {2, 6}, {2, 7}, {2, 8},                // node 2
      {6, 3}, {6, 4}, {6, 12},                        // node 6
      {8, 3}, {8, 4}, {8, 12},                        // node 8
      {7, 10}, {7, 3}, {7, 4},                        // node 7
      {15, 11}, {15, 18}, {15, 19}, {15, 20},         // node 15
      {16, 11}, {16, 18}, {16, 19}, {16, 20},         // node 16
      {14, 10}, {14, 11}, {14, 18}, {14, 19}};        // node 14
  for (const auto& [i, j] : queries) EXPECT_FALSE(g->same(i, j));
  return g;
}

std::vector<Token> witness_of(const std::shared_ptr<ConflictGraph>& g) { return g->witness_small(); }

}  // namespace

TEST(Adversary, SeparatorsCarryTernaryThueMorse) {
  ConflictGraph g(AdversaryMode::Square, 20, 16);
  const std::vector<Token> tm{2, 1, 0, 2, 0};
  for (Index k = 0; k < 5; ++k) EXPECT_EQ(g.color(4 * k + 1), tm[static_cast<std::size_t>(k)]);
  EXPECT_FALSE(g.colored(2));
  // Two separators holding the same symbol compare equal.
  EXPECT_TRUE(g.same(1, 13));
  EXPECT_FALSE(g.same(1, 5));
  EXPECT_EQ(g.edge_count(), 1);
}

TEST(Adversary, UncoloredPairsAreUnequal) {
  ConflictGraph g(AdversaryMode::Alphabet, 10, 3);
  EXPECT_FALSE(g.same(1, 2));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_EQ(g.degree(1), 1);
  EXPECT_FALSE(g.same(1, 2));
  EXPECT_EQ(g.degree(1), 1);  // repeated question, same edge
  EXPECT_EQ(g.answered(), 2);
}

TEST(Adversary, FigureColoringOrder) {
  const auto g = figure_state();
  EXPECT_EQ(g->coloring_order(), (std::vector<Index>{2, 6, 8, 7, 15, 16, 14}));
  EXPECT_EQ(g->color(2), 3);
  EXPECT_EQ(g->color(6), 4);
  EXPECT_EQ(g->color(8), 5);  // avoided 0-2 (separators), 3 (node 2) and 4 (node 6)
  EXPECT_EQ(g->color(7), 6);
  EXPECT_EQ(g->color(15), 3);
  EXPECT_EQ(g->color(16), 4);
  EXPECT_EQ(g->color(14), 5);
  EXPECT_FALSE(g->colored(10));
  EXPECT_FALSE(g->colored(11));
  EXPECT_FALSE(g->has_edge(10, 11));
  std::vector<Token> expect{0, 1, 2};
  for (Token c = 7; c < 16; ++c) expect.push_back(c);
  EXPECT_EQ(g->shared_colors(10, 11), expect);
  EXPECT_TRUE(g->replay());
}

TEST(Adversary, FigureSquareIsEnforceable) {
  const auto g = figure_state();
  const auto e = g->eliminability_check({10, 11});
  EXPECT_FALSE(e.all_eliminated);
  ASSERT_TRUE(e.square);
  EXPECT_EQ(*e.square, (Square{10, 1}));
  EXPECT_TRUE(g->consistent(e.completion));
  EXPECT_EQ(e.completion[9], e.completion[10]);
  EXPECT_LE(ref::distinct(e.completion), 16);
  EXPECT_DOUBLE_EQ(e.required, 1.0);
  EXPECT_EQ(e.edges_in_range, 0);

  const auto w = witness_of(g);
  EXPECT_TRUE(g->consistent(w));
  EXPECT_FALSE(ref::has_square(w));
  EXPECT_THROW(static_cast<void>(g->eliminability_check({1, 3})), InputError);
}

TEST(Adversary, EliminatedRange) {
  ConflictGraph g(AdversaryMode::Square, 40, 32);  // blocks of 8: colorless 2..8
  for (Index y = 2; y <= 8; ++y) {
    for (Index l = 1; y + l <= 8; ++l) g.same(y, y + l);
  }
  EXPECT_FALSE(g.colored(2));
  const auto e = g.eliminability_check({2, 8});
  EXPECT_TRUE(e.all_eliminated);
  EXPECT_FALSE(e.square);
  EXPECT_GE(static_cast<double>(e.edges_in_range), e.required);
  const auto single = g.eliminability_check({10, 10});
  EXPECT_TRUE(single.all_eliminated);
  EXPECT_DOUBLE_EQ(single.required, 0.0);
}

TEST(Adversary, AlphabetWitnesses) {
  ConflictGraph fresh(AdversaryMode::Alphabet, 20, 4);
  EXPECT_EQ(ref::distinct(fresh.witness_small()), 1);
  EXPECT_EQ(ref::distinct(fresh.witness_large()), 20);

  auto g = std::make_shared<ConflictGraph>(AdversaryMode::Alphabet, 8, 2);
  g->same(1, 2);
  g->same(3, 4);
  const auto small = g->witness_small();
  EXPECT_LE(ref::distinct(small), 2);
  EXPECT_TRUE(g->consistent(small));
  // Degree sigma - 1 = 1 colors both ends of every answered pair.
  EXPECT_TRUE(g->colored(1));
  EXPECT_NE(g->color(1), g->color(2));
}

TEST(Adversary, AlphabetAmbiguityUnderStrategies) {
  const Index n = 256;
  const Index sigma = 4;
  const Index limit = n * sigma / 8;
  for (int strategy = 0; strategy < 3; ++strategy) {
    auto g = std::make_shared<ConflictGraph>(AdversaryMode::Alphabet, n, sigma);
    g->set_query_limit(limit);
    EqString s(g);
    try {
      if (strategy == 0) strategy_scan(s);
      if (strategy == 1) strategy_random_pairs(s, 10 * limit, 5);
      if (strategy == 2) detect(s);
    } catch (const QueryLimitReached&) {
    }
    EXPECT_LE(g->answered(), limit);
    const auto small = g->witness_small();
    const auto large = g->witness_large();
    EXPECT_TRUE(g->consistent(small));
    EXPECT_TRUE(g->consistent(large));
    EXPECT_LE(ref::distinct(small), sigma);
    EXPECT_GE(ref::distinct(large), n / 2);
    EXPECT_EQ(g->large_distinct(), ref::distinct(large));
    EXPECT_TRUE(g->replay());
  }
}

TEST(Adversary, QueryLimitAndContract) {
  auto g = std::make_shared<ConflictGraph>(AdversaryMode::Alphabet, 16, 2);
  g->set_query_limit(3);
  EqString s(g);
  EXPECT_THROW(strategy_scan(s), QueryLimitReached);
  EXPECT_EQ(g->answered(), 3);
  g->set_query_limit(std::nullopt);
  strategy_random_pairs(s, 10, 1);
  EXPECT_THROW(static_cast<void>(g->witness_large()), std::logic_error);
}

TEST(Adversary, SquareModeKeepsSquareFreeCompletion) {
  for (Index sigma : {8, 16, 32}) {
    auto g = std::make_shared<ConflictGraph>(AdversaryMode::Square, 300, sigma);
    EqString s(g);
    EXPECT_FALSE(main_lorentz_square(s, s.whole()));
    const auto w = g->witness_small();
    EXPECT_TRUE(g->consistent(w));
    EXPECT_FALSE(ref::has_square(w));
    EXPECT_LE(ref::distinct(w), sigma);
    EXPECT_TRUE(g->replay());
    // Every colored node respects its block.
    for (Index i = 1; i <= 300; ++i) {
      if (!g->colored(i) || (i - 1) % (sigma / 4) == 0) continue;
      EXPECT_GE(g->color(i), 3);
    }
  }
}

TEST(Adversary, EarlyStopLeavesEnforceableSquare) {
  auto g = std::make_shared<ConflictGraph>(AdversaryMode::Square, 512, 16);
  g->set_query_limit(400);
  EqString s(g);
  EXPECT_THROW(main_lorentz_square(s, s.whole()), QueryLimitReached);
  bool enforced = false;
  for (const Range r : g->colorless_ranges()) {
    const auto e = g->eliminability_check(r);
    if (e.all_eliminated) continue;
    ASSERT_TRUE(g->consistent(e.completion));
    EXPECT_TRUE(ref::is_square(e.completion, e.square->s, e.square->half));
    enforced = true;
    break;
  }
  EXPECT_TRUE(enforced);
  EXPECT_FALSE(ref::has_square(g->witness_small()));
}

TEST(Adversary, ParameterChecks) {
  EXPECT_THROW(ConflictGraph(AdversaryMode::Alphabet, 10, 5), InputError);
  EXPECT_THROW(ConflictGraph(AdversaryMode::Alphabet, 10, 1), InputError);
  EXPECT_THROW(ConflictGraph(AdversaryMode::Square, 100, 6), InputError);
  EXPECT_THROW(ConflictGraph(AdversaryMode::Square, 100, 12 * 10), InputError);
  EXPECT_NO_THROW(ConflictGraph(AdversaryMode::Square, 10, 8));  // last block truncated
}

TEST(Adversary, TranscriptDump) {
  ConflictGraph g(AdversaryMode::Square, 16, 8);
  g.same(1, 3);
  g.same(1, 7);
  std::ostringstream os;
  g.write_transcript(os);
  EXPECT_EQ(os.str(), "1 3 0\n1 7 " + std::to_string(g.color(1) == g.color(7) ? 1 : 0) + "\n");
}

TEST(Reductions, Transforms) {
  EXPECT_EQ(reduction_double({0, 1}), (std::vector<Token>{0, 0, 1, 1}));
  EXPECT_EQ(reduction_separator({0, 1}), (std::vector<Token>{0, 0, 2, 1, 1, 2}));
  EXPECT_TRUE(reduction_double({}).empty());
}

TEST(Reductions, FactorisationsRevealAlphabetSize) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = random_string(60, 2 + static_cast<Index>(seed % 7), seed);
    const Index sigma = ref::distinct(t);
    auto d = EqString::from_symbols(reduction_double(t));
    Index ones = 0;
    for (const Range& r : f_factorization(d, d.whole())) ones += r.length() == 1 && r.first % 2 == 1;
    EXPECT_EQ(ones, sigma);
    const auto st = reduction_separator(t);
    auto sep = EqString::from_symbols(st);
    Index twos = 0;
    // A final phrase truncated by the string end is not counted.
    for (const Range& r : exact_lz(sep, sep.whole())) {
      twos += r.length() == 2 && r.first % 3 == 2 && !(r.last == sep.size() && ref::cut_at_end(st, r.first));
    }
    EXPECT_EQ(twos, sigma);
  }
}
