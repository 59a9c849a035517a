#include <gtest/gtest.h>

#include "repair/core.hpp"
#include "test_support.hpp"

namespace repair {
namespace {

using testing::bytes_of;

TEST(RemapInput, FirstOccurrenceOrder) {
  const auto r = remap_input(bytes_of("abab"));
  EXPECT_EQ(r.symbols, (std::vector<Word>{0, 1, 0, 1}));
  EXPECT_EQ(r.alphabet.sigma(), 2u);
  EXPECT_FALSE(r.needs_fallback);

  const auto banana = remap_input(bytes_of("banana"));
  EXPECT_EQ(banana.symbols, (std::vector<Word>{0, 1, 2, 1, 2, 1}));
  EXPECT_EQ(banana.alphabet.dense_to_original, (std::vector<std::uint8_t>{'b', 'a', 'n'}));
  EXPECT_EQ(banana.alphabet.original_to_dense['n'], 2);
  EXPECT_EQ(banana.alphabet.original_to_dense['z'], -1);
}

TEST(RemapInput, FallbackWhenAlphabetCrowdsReservedCodes) {
  std::vector<std::uint8_t> all(257);
  for (std::size_t i = 0; i < 256; ++i) all[i] = static_cast<std::uint8_t>(i);
  all[256] = 0;
  const auto r = remap_input(all);
  EXPECT_EQ(r.alphabet.sigma(), 256u);
  EXPECT_TRUE(r.needs_fallback);
  all.push_back(1);
  EXPECT_FALSE(remap_input(all).needs_fallback);

  EXPECT_TRUE(remap_input(bytes_of("a")).needs_fallback);
  EXPECT_TRUE(remap_input(bytes_of("abc")).needs_fallback);
  EXPECT_FALSE(remap_input(bytes_of("abcab")).needs_fallback);
}

TEST(RemapInput, IsBijective) {
  testing::Rng rng(11);
  for (int round = 0; round < 50; ++round) {
    const auto input = testing::full_range_bytes(rng, testing::uniform(rng, 1, 2000));
    const auto r = remap_input(input);
    ASSERT_EQ(r.symbols.size(), input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
      ASSERT_LT(r.symbols[i], r.alphabet.sigma());
      ASSERT_EQ(r.alphabet.dense_to_original[r.symbols[i]], input[i]);
    }
  }
}

Grammar grammar_over(std::string_view alphabet, std::vector<Rule> rules,
                     std::vector<Word> final_sequence, std::uint64_t n) {
  Grammar g;
  for (char c : alphabet) {
    g.alphabet.original_to_dense[static_cast<std::uint8_t>(c)] =
        static_cast<std::int16_t>(g.alphabet.dense_to_original.size());
    g.alphabet.dense_to_original.push_back(static_cast<std::uint8_t>(c));
  }
  g.rules = std::move(rules);
  g.final_sequence = std::move(final_sequence);
  g.original_length = n;
  return g;
}

TEST(Expand, HandExpandedExamples) {
  EXPECT_EQ(expand(grammar_over("ab", {{2, 0, 1}}, {2, 2}, 4)), bytes_of("abab"));
  EXPECT_EQ(expand(grammar_over("abc", {}, {0, 1, 2}, 3)), bytes_of("abc"));
  // a=0 b=1 r=2 c=3 d=4; X=5 -> ab, Y=6 -> ra, Z=7 -> XY
  const Grammar abra = grammar_over("abrcd", {{5, 0, 1}, {6, 2, 0}, {7, 5, 6}},
                                    {7, 3, 0, 4, 7}, 11);
  EXPECT_EQ(expand(abra), bytes_of("abracadabra"));
}

TEST(Expand, RejectsMalformedGrammars) {
  EXPECT_THROW(expand(grammar_over("ab", {{2, 0, 3}}, {2}, 2)), GrammarError);
  EXPECT_THROW(expand(grammar_over("ab", {{3, 0, 1}}, {3}, 2)), GrammarError);
  EXPECT_THROW(expand(grammar_over("ab", {}, {0, 5}, 2)), GrammarError);
  EXPECT_THROW(expand(grammar_over("ab", {{2, 0, 1}}, {2}, 3)), GrammarError);
}

TEST(Expand, DeepChainUsesNoRecursion) {
  std::vector<Rule> rules;
  rules.push_back({1, 0, 0});
  for (Word k = 1; k < 20; ++k) rules.push_back({k + 1, k, k});
  const auto out = expand(grammar_over("a", rules, {20}, std::uint64_t{1} << 20));
  EXPECT_EQ(out.size(), std::size_t{1} << 20);
  EXPECT_TRUE(std::all_of(out.begin(), out.end(), [](std::uint8_t c) { return c == 'a'; }));
}

TEST(ArenaAccountant, TracksPeakAndBudget) {
  ArenaAccountant acc(100);
  {
    ArenaBlock a(acc, 60);
    EXPECT_EQ(acc.current_words(), 60u);
    {
      ArenaBlock b(acc, 40);
      EXPECT_EQ(acc.peak_words(), 100u);
    }
    EXPECT_EQ(acc.current_words(), 60u);
    EXPECT_THROW(ArenaBlock(acc, 41), SpaceBoundViolation);
  }
  EXPECT_EQ(acc.current_words(), 0u);
  EXPECT_EQ(acc.peak_words(), 100u);
  EXPECT_LE(acc.current_words(), acc.peak_words());
  acc.add_reclaimed(13);
  EXPECT_EQ(acc.reclaimed_words(), 13u);
}

TEST(ArenaBlock, MoveTransfersOwnership) {
  ArenaAccountant acc;
  ArenaBlock a(acc, 10);
  ArenaBlock b(std::move(a));
  EXPECT_EQ(b.size(), 10u);
  EXPECT_EQ(acc.current_words(), 10u);
  b = ArenaBlock();
  EXPECT_EQ(acc.current_words(), 0u);
}

TEST(IntegerRoots, MatchFloatingPointOnSmallValues) {
  for (std::size_t n = 0; n < 20000; ++n) {
    const double r = std::sqrt(static_cast<double>(n));
    ASSERT_EQ(ceil_sqrt(n), static_cast<std::size_t>(std::ceil(r))) << n;
    ASSERT_EQ(ceil_sqrt_div(n, 3), static_cast<std::size_t>(std::ceil(r / 3 - 1e-12))) << n;
    ASSERT_EQ(ceil_sqrt_div(n, 11), static_cast<std::size_t>(std::ceil(r / 11 - 1e-12))) << n;
  }
}

}  // namespace
}  // namespace repair
