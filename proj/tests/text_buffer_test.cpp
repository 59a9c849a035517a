#include <gtest/gtest.h>

#include <optional>

#include "repair/text_buffer.hpp"
#include "test_support.hpp"

namespace repair {
namespace {

// Cells of a blank run of length r in a buffer of code space n.
std::vector<Word> run_cells(std::size_t r, std::size_t n) {
  const Word star = n - 2;
  const Word fill = n - 1;
  std::vector<Word> cells(r, fill);
  if (r >= TextBuffer::kMinDelimitedRun) {
    cells[1] = star;
    cells[2] = r - 1;
    cells[3] = star;
    cells[r - 4] = star;
    cells[r - 3] = r - 1;
    cells[r - 2] = star;
  }
  return cells;
}

std::vector<Word> concat(std::initializer_list<std::vector<Word>> parts) {
  std::vector<Word> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// a B [11 blanks] c, n = 14.
TextBuffer delimited_run_layout() {
  constexpr std::size_t n = 14;
  return TextBuffer::from_cells(concat({{0, 1}, run_cells(11, n), {2}}));
}

TEST(TextBuffer, ReadClassifiesDelimitedRun) {
  const TextBuffer t = delimited_run_layout();
  ASSERT_EQ(t.size(), 14u);
  EXPECT_EQ(t.cell(4), 10u);
  EXPECT_EQ(t.read(0), Word{0});
  EXPECT_EQ(t.read(1), Word{1});
  EXPECT_EQ(t.read(4), std::nullopt);
  EXPECT_EQ(t.read(10), std::nullopt);
  EXPECT_EQ(t.read(13), Word{2});
  for (std::size_t p = 2; p <= 12; ++p) EXPECT_TRUE(t.is_blank(p)) << p;
  EXPECT_THROW(t.read(14), std::out_of_range);
  EXPECT_EQ(t.live_count(), 3u);
}

TEST(TextBuffer, SkipsRunsInBothDirections) {
  const TextBuffer t = delimited_run_layout();
  EXPECT_EQ(t.next_nonblank(1), 13u);
  EXPECT_EQ(t.prev_nonblank(13), 1u);
  EXPECT_EQ(t.next_nonblank(13), TextBuffer::npos);
  EXPECT_EQ(t.prev_nonblank(0), TextBuffer::npos);

  const TextBuffer ab(std::vector<Word>{0, 1, 0, 1, 0});
  EXPECT_EQ(ab.next_nonblank(0), 1u);
  EXPECT_EQ(ab.prev_nonblank(1), 0u);

  // a___b with a short run
  const TextBuffer shortrun = TextBuffer::from_cells({0, 5, 5, 5, 1, 0});
  EXPECT_EQ(shortrun.next_nonblank(0), 4u);
  EXPECT_EQ(shortrun.prev_nonblank(4), 0u);
  EXPECT_EQ(shortrun.pair_at(0), (Pair{0, 1}));
}

TEST(TextBuffer, PairAtSkipsBlanks) {
  const TextBuffer t = delimited_run_layout();
  EXPECT_EQ(t.pair_at(1), (Pair{1, 2}));
  EXPECT_EQ(t.pair_at(5), std::nullopt);
  EXPECT_EQ(t.pair_at(13), std::nullopt);
}

TEST(TextBuffer, ReplaceMergesThreeRegionsIntoOneRun) {
  // a B [11] C [12] D  ->  a E [24] D, n = 27
  constexpr std::size_t n = 27;
  TextBuffer t = TextBuffer::from_cells(
      concat({{0, 1}, run_cells(11, n), {2}, run_cells(12, n), {3}}));
  ASSERT_TRUE(t.well_formed());
  ASSERT_EQ(t.next_nonblank(1), 13u);
  t.replace_pair(1, 4);
  const std::vector<Word> expected = concat({{0, 4}, run_cells(24, n), {3}});
  EXPECT_EQ(std::vector<Word>(t.cells().begin(), t.cells().end()), expected);
  EXPECT_EQ(t.cell(4), 23u);
  EXPECT_EQ(t.live_count(), 3u);
  EXPECT_TRUE(t.well_formed());
}

TEST(TextBuffer, ShortRunsStayPlain) {
  // abab -> x_ab -> x_x_ (codes a=0, b=1, x=1 stands for a fresh symbol)
  TextBuffer t(std::vector<Word>{0, 1, 0, 1});
  t.replace_pair(0, 1);
  EXPECT_EQ(std::vector<Word>(t.cells().begin(), t.cells().end()), (std::vector<Word>{1, 3, 0, 1}));
  t.replace_pair(2, 1);
  EXPECT_EQ(std::vector<Word>(t.cells().begin(), t.cells().end()), (std::vector<Word>{1, 3, 1, 3}));
  EXPECT_EQ(t.compact(), 2u);
  EXPECT_EQ(t.live_symbols(), (std::vector<Word>{1, 1}));
  EXPECT_TRUE(t.compacted());
}

TEST(TextBuffer, ReplaceRejectsBrokenPreconditions) {
  TextBuffer t(std::vector<Word>{0, 1, 0, 1});
  EXPECT_THROW(t.replace_pair(3, 0), std::logic_error);
  t.replace_pair(0, 1);
  EXPECT_THROW(t.replace_pair(1, 0), std::logic_error);
}

TEST(TextBuffer, RejectsSymbolsInReservedRange) {
  EXPECT_THROW(TextBuffer(std::vector<Word>{0, 1, 2, 3}), std::invalid_argument);
  EXPECT_NO_THROW(TextBuffer(std::vector<Word>{0, 1, 0, 1}));
}

TEST(TextBuffer, CompactMergedLayout) {
  constexpr std::size_t n = 27;
  TextBuffer t = TextBuffer::from_cells(concat({{0, 4}, run_cells(24, n), {3}}));
  ArenaAccountant acc;
  EXPECT_EQ(t.compact(&acc), 3u);
  EXPECT_EQ(t.live_symbols(), (std::vector<Word>{0, 4, 3}));
  EXPECT_EQ(acc.reclaimed_words(), 24u);
}

TEST(TextBuffer, CompactAllBlank) {
  TextBuffer t = TextBuffer::from_cells(run_cells(12, 12));
  EXPECT_EQ(t.live_count(), 0u);
  EXPECT_EQ(t.first_nonblank(), TextBuffer::npos);
  EXPECT_EQ(t.compact(), 0u);
}

TEST(TextBuffer, DecodePlain) {
  EXPECT_EQ(delimited_run_layout().decode_plain(),
            (std::vector<std::pair<std::size_t, Word>>{{0, 0}, {1, 1}, {13, 2}}));
  const TextBuffer abc(std::vector<Word>{0, 1, 2, 0, 0, 0});
  EXPECT_EQ(abc.decode_plain().size(), 6u);
}

TEST(TextBuffer, RunLengthTenUsesDelimitersWithoutInterior) {
  constexpr std::size_t n = 12;
  const auto cells = run_cells(10, n);
  EXPECT_EQ(cells, (std::vector<Word>{11, 10, 9, 10, 11, 11, 10, 9, 10, 11}));
  const TextBuffer t = TextBuffer::from_cells(concat({{0}, cells, {1}}));
  EXPECT_TRUE(t.well_formed());
  EXPECT_EQ(t.next_nonblank(0), 11u);
  EXPECT_EQ(t.prev_nonblank(11), 0u);
}

// Random replacements against a model that keeps an explicit blank flag.
TEST(TextBufferProperty, MatchesShadowModel) {
  testing::Rng rng(2024);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = testing::uniform(rng, 3, 400);
    const std::size_t sigma = testing::uniform(rng, 1, std::min<std::size_t>(n - 2, 20));
    std::vector<Word> symbols = testing::random_symbols(rng, n, sigma);
    std::vector<std::optional<Word>> model(symbols.begin(), symbols.end());
    TextBuffer t(symbols);

    std::vector<std::size_t> live(n);
    for (std::size_t i = 0; i < n; ++i) live[i] = i;
    const std::size_t steps = testing::uniform(rng, 0, n - 1);
    for (std::size_t s = 0; s < steps && live.size() >= 2; ++s) {
      const std::size_t k = testing::uniform(rng, 0, live.size() - 2);
      const Word symbol = testing::uniform(rng, 0, n - 3);
      t.replace_pair(live[k], symbol);
      model[live[k]] = symbol;
      model[live[k + 1]].reset();
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(k + 1));

      ASSERT_TRUE(t.well_formed());
      ASSERT_EQ(t.live_count(), live.size());
    }
    std::vector<std::pair<std::size_t, Word>> expected;
    for (std::size_t i = 0; i < n; ++i) {
      if (model[i]) expected.emplace_back(i, *model[i]);
      ASSERT_EQ(t.read(i), model[i]) << "pos " << i;
    }
    ASSERT_EQ(t.decode_plain(), expected);
    for (std::size_t k = 0; k < live.size(); ++k) {
      const std::size_t next = k + 1 < live.size() ? live[k + 1] : TextBuffer::npos;
      const std::size_t prev = k > 0 ? live[k - 1] : TextBuffer::npos;
      ASSERT_EQ(t.next_nonblank(live[k]), next);
      ASSERT_EQ(t.prev_nonblank(live[k]), prev);
    }
    ASSERT_EQ(t.compact(), live.size());
    std::vector<Word> remaining;
    for (const auto& [pos, sym] : expected) remaining.push_back(sym);
    ASSERT_EQ(t.live_symbols(), remaining);
  }
}

}  // namespace
}  // namespace repair
