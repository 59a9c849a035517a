#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "repair/inplace_sort.hpp"
#include "test_support.hpp"

namespace repair::inplace {
namespace {

using testing::Rng;
using testing::uniform;

TEST(ByteWidth, CountsSignificantBytes) {
  EXPECT_EQ(byte_width(0), 1u);
  EXPECT_EQ(byte_width(255), 1u);
  EXPECT_EQ(byte_width(256), 2u);
  EXPECT_EQ(byte_width(~Word{0}), 8u);
}

TEST(RadixSortRecords, MatchesStdSort) {
  Rng rng(5);
  for (int round = 0; round < 200; ++round) {
    const std::size_t count = uniform(rng, 0, 3000);
    const Word limit = Word{1} << uniform(rng, 1, 40);
    std::vector<Word> data(3 * count);
    for (auto& w : data) w = uniform(rng, 0, limit - 1);
    std::vector<std::array<Word, 3>> expected(count);
    for (std::size_t i = 0; i < count; ++i) {
      expected[i] = {data[3 * i], data[3 * i + 1], data[3 * i + 2]};
    }
    std::sort(expected.begin(), expected.end());
    const unsigned bytes = byte_width(limit - 1);
    radix_sort_records<3>(data, {bytes, bytes, bytes});
    for (std::size_t i = 0; i < count; ++i) {
      ASSERT_EQ((std::array<Word, 3>{data[3 * i], data[3 * i + 1], data[3 * i + 2]}),
                expected[i]);
    }
  }
}

// Ordered by key only, so stability is observable through the payload.
struct KeyedRecords {
  std::vector<std::pair<int, int>>& items;
  std::size_t size() const { return items.size(); }
  bool less(std::size_t i, std::size_t j) const { return items[i].first < items[j].first; }
  void swap(std::size_t i, std::size_t j) { std::swap(items[i], items[j]); }
  void rotate(std::size_t lo, std::size_t mid, std::size_t hi) {
    std::rotate(items.begin() + lo, items.begin() + mid, items.begin() + hi);
  }
};

TEST(MergeAdjacent, StableMergeOfRandomRuns) {
  Rng rng(17);
  for (int round = 0; round < 500; ++round) {
    const std::size_t left = uniform(rng, 0, 300);
    const std::size_t right = uniform(rng, 0, 300);
    const int keys = static_cast<int>(uniform(rng, 1, 40));
    std::vector<std::pair<int, int>> items;
    for (std::size_t i = 0; i < left + right; ++i) {
      items.emplace_back(static_cast<int>(uniform(rng, 0, keys)), static_cast<int>(i));
    }
    std::sort(items.begin(), items.begin() + left);
    std::sort(items.begin() + left, items.end());
    auto expected = items;
    std::stable_sort(expected.begin(), expected.end(),
                     [](auto& a, auto& b) { return a.first < b.first; });
    KeyedRecords seq{items};
    merge_adjacent(seq, 0, left, left + right);
    ASSERT_EQ(items, expected);
  }
}

TEST(MergeAdjacent, AlreadyOrderedIsUntouched) {
  std::vector<std::pair<int, int>> items{{1, 0}, {2, 1}, {3, 2}, {4, 3}};
  const auto before = items;
  KeyedRecords seq{items};
  merge_adjacent(seq, 0, 2, 4);
  EXPECT_EQ(items, before);
}

TEST(StableSort, RecordsByFirstWordKeepTieOrder) {
  Rng rng(23);
  for (int round = 0; round < 100; ++round) {
    const std::size_t count = uniform(rng, 0, 2000);
    std::vector<Word> data(2 * count);
    for (std::size_t i = 0; i < count; ++i) {
      data[2 * i] = uniform(rng, 0, 30);
      data[2 * i + 1] = i;
    }
    std::vector<std::pair<Word, Word>> expected;
    for (std::size_t i = 0; i < count; ++i) expected.emplace_back(data[2 * i], data[2 * i + 1]);
    std::stable_sort(expected.begin(), expected.end(),
                     [](auto& a, auto& b) { return a.first < b.first; });
    RecordsByFirstWord<2> seq(data);
    stable_sort(seq);
    for (std::size_t i = 0; i < count; ++i) {
      ASSERT_EQ(data[2 * i], expected[i].first);
      ASSERT_EQ(data[2 * i + 1], expected[i].second);
    }
  }
}

}  // namespace
}  // namespace repair::inplace
