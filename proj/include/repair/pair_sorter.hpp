#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "repair/core.hpp"
#include "repair/text_buffer.hpp"

namespace repair {

// Text positions clustered by the pair starting at each position, ordered
// by (pair, position). A view over caller-owned arena words.
class PositionArray {
 public:
  PositionArray() = default;
  PositionArray(std::span<Word> words, std::size_t used) : words_(words), used_(used) {}

  std::span<Word> positions() const noexcept { return words_.first(used_); }
  std::span<Word> words() const noexcept { return words_; }
  std::size_t size() const noexcept { return used_; }
  Word operator[](std::size_t i) const noexcept { return words_[i]; }

 private:
  std::span<Word> words_;
  std::size_t used_ = 0;
};

// Number of pairs encoded and sorted by each phase, for instrumentation.
struct SortTrace {
  std::vector<std::size_t> phase_sizes;
  std::size_t merges = 0;
};

// Sorts the positions 0..m-2 of a compacted text by (pair, position) using
// only `arena` (at least m-1 words) plus O(1) locals: each phase encodes a
// third of the remaining pairs as 3-word keys in the free tail, radix sorts
// them, keeps only the positions, and the sorted segments are finally
// merged right to left.
PositionArray sort_pairs(const TextBuffer& text, std::span<Word> arena,
                         SortTrace* trace = nullptr);

// Sorts an arbitrary set of text positions in place. Positions that are
// blank, or hold the last symbol, are moved to the suffix. Returns the
// length of the sorted prefix of valid positions.
std::size_t sort_position_range(const TextBuffer& text, std::span<Word> range);

struct PairCluster {
  Pair pair;
  std::size_t count = 0;
  std::size_t start = 0;  // index of the cluster's first entry in the array
};

// One left-to-right scan over sorted positions; calls fn(const PairCluster&)
// for every maximal run of equal pairs.
template <typename Fn>
void for_each_cluster(const TextBuffer& text, std::span<const Word> sorted, Fn&& fn) {
  std::size_t i = 0;
  while (i < sorted.size()) {
    const auto pair = text.pair_at(sorted[i]);
    std::size_t j = i + 1;
    while (j < sorted.size() && text.pair_at(sorted[j]) == pair) ++j;
    fn(PairCluster{*pair, j - i, i});
    i = j;
  }
}

std::vector<PairCluster> count_frequencies(const TextBuffer& text,
                                           std::span<const Word> sorted);

// Maximum positional pair frequency of a compacted text, using `arena`
// (at least m-1 words) as scratch.
std::size_t highest_frequency(const TextBuffer& text, std::span<Word> arena);

// Convenience overload that registers an n-word scratch block.
std::size_t highest_frequency(const TextBuffer& text, ArenaAccountant& accountant);

}  // namespace repair
