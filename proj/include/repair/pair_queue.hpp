#pragma once

// Pieces shared by the high- and low-frequency pair queues: the queue entry
// view, construction of the frequency list, and synchronize.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

#include "repair/core.hpp"
#include "repair/inplace_sort.hpp"
#include "repair/pair_sorter.hpp"
#include "repair/text_buffer.hpp"

namespace repair {

// <P, L, F>: the pair's occurrences all lie in TP[start, start + length)
// and the pair currently occurs `freq` times.
struct PairRange {
  Word start = 0;
  Word length = 0;
  Word freq = 0;

  friend bool operator==(const PairRange&, const PairRange&) = default;
};

class EmptyQueueError : public std::logic_error {
 public:
  EmptyQueueError() : std::logic_error("operation on an empty pair queue") {}
};

// Counters a queue accumulates for the engine's reports.
struct QueueCounters {
  std::size_t sync_calls = 0;
  std::size_t sync_positions = 0;
  std::size_t insertions = 0;
  std::size_t evictions = 0;
  std::size_t rejections = 0;
};

namespace detail {

// Rewrites a sorted TP prefix into the list <m - k, first position> of pairs
// with k >= 2 occurrences (two words per entry) and stably sorts it by
// decreasing k, so ties keep pair order. Returns the number of entries.
inline std::size_t build_frequency_list(const TextBuffer& text, std::span<Word> words,
                                        std::size_t used) {
  const Word* cells = text.cells().data();
  const Word m = text.size();
  std::size_t out = 0;
  std::size_t i = 0;
  while (i < used) {
    const Word first = words[i];
    std::size_t j = i + 1;
    while (j < used && cells[words[j]] == cells[first] &&
           cells[words[j] + 1] == cells[first + 1]) {
      ++j;
    }
    const std::size_t k = j - i;
    if (k >= 2) {
      words[out] = m - k;
      words[out + 1] = first;
      out += 2;
    }
    i = j;
  }
  inplace::RecordsByFirstWord<2> list(words.first(out));
  inplace::stable_sort(list);
  return out / 2;
}

// Scans the sorted frequency list in decreasing frequency. `admit(pair, k)`
// is called for the first `capacity` entries with k >= floor; the frequency
// of the first entry left out for lack of capacity is returned (0 if none).
template <typename Admit>
Word admit_from_frequency_list(const TextBuffer& text, std::span<const Word> words,
                               std::size_t entries, std::size_t capacity, Word floor,
                               Admit&& admit) {
  const Word m = text.size();
  std::size_t admitted = 0;
  for (std::size_t e = 0; e < entries; ++e) {
    const Word k = m - words[2 * e];
    if (k < floor) break;
    if (admitted == capacity) return k;
    const Word pos = words[2 * e + 1];
    admit(Pair{text.cell(pos), text.cell(pos + 1)}, k);
    ++admitted;
  }
  return 0;
}

// Sorts the pair's TP range (blank positions to the back), hands each new
// cluster to the queue and shrinks the pair's own range to its occurrences.
// `floor` is the smallest frequency the queue admits.
template <typename Queue>
void synchronize(Queue& queue, Pair target, const TextBuffer& text, std::span<Word> tp,
                 Word floor) {
  const auto range = queue.get(target);
  if (!range) throw std::logic_error("synchronize on a pair that is not queued");
  auto& counters = queue.counters();
  ++counters.sync_calls;
  counters.sync_positions += range->length;

  std::span<Word> slice = tp.subspan(range->start, range->length);
  const std::size_t valid = sort_position_range(text, slice);
  bool found_self = false;
  for_each_cluster(text, slice.first(valid), [&](const PairCluster& c) {
    const Word start = range->start + c.start;
    const Word k = c.count;
    if (c.pair == target) {
      queue.set_range(target, PairRange{start, k, k});
      found_self = true;
      return;
    }
    if (queue.contains(c.pair)) {
      throw std::logic_error("harvested pair is already queued");
    }
    if (k < floor) return;
    if (queue.size() < queue.capacity()) {
      queue.insert(c.pair, PairRange{start, k, k});
      ++counters.insertions;
      return;
    }
    const std::optional<Pair> victim = queue.eviction_candidate(target);
    if (victim && k > queue.get(*victim)->freq) {
      queue.evict(*victim);
      queue.insert(c.pair, PairRange{start, k, k});
      ++counters.evictions;
      ++counters.insertions;
    } else {
      queue.note_untracked(k);
      ++counters.rejections;
    }
  });
  if (!found_self) queue.set_range(target, PairRange{range->start + valid, 0, 0});
}

}  // namespace detail

}  // namespace repair
