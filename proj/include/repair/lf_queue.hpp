#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "repair/core.hpp"
#include "repair/pair_index.hpp"
#include "repair/pair_queue.hpp"
#include "repair/pair_sorter.hpp"
#include "repair/text_buffer.hpp"

namespace repair {

// Queue for pairs occurring 2 .. max_frequency-1 times. Records
// <pair, P, L, F, Prev, Next> are chained into one doubly-linked list per
// frequency; a frequency vector holds each list's head and links the
// non-empty frequencies to each other, so max, min and decrease are O(1).
class LfQueue {
 public:
  static constexpr std::size_t kRecordWords = 7;
  static constexpr std::size_t kFrequencyWords = 3;
  static constexpr Word kFloor = 2;

  struct Params {
    std::size_t capacity = 1;
    Word max_frequency = 2;  // exclusive bound on stored frequencies
    Word seed = 0;
  };

  // Records plus two hash slots per record: 13 words per pair.
  static constexpr std::size_t words_required(std::size_t capacity) noexcept {
    return capacity * kRecordWords + 2 * capacity * PairIndex::kSlotWords;
  }
  static constexpr std::size_t frequency_words(Word max_frequency) noexcept {
    return static_cast<std::size_t>(max_frequency) * kFrequencyWords;
  }
  // Capacity of the fast variant: ceil(epsilon * n / 13) pairs.
  static std::size_t fast_capacity(std::size_t n, double epsilon);

  LfQueue() = default;

  // tp must hold the sorted pairs of the compacted text; it is rebuilt in
  // place. `storage` holds records and hash, `frequencies` the vector.
  static LfQueue build(const TextBuffer& text, PositionArray& tp, std::span<Word> storage,
                       std::span<Word> frequencies, const Params& params);

  std::size_t size() const noexcept { return size_; }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return size_ == 0; }
  Word max_frequency() const noexcept { return max_frequency_; }

  std::optional<PairRange> get(Pair pair) const noexcept;
  bool contains(Pair pair) const noexcept { return index_.contains(pair); }

  // Head of the MAX / MIN frequency list. Within a list the most recently
  // linked pair comes first.
  Pair max() const;
  Pair min() const;
  Word max_freq() const noexcept { return max_f_; }
  Word min_freq() const noexcept { return min_f_; }

  void remove(Pair pair) noexcept;
  // F -= 1 and relink; removes the pair when F reaches 1. Returns true when
  // the pair was removed.
  bool decrease(Pair pair);
  // F -= 1 and relink, keeping the pair even at F < 2; see HfQueue::decrement.
  void decrement(Pair pair);
  void synchronize(Pair pair, const TextBuffer& text, std::span<Word> tp);

  void begin_round(Pair pinned) noexcept { pinned_ = pinned; }
  void end_round() noexcept { pinned_ = kNoPair; }
  Word untracked_bound() const noexcept { return untracked_bound_; }

  std::size_t count_invariant_violations() const noexcept;
  // Walks every frequency list: each live record is visited exactly once,
  // sits in the list of its own F, and MAX/MIN/links are coherent.
  bool consistent() const;
  // Pairs of the list for frequency f, head first.
  std::vector<Pair> bucket(Word f) const;
  double hash_load() const noexcept { return index_.load(); }

  const QueueCounters& counters() const noexcept { return counters_; }
  QueueCounters& counters() noexcept { return counters_; }

  // Used by synchronize.
  void set_range(Pair pair, const PairRange& range);
  void insert(Pair pair, const PairRange& range);
  void evict(Pair pair);
  std::optional<Pair> eviction_candidate(Pair syncing) const noexcept;
  void note_untracked(Word freq) noexcept {
    untracked_bound_ = std::max(untracked_bound_, freq);
  }

 private:
  enum Field : std::size_t { kLeft, kRight, kStart, kLength, kFreq, kPrev, kNext };
  enum FreqField : std::size_t { kHead, kLower, kHigher };

  Word* rec(Word slot) const noexcept { return records_.data() + slot * kRecordWords; }
  Word* freq_entry(Word f) const noexcept {
    return frequencies_.data() + f * kFrequencyWords;
  }
  Pair pair_of(Word slot) const noexcept { return Pair{rec(slot)[kLeft], rec(slot)[kRight]}; }

  // Pushes a record at the head of list f, creating the list if needed.
  // `lower`/`higher` are the neighbouring non-empty frequencies when known.
  void link(Word slot, Word f, std::optional<Word> lower = std::nullopt,
            std::optional<Word> higher = std::nullopt);
  // Unlinks a record; drops its frequency from the chain when the list empties.
  void unlink(Word slot) noexcept;
  void add_frequency(Word f, Word lower, Word higher) noexcept;
  void drop_frequency(Word f) noexcept;
  Word allocate_slot() noexcept;

  PairIndex index_;
  std::span<Word> records_;
  std::span<Word> frequencies_;
  std::size_t capacity_ = 0;
  std::size_t slots_used_ = 0;
  std::size_t size_ = 0;
  Word free_head_ = kNull;
  Word max_frequency_ = 2;
  Word max_f_ = kNull;
  Word min_f_ = kNull;
  Pair pinned_ = kNoPair;
  Word untracked_bound_ = 0;
  QueueCounters counters_;
};

// Capacity schedule of the light variant: the queue starts with room for one
// pair and grows by one pair per 13 words of text reclaimed by compaction,
// counted over all rounds so far.
struct LightCapacityPolicy {
  std::size_t round = 1;
  std::size_t capacity = 1;
  std::size_t reclaimed_words = 0;  // total over all completed rounds
};

// Capacity for the next round. The accumulated capacity is returned clamped
// to `remaining_pairs` when that is known (non-zero).
std::size_t light_next_capacity(LightCapacityPolicy& policy, std::size_t reclaimed_words,
                                std::size_t remaining_pairs = 0);

}  // namespace repair
