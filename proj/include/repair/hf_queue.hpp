#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "repair/core.hpp"
#include "repair/pair_index.hpp"
#include "repair/pair_queue.hpp"
#include "repair/pair_sorter.hpp"
#include "repair/text_buffer.hpp"

namespace repair {

// Queue for pairs occurring at least `threshold` times: a hash from pairs to
// slots of a flat array of <pair, P, L, F> records. max and min scan the
// array, so the capacity is kept around sqrt(n)/11.
class HfQueue {
 public:
  static constexpr std::size_t kRecordWords = 5;

  struct Params {
    std::size_t capacity = 1;
    Word threshold = 2;
    Word seed = 0;
  };

  // Hash slots (two per record, load <= 0.5) plus the record array.
  static constexpr std::size_t words_required(std::size_t capacity) noexcept {
    return 2 * capacity * PairIndex::kSlotWords + capacity * kRecordWords;
  }
  // Default parameters for a text of original length n.
  static Params params_for(std::size_t n, Word seed);

  HfQueue() = default;

  // tp must hold the sorted pairs of the compacted text. Rebuilds tp in place
  // (it is overwritten by the frequency list during construction).
  static HfQueue build(const TextBuffer& text, PositionArray& tp, std::span<Word> storage,
                       const Params& params);

  std::size_t size() const noexcept { return size_; }
  std::size_t capacity() const noexcept { return capacity_; }
  Word threshold() const noexcept { return threshold_; }
  bool empty() const noexcept { return size_ == 0; }

  std::optional<PairRange> get(Pair pair) const noexcept;
  bool contains(Pair pair) const noexcept { return index_.contains(pair); }

  // Largest / smallest F; ties go to the lowest array slot.
  Pair max() const;
  Pair min() const;

  void remove(Pair pair) noexcept;
  // F -= 1; removes the pair once F drops below the threshold. Returns true
  // when the pair was removed.
  bool decrease(Pair pair);
  // F -= 1 and nothing else. The engine drops pairs below the threshold
  // only after re-sorting their range, so new pairs in it are not lost.
  void decrement(Pair pair) noexcept;
  void synchronize(Pair pair, const TextBuffer& text, std::span<Word> tp);

  // Engine hooks. The pinned pair is the one being replaced this round and
  // is never chosen as the eviction victim.
  void begin_round(Pair pinned);
  void end_round() noexcept { pinned_ = kNoPair; }

  // Upper bound on the frequency of any pair this queue saw but does not
  // hold: left out at build time, evicted, rejected, or hidden in the range
  // of a pair removed before its range was re-sorted.
  Word untracked_bound() const noexcept { return untracked_bound_; }

  // Number of live entries with F <= L/2.
  std::size_t count_invariant_violations() const noexcept;
  // Hash and array agree on every live entry.
  bool consistent() const noexcept;
  double hash_load() const noexcept { return index_.load(); }

  const QueueCounters& counters() const noexcept { return counters_; }
  QueueCounters& counters() noexcept { return counters_; }

  // Used by synchronize.
  void set_range(Pair pair, const PairRange& range);
  void insert(Pair pair, const PairRange& range);
  void evict(Pair pair);
  std::optional<Pair> eviction_candidate(Pair syncing);
  void note_untracked(Word freq) noexcept {
    untracked_bound_ = std::max(untracked_bound_, freq);
  }

 private:
  Word* record(std::size_t slot) const noexcept {
    return records_.data() + slot * kRecordWords;
  }
  bool live(std::size_t slot) const noexcept { return record(slot)[0] != kNull; }
  std::optional<std::size_t> scan_min(Pair skip_a, Pair skip_b) const noexcept;

  PairIndex index_;
  std::span<Word> records_;
  std::size_t capacity_ = 0;
  std::size_t slots_used_ = 0;
  std::size_t size_ = 0;
  Word threshold_ = 2;
  Pair pinned_ = kNoPair;
  std::optional<Pair> min_cache_;
  Word untracked_bound_ = 0;
  QueueCounters counters_;
};

}  // namespace repair
