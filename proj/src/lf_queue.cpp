#include "repair/lf_queue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace repair {

std::size_t LfQueue::fast_capacity(std::size_t n, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  const double pairs = std::ceil(epsilon * static_cast<double>(n) / 13.0);
  return std::max<std::size_t>(1, static_cast<std::size_t>(pairs));
}

LfQueue LfQueue::build(const TextBuffer& text, PositionArray& tp, std::span<Word> storage,
                       std::span<Word> frequencies, const Params& params) {
  if (storage.size() < words_required(params.capacity)) {
    throw std::logic_error("low-frequency queue storage too small");
  }
  if (params.max_frequency < kFloor ||
      frequencies.size() < frequency_words(params.max_frequency)) {
    throw std::logic_error("frequency vector too small");
  }
  LfQueue q;
  q.capacity_ = params.capacity;
  q.max_frequency_ = params.max_frequency;
  const std::size_t hash_words = 2 * params.capacity * PairIndex::kSlotWords;
  q.index_ = PairIndex(storage.first(hash_words), params.seed);
  q.records_ = storage.subspan(hash_words, params.capacity * kRecordWords);
  q.frequencies_ = frequencies.first(frequency_words(params.max_frequency));
  for (Word f = 0; f < q.max_frequency_; ++f) {
    Word* e = q.freq_entry(f);
    e[kHead] = kNull;
    e[kLower] = kNull;
    e[kHigher] = kNull;
  }

  const std::size_t entries = detail::build_frequency_list(text, tp.words(), tp.size());
  if (entries > 0 && text.size() - tp.words()[0] >= q.max_frequency_) {
    throw std::logic_error("pair too frequent for the low-frequency queue");
  }
  // Frequencies arrive in decreasing order, so each new one becomes MIN.
  Word last = kNull;
  q.untracked_bound_ = detail::admit_from_frequency_list(
      text, tp.words(), entries, params.capacity, kFloor, [&](Pair pair, Word k) {
        q.index_.put(pair, kNull);
        if (k != last) {
          q.add_frequency(k, kNull, last);
          last = k;
        }
      });

  tp = sort_pairs(text, tp.words());
  for_each_cluster(text, tp.positions(), [&](const PairCluster& c) {
    if (!q.index_.contains(c.pair)) return;
    const Word slot = q.slots_used_++;
    q.index_.put(c.pair, slot);
    Word* head = q.freq_entry(c.count) + kHead;
    if (*head != kNull) q.rec(*head)[kPrev] = slot;
    Word* r = q.rec(slot);
    r[kLeft] = c.pair.left;
    r[kRight] = c.pair.right;
    r[kStart] = c.start;
    r[kLength] = c.count;
    r[kFreq] = c.count;
    r[kPrev] = kNull;
    r[kNext] = *head;
    *head = slot;
    ++q.size_;
  });
  return q;
}

std::optional<PairRange> LfQueue::get(Pair pair) const noexcept {
  const auto slot = index_.find(pair);
  if (!slot) return std::nullopt;
  const Word* r = rec(*slot);
  return PairRange{r[kStart], r[kLength], r[kFreq]};
}

Pair LfQueue::max() const {
  if (max_f_ == kNull) throw EmptyQueueError();
  return pair_of(freq_entry(max_f_)[kHead]);
}

Pair LfQueue::min() const {
  if (min_f_ == kNull) throw EmptyQueueError();
  return pair_of(freq_entry(min_f_)[kHead]);
}

void LfQueue::add_frequency(Word f, Word lower, Word higher) noexcept {
  Word* e = freq_entry(f);
  e[kLower] = lower;
  e[kHigher] = higher;
  if (lower != kNull) {
    freq_entry(lower)[kHigher] = f;
  } else {
    min_f_ = f;
  }
  if (higher != kNull) {
    freq_entry(higher)[kLower] = f;
  } else {
    max_f_ = f;
  }
}

void LfQueue::drop_frequency(Word f) noexcept {
  Word* e = freq_entry(f);
  const Word lower = e[kLower];
  const Word higher = e[kHigher];
  if (lower != kNull) {
    freq_entry(lower)[kHigher] = higher;
  } else {
    min_f_ = higher;
  }
  if (higher != kNull) {
    freq_entry(higher)[kLower] = lower;
  } else {
    max_f_ = lower;
  }
  e[kLower] = kNull;
  e[kHigher] = kNull;
}

void LfQueue::link(Word slot, Word f, std::optional<Word> lower, std::optional<Word> higher) {
  if (f >= max_frequency_) throw std::logic_error("frequency outside the frequency vector");
  Word* e = freq_entry(f);
  if (e[kHead] == kNull) {
    if (!lower || !higher) {
      // Locate the neighbours among the non-empty frequencies.
      if (min_f_ == kNull) {
        lower = kNull;
        higher = kNull;
      } else if (f < min_f_) {
        lower = kNull;
        higher = min_f_;
      } else if (f > max_f_) {
        lower = max_f_;
        higher = kNull;
      } else {
        Word g = f - 1;
        while (freq_entry(g)[kHead] == kNull) --g;
        lower = g;
        higher = freq_entry(g)[kHigher];
      }
    }
    add_frequency(f, *lower, *higher);
  }
  Word* r = rec(slot);
  r[kFreq] = f;
  r[kPrev] = kNull;
  r[kNext] = e[kHead];
  if (e[kHead] != kNull) rec(e[kHead])[kPrev] = slot;
  e[kHead] = slot;
}

void LfQueue::unlink(Word slot) noexcept {
  Word* r = rec(slot);
  const Word f = r[kFreq];
  const Word prev = r[kPrev];
  const Word next = r[kNext];
  if (prev == kNull) {
    freq_entry(f)[kHead] = next;
  } else {
    rec(prev)[kNext] = next;
  }
  if (next != kNull) rec(next)[kPrev] = prev;
  if (freq_entry(f)[kHead] == kNull) drop_frequency(f);
}

Word LfQueue::allocate_slot() noexcept {
  if (free_head_ != kNull) {
    const Word slot = free_head_;
    free_head_ = rec(slot)[kNext];
    return slot;
  }
  return slots_used_++;
}

void LfQueue::remove(Pair pair) noexcept {
  const auto slot = index_.find(pair);
  if (!slot) return;
  unlink(*slot);
  index_.erase(pair);
  Word* r = rec(*slot);
  r[kLeft] = kNull;
  r[kRight] = kNull;
  r[kNext] = free_head_;
  free_head_ = *slot;
  --size_;
}

bool LfQueue::decrease(Pair pair) {
  const auto slot = index_.find(pair);
  if (!slot) return false;
  Word* r = rec(*slot);
  const Word f = r[kFreq];
  if (f <= kFloor) {
    note_untracked(r[kLength]);
    remove(pair);
    return true;
  }
  decrement(pair);
  return false;
}

void LfQueue::decrement(Pair pair) {
  const auto slot = index_.find(pair);
  if (!slot) return;
  const Word f = rec(*slot)[kFreq];
  if (f == 0) return;
  const Word lower = freq_entry(f)[kLower];
  const Word higher_if_dropped = freq_entry(f)[kHigher];
  unlink(*slot);
  const Word higher = freq_entry(f)[kHead] != kNull ? f : higher_if_dropped;
  link(*slot, f - 1, lower, higher);
}

void LfQueue::synchronize(Pair pair, const TextBuffer& text, std::span<Word> tp) {
  detail::synchronize(*this, pair, text, tp, kFloor);
}

void LfQueue::set_range(Pair pair, const PairRange& range) {
  const auto slot = index_.find(pair);
  if (!slot) throw std::logic_error("set_range on a pair that is not queued");
  Word* r = rec(*slot);
  r[kStart] = range.start;
  r[kLength] = range.length;
  if (r[kFreq] != range.freq) {
    unlink(*slot);
    link(*slot, range.freq);
  }
}

void LfQueue::insert(Pair pair, const PairRange& range) {
  if (size_ >= capacity_) throw std::logic_error("low-frequency queue is full");
  if (index_.contains(pair)) throw std::logic_error("pair already queued");
  if (range.freq < kFloor || range.freq >= max_frequency_) {
    throw std::logic_error("frequency outside the low-frequency range");
  }
  const Word slot = allocate_slot();
  Word* r = rec(slot);
  r[kLeft] = pair.left;
  r[kRight] = pair.right;
  r[kStart] = range.start;
  r[kLength] = range.length;
  index_.put(pair, slot);
  link(slot, range.freq);
  ++size_;
}

void LfQueue::evict(Pair pair) {
  const auto range = get(pair);
  if (!range) return;
  note_untracked(range->freq);
  note_untracked(range->length - range->freq);
  remove(pair);
}

std::optional<Pair> LfQueue::eviction_candidate(Pair syncing) const noexcept {
  // At most two records are skipped, so this is O(1).
  for (Word f = min_f_; f != kNull; f = freq_entry(f)[kHigher]) {
    for (Word s = freq_entry(f)[kHead]; s != kNull; s = rec(s)[kNext]) {
      const Pair p = pair_of(s);
      if (p != syncing && p != pinned_) return p;
    }
  }
  return std::nullopt;
}

std::size_t LfQueue::count_invariant_violations() const noexcept {
  std::size_t bad = 0;
  for (Word f = min_f_; f != kNull; f = freq_entry(f)[kHigher]) {
    for (Word s = freq_entry(f)[kHead]; s != kNull; s = rec(s)[kNext]) {
      if (2 * rec(s)[kFreq] <= rec(s)[kLength]) ++bad;
    }
  }
  return bad;
}

bool LfQueue::consistent() const {
  if ((min_f_ == kNull) != (max_f_ == kNull)) return false;
  std::size_t visited = 0;
  Word below = kNull;
  Word f = min_f_;
  while (f != kNull) {
    if (f >= max_frequency_) return false;
    const Word* e = freq_entry(f);
    if (e[kLower] != below || e[kHead] == kNull) return false;
    if (below != kNull && below >= f) return false;
    Word prev = kNull;
    for (Word s = e[kHead]; s != kNull; s = rec(s)[kNext]) {
      if (++visited > size_) return false;
      const Word* r = rec(s);
      if (r[kPrev] != prev || r[kFreq] != f || r[kFreq] > r[kLength]) return false;
      const auto found = index_.find(pair_of(s));
      if (!found || *found != s) return false;
      prev = s;
    }
    below = f;
    f = e[kHigher];
  }
  if (below != max_f_) return false;
  return visited == size_ && index_.size() == size_;
}

std::vector<Pair> LfQueue::bucket(Word f) const {
  std::vector<Pair> out;
  if (f >= max_frequency_) return out;
  for (Word s = freq_entry(f)[kHead]; s != kNull; s = rec(s)[kNext]) out.push_back(pair_of(s));
  return out;
}

std::size_t light_next_capacity(LightCapacityPolicy& policy, std::size_t reclaimed_words,
                                std::size_t remaining_pairs) {
  policy.reclaimed_words += reclaimed_words;
  policy.capacity = 1 + policy.reclaimed_words / 13;
  ++policy.round;
  if (remaining_pairs != 0) return std::min(policy.capacity, remaining_pairs);
  return policy.capacity;
}

}  // namespace repair
