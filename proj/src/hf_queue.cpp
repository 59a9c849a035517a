#include "repair/hf_queue.hpp"

#include <algorithm>
#include <stdexcept>

namespace repair {

HfQueue::Params HfQueue::params_for(std::size_t n, Word seed) {
  Params p;
  p.capacity = std::max<std::size_t>(1, ceil_sqrt_div(n, 11));
  p.threshold = std::max<Word>(2, ceil_sqrt_div(n, 3));
  p.seed = seed;
  return p;
}

HfQueue HfQueue::build(const TextBuffer& text, PositionArray& tp, std::span<Word> storage,
                       const Params& params) {
  if (storage.size() < words_required(params.capacity)) {
    throw std::logic_error("high-frequency queue storage too small");
  }
  HfQueue q;
  q.capacity_ = params.capacity;
  q.threshold_ = params.threshold;
  const std::size_t hash_words = 2 * params.capacity * PairIndex::kSlotWords;
  q.index_ = PairIndex(storage.first(hash_words), params.seed);
  q.records_ = storage.subspan(hash_words, params.capacity * kRecordWords);

  const std::size_t entries = detail::build_frequency_list(text, tp.words(), tp.size());
  q.untracked_bound_ = detail::admit_from_frequency_list(
      text, tp.words(), entries, params.capacity, params.threshold,
      [&](Pair pair, Word) { q.index_.put(pair, kNull); });

  tp = sort_pairs(text, tp.words());
  for_each_cluster(text, tp.positions(), [&](const PairCluster& c) {
    if (!q.index_.contains(c.pair)) return;
    const std::size_t slot = q.slots_used_++;
    q.index_.put(c.pair, slot);
    Word* rec = q.record(slot);
    rec[0] = c.pair.left;
    rec[1] = c.pair.right;
    rec[2] = c.start;
    rec[3] = c.count;
    rec[4] = c.count;
    ++q.size_;
  });
  return q;
}

std::optional<PairRange> HfQueue::get(Pair pair) const noexcept {
  const auto slot = index_.find(pair);
  if (!slot) return std::nullopt;
  const Word* rec = record(*slot);
  return PairRange{rec[2], rec[3], rec[4]};
}

Pair HfQueue::max() const {
  std::optional<std::size_t> best;
  for (std::size_t s = 0; s < slots_used_; ++s) {
    if (!live(s)) continue;
    if (!best || record(s)[4] > record(*best)[4]) best = s;
  }
  if (!best) throw EmptyQueueError();
  return Pair{record(*best)[0], record(*best)[1]};
}

std::optional<std::size_t> HfQueue::scan_min(Pair skip_a, Pair skip_b) const noexcept {
  std::optional<std::size_t> best;
  for (std::size_t s = 0; s < slots_used_; ++s) {
    if (!live(s)) continue;
    const Pair p{record(s)[0], record(s)[1]};
    if (p == skip_a || p == skip_b) continue;
    if (!best || record(s)[4] < record(*best)[4]) best = s;
  }
  return best;
}

Pair HfQueue::min() const {
  const auto best = scan_min(kNoPair, kNoPair);
  if (!best) throw EmptyQueueError();
  return Pair{record(*best)[0], record(*best)[1]};
}

void HfQueue::remove(Pair pair) noexcept {
  const auto slot = index_.find(pair);
  if (!slot) return;
  Word* rec = record(*slot);
  for (std::size_t k = 0; k < kRecordWords; ++k) rec[k] = kNull;
  index_.erase(pair);
  --size_;
  if (min_cache_ && *min_cache_ == pair) min_cache_.reset();
}

bool HfQueue::decrease(Pair pair) {
  const auto slot = index_.find(pair);
  if (!slot) return false;
  Word* rec = record(*slot);
  if (rec[4] > 0) --rec[4];
  if (rec[4] >= threshold_) return false;
  // Its range may hide, or later produce, pairs as frequent as its length.
  note_untracked(rec[3]);
  remove(pair);
  return true;
}

void HfQueue::decrement(Pair pair) noexcept {
  const auto slot = index_.find(pair);
  if (!slot) return;
  Word* rec = record(*slot);
  if (rec[4] > 0) --rec[4];
}

void HfQueue::synchronize(Pair pair, const TextBuffer& text, std::span<Word> tp) {
  detail::synchronize(*this, pair, text, tp, threshold_);
}

void HfQueue::begin_round(Pair pinned) {
  pinned_ = pinned;
  const auto best = scan_min(pinned_, kNoPair);
  if (best) {
    min_cache_ = Pair{record(*best)[0], record(*best)[1]};
  } else {
    min_cache_.reset();
  }
}

void HfQueue::set_range(Pair pair, const PairRange& range) {
  const auto slot = index_.find(pair);
  if (!slot) throw std::logic_error("set_range on a pair that is not queued");
  Word* rec = record(*slot);
  rec[2] = range.start;
  rec[3] = range.length;
  rec[4] = range.freq;
  if (min_cache_ && *min_cache_ != pair && pair != pinned_ &&
      range.freq < get(*min_cache_)->freq) {
    min_cache_ = pair;
  }
}

void HfQueue::insert(Pair pair, const PairRange& range) {
  if (size_ >= capacity_) throw std::logic_error("high-frequency queue is full");
  if (index_.contains(pair)) throw std::logic_error("pair already queued");
  std::size_t slot = 0;
  if (slots_used_ < capacity_) {
    slot = slots_used_++;
  } else {
    while (live(slot)) ++slot;
  }
  Word* rec = record(slot);
  rec[0] = pair.left;
  rec[1] = pair.right;
  rec[2] = range.start;
  rec[3] = range.length;
  rec[4] = range.freq;
  index_.put(pair, slot);
  ++size_;
  // The minimum is refreshed by a scan after every insertion.
  const auto best = scan_min(pinned_, kNoPair);
  min_cache_ = Pair{record(*best)[0], record(*best)[1]};
  if (*min_cache_ == pinned_) min_cache_.reset();
}

void HfQueue::evict(Pair pair) {
  const auto range = get(pair);
  if (!range) return;
  note_untracked(range->freq);
  note_untracked(range->length - range->freq);
  remove(pair);
}

std::optional<Pair> HfQueue::eviction_candidate(Pair syncing) {
  if (min_cache_ && *min_cache_ != syncing && *min_cache_ != pinned_ &&
      contains(*min_cache_)) {
    return min_cache_;
  }
  const auto best = scan_min(pinned_, syncing);
  if (!best) return std::nullopt;
  const Pair p{record(*best)[0], record(*best)[1]};
  if (syncing != p) min_cache_ = p;
  return p;
}

std::size_t HfQueue::count_invariant_violations() const noexcept {
  std::size_t bad = 0;
  for (std::size_t s = 0; s < slots_used_; ++s) {
    if (live(s) && 2 * record(s)[4] <= record(s)[3]) ++bad;
  }
  return bad;
}

bool HfQueue::consistent() const noexcept {
  std::size_t live_count = 0;
  for (std::size_t s = 0; s < slots_used_; ++s) {
    if (!live(s)) continue;
    ++live_count;
    const auto slot = index_.find(Pair{record(s)[0], record(s)[1]});
    if (!slot || *slot != s) return false;
    if (record(s)[4] > record(s)[3]) return false;
  }
  return live_count == size_ && index_.size() == size_;
}

}  // namespace repair
