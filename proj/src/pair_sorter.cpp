#include "repair/pair_sorter.hpp"

#include <algorithm>
#include <stdexcept>

#include "repair/inplace_sort.hpp"

namespace repair {

namespace {

// Positions of a compacted text ordered by (T[p], T[p+1], p).
class CompactedPositions {
 public:
  CompactedPositions(const Word* cells, std::span<Word> positions)
      : cells_(cells), positions_(positions) {}

  bool less(std::size_t i, std::size_t j) const noexcept {
    const Word p = positions_[i];
    const Word q = positions_[j];
    if (cells_[p] != cells_[q]) return cells_[p] < cells_[q];
    if (cells_[p + 1] != cells_[q + 1]) return cells_[p + 1] < cells_[q + 1];
    return p < q;
  }
  void rotate(std::size_t lo, std::size_t mid, std::size_t hi) noexcept {
    std::rotate(positions_.begin() + lo, positions_.begin() + mid,
                positions_.begin() + hi);
  }

 private:
  const Word* cells_;
  std::span<Word> positions_;
};

}  // namespace

PositionArray sort_pairs(const TextBuffer& text, std::span<Word> arena,
                         SortTrace* trace) {
  if (!text.compacted()) {
    throw std::logic_error("sort_pairs requires a compacted text");
  }
  const std::size_t m = text.size();
  if (m < 2) return PositionArray(arena, 0);
  const std::size_t pairs = m - 1;
  if (arena.size() < pairs) {
    throw std::logic_error("sort_pairs arena smaller than the number of pairs");
  }
  const Word* cells = text.cells().data();
  Word max_symbol = 0;
  for (std::size_t i = 0; i < m; ++i) max_symbol = std::max(max_symbol, cells[i]);
  const unsigned symbol_bytes = inplace::byte_width(max_symbol);
  const std::array<unsigned, 3> key_bytes{symbol_bytes, symbol_bytes,
                                          inplace::byte_width(pairs)};

  CompactedPositions seq(cells, arena.first(pairs));

  // Phases: the unused tail always has exactly `remaining` words.
  std::size_t done = 0;
  while (done < pairs) {
    const std::size_t remaining = pairs - done;
    if (remaining >= 3) {
      const std::size_t batch = remaining / 3;
      Word* out = arena.data() + done;
      for (std::size_t j = 0; j < batch; ++j) {
        const std::size_t p = done + j;
        out[3 * j] = cells[p];
        out[3 * j + 1] = cells[p + 1];
        out[3 * j + 2] = p;
      }
      inplace::radix_sort_records<3>({out, 3 * batch}, key_bytes);
      for (std::size_t j = 0; j < batch; ++j) out[j] = out[3 * j + 2];
      done += batch;
      if (trace != nullptr) trace->phase_sizes.push_back(batch);
    } else {
      for (std::size_t j = 0; j < remaining; ++j) arena[done + j] = done + j;
      if (remaining == 2 && seq.less(done + 1, done)) {
        std::swap(arena[done], arena[done + 1]);
      }
      done += remaining;
      if (trace != nullptr) trace->phase_sizes.push_back(remaining);
    }
  }

  // Segment borders are the descents between consecutive keys; merge the
  // runs from right to left.
  std::size_t start = pairs - 1;
  while (start > 0 && seq.less(start - 1, start)) --start;
  while (start > 0) {
    std::size_t run = start - 1;
    while (run > 0 && seq.less(run - 1, run)) --run;
    inplace::merge_adjacent(seq, run, start, pairs);
    if (trace != nullptr) ++trace->merges;
    start = run;
  }
  return PositionArray(arena, pairs);
}

std::size_t sort_position_range(const TextBuffer& text, std::span<Word> range) {
  auto valid_end = std::partition(range.begin(), range.end(), [&](Word p) {
    return text.pair_at(static_cast<std::size_t>(p)).has_value();
  });
  std::sort(range.begin(), valid_end, [&](Word p, Word q) {
    const Pair a = *text.pair_at(p);
    const Pair b = *text.pair_at(q);
    if (a != b) return a < b;
    return p < q;
  });
  return static_cast<std::size_t>(valid_end - range.begin());
}

std::vector<PairCluster> count_frequencies(const TextBuffer& text,
                                           std::span<const Word> sorted) {
  std::vector<PairCluster> out;
  for_each_cluster(text, sorted, [&](const PairCluster& c) { out.push_back(c); });
  return out;
}

std::size_t highest_frequency(const TextBuffer& text, std::span<Word> arena) {
  const PositionArray tp = sort_pairs(text, arena);
  std::size_t best = 0;
  for_each_cluster(text, tp.positions(),
                   [&](const PairCluster& c) { best = std::max(best, c.count); });
  return best;
}

std::size_t highest_frequency(const TextBuffer& text, ArenaAccountant& accountant) {
  ArenaBlock scratch(accountant, text.size());
  return highest_frequency(text, scratch.words());
}

}  // namespace repair
