#pragma once

// In-place sorting and merging primitives over word arrays. None of these
// allocate: extra space is a constant number of locals per recursion level.

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <utility>

#include "repair/core.hpp"

namespace repair::inplace {

// Number of significant bytes needed to represent values up to max_value.
constexpr unsigned byte_width(Word max_value) noexcept {
  unsigned bytes = 1;
  while (bytes < 8 && (max_value >> (8 * bytes)) != 0) ++bytes;
  return bytes;
}

namespace detail {

template <std::size_t W>
inline bool record_less(const Word* a, const Word* b) noexcept {
  for (std::size_t k = 0; k < W; ++k) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return false;
}

template <std::size_t W>
inline void swap_records(Word* a, Word* b) noexcept {
  for (std::size_t k = 0; k < W; ++k) std::swap(a[k], b[k]);
}

template <std::size_t W>
void insertion_sort_records(Word* base, std::size_t count) noexcept {
  for (std::size_t i = 1; i < count; ++i) {
    for (std::size_t j = i; j > 0 && record_less<W>(base + j * W, base + (j - 1) * W);
         --j) {
      swap_records<W>(base + j * W, base + (j - 1) * W);
    }
  }
}

template <std::size_t W>
struct DigitLayout {
  std::array<unsigned, W> bytes{};
  unsigned total = 0;

  // Byte `digit` of the key, most significant first.
  unsigned extract(const Word* rec, unsigned digit) const noexcept {
    std::size_t word = 0;
    while (digit >= bytes[word]) {
      digit -= bytes[word];
      ++word;
    }
    const unsigned shift = 8 * (bytes[word] - 1 - digit);
    return static_cast<unsigned>((rec[word] >> shift) & 0xFFu);
  }
};

template <std::size_t W>
void american_flag(Word* base, std::size_t count, unsigned digit,
                   const DigitLayout<W>& layout) {
  constexpr std::size_t kSmall = 32;
  while (true) {
    if (count < kSmall) {
      insertion_sort_records<W>(base, count);
      return;
    }
    if (digit >= layout.total) return;

    std::array<std::size_t, 256> counts{};
    for (std::size_t i = 0; i < count; ++i) {
      ++counts[layout.extract(base + i * W, digit)];
    }
    std::size_t populated = 0;
    for (std::size_t c : counts) populated += c != 0;
    if (populated == 1) {
      ++digit;
      continue;
    }

    std::array<std::size_t, 256> next{};
    std::array<std::size_t, 256> ends{};
    std::size_t offset = 0;
    for (std::size_t b = 0; b < 256; ++b) {
      next[b] = offset;
      offset += counts[b];
      ends[b] = offset;
    }
    for (std::size_t b = 0; b < 256; ++b) {
      while (next[b] < ends[b]) {
        Word* rec = base + next[b] * W;
        const unsigned d = layout.extract(rec, digit);
        if (d == b) {
          ++next[b];
        } else {
          swap_records<W>(rec, base + next[d] * W);
          ++next[d];
        }
      }
    }
    std::size_t start = 0;
    for (std::size_t b = 0; b < 256; ++b) {
      if (counts[b] > 1) {
        american_flag<W>(base + start * W, counts[b], digit + 1, layout);
      }
      start += counts[b];
    }
    return;
  }
}

}  // namespace detail

// Sorts records of W consecutive words lexicographically over all W words.
// `bytes[k]` bounds the significant bytes of word k across all records.
template <std::size_t W>
void radix_sort_records(std::span<Word> data, const std::array<unsigned, W>& bytes) {
  detail::DigitLayout<W> layout;
  layout.bytes = bytes;
  for (unsigned b : bytes) layout.total += b;
  detail::american_flag<W>(data.data(), data.size() / W, 0, layout);
}

// Stable rotation-based merge of the adjacent sorted ranges [lo, mid) and
// [mid, hi). Seq provides less(i, j) over element indices and
// rotate(lo, mid, hi), which moves [mid, hi) in front of [lo, mid).
template <typename Seq>
void merge_adjacent(Seq& seq, std::size_t lo, std::size_t mid, std::size_t hi) {
  while (lo < mid && mid < hi) {
    if (!seq.less(mid, mid - 1)) return;
    // Leading elements of the left range already in place.
    {
      std::size_t a = lo;
      std::size_t b = mid;
      while (a < b) {
        const std::size_t m = a + (b - a) / 2;
        if (seq.less(mid, m)) {
          b = m;
        } else {
          a = m + 1;
        }
      }
      lo = a;
      if (lo >= mid) return;
    }
    const std::size_t len1 = mid - lo;
    const std::size_t len2 = hi - mid;
    if (len1 == 1 && len2 == 1) {
      seq.rotate(lo, mid, hi);
      return;
    }
    std::size_t cut1;
    std::size_t cut2;
    if (len1 > len2) {
      cut1 = lo + len1 / 2;
      // First element of the right range not less than the pivot.
      std::size_t a = mid;
      std::size_t b = hi;
      while (a < b) {
        const std::size_t m = a + (b - a) / 2;
        if (seq.less(m, cut1)) {
          a = m + 1;
        } else {
          b = m;
        }
      }
      cut2 = a;
    } else {
      cut2 = mid + len2 / 2;
      // First element of the left range greater than the pivot.
      std::size_t a = lo;
      std::size_t b = mid;
      while (a < b) {
        const std::size_t m = a + (b - a) / 2;
        if (seq.less(cut2, m)) {
          b = m;
        } else {
          a = m + 1;
        }
      }
      cut1 = a;
    }
    seq.rotate(cut1, mid, cut2);
    const std::size_t new_mid = cut1 + (cut2 - mid);
    // Recurse into the smaller half, loop on the larger one.
    if ((new_mid - lo) < (hi - new_mid)) {
      merge_adjacent(seq, lo, cut1, new_mid);
      lo = new_mid;
      mid = cut2;
    } else {
      merge_adjacent(seq, new_mid, cut2, hi);
      hi = new_mid;
      mid = cut1;
    }
  }
}

// Sequence adaptor over W-word records ordered by the first word only.
template <std::size_t W>
class RecordsByFirstWord {
 public:
  explicit RecordsByFirstWord(std::span<Word> data) : data_(data) {}

  std::size_t size() const noexcept { return data_.size() / W; }
  bool less(std::size_t i, std::size_t j) const noexcept {
    return data_[i * W] < data_[j * W];
  }
  void swap(std::size_t i, std::size_t j) noexcept {
    detail::swap_records<W>(&data_[i * W], &data_[j * W]);
  }
  void rotate(std::size_t lo, std::size_t mid, std::size_t hi) noexcept {
    std::rotate(data_.begin() + lo * W, data_.begin() + mid * W,
                data_.begin() + hi * W);
  }

 private:
  std::span<Word> data_;
};

// Stable in-place sort: insertion-sorted blocks, then bottom-up rotation merges.
template <typename Seq>
void stable_sort(Seq& seq) {
  constexpr std::size_t kBlock = 16;
  const std::size_t n = seq.size();
  for (std::size_t lo = 0; lo < n; lo += kBlock) {
    const std::size_t hi = std::min(n, lo + kBlock);
    for (std::size_t i = lo + 1; i < hi; ++i) {
      for (std::size_t j = i; j > lo && seq.less(j, j - 1); --j) seq.swap(j, j - 1);
    }
  }
  for (std::size_t width = kBlock; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      merge_adjacent(seq, lo, lo + width, std::min(n, lo + 2 * width));
    }
  }
}

}  // namespace repair::inplace
