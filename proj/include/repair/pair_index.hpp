#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

#include "repair/core.hpp"

namespace repair {

// Open-addressing map from pairs to words over caller-owned storage, three
// words per slot (pair, value). Linear probing; deletion by backward shift,
// so the table never accumulates tombstones.
class PairIndex {
 public:
  static constexpr std::size_t kSlotWords = 3;

  PairIndex() = default;
  PairIndex(std::span<Word> storage, Word seed);

  std::size_t slot_count() const noexcept { return slots_; }
  std::size_t size() const noexcept { return size_; }
  double load() const noexcept {
    return slots_ == 0 ? 0.0 : static_cast<double>(size_) / static_cast<double>(slots_);
  }

  std::optional<Word> find(Pair key) const noexcept;
  bool contains(Pair key) const noexcept { return find(key).has_value(); }

  // Inserts or overwrites. Throws std::length_error when the table is full.
  void put(Pair key, Word value);
  // Returns false when the key is absent.
  bool erase(Pair key) noexcept;

 private:
  std::size_t home(Pair key) const noexcept;
  std::size_t locate(Pair key) const noexcept;  // slot of key or of the empty slot ending its probe
  Word* slot(std::size_t i) const noexcept { return storage_.data() + i * kSlotWords; }

  std::span<Word> storage_;
  std::size_t slots_ = 0;
  std::size_t size_ = 0;
  Word seed_ = 0;
};

}  // namespace repair
