#include "repair/pair_index.hpp"

namespace repair {

PairIndex::PairIndex(std::span<Word> storage, Word seed)
    : storage_(storage), slots_(storage.size() / kSlotWords), seed_(seed) {
  for (std::size_t i = 0; i < slots_; ++i) slot(i)[0] = kNull;
}

std::size_t PairIndex::home(Pair key) const noexcept {
  Word h = (key.left + 0x9E3779B97F4A7C15ull) * 0xC2B2AE3D27D4EB4Full;
  h ^= (key.right + seed_) * 0x165667B19E3779F9ull;
  h ^= h >> 29;
  h *= 0xBF58476D1CE4E5B9ull;
  h ^= h >> 32;
  return static_cast<std::size_t>((static_cast<unsigned __int128>(h) * slots_) >> 64);
}

std::size_t PairIndex::locate(Pair key) const noexcept {
  std::size_t i = home(key);
  for (std::size_t probes = 0; probes < slots_; ++probes) {
    const Word* s = slot(i);
    if (s[0] == kNull || (s[0] == key.left && s[1] == key.right)) return i;
    if (++i == slots_) i = 0;
  }
  return slots_;
}

std::optional<Word> PairIndex::find(Pair key) const noexcept {
  if (slots_ == 0) return std::nullopt;
  const std::size_t i = locate(key);
  if (i == slots_) return std::nullopt;
  const Word* s = slot(i);
  if (s[0] == kNull) return std::nullopt;
  return s[2];
}

void PairIndex::put(Pair key, Word value) {
  const std::size_t i = slots_ == 0 ? 0 : locate(key);
  if (i == slots_) throw std::length_error("pair index is full");
  Word* s = slot(i);
  if (s[0] == kNull) {
    if (size_ + 1 >= slots_ + (slots_ == 0)) {
      // Keep one empty slot so unsuccessful probes terminate.
      throw std::length_error("pair index is full");
    }
    ++size_;
    s[0] = key.left;
    s[1] = key.right;
  }
  s[2] = value;
}

bool PairIndex::erase(Pair key) noexcept {
  if (slots_ == 0) return false;
  std::size_t hole = locate(key);
  if (hole == slots_ || slot(hole)[0] == kNull) return false;
  --size_;
  std::size_t j = hole;
  while (true) {
    if (++j == slots_) j = 0;
    Word* s = slot(j);
    if (s[0] == kNull) break;
    const std::size_t k = home(Pair{s[0], s[1]});
    // Entry j stays if its home lies cyclically in (hole, j].
    const bool stays = hole <= j ? (hole < k && k <= j) : (hole < k || k <= j);
    if (stays) continue;
    Word* h = slot(hole);
    h[0] = s[0];
    h[1] = s[1];
    h[2] = s[2];
    hole = j;
  }
  slot(hole)[0] = kNull;
  return true;
}

}  // namespace repair
