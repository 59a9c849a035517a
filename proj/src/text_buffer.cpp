#include "repair/text_buffer.hpp"

#include <stdexcept>
#include <string>

namespace repair {

TextBuffer::TextBuffer(std::vector<Word> symbols)
    : cells_(std::move(symbols)), n_(cells_.size()), live_(cells_.size()) {
  for (Word symbol : cells_) {
    if (n_ < 3 || symbol > max_symbol()) {
      throw std::invalid_argument("symbol " + std::to_string(symbol) +
                                  " collides with a reserved blank code");
    }
  }
}

TextBuffer TextBuffer::from_cells(std::vector<Word> cells) {
  TextBuffer text;
  text.n_ = cells.size();
  text.cells_ = std::move(cells);
  text.live_ = 0;
  for (std::size_t i = 0; i < text.cells_.size(); ++i) {
    if (!text.is_blank(i)) ++text.live_;
  }
  return text;
}

bool TextBuffer::is_blank(std::size_t pos) const noexcept {
  const Word c = cells_[pos];
  if (c > max_symbol()) return true;
  return pos > 0 && is_star(pos - 1) && is_star(pos + 1);
}

std::optional<Word> TextBuffer::read(std::size_t pos) const {
  if (pos >= cells_.size()) {
    throw std::out_of_range("text position " + std::to_string(pos) +
                            " out of range");
  }
  if (is_blank(pos)) return std::nullopt;
  return cells_[pos];
}

std::size_t TextBuffer::run_length_from_head(std::size_t pos) const noexcept {
  if (is_star(pos + 1) && pos + 2 < cells_.size()) {
    return static_cast<std::size_t>(cells_[pos + 2]) + 1;
  }
  std::size_t r = 0;
  while (pos + r < cells_.size() && cells_[pos + r] == fill()) ++r;
  return r;
}

std::size_t TextBuffer::run_length_from_tail(std::size_t pos) const noexcept {
  if (pos >= 2 && is_star(pos - 1)) {
    return static_cast<std::size_t>(cells_[pos - 2]) + 1;
  }
  std::size_t r = 0;
  while (r <= pos && cells_[pos - r] == fill()) ++r;
  return r;
}

std::size_t TextBuffer::next_nonblank(std::size_t pos) const noexcept {
  std::size_t q = pos + 1;
  if (q >= cells_.size()) return npos;
  if (cells_[q] != fill()) return q;
  q += run_length_from_head(q);
  return q < cells_.size() ? q : npos;
}

std::size_t TextBuffer::prev_nonblank(std::size_t pos) const noexcept {
  if (pos == 0 || pos > cells_.size()) return npos;
  const std::size_t q = pos - 1;
  if (cells_[q] != fill()) return q;
  const std::size_t r = run_length_from_tail(q);
  return q >= r ? q - r : npos;
}

std::size_t TextBuffer::first_nonblank() const noexcept {
  if (cells_.empty()) return npos;
  if (cells_[0] != fill()) return 0;
  const std::size_t r = run_length_from_head(0);
  return r < cells_.size() ? r : npos;
}

std::optional<Pair> TextBuffer::pair_at(std::size_t pos) const noexcept {
  if (pos >= cells_.size() || is_blank(pos)) return std::nullopt;
  const std::size_t next = next_nonblank(pos);
  if (next == npos) return std::nullopt;
  return Pair{cells_[pos], cells_[next]};
}

void TextBuffer::replace_pair(std::size_t pos_a, Word symbol) {
  if (pos_a >= cells_.size() || is_blank(pos_a)) {
    throw std::logic_error("replace_pair at a blank or out-of-range cell");
  }
  if (symbol > max_symbol()) {
    throw std::logic_error("replacement symbol collides with a reserved code");
  }
  const std::size_t pos_b = next_nonblank(pos_a);
  if (pos_b == npos) {
    throw std::logic_error("replace_pair at the last symbol");
  }
  const std::size_t start = pos_a + 1;
  const std::size_t left_len = pos_b - start;
  std::size_t right_len = 0;
  if (pos_b + 1 < cells_.size() && cells_[pos_b + 1] == fill()) {
    right_len = run_length_from_head(pos_b + 1);
  }
  const std::size_t total = left_len + 1 + right_len;
  const std::size_t end = start + total - 1;

  cells_[pos_a] = symbol;
  // Stale delimiters that end up inside the merged run.
  if (left_len >= kMinDelimitedRun) {
    for (std::size_t i = pos_b - 5; i < pos_b; ++i) cells_[i] = fill();
  }
  if (right_len >= kMinDelimitedRun) {
    for (std::size_t i = pos_b + 1; i < pos_b + 6; ++i) cells_[i] = fill();
  }
  cells_[pos_b] = fill();
  if (total >= kMinDelimitedRun) {
    const Word payload = static_cast<Word>(total - 1);
    const Word head[5] = {fill(), star(), payload, star(), fill()};
    for (std::size_t k = 0; k < 5; ++k) {
      cells_[start + k] = head[k];
      cells_[end - 4 + k] = head[k];
    }
  }
  --live_;
}

std::size_t TextBuffer::compact(ArenaAccountant* accountant) {
  std::size_t write = 0;
  for (std::size_t p = first_nonblank(); p != npos; p = next_nonblank(p)) {
    cells_[write++] = cells_[p];
  }
  const std::size_t freed = cells_.size() - write;
  cells_.resize(write);
  live_ = write;
  if (accountant != nullptr) accountant->add_reclaimed(freed);
  return write;
}

std::vector<std::pair<std::size_t, Word>> TextBuffer::decode_plain() const {
  std::vector<std::pair<std::size_t, Word>> out;
  out.reserve(live_);
  for (std::size_t p = first_nonblank(); p != npos; p = next_nonblank(p)) {
    out.emplace_back(p, cells_[p]);
  }
  return out;
}

std::vector<Word> TextBuffer::live_symbols() const {
  std::vector<Word> out;
  out.reserve(live_);
  for (std::size_t p = first_nonblank(); p != npos; p = next_nonblank(p)) {
    out.push_back(cells_[p]);
  }
  return out;
}

bool TextBuffer::well_formed() const {
  std::size_t live = 0;
  std::size_t i = 0;
  const std::size_t size = cells_.size();
  while (i < size) {
    if (!is_blank(i)) {
      ++live;
      ++i;
      continue;
    }
    std::size_t e = i;
    while (e < size && is_blank(e)) ++e;
    const std::size_t r = e - i;
    if (r < kMinDelimitedRun) {
      for (std::size_t k = i; k < e; ++k) {
        if (cells_[k] != fill()) return false;
      }
    } else {
      const Word payload = static_cast<Word>(r - 1);
      const Word head[5] = {fill(), star(), payload, star(), fill()};
      for (std::size_t k = 0; k < 5; ++k) {
        if (cells_[i + k] != head[k] || cells_[e - 5 + k] != head[k]) {
          return false;
        }
      }
      for (std::size_t k = i + 5; k + 5 < e; ++k) {
        if (cells_[k] != fill()) return false;
      }
    }
    i = e;
  }
  return live == live_;
}

}  // namespace repair
