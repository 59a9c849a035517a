#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "repair/core.hpp"

namespace repair {

class ArenaAccountant;

// The rewritable text. Deleted cells form blank runs: a run shorter than
// kMinDelimitedRun is filled with '_' cells; a longer run starts and ends
// with the five cells '_', '*', length-1, '*', '_' so it can be skipped from
// either side with a constant number of reads. '*' and '_' use the two
// largest codes of the original length n (n-2 and n-1), so every symbol
// must be at most n-3.
class TextBuffer {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  static constexpr std::size_t kMinDelimitedRun = 10;

  TextBuffer() = default;

  // Plain text, no blanks. Throws std::invalid_argument if a symbol
  // collides with a reserved code.
  explicit TextBuffer(std::vector<Word> symbols);

  // Raw cells that may already contain encoded blank runs. No validation.
  static TextBuffer from_cells(std::vector<Word> cells);

  // Original length; fixes the reserved codes.
  std::size_t code_space() const noexcept { return n_; }
  // Current extent; equals code_space() until the first compaction.
  std::size_t size() const noexcept { return cells_.size(); }
  std::size_t live_count() const noexcept { return live_; }
  bool compacted() const noexcept { return live_ == cells_.size(); }

  Word star() const noexcept { return n_ - 2; }
  Word fill() const noexcept { return n_ - 1; }
  Word max_symbol() const noexcept { return n_ - 3; }

  // nullopt when pos holds a blank. Throws std::out_of_range.
  std::optional<Word> read(std::size_t pos) const;
  bool is_blank(std::size_t pos) const noexcept;

  // Raw cell access without classification.
  Word cell(std::size_t pos) const noexcept { return cells_[pos]; }
  std::span<const Word> cells() const noexcept { return cells_; }

  // pos must hold a symbol. Returns npos when no symbol follows (precedes).
  std::size_t next_nonblank(std::size_t pos) const noexcept;
  std::size_t prev_nonblank(std::size_t pos) const noexcept;
  std::size_t first_nonblank() const noexcept;

  // The pair starting at the symbol in pos, or nullopt if pos is blank or
  // the last symbol.
  std::optional<Pair> pair_at(std::size_t pos) const noexcept;

  // cells[posA] = symbol; the next symbol after posA becomes blank and the
  // blank runs around it are merged.
  void replace_pair(std::size_t pos_a, Word symbol);

  // Moves all symbols to a prefix, shrinks size() to live_count() and
  // reports the freed cells to the accountant if given.
  std::size_t compact(ArenaAccountant* accountant = nullptr);

  // Hands the raw cells to the caller and leaves the buffer empty.
  std::vector<Word> take_cells() noexcept {
    n_ = 0;
    live_ = 0;
    return std::move(cells_);
  }

  std::vector<std::pair<std::size_t, Word>> decode_plain() const;
  std::vector<Word> live_symbols() const;

  // Full linear scan of the run encoding. Returns false on any malformed run.
  bool well_formed() const;

 private:
  bool is_star(std::size_t pos) const noexcept {
    return pos < cells_.size() && cells_[pos] == star();
  }
  // Length of the run starting at pos (pos is the first blank cell).
  std::size_t run_length_from_head(std::size_t pos) const noexcept;
  // Length of the run ending at pos (pos is the last blank cell).
  std::size_t run_length_from_tail(std::size_t pos) const noexcept;

  std::vector<Word> cells_;
  std::size_t n_ = 0;
  std::size_t live_ = 0;
};

}  // namespace repair
