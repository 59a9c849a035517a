#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace repair {

// One machine word. Alphabet characters, dictionary symbols, blank markers,
// run-length payloads, text positions and queue fields all live in words.
using Word = std::uint64_t;

inline constexpr Word kNull = std::numeric_limits<Word>::max();

struct Pair {
  Word left = kNull;
  Word right = kNull;

  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

inline constexpr Pair kNoPair{};

struct Rule {
  Word lhs = 0;
  Word rhs_left = 0;
  Word rhs_right = 0;

  friend bool operator==(const Rule&, const Rule&) = default;
};

// Raised when an in-memory grammar or a grammar file violates its structure.
class GrammarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a registered allocation would exceed the accountant's budget.
class SpaceBoundViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense remapping of input bytes in first-occurrence order.
struct AlphabetMap {
  std::array<std::int16_t, 256> original_to_dense{};
  std::vector<std::uint8_t> dense_to_original;

  AlphabetMap() { original_to_dense.fill(-1); }

  std::size_t sigma() const noexcept { return dense_to_original.size(); }

  friend bool operator==(const AlphabetMap&, const AlphabetMap&) = default;
};

struct RemappedInput {
  std::vector<Word> symbols;
  AlphabetMap alphabet;
  // sigma > n - 2: the two reserved codes cannot be placed below the alphabet.
  bool needs_fallback = false;
};

RemappedInput remap_input(std::span<const std::uint8_t> bytes);

struct Grammar {
  AlphabetMap alphabet;
  std::vector<Rule> rules;
  std::vector<Word> final_sequence;
  std::uint64_t original_length = 0;

  std::size_t sigma() const noexcept { return alphabet.sigma(); }

  friend bool operator==(const Grammar&, const Grammar&) = default;
};

// Checks code ranges, consecutive lhs numbering and acyclicity.
void validate_grammar(const Grammar& grammar);

// Expands every final symbol through the rules. Throws GrammarError on a
// malformed grammar or when the expansion length differs from original_length.
std::vector<std::uint8_t> expand(const Grammar& grammar);

// Expands dense codes only (no alphabet mapping); used by tests and oracles.
std::vector<Word> expand_symbols(std::span<const Rule> rules, Word sigma,
                                 std::span<const Word> sequence);

using RuleSink = std::function<void(const Rule&)>;

// Word-level bookkeeping of working memory. Every allocation made outside
// the rewritable input buffer is registered here.
class ArenaAccountant {
 public:
  ArenaAccountant() = default;
  explicit ArenaAccountant(std::optional<std::size_t> budget_words)
      : budget_(budget_words) {}

  void reserve(std::size_t words);
  void release(std::size_t words) noexcept;

  // Text cells freed by compaction. They belong to the input buffer and do
  // not count as working space; the light queue grows from them.
  void add_reclaimed(std::size_t words) noexcept { reclaimed_ += words; }

  std::size_t current_words() const noexcept { return current_; }
  std::size_t peak_words() const noexcept { return peak_; }
  std::size_t reclaimed_words() const noexcept { return reclaimed_; }
  std::optional<std::size_t> budget_words() const noexcept { return budget_; }

 private:
  std::size_t current_ = 0;
  std::size_t peak_ = 0;
  std::size_t reclaimed_ = 0;
  std::optional<std::size_t> budget_;
};

// A block of words registered with an accountant for its lifetime.
class ArenaBlock {
 public:
  ArenaBlock() = default;
  ArenaBlock(ArenaAccountant& accountant, std::size_t words);
  ~ArenaBlock();

  ArenaBlock(ArenaBlock&& other) noexcept;
  ArenaBlock& operator=(ArenaBlock&& other) noexcept;
  ArenaBlock(const ArenaBlock&) = delete;
  ArenaBlock& operator=(const ArenaBlock&) = delete;

  std::span<Word> words() noexcept { return {data_.get(), size_}; }
  std::span<const Word> words() const noexcept { return {data_.get(), size_}; }
  std::size_t size() const noexcept { return size_; }

 private:
  void reset() noexcept;

  ArenaAccountant* accountant_ = nullptr;
  std::unique_ptr<Word[]> data_;
  std::size_t size_ = 0;
};

// ceil(sqrt(n)) computed exactly on integers.
std::size_t ceil_sqrt(std::size_t n) noexcept;

// ceil(sqrt(n) / d) computed exactly on integers.
std::size_t ceil_sqrt_div(std::size_t n, std::size_t d) noexcept;

}  // namespace repair
